//! Newton polynomials in the free Hopf algebra and their primitivity.

use regemb::hopf_newton::{CoalgebraSpec, HopfAlgebra};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = HopfAlgebra::new(CoalgebraSpec::plain(5, 9)?)?;
    println!("Delta(x_2) = {}", h.coproduct(&h.x(2))?);
    for (i, v) in h.newton_polynomials()?.iter().enumerate() {
        println!(
            "v_{} = {v}\n    primitive: {}, d(v) = {}",
            i + 1,
            h.is_primitive(v)?,
            h.bockstein(v)?
        );
    }

    let h = HopfAlgebra::new(CoalgebraSpec::cofiber(3, 5, 15)?)?;
    let report = h.check()?;
    println!("\ncofiber variant ({}):", report.spec);
    for row in &report.rows {
        println!("v_{} = {}  [{}]", row.l, row.v, if row.primitive { "primitive" } else { "not primitive" });
    }
    println!("all checks pass: {}", report.pass);
    Ok(())
}
