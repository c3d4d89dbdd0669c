//! Height bounds and actual heights of Chern classes in the configuration
//! model.

use regemb::bounds::height_bound;
use regemb::char_class::ConfigModel;
use regemb::graded_algebra::element_height;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d, p) in [(4, 2), (5, 2), (4, 3), (6, 3), (2, 3)] {
        let h = height_bound(d, p)?;
        println!("d={d}, p={p}: height <= {}  {}", h.value, h.notes.join("; "));
    }

    let model = ConfigModel::from_exponent(3, 1, 4)?;
    let cap = model.presentation().default_height_cap();
    for i in 1..4 {
        println!("h(c_{i}) = {:?}", element_height(&model.c(i), cap)?);
    }
    Ok(())
}
