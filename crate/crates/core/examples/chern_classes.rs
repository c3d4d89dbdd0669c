//! Total and inverse Chern classes in the cyclic and configuration models,
//! and the bounds they feed.

use regemb::bounds::{derive_bound_from_dual_class, Criterion};
use regemb::char_class::{
    inverse_chern_config, inverse_chern_cyclic, max_nonvanishing_inverse_degree,
    pullback_dual_degree, top_dual_coefficient, total_chern_cyclic, ConfigModel, CyclicModel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [3, 5, 7] {
        let model = CyclicModel::new(p, 2 * p + 1)?;
        let total = total_chern_cyclic(&model, 1)?;
        let inverse = inverse_chern_cyclic(&model, 1)?;
        println!("p={p}: c = {total}");
        println!("      c^-1 = {inverse}");
    }

    let model = ConfigModel::from_exponent(3, 1, 3)?;
    let inverse = inverse_chern_config(&model);
    let dual = top_dual_coefficient(&model);
    println!("\nF(C^3,3)/S_3: c^-1 = {inverse}");
    println!("coefficient of c_2^2: {}, nothing above: {}", dual.coefficient, dual.vanishes_above);

    let top = max_nonvanishing_inverse_degree(&inverse)?;
    let r = derive_bound_from_dual_class(top, Criterion::KRegular { k: 3 });
    println!("3-regular C^3 -> C^N needs N >= {}", r.least_admissible_n);

    for k in [2, 5, 8] {
        let pull = pullback_dual_degree(3, 3, k)?;
        let r = derive_bound_from_dual_class(pull.degree, Criterion::KRegular { k });
        println!("k={k}: dual index {} -> N >= {}", pull.degree, r.least_admissible_n);
    }
    Ok(())
}
