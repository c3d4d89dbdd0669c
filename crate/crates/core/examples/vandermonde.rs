//! Samples configurations and checks the Vandermonde map is k-regular on
//! them, alongside a truncated map that must fail.

use regemb::regular_verify::{
    check_k_regular_on_sample, random_config, truncated_vandermonde, vandermonde_map,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 2..=8 {
        let f = vandermonde_map(k);
        let g = truncated_vandermonde(k - 1);
        let mut ok = 0;
        let mut bad = 0;
        for seed in 0..50 {
            let s = random_config(seed, k, 1, 100)?;
            ok += check_k_regular_on_sample(&f, &s)? as usize;
            bad += !check_k_regular_on_sample(&g, &s)? as usize;
        }
        println!("k={k}: vandermonde independent on {ok}/50, truncated dependent on {bad}/50");
    }
    Ok(())
}
