//! Digit sums, Lucas binomials and f(d, l).

use regemb::modp_arith::{alpha_p, binom_mod_p, f_dl, multinom_mod_p};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (k, p) in [(8, 3), (9, 3), (14, 7), (100, 2)] {
        println!("alpha_{p}({k}) = {}", alpha_p(k, p)?);
    }
    println!("C(10, 3) mod 3 = {}", binom_mod_p(10, 3, 3)?);
    println!("C(1000000, 500000) mod 7 = {}", binom_mod_p(1_000_000, 500_000, 7)?);
    println!("(4; 2, 1, 1) mod 5 = {}", multinom_mod_p(4, &[2, 1, 1], 5)?);
    for l in [3, 5, 7] {
        let fs: Vec<u64> = (1..=8).map(|d| f_dl(d, l)).collect::<Result<_, _>>()?;
        println!("f(d, {l}) for d = 1..8: {fs:?}");
    }
    Ok(())
}
