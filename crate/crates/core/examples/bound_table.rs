//! Prints the k-regular comparison table and a few skew bounds.

use regemb::bounds::{
    bound_skew_chisholm, bound_skew_prime, bound_skew_real, comparison_table, DEFAULT_TABLE_ROWS,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<10} {:>5} {:>5} {:>5}", "(d,k,p)", "A", "B", "C");
    for row in comparison_table(DEFAULT_TABLE_ROWS)? {
        let cell = |r: &Option<regemb::bounds::BoundReport>| {
            r.as_ref().map_or("--".to_string(), |r| r.least_admissible_n.to_string())
        };
        println!(
            "{:<10} {:>5} {:>5} {:>5}  {}",
            format!("({},{},{})", row.d, row.k, row.p),
            row.thm_a.least_admissible_n,
            cell(&row.thm_b),
            cell(&row.thm_c),
            row.notes().join("; ")
        );
    }

    println!();
    for (d, l) in [(1, 3), (2, 3), (2, 5), (3, 7)] {
        let prime = bound_skew_prime(d, l)?;
        let real = bound_skew_real(d, l)?;
        println!(
            "l-skew, d={d}, l={l}: C^d source needs N >= {}, R^d source needs N >= {}",
            prime.least_admissible_n, real.least_admissible_n
        );
    }
    let r = bound_skew_chisholm(9, 3, 3)?;
    println!("3-skew C^9 -> C^N needs N >= {}", r.least_admissible_n);
    Ok(())
}
