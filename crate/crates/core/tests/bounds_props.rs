mod common;

use common::{alpha_legendre, small_primes};
use proptest::prelude::*;
use regemb::bounds::{
    bound_kregular_chisholm, bound_kregular_prime, bound_skew_chisholm, comparison_table,
    derive_bound_from_dual_class, Criterion,
};

#[test]
fn chisholm_is_monotone_in_k() {
    for p in [3u64, 5, 7] {
        for t in 1..=2u32 {
            let d = p.pow(t);
            let mut prev = 0;
            for k in 2..=200 {
                let n = bound_kregular_chisholm(d, k, p).unwrap().least_admissible_n;
                assert!(n >= prev, "d={d} p={p} k={k}: {n} < {prev}");
                prev = n;
            }
        }
    }
}

#[test]
fn printed_table_cells() {
    let mut rows = vec![(3, 3, 3), (3, 9, 3)];
    rows.extend((1..=10).map(|d| (d, 7, 7)));
    rows.extend((1..=10).map(|d| (d, 17, 17)));
    let table: Vec<_> = comparison_table(&rows)
        .unwrap()
        .into_iter()
        .map(|r| {
            let n = |b: Option<regemb::bounds::BoundReport>| b.map(|b| b.least_admissible_n);
            (r.thm_a.least_admissible_n, n(r.thm_b), n(r.thm_c))
        })
        .collect();
    assert_eq!(table[0], (4, Some(7), Some(7)));
    assert_eq!(table[1], (22, None, Some(25)));
    for (i, d) in (1..=10i64).enumerate() {
        let r = &table[2 + i];
        assert_eq!((r.0, r.1), (4 * d + 2, Some(6 * d + 1)), "({d},7,7)");
        let r = &table[12 + i];
        assert_eq!((r.0, r.1), (15 * d + 1, Some(16 * d + 1)), "({d},17,17)");
    }
}

proptest! {
    #[test]
    fn skew_chisholm_statement_pair(t in 1u32..4, pi in 0usize..4, l in 1u64..60) {
        let p = [3u64, 5, 7, 11][pi];
        let d = p.pow(t);
        prop_assume!(d <= 1000);
        let intro = (d - 1) * (l - alpha_legendre(l, p)) + (d + 1) * l - 1;
        let body_excluded = (d - 1) * (l - alpha_legendre(l, p)) + (d + 1) * l - 2;
        let r = bound_skew_chisholm(d, l, p).unwrap();
        prop_assert_eq!(r.least_admissible_n, intro as i64);
        prop_assert_eq!(r.least_admissible_n - 1, body_excluded as i64);
    }

    #[test]
    fn prime_statement_pair(d_real in 1u64..100, pi in 1usize..25) {
        let p = small_primes()[pi];
        let intro = d_real.div_ceil(2) * (p - 1) + 1;
        prop_assert_eq!(bound_kregular_prime(d_real, p).unwrap().least_admissible_n, intro as i64);
    }

    #[test]
    fn dual_class_translation(dual in 0u64..500, k in 1u64..50, d in 1u64..30, l in 1u64..20) {
        let r = derive_bound_from_dual_class(dual, Criterion::KRegular { k });
        prop_assert_eq!(r.least_admissible_n, (dual + k) as i64);
        let r = derive_bound_from_dual_class(dual, Criterion::Skew { d, l });
        prop_assert_eq!(r.least_admissible_n, (dual + (d + 1) * l - 1) as i64);
    }
}
