//! Statistics of Dyer-Lashof sequences at p = 2 and p = 3.

use regemb::modp_arith::{dl_sequence_stats, DlSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in [vec![2, 1], vec![4, 2, 1], vec![3, 2], vec![]] {
        let st = dl_sequence_stats(&DlSequence::mod_two(&s))?;
        println!(
            "p=2 {s:?}: degree {}, length {}, excess {}, admissible {}",
            st.degree, st.length, st.excess, st.admissible
        );
    }
    for pairs in [vec![(1, 2), (0, 1)], vec![(0, 3), (1, 1)]] {
        let st = dl_sequence_stats(&DlSequence::odd(3, &pairs)?)?;
        println!(
            "p=3 {pairs:?}: degree {}, excess {}, b {}, admissible {}",
            st.degree, st.excess, st.b, st.admissible
        );
    }
    Ok(())
}
