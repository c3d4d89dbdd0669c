//! Exact mod-p symbolic computation for obstructions to complex k-regular
//! and l-skew embeddings.
//!
//! The crate is organised bottom-up:
//!
//! - [`modp_arith`]: p-adic digits, digit sums, Lucas binomials and
//!   multinomials, `f(d, l)`, admissible-sequence statistics.
//! - [`graded_algebra`]: truncated graded-commutative algebras over F_p.
//! - [`char_class`]: the cyclic and configuration-space cohomology models and
//!   their (inverse) Chern classes.
//! - [`hopf_newton`]: coproducts, Bockstein and Newton polynomials in the
//!   free Hopf algebra on the configuration-space coalgebra.
//! - [`bounds`]: closed-form lower bounds and the comparison table.
//! - [`regular_verify`]: exact rank checks of candidate k-regular maps.
//! - [`cli`]: the `regemb` command-line front end.

pub mod bounds;
pub mod char_class;
pub mod cli;
pub mod graded_algebra;
pub mod hopf_newton;
pub mod modp_arith;
pub mod regular_verify;
