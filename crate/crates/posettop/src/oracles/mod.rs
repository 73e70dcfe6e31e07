//! Independent combinatorial reference values.
//!
//! Everything in this module is computed without touching the poset or
//! homology machinery, so its outputs can serve as oracles for them:
//! partition statistics and Specht dimensions, permutation counting
//! (plain, inversion-graded, and signed descent classes, derangements,
//! alternating permutations), exact truncated series arithmetic, and the
//! generating-function Betti predictions for block-size-restricted
//! partition posets.

pub mod betti;
pub mod counting;
pub mod partitions;
pub mod series;

pub use betti::{betti_gf, one_mod_d_series, zero_mod_d_series, BettiGfFamily, OracleError};
pub use counting::{
    binomial, catalan, derangements, descent_class, descent_class_q, double_factorial,
    euler_number, inversions, multinomial, q_multinomial, qpoly_eval, signed_descent_class,
};
pub use partitions::{
    bouc_betti, laplacian_spectrum_candidates, partitions_of, partitions_with_parts,
    set_partitions_of_type, IntPartition,
};
pub use series::{factorial, BivariateSeries, PolyT, TruncatedSeries};
