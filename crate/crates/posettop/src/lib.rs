//! Exact topological and combinatorial invariants of finite posets and
//! simplicial complexes.
//!
//! The crate is organized around a few core types:
//!
//! * [`poset::Poset`]: a finite poset stored as a Hasse diagram plus a
//!   cached order relation, with Möbius function evaluation, products,
//!   derived posets (duals, intervals, bounded extensions), and structure
//!   queries (lattice tests, rank functions, maximal chains).
//! * [`complex::SimplicialComplex`]: a finite abstract simplicial complex
//!   stored by its facets, with the usual constructions (joins, links,
//!   skeleta, Alexander duals, order complexes of posets).
//! * [`homology`]: exact integral simplicial homology and cohomology via
//!   Smith normal form, reduced and with torsion, plus combinatorial
//!   Laplacians, Cohen-Macaulay checks, and fundamental cycles of sphere
//!   subcomplexes.
//! * [`shelling`]: shelling order verification and search, EL-labeling
//!   verification, falling-chain Betti numbers, rank selection, recursive
//!   atom orderings, and NBC bases of geometric lattices.
//! * [`families`]: constructors for the standard families (Boolean and
//!   subspace lattices, partition lattices and their type B and
//!   block-size-restricted variants, noncrossing partitions, Bruhat
//!   order, word posets, graph posets, matching and chessboard
//!   complexes) together with their canonical edge labelings.
//! * [`arrangements`]: rational affine subspace arrangements, their
//!   intersection (semi)lattices, region counts, and complement Betti
//!   numbers.
//! * [`identities`]: cross-checks that tie independent computations
//!   together (Euler-Poincaré, fiber-wise homology comparisons, Whitney
//!   recursions, fixed-point Möbius identities, Künneth-style products).
//! * [`oracles`]: independent combinatorial reference values (partition
//!   statistics, permutation counting, truncated exponential generating
//!   functions) used to validate the topological computations.
//!
//! All arithmetic is exact: `num::BigInt` and `num::BigRational`
//! throughout, with fast machine-word paths where overflow is checked.

pub mod arrangements;
pub mod complex;
pub mod families;
pub mod homology;
pub mod identities;
pub mod io;
pub mod oracles;
pub mod poset;
pub mod shelling;
