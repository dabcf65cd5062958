//! Coprime-order commutator structures in finite permutation groups.
//!
//! Groups are enumerated exhaustively ([`group::FiniteGroup`]); on top of
//! that the crate computes the sets of star commutators built from
//! coprime-order pairs ([`star`]), decides solubility and Fitting height from
//! them, and writes every even permutation as a commutator of an odd-order
//! element and an element of order dividing 4 ([`witness`]). [`catalog`]
//! holds the built-in test groups and brute-force oracles.
//!
//! All products are left to right: `p.compose(&q)` applies `p` first.

pub mod catalog;
pub mod group;
pub mod perm;
pub mod star;
pub mod witness;

pub use group::{FiniteGroup, GroupError};
pub use perm::{format_cycles, parse_cycles, Parity, Permutation};
pub use star::{
    coprime_commutator_coverage, delta_star_set, gamma_star_set, min_delta_trivial_level, star_subgroup,
    CoverageReport, ElementSet,
};
pub use witness::{verify_witness, witness, CaseTag, Witness};
