//! Exact rational engines.
//!
//! [`distribution`] evolves the full distribution over a finite group;
//! [`pairwise`] evolves only the pairwise order probabilities, which is all
//! the length statistic of types A, B and D depends on; [`operators`] holds
//! the linear operators those recurrences reduce to.

pub mod distribution;
pub mod operators;
pub mod pairwise;

pub use crate::elements::Gens;
pub use distribution::{evolve_distribution, expectation, ExactDist, ExactWalk};
pub use operators::{apply_q_a, apply_q_bd, AntisymMatrix, DSpaceFunction};
pub use pairwise::{evolve_pairtable, pair_walk, PairKind, PairTable};
