//! Expected length and absolute length of a product of `t` uniformly random
//! (simple) reflections in the finite Coxeter families A, B, D and I2(m), and
//! expected absolute length in the complex reflection groups G(r,1,n).
//!
//! Every quantity is available through up to three independent routes:
//!
//! * [`closedform`]: direct evaluation of explicit formulas, exact over the
//!   rationals except for one trigonometric formula;
//! * [`exact`]: exact rational evolution of the full distribution over the
//!   group, or of the pairwise order probabilities `Prob(π_i < π_j)`;
//! * [`montecarlo`]: seeded, reproducible sampling.
//!
//! ```
//! use coxwalk::closedform::expected_length_a_t;
//! use coxwalk::elements::GroupSpec;
//! use coxwalk::exact::{evolve_distribution, Gens};
//! use coxwalk::lengths::{statistic, Measure};
//!
//! let closed = expected_length_a_t(4, 3).unwrap();
//! let spec = GroupSpec::a(4).unwrap();
//! let dist = evolve_distribution(&spec, Gens::AllReflections, 3).unwrap();
//! let inversions = statistic(&spec, Measure::Length).unwrap();
//! assert_eq!(closed, dist.expectation(&*inversions));
//! ```

pub mod cli;
pub mod closedform;
pub mod elements;
pub mod error;
pub mod exact;
pub mod lengths;
pub mod montecarlo;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
