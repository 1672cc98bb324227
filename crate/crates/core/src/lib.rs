//! Random variables drawn from deterministic bit streams, empirical joint
//! CDFs, and the soft error rate of a DRAM sense amplifier under Gaussian
//! thermal noise.
//!
//! Module map:
//!
//! - [`bitstream`]: infinite bit sequences with even/odd splitting
//! - [`rv`]: uniforms by binary expansion, inverse-transform variates,
//!   independent pairs, Box-Muller Gaussian pairs, batch sampling
//! - [`cdf`]: joint and marginal empirical CDFs, rectangle probabilities,
//!   independence and Kolmogorov-Smirnov checks
//! - [`audit`]: the CDF property suite used by `softerr cdf-props`
//! - [`special`]: normal density, tail function `Q`, `erfc`
//! - [`ser`]: sense-amplifier error model, closed form, Monte Carlo, sweeps
//! - [`cli`]: the `softerr` command line

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and frozen reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod audit;
pub mod bitstream;
pub mod cdf;
pub mod cli;
pub mod error;
pub mod rv;
pub mod ser;
pub mod special;

pub use bitstream::{BitStream, SplitStreams};
pub use cdf::{IndependenceReport, SamplePairs};
pub use error::{Error, Result};
pub use rv::{GaussianPair, PairKind, RvPairSpec, UniformSample};
pub use ser::{SenseAmpParams, SerResult};
