//! Exact spectral analysis and quasi-randomness testers for Boolean functions
//! on the hypercube.
//!
//! A function is stored as a bit-packed truth table of signs in `{+1, -1}`
//! over `F_2^n`. Everything spectral (Walsh coefficients, autocorrelation,
//! influences, subcube masses) is computed in exact integer or dyadic-rational
//! arithmetic; floating point only enters for quantities that are genuinely
//! real (Gowers norms, complex character correlations, noise-weighted
//! influences) or for Monte Carlo estimates.
//!
//! Module map:
//!
//! - [`function`]: truth tables, file formats, derivatives.
//! - [`fourier`]: Walsh transform, autocorrelation, influences, subcube mass.
//! - [`subcube`]: subcubes `C(S,z)` and restrictions.
//! - [`properties`]: worst-case deviation testers for the eight
//!   quasi-randomness criteria (balanced influences, spectral discrepancy,
//!   restriction Fourier/convolution/influences, local regularity,
//!   degree-2 homomorphism counts, rainbow embedding counts).
//! - [`constructions`]: bent functions, binary linear codes, and the
//!   bent-composed-with-parity-check family separating ranks.
//! - [`graphs`]: bipartite Cayley graph and rainbow Hamming graph oracles,
//!   homomorphism and embedding counting, subdivision machinery.
//! - [`extant`]: comparators from other quasi-randomness theories
//!   (Gowers uniformity norms, coefficient bounds, cyclic-group character
//!   correlations, noise-stable influences).
//! - [`selftest`]: the invariant battery behind the CLI self test.

pub mod bits;
pub mod budget;
pub mod constructions;
pub mod error;
pub mod extant;
pub mod fourier;
pub mod function;
pub mod graphs;
pub mod mc;
pub mod properties;
pub mod rat;
pub mod selftest;
pub mod subcube;

pub use budget::Budget;
pub use error::Error;
pub use fourier::{AutocorrelationTable, Spectrum};
pub use function::BooleanFunction;
pub use rat::Rat;
pub use subcube::Subcube;

/// Largest dimension for which exact truth tables are supported.
pub const MAX_DIMENSION: u32 = 30;
