//! Numerical library for convolution-type Young integration in semigroup
//! scales and the mild evolution equation `dy = Ay dt + sigma(y) dx` driven
//! by Hoelder-rough paths.
//!
//! Module map:
//!
//! * [`scale`] — interpolation scales `X_lambda` with a semigroup acting on
//!   them (spectral Dirichlet, diagonal matrix, identity models).
//! * [`paths`] — dyadically sampled Hoelder drivers (power, Weierstrass,
//!   fractional Brownian motion) with seminorm estimation.
//! * [`simplex`] — functions on ordered simplices and the twisted increment
//!   operators, with their cochain identities.
//! * [`sewing`] — the dyadic sewing construction of convolution integrals,
//!   including trimmed sums for integrands singular at the left endpoint.
//! * [`young`] — scalar Young integrals as the identity-semigroup special
//!   case.
//! * [`nonlinear`] — composition (Nemytskii) vector fields on spectral
//!   models with declared regularity metadata.
//! * [`solver`] — exponential-Euler stepper and Picard iteration for the
//!   mild equation, with solution-space norms and a-priori constants.
//! * [`diagnostics`] — log-log rate fitting and pass/fail exponent reports.

pub mod diagnostics;
pub mod error;
pub mod nonlinear;
pub mod paths;
pub mod scale;
pub mod sewing;
pub mod simplex;
pub mod solver;
pub mod young;

pub use error::{Error, Result};

/// Library version, echoed into every CLI output artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
