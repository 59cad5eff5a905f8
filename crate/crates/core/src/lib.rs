//! Moments of the Riemann zeta function on the critical line.
//!
//! The crate evaluates `ζ(1/2+it)` (Euler-Maclaurin and Riemann-Siegel),
//! isolates and refines zeros, integrates `|ζ|^{2k}` between consecutive
//! zeros with Romberg quadrature, and evaluates the moment predictions and
//! local product models the integrals are compared against.

pub mod dd;
pub mod error;
pub mod height;
pub mod local_models;
pub mod moments;
pub mod predictions;
pub mod primes;
pub mod quadrature;
pub mod selfcheck;
pub mod specfun;
pub mod statistics;
pub mod summation;
pub mod zeta;
pub mod zeros;

pub use error::{Error, Result};
pub use height::{DecimalBase, HeightValue};
