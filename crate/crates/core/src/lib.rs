//! Amplitude-phase methods for second-order linear ODEs and for the
//! scalar wave-equation parametrix in Kasner spacetime.
//!
//! The crate is layered bottom-up:
//!
//! * [`numerics`]: ODE integration, quadrature, finite differences, zero finding.
//! * [`canonical`]: reduction of `u'' + P u' + Q u = 0` to `χ'' + J χ = 0` and
//!   Sturm comparison of adjacent zeros.
//! * [`ermakov`]: the amplitude-phase ansatz, the Pinney closed form of
//!   `u³u'' = τ²` and its first-order complex reduction.
//! * [`kasner`]: exponents, Christoffel symbols, divergence and d'Alembertian
//!   for time-only fields on a Kasner background.
//! * [`parametrix`]: the auxiliary covectors ψ and ρ, amplitude α and phase φ,
//!   with residual verification of every defining equation.
//! * [`expr`]: a small expression language for user-supplied coefficient
//!   functions.

pub mod canonical;
pub mod ermakov;
mod error;
pub mod expr;
pub mod kasner;
pub mod numerics;
pub mod parametrix;
pub mod report;

pub use error::{Error, Result};
pub use numerics::{Interval, ScalarFunction};
pub use report::ResidualReport;
