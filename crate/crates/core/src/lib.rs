//! Monte Carlo and analytic statistics of the real zeros of random
//! trigonometric polynomials and their derivatives.
//!
//! Repeated differentiation pushes the zeros of a random trigonometric
//! polynomial onto the real line and toward equal spacing. This crate
//! samples such polynomials, finds their zeros, estimates the real-zero
//! fraction, pair correlation and nearest-neighbor spacings, and evaluates
//! the exact Kac-Rice and pair-correlation formulas together with their
//! large-derivative asymptotics.

pub mod error;
pub mod poly;
pub mod rootfind;
pub mod sum;
pub mod quadrature;
pub mod analytic;
pub mod asymptotics;
pub mod ensemble;
pub mod stats;
pub mod plot;
pub mod cli;
mod eigen;
mod fixed;

pub use error::{Error, Result};
pub use poly::{EnsembleSpec, TrigPolynomial, VarianceProfile};
pub use rootfind::{RootMethod, RootSet};
