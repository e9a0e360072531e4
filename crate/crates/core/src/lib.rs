//! Exact computation of q-deformed (diagonal) harmonic polynomials for the
//! complex reflection groups G(m,p,n).
//!
//! The library is layered bottom-up:
//!
//! - [`exactalg`]: Q(q), cyclotomic coefficients, nullspaces.
//! - [`polyspace`]: multigraded polynomials in an `l x n` matrix of variables.
//! - [`operators`]: the deformed power-sum operators and their matrices.
//! - [`groups`]: G(m,p,n) as monomial matrices, its action, graded traces.
//! - [`harmonics`]: joint kernels, Hilbert series, layers and the checks.

pub mod error;
pub mod exactalg;
pub mod groups;
pub mod harmonics;
pub mod operators;
pub mod polyspace;

pub use error::{Error, Result};
