//! Exact arithmetic: integer polynomials in q, the field Q(q), the
//! cyclotomic extensions Q(q)(zeta_m), and deterministic nullspaces.

mod cyclotomic;
mod field;
mod matrix;
mod qpoly;
mod ratfunc;

pub use cyclotomic::{cyc_mul, cyclotomic_poly, totient, CycElem};
pub use field::{Field, Scalar};
pub use matrix::{nullspace, rank, rref, Echelon, ExactMatrix};
pub use qpoly::QPoly;
pub use ratfunc::RatFuncQ;

use num_rational::BigRational;

use crate::error::Result;

/// Evaluates `r` at `q = q0`; fails with `PoleAtQ0` when the denominator vanishes.
pub fn specialize(r: &RatFuncQ, q0: &BigRational) -> Result<BigRational> {
    r.specialize(q0)
}
