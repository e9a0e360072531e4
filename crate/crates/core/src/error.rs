use num_rational::BigRational;
use thiserror::Error;

use crate::polyspace::MultiDegree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The denominator of a rational function vanishes at the requested point.
    #[error("denominator vanishes at q = {0}")]
    PoleAtQ0(BigRational),

    #[error("root-of-unity orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    /// Layer theory and the operator e_n(dX) are only defined for one set of variables.
    #[error("operation needs a single set of variables, got l = {0}")]
    NotSingleSet(usize),

    #[error("operator lowers multidegree {from:?} below zero")]
    DegreeUnderflow { from: MultiDegree },

    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: u128, limit: u128 },

    #[error("shape mismatch: expected n = {expected}, got n = {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("space in degree {degree:?} is not stable under {element}")]
    NotStable { element: String, degree: MultiDegree },

    #[error("Hilbert data is not symmetric: dim at {0:?} differs from its sorted permutation")]
    NotSymmetric(MultiDegree),

    #[error("closed form is invalid at the singular value q = {0}")]
    SingularQ(BigRational),

    #[error("layer {layer} found in degree {degree:?}, beyond the last expected layer {max}")]
    LayerOverflow {
        degree: MultiDegree,
        layer: u32,
        max: u32,
    },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
