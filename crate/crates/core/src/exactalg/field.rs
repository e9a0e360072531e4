use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{gauss_jordan, Echelon};
use super::RatFuncQ;

/// Exact field arithmetic used by the linear algebra and the operators.
///
/// Elements carry their own context (`Ctx`), which only matters for the
/// cyclotomic field where it is the root-of-unity order.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn from_rational(r: &BigRational, ctx: &Self::Ctx) -> Self;

    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)), ctx)
    }

    fn from_bigint(v: &BigInt, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::from_integer(v.clone()), ctx)
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv())
    }

    /// Reduced echelon form of `rows`, visiting columns in `order`.
    fn echelon(rows: Vec<Vec<Self>>, order: &[usize], ctx: &Self::Ctx) -> Echelon<Self> {
        gauss_jordan(rows, order, ctx)
    }
}

/// Fields that embed into Q(q); these are the coefficient fields of harmonic
/// polynomials and the scalars of the cyclotomic extension.
pub trait Scalar: Field<Ctx = ()> {
    fn to_ratfunc(&self) -> RatFuncQ;
}

impl Field for BigRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn ctx(&self) {}
    fn from_rational(r: &BigRational, _: &()) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Scalar for BigRational {
    fn to_ratfunc(&self) -> RatFuncQ {
        RatFuncQ::from_rational(self)
    }
}
