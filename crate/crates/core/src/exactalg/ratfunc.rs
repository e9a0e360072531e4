use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Scalar};
use super::matrix::Echelon;
use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// An element of Q(q), kept as a reduced quotient of integer polynomials.
///
/// Normal form: `gcd(num, den) = 1` over Q, the integer contents of `num`
/// and `den` are coprime, and `den` has a positive leading coefficient.
/// Zero is `0/1`. Two values are equal iff their normal forms coincide.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFuncQ {
    num: QPoly,
    den: QPoly,
}

impl RatFuncQ {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = QPoly::gcd_primitive(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lead().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFuncQ { num, den }
    }

    pub fn zero() -> Self {
        RatFuncQ {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    /// The formal parameter itself.
    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFuncQ {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(QPoly::constant(BigInt::from(v)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            QPoly::constant(r.numer().clone()),
            QPoly::constant(r.denom().clone()),
        )
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value does not depend on q.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value of a constant; `None` if q occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_default();
        Some(BigRational::new(n, self.den.coeffs()[0].clone()))
    }

    /// Substitutes `q = q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if Zero::is_zero(&d) {
            return Err(Error::PoleAtQ0(q0.clone()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Substitutes the rational function `by` for q.
    pub fn compose(&self, by: &RatFuncQ) -> RatFuncQ {
        let horner = |p: &QPoly| {
            let mut acc = RatFuncQ::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc
                    .mul(by)
                    .add(&RatFuncQ::from_poly(QPoly::constant(c.clone())));
            }
            acc
        };
        horner(&self.num).div(&horner(&self.den))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFuncQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl FromStr for RatFuncQ {
    type Err = Error;

    /// Accepts `(<num>)/(<den>)` or a bare `(<num>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational function {s:?}"));
        let inner = |t: &str| -> Result<QPoly> {
            t.strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(bad)?
                .parse()
        };
        let (num, den) = match s.find(")/(") {
            Some(i) => (inner(&s[..=i])?, inner(&s[i + 2..])?),
            None => (inner(s)?, QPoly::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Self::new(num, den))
    }
}

impl Serialize for RatFuncQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RatFuncQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Field for RatFuncQ {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        RatFuncQ::zero()
    }
    fn one(_: &()) -> Self {
        RatFuncQ::one()
    }
    fn ctx(&self) {}
    fn from_rational(r: &BigRational, _: &()) -> Self {
        RatFuncQ::from_rational(r)
    }
    fn from_bigint(v: &BigInt, _: &()) -> Self {
        RatFuncQ::from_poly(QPoly::constant(v.clone()))
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn inv(&self) -> Self {
        RatFuncQ::inv(self)
    }

    fn echelon(rows: Vec<Vec<Self>>, order: &[usize], _: &()) -> Echelon<Self> {
        fraction_free_echelon(rows, order)
    }
}

impl Scalar for RatFuncQ {
    fn to_ratfunc(&self) -> RatFuncQ {
        self.clone()
    }
}

/// Clears denominators of a row, returning a primitive row over Z[q].
fn integral_row(row: &[RatFuncQ]) -> Vec<QPoly> {
    let mut lcm = QPoly::one();
    for x in row {
        if !x.den.is_one() {
            let g = QPoly::gcd(&lcm, &x.den);
            lcm = lcm.mul(&x.den.div_exact(&g));
        }
    }
    let mut out: Vec<QPoly> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                QPoly::zero()
            } else {
                x.num.mul(&lcm.div_exact(&x.den))
            }
        })
        .collect();
    strip_content(&mut out);
    out
}

/// Divides a row by the gcd in Z[q] of its entries.
fn strip_content(row: &mut [QPoly]) {
    let mut g = QPoly::zero();
    let mut int_content = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        int_content = int_content.gcd(&x.content());
        if !g.is_one() {
            g = QPoly::gcd_primitive(&g, x);
        }
        if g.is_one() && int_content.is_one() {
            return;
        }
    }
    if int_content.is_zero() {
        return;
    }
    let g = g.scale(&int_content);
    if g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g);
        }
    }
}

/// `target <- a * target - b * pivot`, with `a`, `b` the cofactors of the two
/// column entries so that the column entry of `target` cancels.
fn eliminate(target: &mut [QPoly], pivot: &[QPoly], col: usize) {
    let p = &pivot[col];
    let t = &target[col];
    let g = QPoly::gcd(p, t);
    let a = p.div_exact(&g);
    let b = t.div_exact(&g);
    for (x, y) in target.iter_mut().zip(pivot) {
        let scaled = if x.is_zero() { QPoly::zero() } else { x.mul(&a) };
        *x = if y.is_zero() {
            scaled
        } else {
            scaled.sub(&y.mul(&b))
        };
    }
    debug_assert!(target[col].is_zero());
    strip_content(target);
}

/// Fraction-free elimination over Z[q] with content stripping after every
/// row update, followed by back substitution and a final division by the
/// pivots.
pub(crate) fn fraction_free_echelon(rows: Vec<Vec<RatFuncQ>>, order: &[usize]) -> Echelon<RatFuncQ> {
    let mut m: Vec<Vec<QPoly>> = rows
        .iter()
        .map(|r| integral_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for &c in order {
        if rank == m.len() {
            break;
        }
        let Some(found) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if !row[c].is_zero() {
                eliminate(row, pivot_row, c);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    for k in (0..rank).rev() {
        let c = pivots[k];
        let (head, tail) = m.split_at_mut(k);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if !row[c].is_zero() {
                eliminate(row, pivot_row, c);
            }
        }
    }
    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter()
                .map(|x| {
                    if x.is_zero() {
                        RatFuncQ::zero()
                    } else {
                        RatFuncQ::new(x, p.clone())
                    }
                })
                .collect()
        })
        .collect();
    Echelon { rows, pivots }
}
