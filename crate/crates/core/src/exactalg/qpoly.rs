//! Dense integer polynomials in the formal parameter `q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of Z[q] stored densely, `coeffs[i]` being the coefficient of `q^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        QPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    fn with_positive_lead(self) -> Self {
        if self.lead().is_some_and(|l| l.is_negative()) {
            self.neg()
        } else {
            self
        }
    }

    /// Remainder of `lc(b)^k * self` by `b` for a suitable `k`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            r = r.scale(&lb).sub(&b.shift(dr - db).scale(&lr));
        }
        r
    }

    /// Exact quotient `self / b` in Z[q]; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        if b.is_one() {
            return self.clone();
        }
        let lb = b.lead().unwrap();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            assert!(dr >= db, "inexact polynomial division");
            let (c, rem) = r.lead().unwrap().div_rem(lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            r = r.sub(&b.shift(dr - db).scale(&c));
            quot[dr - db] = c;
        }
        Self::from_coeffs(quot)
    }

    /// Gcd over Q, returned primitive with positive leading coefficient.
    /// The gcd of two zero polynomials is zero.
    pub fn gcd_primitive(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive_part().with_positive_lead();
        }
        if b.is_zero() {
            return a.primitive_part().with_positive_lead();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.with_positive_lead()
    }

    /// Gcd in Z[q]: integer content gcd times the primitive gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let c = a.content().gcd(&b.content());
        Self::gcd_primitive(a, b).scale(&c)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for QPoly {
    /// Ascending powers, e.g. `1-2*q+q^3`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut terms = Vec::new();
        for i in 1..=bytes.len() {
            let prev = bytes[i - 1];
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(prev, b'^' | b'+' | b'-')) {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        for term in terms {
            let mut sign = 1;
            let mut body = term;
            while let Some(rest) = body.strip_prefix('+').or_else(|| body.strip_prefix('-')) {
                if body.starts_with('-') {
                    sign = -sign;
                }
                body = rest;
            }
            let bad = || Error::Parse(format!("bad term {term:?}"));
            let (coef, power) = if let Some(idx) = body.find('q') {
                let c = match body[..idx].strip_suffix('*') {
                    Some(c) => c.parse::<BigInt>().map_err(|_| bad())?,
                    None if idx == 0 => BigInt::one(),
                    None => return Err(bad()),
                };
                let rest = &body[idx + 1..];
                let p = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(bad)?
                        .parse::<usize>()
                        .map_err(|_| bad())?
                };
                (c, p)
            } else {
                (body.parse::<BigInt>().map_err(|_| bad())?, 0)
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += coef * sign;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}
