//! The cyclotomic extension Q(q)(zeta_m) in the power basis of zeta_m.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::qpoly::QPoly;
use super::RatFuncQ;
use crate::error::{Error, Result};

/// The m-th cyclotomic polynomial, ascending coefficients (monic).
pub fn cyclotomic_poly(m: u32) -> QPoly {
    assert!(m >= 1);
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut p = QPoly::from_coeffs(coeffs);
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&cyclotomic_poly(d));
        }
    }
    p
}

/// Euler's totient, the degree of Phi_m.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// An element of Q(q)(zeta_m), stored as coordinates on 1, zeta, ..., zeta^(phi(m)-1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycElem {
    m: u32,
    coords: Vec<RatFuncQ>,
}

impl CycElem {
    pub fn new(m: u32, coords: Vec<RatFuncQ>) -> Self {
        assert_eq!(coords.len(), totient(m), "coordinate count must be phi(m)");
        CycElem { m, coords }
    }

    pub fn zero(m: u32) -> Self {
        CycElem {
            m,
            coords: vec![RatFuncQ::zero(); totient(m)],
        }
    }

    pub fn from_scalar(m: u32, c: RatFuncQ) -> Self {
        let mut z = Self::zero(m);
        z.coords[0] = c;
        z
    }

    pub fn one(m: u32) -> Self {
        Self::from_scalar(m, RatFuncQ::one())
    }

    /// zeta_m^k, reduced.
    pub fn zeta_pow(m: u32, k: u64) -> Self {
        let k = (k % m as u64) as usize;
        let mut raw = vec![RatFuncQ::zero(); k + 1];
        raw[k] = RatFuncQ::one();
        Self::reduce(m, raw)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[RatFuncQ] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RatFuncQ::is_zero)
    }

    /// The coordinate on 1 when all others vanish.
    pub fn as_scalar(&self) -> Option<&RatFuncQ> {
        self.coords[1..]
            .iter()
            .all(RatFuncQ::is_zero)
            .then(|| &self.coords[0])
    }

    fn reduce(m: u32, mut raw: Vec<RatFuncQ>) -> Self {
        let phi = cyclotomic_poly(m);
        let deg = phi.degree().unwrap();
        let phi: Vec<RatFuncQ> = phi
            .coeffs()
            .iter()
            .map(|c| RatFuncQ::from_poly(QPoly::constant(c.clone())))
            .collect();
        // zeta^k = -sum_{i<deg} phi_i zeta^(k-deg+i) for k >= deg
        for k in (deg..raw.len()).rev() {
            let c = std::mem::replace(&mut raw[k], RatFuncQ::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..deg {
                if !phi[i].is_zero() {
                    raw[k - deg + i] = raw[k - deg + i].sub(&c.mul(&phi[i]));
                }
            }
        }
        raw.resize(deg, RatFuncQ::zero());
        CycElem { m, coords: raw }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.m != rhs.m {
            return Err(Error::OrderMismatch(self.m, rhs.m));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(CycElem {
            m: self.m,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let n = self.coords.len();
        let mut raw = vec![RatFuncQ::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = raw[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(Self::reduce(self.m, raw))
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        CycElem {
            m: self.m,
            coords: self.coords.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// The image under zeta -> zeta^k (an automorphism when gcd(k, m) = 1).
    pub fn galois_conjugate(&self, k: u32) -> Self {
        let mut acc = Self::zero(self.m);
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let t = Self::zeta_pow(self.m, i as u64 * k as u64).scale(c);
                acc = acc.try_add(&t).unwrap();
            }
        }
        acc
    }

    fn units(m: u32) -> impl Iterator<Item = u32> {
        (1..=m.max(1)).filter(move |k| k.gcd(&m) == 1)
    }

    /// Product of all Galois conjugates; lies in Q(q).
    pub fn norm(&self) -> RatFuncQ {
        let p = Self::units(self.m).fold(Self::one(self.m), |acc, k| {
            acc.try_mul(&self.galois_conjugate(k)).unwrap()
        });
        p.as_scalar().expect("norm must be rational").clone()
    }

    /// Inverse via the norm: a^-1 = (product of the other conjugates) / N(a).
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let others = Self::units(self.m).filter(|&k| k != 1).fold(Self::one(self.m), |acc, k| {
            acc.try_mul(&self.galois_conjugate(k)).unwrap()
        });
        let n = self.try_mul(&others).unwrap();
        others.scale(&n.as_scalar().expect("norm must be rational").inv())
    }
}

/// Product in Q(q)(zeta_m); both factors must have the same m.
pub fn cyc_mul(a: &CycElem, b: &CycElem) -> Result<CycElem> {
    a.try_mul(b)
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Field for CycElem {
    type Ctx = u32;

    fn zero(m: &u32) -> Self {
        CycElem::zero(*m)
    }
    fn one(m: &u32) -> Self {
        CycElem::one(*m)
    }
    fn ctx(&self) -> u32 {
        self.m
    }
    fn from_rational(r: &BigRational, m: &u32) -> Self {
        CycElem::from_scalar(*m, RatFuncQ::from_rational(r))
    }
    fn is_zero(&self) -> bool {
        CycElem::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("order mismatch")
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_add(&rhs.neg_ref()).expect("order mismatch")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("order mismatch")
    }
    fn neg_ref(&self) -> Self {
        CycElem {
            m: self.m,
            coords: self.coords.iter().map(RatFuncQ::neg).collect(),
        }
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(e: &CycElem) -> Vec<String> {
        e.coords().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), QPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), QPoly::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), QPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), QPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), QPoly::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn i_squared() {
        let z = CycElem::zeta(4);
        assert_eq!(cyc_mul(&z, &z).unwrap(), CycElem::from_scalar(4, RatFuncQ::from_int(-1)));
    }

    #[test]
    fn cube_root_of_unity() {
        let z = CycElem::zeta(3);
        let z2 = CycElem::zeta_pow(3, 2);
        assert_eq!(cyc_mul(&z, &z2).unwrap(), CycElem::one(3));
        // zeta^2 = -1 - zeta
        assert_eq!(ints(&z2), vec!["(-1)/(1)", "(-1)/(1)"]);
    }

    #[test]
    fn minus_one() {
        let z = CycElem::zeta(2);
        assert_eq!(z, CycElem::from_scalar(2, RatFuncQ::from_int(-1)));
        assert_eq!(cyc_mul(&z, &z).unwrap(), CycElem::one(2));
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(
            cyc_mul(&CycElem::one(3), &CycElem::one(4)),
            Err(Error::OrderMismatch(3, 4))
        );
    }

    #[test]
    fn inverse_in_q_zeta() {
        let a = CycElem::new(5, vec![RatFuncQ::q(), RatFuncQ::from_int(1), RatFuncQ::zero(), RatFuncQ::from_int(-2)]);
        assert_eq!(a.try_mul(&a.inverse()).unwrap(), CycElem::one(5));
    }
}
