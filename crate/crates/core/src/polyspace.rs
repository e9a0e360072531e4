//! Multigraded polynomials in an `l x n` matrix of variables `x_ij`.
//!
//! Row `i` is the i-th set of variables, column `j` collects the `l`
//! variables attached to the j-th coordinate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{Field, RatFuncQ};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Shape {
    pub l: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if l == 0 || n == 0 {
            return Err(Error::InvalidQuery(format!("shape needs l, n >= 1, got ({l}, {n})")));
        }
        Ok(Shape { l, n })
    }
}

/// A vector of row degrees. Ordered by total degree first, then
/// lexicographically, which is the order every graded scan follows.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(l: usize) -> Self {
        MultiDegree(vec![0; l])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `None` if some entry would become negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    pub fn scale(&self, r: u32) -> Self {
        MultiDegree(self.0.iter().map(|d| d * r).collect())
    }

    /// `d!` = product of the entrywise factorials.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&d| factorial(d)).product()
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// All multidegrees in `N^l` with total degree at most `max_total`, in graded order.
pub fn multidegrees_up_to(l: usize, max_total: u32) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        out.extend(compositions(total, l).into_iter().rev().map(MultiDegree));
    }
    out
}

/// Weak compositions of `total` into `parts` parts, in descending
/// lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A monomial `x^A` with `A` an `l x n` exponent matrix stored row-major.
///
/// Monomials compare in the global monomial order: descending lexicographic
/// order of the flattened exponents, so that `x^2 < xy < y^2` and the
/// variable `x_11` comes first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    shape: Shape,
    exps: Vec<u32>,
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exps
            .cmp(&self.exps)
            .then_with(|| self.shape.cmp(&other.shape))
    }
}

impl Monomial {
    pub fn new(shape: Shape, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), shape.l * shape.n, "exponent matrix does not match shape");
        Monomial { shape, exps }
    }

    pub fn one(shape: Shape) -> Self {
        Monomial::new(shape, vec![0; shape.l * shape.n])
    }

    /// Builds a monomial from its rows.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let shape = Shape {
            l: rows.len(),
            n: rows[0].len(),
        };
        Monomial::new(shape, rows.concat())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.exps[i * self.shape.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.exps.chunks(self.shape.n).map(<[u32]>::to_vec).collect()
    }

    /// Total degree of column `j`, i.e. the eigenvalue of its Euler operator.
    pub fn column_degree(&self, j: usize) -> u32 {
        (0..self.shape.l).map(|i| self.get(i, j)).sum()
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree(self.exps.chunks(self.shape.n).map(|r| r.iter().sum()).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.shape, other.shape);
        Monomial {
            shape: self.shape,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn map_exps(&self, f: impl Fn(u32) -> u32) -> Monomial {
        Monomial {
            shape: self.shape,
            exps: self.exps.iter().map(|&e| f(e)).collect(),
        }
    }

    /// Product of the factorials of all exponents.
    pub fn factorial(&self) -> BigInt {
        self.exps.iter().map(|&e| factorial(e)).product()
    }
}

fn var_name(shape: Shape, i: usize, j: usize) -> String {
    if shape.l == 1 && shape.n <= 3 {
        ["x", "y", "z"][j].to_string()
    } else {
        format!("x{}{}", i + 1, j + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.shape.l {
            for j in 0..self.shape.n {
                let e = self.get(i, j);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&var_name(self.shape, i, j))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of multidegree `d` in the global monomial order.
/// There are `prod_i C(d_i + n - 1, n - 1)` of them.
pub fn monomials_of_multidegree(shape: Shape, d: &MultiDegree) -> Vec<Monomial> {
    assert_eq!(d.len(), shape.l, "multidegree length must equal l");
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for &di in &d.0 {
        let rows = compositions(di, shape.n);
        acc = acc
            .iter()
            .flat_map(|prefix| {
                rows.iter().map(move |r| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(r);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(|e| Monomial::new(shape, e)).collect()
}

/// Largest `k` with `e_n^k` dividing the monomial: the smallest exponent.
pub fn en_valuation(mono: &Monomial) -> Result<u32> {
    if mono.shape.l != 1 {
        return Err(Error::NotSingleSet(mono.shape.l));
    }
    Ok(*mono.exps.iter().min().unwrap())
}

/// A polynomial with coefficients in `F`, stored without zero terms.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<F> {
    shape: Shape,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(shape: Shape) -> Self {
        MPoly {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(shape);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(mono: Monomial, c: F) -> Self {
        Self::from_terms(mono.shape, [(mono, c)])
    }

    pub fn constant(shape: Shape, c: F) -> Self {
        Self::monomial(Monomial::one(shape), c)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the global monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        assert_eq!(m.shape, self.shape, "monomial shape mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = old.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(F::neg_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.shape);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x.mul_ref(y));
            }
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(self.shape, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// The common multidegree of all terms, if the polynomial is homogeneous
    /// and nonzero.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(Monomial::multidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    /// Coefficient vector on the given monomial list; `None` if some term
    /// falls outside the list.
    pub fn coords(&self, basis: &[Monomial], index: &BTreeMap<Monomial, usize>) -> Option<Vec<F>>
    where
        F::Ctx: Default,
    {
        let mut v = vec![F::zero(&F::Ctx::default()); basis.len()];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }
}

impl<F: Field> MPoly<F>
where
    F::Ctx: Default,
{
    pub fn from_coords(shape: Shape, basis: &[Monomial], coords: &[F]) -> Self {
        Self::from_terms(shape, basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

impl<F: Field + fmt::Display> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The algebra morphism x^A -> x^(rA).
pub fn inflate<F: Field>(f: &MPoly<F>, r: u32) -> MPoly<F> {
    assert!(r >= 1);
    MPoly::from_terms(f.shape, f.terms.iter().map(|(m, c)| (m.map_exps(|e| e * r), c.clone())))
}

/// The linear map on divided powers x^(A)/A! -> x^(rA)/(rA)!, i.e.
/// x^A -> (A! / (rA)!) x^(rA).
pub fn inflate_dual<F: Field>(f: &MPoly<F>, r: u32) -> MPoly<F> {
    assert!(r >= 1);
    MPoly::from_terms(
        f.shape,
        f.terms.iter().map(|(m, c)| {
            let big = m.map_exps(|e| e * r);
            let ratio = BigRational::new(m.factorial(), big.factorial());
            let factor = if ratio.is_one() {
                c.clone()
            } else {
                c.mul_ref(&F::from_rational(&ratio, &c.ctx()))
            };
            (big, factor)
        }),
    )
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<Vec<u32>>,
    coef: RatFuncQ,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    l: usize,
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly<RatFuncQ> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson {
            l: self.shape.l,
            n: self.shape.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.rows(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly<RatFuncQ> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MPolyJson::deserialize(deserializer)?;
        let shape = Shape::new(raw.l, raw.n).map_err(D::Error::custom)?;
        let mut p = MPoly::zero(shape);
        for t in raw.terms {
            if t.exp.len() != shape.l || t.exp.iter().any(|r| r.len() != shape.n) {
                return Err(D::Error::custom("exponent matrix does not match (l, n)"));
            }
            p.add_term(Monomial::new(shape, t.exp.concat()), t.coef);
        }
        Ok(p)
    }
}
