//! The groups G(m,p,n) as monomial matrices acting diagonally on the
//! columns of the variable matrix.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{CycElem, Field, RatFuncQ, Scalar};
use crate::polyspace::{MPoly, Monomial, MultiDegree};

/// G(m,p,n): monomial n x n matrices with m-th root of unity entries whose
/// determinant raised to m/p is 1. `p` must divide `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GroupSpec {
    pub m: u32,
    pub p: u32,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(m: u32, p: u32, n: usize) -> Result<Self> {
        if m == 0 || p == 0 || n == 0 {
            return Err(Error::InvalidQuery(format!("G({m},{p},{n}) needs m, p, n >= 1")));
        }
        if m % p != 0 {
            return Err(Error::InvalidQuery(format!("p = {p} does not divide m = {m}")));
        }
        Ok(GroupSpec { m, p, n })
    }

    /// G(m,1,n) = G(m,n).
    pub fn full(m: u32, n: usize) -> Self {
        GroupSpec { m, p: 1, n }
    }

    pub fn symmetric(n: usize) -> Self {
        GroupSpec { m: 1, p: 1, n }
    }

    /// `m^n n! / p`
    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        (self.m as u128).pow(self.n as u32) * fact / self.p as u128
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m, self.p, self.n)
    }
}

/// `(sigma, c)` acting by `x_ij -> zeta^(c_j) x_(i, sigma(j))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    m: u32,
    perm: Vec<usize>,
    zeta_exps: Vec<u32>,
}

impl GroupElement {
    pub fn new(m: u32, perm: Vec<usize>, zeta_exps: Vec<u32>) -> Self {
        assert_eq!(perm.len(), zeta_exps.len());
        assert!(perm.iter().sorted().copied().eq(0..perm.len()), "not a permutation");
        let zeta_exps = zeta_exps.into_iter().map(|c| c % m).collect();
        GroupElement { m, perm, zeta_exps }
    }

    pub fn identity(m: u32, n: usize) -> Self {
        GroupElement {
            m,
            perm: (0..n).collect(),
            zeta_exps: vec![0; n],
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn zeta_exps(&self) -> &[u32] {
        &self.zeta_exps
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.zeta_exps.iter().all(|&c| c == 0)
    }

    pub fn belongs_to(&self, spec: &GroupSpec) -> bool {
        self.m == spec.m
            && self.perm.len() == spec.n
            && self.zeta_exps.iter().sum::<u32>() % spec.p == 0
    }

    /// The element acting as `self` after `other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.m, other.m);
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let zeta_exps = (0..self.perm.len())
            .map(|j| (other.zeta_exps[j] + self.zeta_exps[other.perm[j]]) % self.m)
            .collect();
        GroupElement {
            m: self.m,
            perm,
            zeta_exps,
        }
    }

    /// `(perm in one-line notation | zeta exponents)`, 1-based, e.g. `(2 1|0 1)`.
    pub fn label(&self) -> String {
        format!(
            "({}|{})",
            self.perm.iter().map(|p| p + 1).join(" "),
            self.zeta_exps.iter().join(" ")
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Every element of the group, identity first; permutations in
/// lexicographic order, then exponent vectors in lexicographic order.
pub fn enumerate(spec: &GroupSpec, limit: u128) -> Result<Vec<GroupElement>> {
    let order = spec.order();
    if order > limit {
        return Err(Error::TooLarge { order, limit });
    }
    let n = spec.n;
    let mut out = Vec::with_capacity(order as usize);
    for perm in (0..n).permutations(n) {
        for zeta in (0..n).map(|_| 0..spec.m).multi_cartesian_product() {
            if zeta.iter().sum::<u32>() % spec.p == 0 {
                out.push(GroupElement {
                    m: spec.m,
                    perm: perm.clone(),
                    zeta_exps: zeta,
                });
            }
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

fn act_on_monomial(w: &GroupElement, mono: &Monomial) -> (Monomial, u64) {
    let shape = mono.shape();
    let mut exps = vec![0; shape.l * shape.n];
    let mut power = 0u64;
    for j in 0..shape.n {
        let target = w.perm[j];
        for i in 0..shape.l {
            exps[i * shape.n + target] = mono.get(i, j);
        }
        power += w.zeta_exps[j] as u64 * mono.column_degree(j) as u64;
    }
    (Monomial::new(shape, exps), power)
}

/// `w . f`, with coefficients in Q(q)(zeta_m).
pub fn act<F: Scalar>(w: &GroupElement, f: &MPoly<F>) -> Result<MPoly<CycElem>> {
    let n = f.shape().n;
    if n != w.perm.len() {
        return Err(Error::ShapeMismatch {
            expected: w.perm.len(),
            got: n,
        });
    }
    let mut out = MPoly::zero(f.shape());
    for (mono, c) in f.terms() {
        let (image, power) = act_on_monomial(w, mono);
        out.add_term(image, CycElem::zeta_pow(w.m, power).scale(&c.to_ratfunc()));
    }
    Ok(out)
}

/// Lifts a polynomial with scalar coefficients into Q(q)(zeta_m).
pub fn embed<F: Scalar>(f: &MPoly<F>, m: u32) -> MPoly<CycElem> {
    f.map_coeffs(|c| CycElem::from_scalar(m, c.to_ratfunc()))
}

/// Trace of `w` on the span of `basis` (homogeneous of multidegree `degree`).
///
/// The basis is brought to reduced echelon form first; the coordinates of
/// `w . b` are then read off at the pivot monomials and the residual is
/// checked to vanish.
pub fn graded_trace<F: Scalar>(w: &GroupElement, basis: &[MPoly<F>], degree: &MultiDegree) -> Result<CycElem> {
    let reduced = echelon_basis(basis);
    let mut trace = CycElem::zero(w.m);
    for (pivot, b) in &reduced {
        let image = act(w, b)?;
        let mut residual = image.clone();
        for (p2, b2) in &reduced {
            if let Some(c) = image.coeff(p2) {
                residual = residual.sub(&embed(b2, w.m).scale(c));
            }
        }
        if !residual.is_zero() {
            return Err(Error::NotStable {
                element: w.label(),
                degree: degree.clone(),
            });
        }
        if let Some(c) = image.coeff(pivot) {
            trace = trace.add_ref(c);
        }
    }
    Ok(trace)
}

/// Reduced echelon form of a list of polynomials over Q(q), paired with the
/// pivot monomial of each row.
pub fn echelon_basis<F: Scalar>(basis: &[MPoly<F>]) -> Vec<(Monomial, MPoly<RatFuncQ>)> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let shape = first.shape();
    let monos: Vec<Monomial> = basis
        .iter()
        .flat_map(|b| b.monomials().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<RatFuncQ>> = basis
        .iter()
        .map(|b| b.map_coeffs(|c| c.to_ratfunc()).coords(&monos, &index).unwrap())
        .collect();
    let order: Vec<usize> = (0..monos.len()).collect();
    let ech = RatFuncQ::echelon(rows, &order, &());
    ech.rows
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| (monos[p].clone(), MPoly::from_coords(shape, &monos, row)))
        .collect()
}

/// Per-degree traces of every listed element.
pub type GradedCharacter = Vec<(MultiDegree, Vec<CycElem>)>;

pub fn graded_character<F: Scalar>(
    elements: &[GroupElement],
    components: &[(MultiDegree, Vec<MPoly<F>>)],
) -> Result<GradedCharacter> {
    use rayon::prelude::*;
    components
        .par_iter()
        .map(|(d, basis)| {
            let traces = elements
                .iter()
                .map(|w| graded_trace(w, basis, d))
                .collect::<Result<Vec<_>>>()?;
            Ok((d.clone(), traces))
        })
        .collect()
}

/// JSON form: per multidegree, element label -> coordinate strings.
pub fn character_json(elements: &[GroupElement], chi: &GradedCharacter) -> serde_json::Value {
    let mut out = serde_json::Map::new();
    for (d, traces) in chi {
        let mut per = serde_json::Map::new();
        for (w, t) in elements.iter().zip(traces) {
            let coords: Vec<String> = t.coords().iter().map(ToString::to_string).collect();
            per.insert(w.label(), serde_json::json!(coords));
        }
        out.insert(d.to_string(), serde_json::Value::Object(per));
    }
    serde_json::Value::Object(out)
}
