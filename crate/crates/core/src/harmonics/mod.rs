//! Graded joint kernels of the deformed operators: the q-harmonic
//! polynomials of G(m,p,n) in `l` sets of variables.

mod checks;
mod closed_form;
mod layers;
mod series;
mod singular;

pub use checks::{
    check_conjecture_e, check_inflation, check_main_conjecture, check_n2_closed_form, dim_inequality_probe, ENUMERATION_LIMIT,
    inflation_intertwining, Report, Verdict,
};
pub use closed_form::{closed_form_n2, is_dihedral_singular, is_n2_singular};
pub use layers::{eps_shift_identity, layer_decomposition, layer_index, EpsMapCheck, IdentityCheck, LayerDecomposition};
pub use series::{format_series, format_univariate, group_product_formula, hbasis_expression, hilbert_product_formula, HExpansion};
pub use singular::{singular_scan, SingularScan};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{nullspace, ExactMatrix, RatFuncQ};
use crate::groups::GroupSpec;
use crate::operators::{apply_op, operator_matrix, OpSpec};
use crate::polyspace::{monomials_of_multidegree, multidegrees_up_to, MPoly, Monomial, MultiDegree, Shape};

/// How the parameter q is treated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QMode {
    /// q transcendental: work in Q(q).
    Formal,
    /// q replaced by an exact rational before any matrix is built.
    Rational(BigRational),
}

impl QMode {
    pub fn param(&self) -> RatFuncQ {
        match self {
            QMode::Formal => RatFuncQ::q(),
            QMode::Rational(r) => RatFuncQ::from_rational(r),
        }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        QMode::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        QMode::Rational(BigRational::zero())
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Formal => f.write_str("formal"),
            QMode::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for QMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "formal" {
            return Ok(QMode::Formal);
        }
        let bad = || Error::Parse(format!("expected 'formal' or A/B, got {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.parse::<BigInt>().map_err(|_| bad())?, d.parse::<BigInt>().map_err(|_| bad())?),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(QMode::Rational(BigRational::new(n, d)))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DegreeBound {
    /// All multidegrees with total degree at most this value.
    Total(u32),
    /// All multidegrees bounded entrywise.
    PerAxis(Vec<u32>),
}

/// Top degree of the l = 1 harmonics: the generator degrees are `km`
/// (k < n) and `nm/p`, and the top degree is the sum of (degree - 1).
pub fn reference_top_degree(group: &GroupSpec) -> u32 {
    let m = group.m;
    let n = group.n as u32;
    (1..n).map(|k| k * m - 1).sum::<u32>() + n * m / group.p - 1
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HarmonicQuery {
    pub group: GroupSpec,
    pub l: usize,
    pub qmode: QMode,
    pub bound: DegreeBound,
}

impl HarmonicQuery {
    pub fn new(group: GroupSpec, l: usize, qmode: QMode, bound: DegreeBound) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidQuery("need at least one set of variables".into()));
        }
        if group.p > 1 && l > 1 {
            return Err(Error::InvalidQuery(format!(
                "{group} with p > 1 is only defined for one set of variables"
            )));
        }
        if let DegreeBound::PerAxis(b) = &bound {
            if b.len() != l {
                return Err(Error::InvalidQuery(format!("per-axis bound needs {l} entries")));
            }
        }
        Ok(HarmonicQuery { group, l, qmode, bound })
    }

    /// Total-degree bound at the reference top degree.
    pub fn with_default_bound(group: GroupSpec, l: usize, qmode: QMode) -> Result<Self> {
        let top = reference_top_degree(&group);
        Self::new(group, l, qmode, DegreeBound::Total(top))
    }

    pub fn shape(&self) -> Shape {
        Shape {
            l: self.l,
            n: self.group.n,
        }
    }

    /// Every multidegree inside the bound, in graded order.
    pub fn multidegrees(&self) -> Vec<MultiDegree> {
        match &self.bound {
            DegreeBound::Total(t) => multidegrees_up_to(self.l, *t),
            DegreeBound::PerAxis(b) => multidegrees_up_to(self.l, b.iter().sum())
                .into_iter()
                .filter(|d| d.0.iter().zip(b).all(|(x, y)| x <= y))
                .collect(),
        }
    }

    pub fn with_qmode(&self, qmode: QMode) -> Self {
        HarmonicQuery {
            qmode,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bound = match &self.bound {
            DegreeBound::Total(t) => json!({ "total": t }),
            DegreeBound::PerAxis(b) => json!({ "per_axis": b }),
        };
        json!({
            "group": self.group,
            "l": self.l,
            "q": self.qmode.to_string(),
            "degree_bound": bound,
        })
    }
}

/// `D_{q,d}` for every `d` with `|d|` in `{m, 2m}`, in graded order, then
/// `eps^(m/p)` when `p > 1`.
///
/// At `q = 0` the commutator of `D_m` and `D_2m` vanishes and no longer
/// produces the higher operators, so every `|d| = km` with `k <= n` is used.
pub fn defining_ops(query: &HarmonicQuery) -> Vec<OpSpec> {
    ops_for(&query.group, query.l, &query.qmode.param())
}

pub(crate) fn ops_for(group: &GroupSpec, l: usize, q: &RatFuncQ) -> Vec<OpSpec> {
    let m = group.m;
    let top = if q.is_zero() { group.n as u32 } else { 2 };
    let mut ops: Vec<OpSpec> = multidegrees_up_to(l, top * m)
        .into_iter()
        .filter(|d| d.total() % m == 0 && (m..=top * m).contains(&d.total()))
        .map(OpSpec::D)
        .collect();
    if group.p > 1 {
        ops.push(OpSpec::EpsPower(m / group.p));
    }
    ops
}

/// The stacked matrix of all operators on the `d` component, restricted to
/// the given source columns.
fn stacked_matrix(ops: &[OpSpec], shape: Shape, d: &MultiDegree, q: &RatFuncQ, columns: Option<&[usize]>) -> ExactMatrix<RatFuncQ> {
    let ncols = columns.map_or_else(|| monomials_of_multidegree(shape, d).len(), <[usize]>::len);
    let mut acc = ExactMatrix::zeros(0, ncols, ());
    for op in ops {
        let Ok(mat) = operator_matrix(op, shape, d, q) else {
            continue;
        };
        let mat = match columns {
            None => mat,
            Some(cols) => {
                let rows = (0..mat.rows())
                    .map(|i| cols.iter().map(|&c| mat.get(i, c).clone()).collect())
                    .collect();
                ExactMatrix::from_rows(rows, cols.len(), ())
            }
        };
        acc = acc.vstack(&mat);
    }
    acc
}

/// Reduced-echelon basis of the joint kernel of `ops` on the `d` component,
/// optionally restricted to the monomials accepted by `keep`.
pub(crate) fn joint_kernel(
    ops: &[OpSpec],
    shape: Shape,
    d: &MultiDegree,
    q: &RatFuncQ,
    keep: Option<&dyn Fn(&Monomial) -> bool>,
) -> Vec<MPoly<RatFuncQ>> {
    let monos = monomials_of_multidegree(shape, d);
    let selected: Option<Vec<usize>> = keep.map(|k| (0..monos.len()).filter(|&i| k(&monos[i])).collect());
    let cols: Vec<Monomial> = match &selected {
        Some(sel) => sel.iter().map(|&i| monos[i].clone()).collect(),
        None => monos.clone(),
    };
    if cols.is_empty() {
        return Vec::new();
    }
    let mat = stacked_matrix(ops, shape, d, q, selected.as_deref());
    nullspace(&mat)
        .into_iter()
        .map(|v| MPoly::from_coords(shape, &cols, &v))
        .collect()
}

/// Kernel basis of the `d` component for the group at an explicit value of q.
pub fn component_at(group: &GroupSpec, l: usize, q: &RatFuncQ, d: &MultiDegree) -> Vec<MPoly<RatFuncQ>> {
    let shape = Shape { l, n: group.n };
    joint_kernel(&ops_for(group, l, q), shape, d, q, None)
}

/// Reduced-echelon basis of the `d` component of the q-harmonics.
pub fn harmonic_component(query: &HarmonicQuery, d: &MultiDegree) -> Vec<MPoly<RatFuncQ>> {
    component_at(&query.group, query.l, &query.qmode.param(), d)
}

/// Re-applies every defining operator; true iff all images vanish.
pub fn is_harmonic(group: &GroupSpec, l: usize, q: &RatFuncQ, f: &MPoly<RatFuncQ>) -> bool {
    ops_for(group, l, q)
        .iter()
        .all(|op| apply_op(op, f, q).map(|g| g.is_zero()).unwrap_or(false))
}

#[derive(Clone, PartialEq, Debug)]
pub struct Component {
    pub degree: MultiDegree,
    pub basis: Vec<MPoly<RatFuncQ>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct HarmonicSpace {
    pub query: HarmonicQuery,
    pub components: Vec<Component>,
    /// Set when a nonzero component sits on the boundary of the scanned
    /// region somewhere other than the reference top degree, so the space
    /// may continue past the bound.
    pub truncated: bool,
}

impl HarmonicSpace {
    pub fn hilbert(&self) -> BTreeMap<MultiDegree, usize> {
        self.components.iter().map(|c| (c.degree.clone(), c.basis.len())).collect()
    }

    pub fn dim(&self, d: &MultiDegree) -> usize {
        self.component(d).map_or(0, |c| c.basis.len())
    }

    pub fn component(&self, d: &MultiDegree) -> Option<&Component> {
        self.components.iter().find(|c| &c.degree == d)
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.basis.len()).sum()
    }

    /// Coefficients of the one-variable Hilbert series (trailing zeros dropped).
    pub fn univariate_series(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for c in &self.components {
            let t = c.degree.total() as usize;
            if out.len() <= t {
                out.resize(t + 1, 0);
            }
            out[t] += c.basis.len() as u64;
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn pairs(&self) -> Vec<(MultiDegree, Vec<MPoly<RatFuncQ>>)> {
        self.components.iter().map(|c| (c.degree.clone(), c.basis.clone())).collect()
    }

    pub fn to_json(&self, hbasis: Option<&HExpansion>) -> serde_json::Value {
        let mut comps = serde_json::Map::new();
        let mut hilbert = serde_json::Map::new();
        for c in &self.components {
            comps.insert(
                c.degree.to_string(),
                json!({ "dim": c.basis.len(), "basis": c.basis }),
            );
            hilbert.insert(c.degree.to_string(), json!(c.basis.len()));
        }
        let mut out = json!({
            "query": self.query.to_json(),
            "components": comps,
            "hilbert": hilbert,
            "truncated": self.truncated,
        });
        if let Some(h) = hbasis {
            out["hbasis"] = json!(h.to_string());
        }
        out
    }
}

/// Computes every component inside the degree bound. Components are solved
/// in parallel; the result does not depend on the schedule.
pub fn harmonic_space(query: &HarmonicQuery) -> HarmonicSpace {
    let q = query.qmode.param();
    let components: Vec<Component> = query
        .multidegrees()
        .par_iter()
        .map(|d| Component {
            degree: d.clone(),
            basis: component_at(&query.group, query.l, &q, d),
        })
        .collect();
    let top = reference_top_degree(&query.group);
    let truncated = components.iter().any(|c| {
        !c.basis.is_empty()
            && match &query.bound {
                DegreeBound::Total(t) => c.degree.total() == *t && *t != top,
                DegreeBound::PerAxis(b) => c.degree.0.iter().zip(b).any(|(x, y)| x == y && *y != top),
            }
    });
    HarmonicSpace {
        query: query.clone(),
        components,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn ops_one_set() {
        let q = HarmonicQuery::with_default_bound(GroupSpec::full(3, 2), 1, QMode::Formal).unwrap();
        assert_eq!(defining_ops(&q), vec![OpSpec::D(md(&[3])), OpSpec::D(md(&[6]))]);
    }

    #[test]
    fn ops_two_sets() {
        let q = HarmonicQuery::new(GroupSpec::symmetric(3), 2, QMode::Formal, DegreeBound::Total(3)).unwrap();
        let ops = defining_ops(&q);
        assert_eq!(
            ops,
            vec![
                OpSpec::D(md(&[0, 1])),
                OpSpec::D(md(&[1, 0])),
                OpSpec::D(md(&[0, 2])),
                OpSpec::D(md(&[1, 1])),
                OpSpec::D(md(&[2, 0])),
            ]
        );
    }

    #[test]
    fn ops_subgroup() {
        let g = GroupSpec::new(4, 2, 2).unwrap();
        let q = HarmonicQuery::with_default_bound(g, 1, QMode::Formal).unwrap();
        assert_eq!(
            defining_ops(&q),
            vec![OpSpec::D(md(&[4])), OpSpec::D(md(&[8])), OpSpec::EpsPower(2)]
        );
    }

    #[test]
    fn subgroup_needs_one_set() {
        let g = GroupSpec::new(4, 2, 2).unwrap();
        assert!(HarmonicQuery::new(g, 2, QMode::Formal, DegreeBound::Total(3)).is_err());
    }

    #[test]
    fn s2_degree_one() {
        let q = HarmonicQuery::with_default_bound(GroupSpec::symmetric(2), 1, QMode::Formal).unwrap();
        let basis = harmonic_component(&q, &md(&[1]));
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].to_string(), "(1)/(1)*x + (-1)/(1)*y");
        assert_eq!(harmonic_component(&q, &md(&[0])).len(), 1);
    }

    #[test]
    fn small_monomials_are_harmonic_for_n2() {
        let g = GroupSpec::full(4, 2);
        let q = HarmonicQuery::with_default_bound(g, 1, QMode::Formal).unwrap();
        // degree 5 contains x^3 y^2 and x^2 y^3 (both exponents below m)
        let basis = harmonic_component(&q, &md(&[5]));
        let shape = q.shape();
        for (a, b) in [(3, 2), (2, 3)] {
            let mono = MPoly::monomial(Monomial::new(shape, vec![a, b]), RatFuncQ::one());
            assert!(is_harmonic(&g, 1, &RatFuncQ::q(), &mono));
        }
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn reference_degrees() {
        assert_eq!(reference_top_degree(&GroupSpec::symmetric(3)), 3);
        assert_eq!(reference_top_degree(&GroupSpec::full(3, 2)), 7);
        assert_eq!(reference_top_degree(&GroupSpec::new(4, 4, 2).unwrap()), 4);
        assert_eq!(reference_top_degree(&GroupSpec::full(4, 2)), 10);
    }

    #[test]
    fn qmode_parsing() {
        assert_eq!("formal".parse::<QMode>().unwrap(), QMode::Formal);
        assert_eq!("-1/2".parse::<QMode>().unwrap(), QMode::rational(-1, 2));
        assert_eq!("3".parse::<QMode>().unwrap(), QMode::rational(3, 1));
        assert!("1/0".parse::<QMode>().is_err());
        assert_eq!(QMode::rational(2, -4).to_string(), "-1/2");
    }
}
