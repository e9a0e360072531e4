//! The deformed polarized power sums and their dual differential operators,
//! acting monomial by monomial through closed coefficient formulas.
//!
//! For a monomial `x^A` and `d` in `N^l`:
//!
//! ```text
//! D_{q,d} x^A = sum_j [prod_i (A_ij)_(d_i)] (1 + q(|A_j| - |d|)) x^(A - d e_j)
//! P_{q,d} x^A = sum_j (1 + q|A_j|) x^(A + d e_j)
//! ```
//!
//! where `(a)_(k)` is the falling factorial and `|A_j|` the degree of column `j`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Field, RatFuncQ};
use crate::polyspace::{monomials_of_multidegree, multidegrees_up_to, MPoly, Monomial, MultiDegree, Shape};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OpSpec {
    /// `D_{q,d}`
    D(MultiDegree),
    /// `P_{q,d}`
    P(MultiDegree),
    /// `(d_1 d_2 ... d_n)^s`, single set of variables only.
    EpsPower(u32),
}

impl std::fmt::Display for OpSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpSpec::D(d) => write!(f, "D[{d}]"),
            OpSpec::P(d) => write!(f, "P[{d}]"),
            OpSpec::EpsPower(s) => write!(f, "eps^{s}"),
        }
    }
}

/// Falling factorial `a (a-1) ... (a-k+1)`; zero when `a < k`.
pub fn falling(a: u32, k: u32) -> BigInt {
    if a < k {
        return BigInt::zero();
    }
    ((a - k + 1)..=a).map(BigInt::from).product()
}

/// `1 + q * k` in the field of `q`.
fn one_plus_q_times<F: Field>(q: &F, k: u32) -> F {
    let ctx = q.ctx();
    if k == 0 {
        return F::one(&ctx);
    }
    F::one(&ctx).add_ref(&q.mul_ref(&F::from_i64(k as i64, &ctx)))
}

/// The q-Pochhammer symbol `<d>_k = d (d-1) ... (d-k+1) (1 + q(d-k))`,
/// zero whenever `d < k`.
pub fn pochhammer_q(dval: u32, k: u32) -> RatFuncQ {
    pochhammer_at(dval, k, &RatFuncQ::q())
}

/// `<d>_k` with `q` replaced by the given value.
pub fn pochhammer_at<F: Field>(dval: u32, k: u32, q: &F) -> F {
    let f = falling(dval, k);
    if f.is_zero() {
        return F::zero(&q.ctx());
    }
    F::from_bigint(&f, &q.ctx()).mul_ref(&one_plus_q_times(q, dval - k))
}

fn check_len(shape: Shape, d: &MultiDegree) {
    assert_eq!(d.len(), shape.l, "multidegree length must equal l");
}

/// Image of a single monomial under `D_{q,d}`, as (monomial, integer factor, Euler eigenvalue).
fn d_on_monomial(m: &Monomial, d: &MultiDegree) -> Vec<(Monomial, BigInt, u32)> {
    let shape = m.shape();
    let dtot = d.total();
    let mut out = Vec::new();
    for j in 0..shape.n {
        let mut factor = BigInt::one();
        for i in 0..shape.l {
            factor *= falling(m.get(i, j), d.0[i]);
            if factor.is_zero() {
                break;
            }
        }
        if factor.is_zero() {
            continue;
        }
        let mut exps = m.exps().to_vec();
        for i in 0..shape.l {
            exps[i * shape.n + j] -= d.0[i];
        }
        out.push((Monomial::new(shape, exps), factor, m.column_degree(j) - dtot));
    }
    out
}

pub fn apply_d<F: Field>(f: &MPoly<F>, d: &MultiDegree, q: &F) -> MPoly<F> {
    check_len(f.shape(), d);
    let ctx = q.ctx();
    let mut out = MPoly::zero(f.shape());
    for (m, c) in f.terms() {
        for (image, factor, euler) in d_on_monomial(m, d) {
            let coef = F::from_bigint(&factor, &ctx).mul_ref(&one_plus_q_times(q, euler));
            out.add_term(image, c.mul_ref(&coef));
        }
    }
    out
}

pub fn apply_p<F: Field>(f: &MPoly<F>, d: &MultiDegree, q: &F) -> MPoly<F> {
    let shape = f.shape();
    check_len(shape, d);
    let mut out = MPoly::zero(shape);
    for (m, c) in f.terms() {
        for j in 0..shape.n {
            let mut exps = m.exps().to_vec();
            for i in 0..shape.l {
                exps[i * shape.n + j] += d.0[i];
            }
            let coef = one_plus_q_times(q, m.column_degree(j));
            out.add_term(Monomial::new(shape, exps), c.mul_ref(&coef));
        }
    }
    out
}

fn eps_on_monomial(m: &Monomial, s: u32) -> Option<(Monomial, BigInt)> {
    let mut factor = BigInt::one();
    for &e in m.exps() {
        factor *= falling(e, s);
        if factor.is_zero() {
            return None;
        }
    }
    Some((m.map_exps(|e| e - s), factor))
}

/// Applies `(d_1 ... d_n)^s`.
pub fn apply_eps_power<F: Field>(f: &MPoly<F>, s: u32) -> Result<MPoly<F>> {
    if f.shape().l != 1 {
        return Err(Error::NotSingleSet(f.shape().l));
    }
    let mut out = MPoly::zero(f.shape());
    for (m, c) in f.terms() {
        if let Some((image, factor)) = eps_on_monomial(m, s) {
            let ctx = c.ctx();
            out.add_term(image, c.mul_ref(&F::from_bigint(&factor, &ctx)));
        }
    }
    Ok(out)
}

/// Applies any operator; `q` is only read by `D` and `P`.
pub fn apply_op<F: Field>(spec: &OpSpec, f: &MPoly<F>, q: &F) -> Result<MPoly<F>> {
    match spec {
        OpSpec::D(d) => Ok(apply_d(f, d, q)),
        OpSpec::P(d) => Ok(apply_p(f, d, q)),
        OpSpec::EpsPower(s) => apply_eps_power(f, *s),
    }
}

/// Multidegree of the image component.
pub fn target_degree(spec: &OpSpec, shape: Shape, source: &MultiDegree) -> Result<MultiDegree> {
    let under = || Error::DegreeUnderflow {
        from: source.clone(),
    };
    match spec {
        OpSpec::D(d) => source.checked_sub(d).ok_or_else(under),
        OpSpec::P(d) => Ok(source.add(d)),
        OpSpec::EpsPower(s) => {
            if shape.l != 1 {
                return Err(Error::NotSingleSet(shape.l));
            }
            source
                .checked_sub(&MultiDegree(vec![s * shape.n as u32]))
                .ok_or_else(under)
        }
    }
}

/// Matrix of the operator from the `source` component to its image
/// component, both in the global monomial order: column `k` holds the
/// coordinates of the image of the k-th source monomial.
pub fn operator_matrix<F: Field>(
    spec: &OpSpec,
    shape: Shape,
    source: &MultiDegree,
    q: &F,
) -> Result<ExactMatrix<F>> {
    let target = target_degree(spec, shape, source)?;
    let src = monomials_of_multidegree(shape, source);
    let tgt = monomials_of_multidegree(shape, &target);
    let index: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ctx = q.ctx();
    let mut mat = ExactMatrix::zeros(tgt.len(), src.len(), ctx.clone());
    for (k, m) in src.iter().enumerate() {
        let image = apply_op(spec, &MPoly::monomial(m.clone(), F::one(&ctx)), q)?;
        for (t, c) in image.terms() {
            mat.set(index[t], k, c.clone());
        }
    }
    Ok(mat)
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketReport {
    pub d: MultiDegree,
    pub d2: MultiDegree,
    pub checked: usize,
    /// Monomials (rendered) on which the identity fails.
    pub counterexamples: Vec<String>,
}

impl BracketReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `[D_{q,d}, D_{q,d2}] = q(|d| - |d2|) D_{q,d+d2}` over Q(q) on every
/// monomial of total degree at most `maxdeg`.
pub fn bracket_check(d: &MultiDegree, d2: &MultiDegree, shape: Shape, maxdeg: u32) -> BracketReport {
    let q = RatFuncQ::q();
    let factor = q.mul(&RatFuncQ::from_int(d.total() as i64 - d2.total() as i64));
    let sum = d.add(d2);
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for deg in multidegrees_up_to(shape.l, maxdeg) {
        for m in monomials_of_multidegree(shape, &deg) {
            let f = MPoly::monomial(m.clone(), RatFuncQ::one());
            let lhs = apply_d(&apply_d(&f, d2, &q), d, &q).sub(&apply_d(&apply_d(&f, d, &q), d2, &q));
            let rhs = apply_d(&f, &sum, &q).scale(&factor);
            checked += 1;
            if lhs != rhs {
                counterexamples.push(m.to_string());
            }
        }
    }
    BracketReport {
        d: d.clone(),
        d2: d2.clone(),
        checked,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn sh(l: usize, n: usize) -> Shape {
        Shape::new(l, n).unwrap()
    }

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    fn mono(rows: &[&[u32]]) -> Monomial {
        Monomial::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn int(v: i64) -> RatFuncQ {
        RatFuncQ::from_int(v)
    }

    fn q() -> RatFuncQ {
        RatFuncQ::q()
    }

    #[test]
    fn pochhammer_examples() {
        assert!(pochhammer_q(1, 2).is_zero());
        for k in 0..6 {
            assert_eq!(pochhammer_q(k, k), RatFuncQ::from_poly(crate::exactalg::QPoly::constant(crate::polyspace::factorial(k))));
        }
        // <4>_2 = 4*3*(1+2q)
        assert_eq!(pochhammer_q(4, 2).to_string(), "(12+24*q)/(1)");
    }

    #[test]
    fn d_on_x_squared() {
        let f = MPoly::monomial(mono(&[&[2]]), int(1));
        let expected = MPoly::monomial(mono(&[&[1]]), pochhammer_q(2, 1));
        assert_eq!(apply_d(&f, &md(&[1]), &q()), expected);
        assert_eq!(expected.coeff(&mono(&[&[1]])).unwrap().to_string(), "(2+2*q)/(1)");
    }

    #[test]
    fn d_kills_constants() {
        let c = MPoly::constant(sh(2, 3), int(7));
        assert!(apply_d(&c, &md(&[1, 0]), &q()).is_zero());
    }

    #[test]
    fn d_on_two_sets() {
        // x11 x21 + x12 x22
        let f = MPoly::from_terms(
            sh(2, 2),
            [(mono(&[&[1, 0], &[1, 0]]), int(1)), (mono(&[&[0, 1], &[0, 1]]), int(1))],
        );
        let got = apply_d(&f, &md(&[1, 1]), &q());
        assert_eq!(got, MPoly::constant(sh(2, 2), int(2)));
    }

    #[test]
    fn p_examples() {
        let one = MPoly::constant(sh(1, 2), int(1));
        assert_eq!(
            apply_p(&one, &md(&[1]), &q()),
            MPoly::from_terms(sh(1, 2), [(mono(&[&[1, 0]]), int(1)), (mono(&[&[0, 1]]), int(1))])
        );
        let x = MPoly::monomial(mono(&[&[1, 0]]), int(1));
        assert_eq!(
            apply_p(&x, &md(&[1]), &q()),
            MPoly::from_terms(
                sh(1, 2),
                [(mono(&[&[2, 0]]), int(1).add(&q())), (mono(&[&[1, 1]]), int(1))]
            )
        );
        let one1 = MPoly::constant(sh(1, 1), int(1));
        assert_eq!(apply_p(&one1, &md(&[2]), &q()), MPoly::monomial(mono(&[&[2]]), int(1)));
    }

    #[test]
    fn eps_examples() {
        let f = |a, b| MPoly::monomial(mono(&[&[a, b]]), int(1));
        assert_eq!(apply_eps_power(&f(1, 1), 1).unwrap(), MPoly::constant(sh(1, 2), int(1)));
        assert!(apply_eps_power(&f(2, 0), 1).unwrap().is_zero());
        assert_eq!(
            apply_eps_power(&f(3, 2), 2).unwrap(),
            MPoly::monomial(mono(&[&[1, 0]]), int(12))
        );
        let two = MPoly::constant(sh(2, 2), int(1));
        assert_eq!(apply_eps_power(&two, 1), Err(Error::NotSingleSet(2)));
    }

    #[test]
    fn matrices() {
        let m = operator_matrix(&OpSpec::D(md(&[1])), sh(1, 2), &md(&[1]), &q()).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m.row(0), &[int(1), int(1)]);
        assert!(matches!(
            operator_matrix(&OpSpec::D(md(&[1])), sh(1, 2), &md(&[0]), &q()),
            Err(Error::DegreeUnderflow { .. })
        ));
        let e = operator_matrix(&OpSpec::EpsPower(1), sh(1, 2), &md(&[2]), &q()).unwrap();
        assert_eq!(e.row(0), &[int(0), int(1), int(0)]);
    }

    #[test]
    fn matrix_agrees_with_application() {
        let shape = sh(2, 2);
        let src = md(&[2, 1]);
        let spec = OpSpec::D(md(&[1, 0]));
        let mat = operator_matrix(&spec, shape, &src, &q()).unwrap();
        let monos = monomials_of_multidegree(shape, &src);
        let coeffs: Vec<RatFuncQ> = (0..monos.len()).map(|i| int(i as i64 - 2).add(&q())).collect();
        let f = MPoly::from_terms(shape, monos.iter().cloned().zip(coeffs.iter().cloned()));
        let image = apply_d(&f, &md(&[1, 0]), &q());
        let tgt = monomials_of_multidegree(shape, &md(&[1, 1]));
        let via_matrix = MPoly::from_terms(shape, tgt.into_iter().zip(mat.mul_vec(&coeffs)));
        assert_eq!(image, via_matrix);
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket_check(&md(&[1]), &md(&[1]), sh(1, 3), 4).holds());
        assert!(bracket_check(&md(&[1]), &md(&[2]), sh(1, 2), 6).holds());
        assert!(bracket_check(&md(&[1, 0]), &md(&[0, 2]), sh(2, 2), 5).holds());
    }

    #[test]
    fn classical_limit() {
        // at q = 0, D_d is sum_j of the plain column derivatives
        let zero = <BigRational as num_traits::Zero>::zero();
        let f = MPoly::from_terms(sh(1, 2), [(mono(&[&[3, 1]]), <BigRational as num_traits::One>::one())]);
        let got = apply_d(&f, &md(&[2]), &zero);
        let expected = MPoly::monomial(mono(&[&[1, 1]]), BigRational::from_integer(6.into()));
        assert_eq!(got, expected);
    }
}
