use num_rational::BigRational;
use num_traits::Signed;

use super::QMode;
use crate::error::{Error, Result};
use crate::exactalg::RatFuncQ;
use crate::operators::pochhammer_at;
use crate::polyspace::{MPoly, Monomial, Shape};

/// Reduced `(a, b)` with `q0 = -a/b`, or `None` when `q0 >= 0`.
fn negative_parts(q0: &BigRational) -> Option<(u64, u64)> {
    if !q0.is_negative() {
        return None;
    }
    let a = (-q0.numer()).to_string().parse().ok()?;
    let b = q0.denom().to_string().parse().ok()?;
    Some((a, b))
}

/// True when `q0 = -a/b` with `1 <= a <= 2 <= b` (not necessarily reduced).
pub fn is_n2_singular(q0: &BigRational) -> bool {
    match negative_parts(q0) {
        // -1/b for b >= 1 (b = 1 comes from -2/2), or -2/b with b odd >= 3
        Some((1, _)) => true,
        Some((2, b)) => b >= 2,
        _ => false,
    }
}

/// True when `q0 = -1/b` with `1 <= b <= m`.
pub fn is_dihedral_singular(m: u32, q0: &BigRational) -> bool {
    matches!(negative_parts(q0), Some((1, b)) if b <= m as u64)
}

fn xy(a: u32, b: u32) -> Monomial {
    Monomial::from_rows(&[vec![a, b]])
}

/// Explicit basis of the q-harmonics of G(m,p,2) in one set of variables:
/// the monomials `x^a y^b` (`a, b < m`) together with the binomials
/// `<b+m>_m x^(a+m) y^b - <a+m>_m x^a y^(b+m)`, keeping the elements whose
/// e_2-height is below `m/p`. Sorted by degree, then by leading monomial.
pub fn closed_form_n2(m: u32, p: u32, qmode: &QMode) -> Result<Vec<MPoly<RatFuncQ>>> {
    if m == 0 || p == 0 || m % p != 0 {
        return Err(Error::InvalidQuery(format!("p = {p} must divide m = {m}")));
    }
    if let QMode::Rational(q0) = qmode {
        let bad = if p == m {
            is_dihedral_singular(m, q0)
        } else {
            is_n2_singular(q0)
        };
        if bad {
            return Err(Error::SingularQ(q0.clone()));
        }
    }
    let q = qmode.param();
    let s = m / p;
    let shape = Shape { l: 1, n: 2 };
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a.min(b) < s {
                out.push(MPoly::monomial(xy(a, b), RatFuncQ::one()));
            }
            if a.max(b) < s {
                let left = pochhammer_at(b + m, m, &q);
                let right = pochhammer_at(a + m, m, &q);
                let f = MPoly::from_terms(shape, [(xy(a + m, b), left), (xy(a, b + m), right.neg())]);
                out.push(f);
            }
        }
    }
    out.sort_by(|f, g| {
        let key = |h: &MPoly<RatFuncQ>| (h.monomials().next().map(Monomial::total_degree), h.monomials().next().cloned());
        key(f).cmp(&key(g))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::is_harmonic;
    use crate::groups::GroupSpec;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn g22_has_eight() {
        let basis = closed_form_n2(2, 1, &QMode::Formal).unwrap();
        assert_eq!(basis.len(), 8);
        let g = GroupSpec::full(2, 2);
        for f in &basis {
            assert!(is_harmonic(&g, 1, &RatFuncQ::q(), f), "{f}");
        }
    }

    #[test]
    fn dihedral_six() {
        let basis = closed_form_n2(3, 3, &QMode::Formal).unwrap();
        let text: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(basis.len(), 6);
        // 1, x, y, x^2, y^2, and a multiple of x^3 - y^3
        let top = &basis[5];
        let c = top.coeff(&xy(3, 0)).unwrap().clone();
        assert_eq!(top.coeff(&xy(0, 3)).unwrap(), &c.neg(), "{text:?}");
        assert_eq!(basis[0], MPoly::monomial(xy(0, 0), RatFuncQ::one()));
    }

    #[test]
    fn s2_is_x_minus_y() {
        let basis = closed_form_n2(1, 1, &QMode::Formal).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[1].to_string(), "(1)/(1)*x + (-1)/(1)*y");
    }

    #[test]
    fn dimension_formula() {
        for m in 1..=5 {
            for p in (1..=m).filter(|p| m % p == 0) {
                assert_eq!(closed_form_n2(m, p, &QMode::Formal).unwrap().len() as u32, 2 * m * m / p);
            }
        }
    }

    #[test]
    fn singular_values_rejected() {
        assert_eq!(
            closed_form_n2(3, 1, &QMode::Rational(rat(-2, 5))),
            Err(Error::SingularQ(rat(-2, 5)))
        );
        assert!(closed_form_n2(3, 1, &QMode::Rational(rat(-1, 7))).is_err());
        assert!(closed_form_n2(3, 1, &QMode::Rational(rat(-3, 2))).is_ok());
        assert!(closed_form_n2(3, 3, &QMode::Rational(rat(-1, 4))).is_ok());
        assert!(closed_form_n2(3, 3, &QMode::Rational(rat(-1, 3))).is_err());
        assert!(closed_form_n2(3, 1, &QMode::Rational(rat(1, 1))).is_ok());
    }

    #[test]
    fn singular_predicates() {
        assert!(is_n2_singular(&rat(-1, 1)));
        assert!(is_n2_singular(&rat(-2, 4)));
        assert!(!is_n2_singular(&rat(-3, 4)));
        assert!(!is_n2_singular(&rat(1, 2)));
        assert!(is_dihedral_singular(4, &rat(-1, 4)));
        assert!(!is_dihedral_singular(4, &rat(-1, 5)));
    }
}
