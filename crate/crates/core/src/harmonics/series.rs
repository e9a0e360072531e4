use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rref, ExactMatrix};
use crate::groups::GroupSpec;
use crate::polyspace::{compositions, MultiDegree};

fn product_of_ranges(degrees: &[u32]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &k in degrees {
        // multiply by 1 + t + ... + t^(k-1)
        let mut next = vec![0u64; out.len() + k as usize - 1];
        for (i, c) in out.iter().enumerate() {
            for j in 0..k as usize {
                next[i + j] += c;
            }
        }
        out = next;
    }
    out
}

/// Coefficients of `prod_{k=1..n} (t^(km) - 1)/(t - 1)`.
pub fn hilbert_product_formula(m: u32, n: u32) -> Vec<u64> {
    let degrees: Vec<u32> = (1..=n).map(|k| k * m).collect();
    product_of_ranges(&degrees)
}

/// Same product over the invariant degrees `m, 2m, ..., (n-1)m, nm/p`.
pub fn group_product_formula(group: &GroupSpec) -> Vec<u64> {
    let n = group.n as u32;
    let mut degrees: Vec<u32> = (1..n).map(|k| k * group.m).collect();
    degrees.push(n * group.m / group.p);
    product_of_ranges(&degrees)
}

fn push_term(out: &mut String, coeff: &str, body: &str) {
    let (neg, mag) = match coeff.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, coeff),
    };
    if neg {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    if body.is_empty() {
        out.push_str(mag);
    } else {
        if mag != "1" {
            out.push_str(mag);
        }
        out.push_str(body);
    }
}

/// `1+2t+3t^2`; the zero series prints as `0`.
pub fn format_univariate(coeffs: &[u64]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let body = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        push_term(&mut out, &c.to_string(), &body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Multivariate series in the graded multidegree order, e.g.
/// `1+2t1+t1^2+t1*t2`; for one set of variables this is [`format_univariate`].
pub fn format_series(hilbert: &BTreeMap<MultiDegree, usize>, l: usize) -> String {
    if l == 1 {
        let top = hilbert.keys().map(MultiDegree::total).max().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; top + 1];
        for (d, k) in hilbert {
            coeffs[d.total() as usize] += *k as u64;
        }
        return format_univariate(&coeffs);
    }
    let mut out = String::new();
    for (d, k) in hilbert {
        if *k == 0 {
            continue;
        }
        let body: Vec<String> = d
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
            .collect();
        push_term(&mut out, &k.to_string(), &body.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A formal sum of products of complete homogeneous symmetric polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HExpansion {
    /// Partitions (weakly decreasing, no zero parts) with their coefficients,
    /// ordered by size and then lexicographically.
    pub terms: Vec<(Vec<u32>, BigRational)>,
}

impl HExpansion {
    pub fn coeff(&self, lambda: &[u32]) -> BigRational {
        self.terms
            .iter()
            .find(|(p, _)| p == lambda)
            .map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    /// Value with every variable set to 1: `h_k(1,...,1) = C(k+l-1, l-1)`.
    pub fn at_ones(&self, l: usize) -> BigRational {
        let h = |k: u32| -> BigInt {
            let mut acc = BigInt::one();
            for i in 1..l as u32 {
                acc = acc * BigInt::from(k + i) / BigInt::from(i);
            }
            acc
        };
        self.terms
            .iter()
            .map(|(p, c)| c * BigRational::from_integer(p.iter().map(|&k| h(k)).product()))
            .sum()
    }
}

impl fmt::Display for HExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (p, c) in &self.terms {
            let body = if p.is_empty() {
                String::new()
            } else {
                let sep = if p.iter().any(|&k| k >= 10) { "," } else { "" };
                format!("h_{}", p.iter().map(u32::to_string).collect::<Vec<_>>().join(sep))
            };
            push_term(&mut out, &c.to_string(), &body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Partitions of `k` with at most `len` parts, lexicographically ascending.
fn partitions(k: u32, len: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if len == 0 {
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, len, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

/// Monomial expansion of `h_lambda(t_1, ..., t_l)`.
fn h_product(lambda: &[u32], l: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::from([(vec![0; l], BigInt::one())]);
    for &k in lambda {
        let mut next = BTreeMap::new();
        for (e, c) in &acc {
            for comp in compositions(k, l) {
                let key: Vec<u32> = e.iter().zip(&comp).map(|(a, b)| a + b).collect();
                *next.entry(key).or_insert_with(BigInt::zero) += c;
            }
        }
        acc = next;
    }
    acc
}

/// Expands a symmetric multivariate Hilbert series in the products `h_lambda`
/// with at most `l` parts (a basis of the symmetric polynomials in `l`
/// variables). The coefficients come from an exact linear solve,
/// degree by degree.
pub fn hbasis_expression(hilbert: &BTreeMap<MultiDegree, usize>, l: usize) -> Result<HExpansion> {
    let dim = |e: &[u32]| hilbert.get(&MultiDegree(e.to_vec())).copied().unwrap_or(0);
    for (d, k) in hilbert {
        let mut sorted = d.0.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if dim(&sorted) != *k {
            return Err(Error::NotSymmetric(d.clone()));
        }
    }
    let top = hilbert.keys().map(MultiDegree::total).max().unwrap_or(0);
    let mut terms = Vec::new();
    for k in 0..=top {
        let parts = partitions(k, l);
        let pad = |p: &[u32]| {
            let mut v = p.to_vec();
            v.resize(l, 0);
            v
        };
        // rows: target exponents mu; columns: lambda, then the dimension
        let cols = parts.len() + 1;
        let expansions: Vec<_> = parts.iter().map(|lam| h_product(lam, l)).collect();
        let mut entries = Vec::with_capacity(parts.len() * cols);
        for mu in &parts {
            let key = pad(mu);
            for e in &expansions {
                entries.push(BigRational::from_integer(e.get(&key).cloned().unwrap_or_default()));
            }
            entries.push(BigRational::from_integer(BigInt::from(dim(&key))));
        }
        let ech = rref(&ExactMatrix::new(parts.len(), cols, entries, ()));
        debug_assert_eq!(ech.pivots, (0..parts.len()).collect::<Vec<_>>());
        for (lam, row) in parts.iter().zip(&ech.rows) {
            let c = row[cols - 1].clone();
            if !c.is_zero() {
                terms.push((lam.clone(), c));
            }
        }
    }
    Ok(HExpansion { terms })
}
