use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use super::{harmonic_space, DegreeBound, HarmonicQuery, QMode};
use crate::error::Result;
use crate::groups::GroupSpec;
use crate::polyspace::MultiDegree;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularScan {
    /// Distinct candidates `-a/b`, in first-appearance order.
    pub candidates: Vec<BigRational>,
    /// Candidates with some component larger than at formal q, with the
    /// offending `(degree, dim at q0, formal dim)` triples.
    pub flagged: Vec<(BigRational, Vec<(MultiDegree, usize, usize)>)>,
}

impl SingularScan {
    pub fn flagged_values(&self) -> Vec<BigRational> {
        self.flagged.iter().map(|(q, _)| q.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let flagged: Vec<serde_json::Value> = self
            .flagged
            .iter()
            .map(|(q, excess)| {
                let per: Vec<serde_json::Value> = excess
                    .iter()
                    .map(|(d, k, f)| json!({ "degree": d.to_string(), "dim": k, "formal_dim": f }))
                    .collect();
                json!({ "q": q.to_string(), "excess": per })
            })
            .collect();
        json!({
            "candidates": self.candidates.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "singular": self.flagged.iter().map(|(q, _)| q.to_string()).collect::<Vec<_>>(),
            "details": flagged,
        })
    }
}

/// Specializes q to every `-a/b` with `1 <= a <= a_max` and `n <= b <= b_max`
/// and flags the values where some component dimension exceeds the formal one.
pub fn singular_scan(group: &GroupSpec, l: usize, a_max: u32, b_max: u32, bound: DegreeBound) -> Result<SingularScan> {
    let formal_query = HarmonicQuery::new(*group, l, QMode::Formal, bound)?;
    let formal = harmonic_space(&formal_query).hilbert();
    let mut candidates: Vec<BigRational> = Vec::new();
    for a in 1..=a_max as i64 {
        for b in group.n as i64..=b_max as i64 {
            let v = BigRational::new((-a).into(), b.into());
            if !candidates.contains(&v) {
                candidates.push(v);
            }
        }
    }
    let flagged = candidates
        .par_iter()
        .map(|q0| {
            let space = harmonic_space(&formal_query.with_qmode(QMode::Rational(q0.clone())));
            let excess: Vec<(MultiDegree, usize, usize)> = space
                .hilbert()
                .into_iter()
                .filter_map(|(d, k)| {
                    let f = formal.get(&d).copied().unwrap_or(0);
                    (k > f).then_some((d, k, f))
                })
                .collect();
            (q0.clone(), excess)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|(_, e)| !e.is_empty())
        .collect();
    Ok(SingularScan { candidates, flagged })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_small_scan() {
        let scan = singular_scan(&GroupSpec::symmetric(2), 1, 1, 3, DegreeBound::Total(8)).unwrap();
        assert_eq!(scan.candidates.len(), 2);
        assert!(scan.flagged_values().iter().all(|q| q < &BigRational::from_integer(0.into())));
    }
}
