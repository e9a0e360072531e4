//! Splitting the one-set harmonics of G(m,n) by e_n-height, and the map
//! `eps = d_1 ... d_n` between neighbouring layers.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{component_at, is_harmonic, HarmonicSpace};
use crate::error::{Error, Result};
use crate::exactalg::{rank, ExactMatrix, Field, RatFuncQ};
use crate::groups::GroupSpec;
use crate::operators::{apply_d, apply_eps_power};
use crate::polyspace::{en_valuation, monomials_of_multidegree, multidegrees_up_to, MPoly, Monomial, MultiDegree, Shape};

/// Largest e_n-valuation over the monomials of `f`: the least `k` with
/// `eps^(k+1) f = 0`. Zero for the zero polynomial.
pub fn layer_index(f: &MPoly<RatFuncQ>) -> Result<u32> {
    let mut best = 0;
    for m in f.monomials() {
        best = best.max(en_valuation(m)?);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsMapCheck {
    /// Source layer; the target is layer `k - 1` at `q/(1+q)`.
    pub k: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Rank of the images modulo the layers below the target.
    pub rank: usize,
    pub images_harmonic: bool,
}

impl EpsMapCheck {
    pub fn holds(&self) -> bool {
        self.images_harmonic && self.rank == self.source_dim && self.rank == self.target_dim
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerDecomposition {
    pub m: u32,
    pub n: usize,
    /// `layers[k]` lists, per degree, the basis of `L_k`.
    pub layers: Vec<Vec<(MultiDegree, Vec<MPoly<RatFuncQ>>)>>,
    pub eps_maps: Vec<EpsMapCheck>,
}

impl LayerDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .map(|l| l.iter().map(|(_, b)| b.len()).sum())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let layers: Vec<serde_json::Value> = self
            .layers
            .iter()
            .enumerate()
            .map(|(k, per)| {
                let mut by_degree = serde_json::Map::new();
                for (d, b) in per {
                    by_degree.insert(d.to_string(), serde_json::json!(b));
                }
                serde_json::json!({
                    "layer": k,
                    "dim": per.iter().map(|(_, b)| b.len()).sum::<usize>(),
                    "components": by_degree,
                })
            })
            .collect();
        serde_json::json!({ "m": self.m, "n": self.n, "layers": layers, "eps_maps": self.eps_maps })
    }
}

/// Re-echelonizes `basis` with the columns ordered by decreasing e_n-valuation,
/// so every row's pivot carries its height. Returns `(height, row)` pairs.
fn split_by_height(shape: Shape, d: &MultiDegree, basis: &[MPoly<RatFuncQ>]) -> Result<Vec<(u32, MPoly<RatFuncQ>)>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let monos = monomials_of_multidegree(shape, d);
    let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let vals = monos.iter().map(en_valuation).collect::<Result<Vec<u32>>>()?;
    let mut order: Vec<usize> = (0..monos.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(vals[i]), i));
    let rows: Vec<Vec<RatFuncQ>> = basis.iter().map(|b| b.coords(&monos, &index).unwrap()).collect();
    let ech = RatFuncQ::echelon(rows, &order, &());
    Ok(ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| (vals[p], MPoly::from_coords(shape, &monos, row)))
        .collect())
}

fn stacked_rank(shape: Shape, d: &MultiDegree, polys: &[&MPoly<RatFuncQ>]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let monos = monomials_of_multidegree(shape, d);
    let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<RatFuncQ>> = polys.iter().map(|p| p.coords(&monos, &index).unwrap()).collect();
    rank(&ExactMatrix::from_rows(rows, monos.len(), ()))
}

/// Partitions the one-set harmonics of G(m,n) into layers `L_0 .. L_{m-1}`
/// by e_n-height and checks, for each `k >= 1`, that `eps` maps `L_k(q)`
/// isomorphically onto `L_{k-1}(q/(1+q))`.
pub fn layer_decomposition(m: u32, n: usize, space: &HarmonicSpace) -> Result<LayerDecomposition> {
    let query = &space.query;
    if query.l != 1 {
        return Err(Error::NotSingleSet(query.l));
    }
    if query.group != GroupSpec::full(m, n) {
        return Err(Error::InvalidQuery(format!(
            "layers need the harmonics of G({m},{n}), got {}",
            query.group
        )));
    }
    let shape = query.shape();
    let q = query.qmode.param();
    let mut layers: Vec<Vec<(MultiDegree, Vec<MPoly<RatFuncQ>>)>> = vec![Vec::new(); m as usize];
    for c in &space.components {
        let mut per: Vec<Vec<MPoly<RatFuncQ>>> = vec![Vec::new(); m as usize];
        for (k, f) in split_by_height(shape, &c.degree, &c.basis)? {
            if k >= m {
                return Err(Error::LayerOverflow {
                    degree: c.degree.clone(),
                    layer: k,
                    max: m - 1,
                });
            }
            per[k as usize].push(f);
        }
        for (k, b) in per.into_iter().enumerate() {
            if !b.is_empty() {
                layers[k].push((c.degree.clone(), b));
            }
        }
    }

    // parameter after the shift: q/(1+q)
    let one = RatFuncQ::one();
    let shifted = q.div(&one.add(&q));
    let group = GroupSpec::full(m, n);
    let drop = MultiDegree(vec![n as u32]);
    let target_degrees: Vec<MultiDegree> = space
        .components
        .iter()
        .filter_map(|c| c.degree.checked_sub(&drop))
        .collect();
    let mut target_layers: BTreeMap<MultiDegree, Vec<(u32, MPoly<RatFuncQ>)>> = BTreeMap::new();
    for d in &target_degrees {
        let basis = component_at(&group, 1, &shifted, d);
        target_layers.insert(d.clone(), split_by_height(shape, d, &basis)?);
    }

    let mut eps_maps = Vec::new();
    for k in 1..m {
        let mut check = EpsMapCheck {
            k,
            source_dim: 0,
            target_dim: 0,
            rank: 0,
            images_harmonic: true,
        };
        for t in target_layers.values() {
            check.target_dim += t.iter().filter(|(h, _)| *h == k - 1).count();
        }
        for (d, basis) in &layers[k as usize] {
            check.source_dim += basis.len();
            let target = d.checked_sub(&drop).expect("height >= 1 implies degree >= n");
            let images = basis.iter().map(|f| apply_eps_power(f, 1)).collect::<Result<Vec<_>>>()?;
            for img in &images {
                let height_ok = layer_index(img)? + 1 <= k;
                if !height_ok || !is_harmonic(&group, 1, &shifted, img) {
                    check.images_harmonic = false;
                }
            }
            let lower: Vec<&MPoly<RatFuncQ>> = target_layers[&target]
                .iter()
                .filter(|(h, _)| *h + 1 < k)
                .map(|(_, f)| f)
                .collect();
            let mut all = lower.clone();
            all.extend(images.iter());
            check.rank += stacked_rank(shape, &target, &all) - stacked_rank(shape, &target, &lower);
        }
        eps_maps.push(check);
    }
    Ok(LayerDecomposition { m, n, layers, eps_maps })
}

/// Result of an operator identity checked monomial by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `eps D_{q,k} = (1+q) D_{q/(1+q),k} eps` on every monomial in `n`
/// variables of degree at most `maxdeg`.
pub fn eps_shift_identity(n: usize, k: u32, maxdeg: u32) -> IdentityCheck {
    let shape = Shape { l: 1, n };
    let q = RatFuncQ::q();
    let one_plus_q = RatFuncQ::one().add(&q);
    let shifted = q.div(&one_plus_q);
    let dk = MultiDegree(vec![k]);
    let mut out = IdentityCheck {
        checked: 0,
        counterexamples: Vec::new(),
    };
    for d in multidegrees_up_to(1, maxdeg) {
        for mono in monomials_of_multidegree(shape, &d) {
            let f = MPoly::monomial(mono.clone(), RatFuncQ::one());
            let lhs = apply_eps_power(&apply_d(&f, &dk, &q), 1).unwrap();
            let rhs = apply_d(&apply_eps_power(&f, 1).unwrap(), &dk, &shifted).scale(&one_plus_q);
            out.checked += 1;
            if lhs != rhs {
                out.counterexamples.push(mono.to_string());
            }
        }
    }
    out
}
