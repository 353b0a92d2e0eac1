//! Reduction to a homotopy-minimal complex by Gaussian cancellation of unit entries.

use std::collections::BTreeMap;

use super::amat::AMat;
use super::chain::{ChainMap, GradedMap, Homotopy};
use super::{Minimality, ProjComplex};
use crate::error::{Error, Result};

/// Chain maps `X ⇄ X₀` with homotopies `h` such that `id − (to then from) = d h + h d` on
/// `X` and likewise on `X₀`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub to_minimal: ChainMap,
    pub from_minimal: ChainMap,
    pub source_homotopy: Homotopy,
    pub target_homotopy: Homotopy,
}

impl Equivalence {
    /// Checks both composites against their homotopies.
    pub fn verify(&self) -> Result<bool> {
        let x = &self.to_minimal.source;
        let x0 = &self.to_minimal.target;
        let lhs = GradedMap::identity(x).sub(&self.to_minimal.then(&self.from_minimal)?)?;
        let rhs = GradedMap::identity(x0).sub(&self.from_minimal.then(&self.to_minimal)?)?;
        Ok(self.to_minimal.is_chain_map()
            && self.from_minimal.is_chain_map()
            && lhs == self.source_homotopy.boundary()?
            && rhs == self.target_homotopy.boundary()?)
    }
}

/// First unit entry in the pivot order: lowest degree, then row, then column.
fn find_pivot(x: &ProjComplex) -> Option<(i64, usize, usize)> {
    let alg = x.algebra();
    for n in x.lo()..x.hi() {
        let d = x.diff(n);
        let (src, tgt) = (x.comps(n), x.comps(n + 1));
        for p in 0..d.rows() {
            for q in 0..d.cols() {
                let u = d.get(p, q);
                if src[p] == tgt[q] && !alg.is_radical(u) {
                    return Some((n, p, q));
                }
            }
        }
    }
    None
}

struct Step {
    reduced: ProjComplex,
    to: ChainMap,
    from: ChainMap,
    homotopy: Homotopy,
}

fn cancel(x: &ProjComplex, n: i64, p: usize, q: usize) -> Result<Step> {
    let alg = x.algebra();
    let (cn, cn1) = (x.comps(n).to_vec(), x.comps(n + 1).to_vec());
    let keep_n: Vec<usize> = (0..cn.len()).filter(|&i| i != p).collect();
    let keep_n1: Vec<usize> = (0..cn1.len()).filter(|&j| j != q).collect();
    let d = x.diff(n);
    let slot = cn[p];
    let uinv = alg
        .corner_inverse(d.get(p, q), slot)
        .ok_or_else(|| Error::Invariant("non-radical corner entry is not invertible".into()))?;
    let uinv_m = AMat::from_entries(1, 1, vec![uinv]);
    let delta = d.select(&keep_n, &keep_n1);
    let dc = d.select(&keep_n, &[q]);
    let dr = d.select(&[p], &keep_n1);
    let dc_uinv = dc.mul(alg, &uinv_m)?;
    let uinv_dr = uinv_m.mul(alg, &dr)?;
    let new_dn = delta.sub(alg, &dc_uinv.mul(alg, &dr)?)?;

    let mut comps = vec![];
    let mut diffs = vec![];
    for m in x.degrees() {
        comps.push(match m {
            _ if m == n => keep_n.iter().map(|&i| cn[i]).collect(),
            _ if m == n + 1 => keep_n1.iter().map(|&j| cn1[j]).collect(),
            _ => x.comps(m).to_vec(),
        });
    }
    for m in x.lo()..x.hi() {
        let dm = x.diff(m);
        let all_r: Vec<usize> = (0..dm.rows()).collect();
        let all_c: Vec<usize> = (0..dm.cols()).collect();
        diffs.push(match m {
            _ if m == n - 1 => dm.select(&all_r, &keep_n),
            _ if m == n => new_dn.clone(),
            _ if m == n + 1 => dm.select(&keep_n1, &all_c),
            _ => dm,
        });
    }
    let reduced = ProjComplex::unchecked(alg, x.lo(), comps, diffs);

    // from: X' → X and to: X → X'
    let mut from_maps = BTreeMap::new();
    let mut to_maps = BTreeMap::new();
    for m in x.degrees() {
        let full = x.comps(m);
        let small = reduced.comps(m);
        let mut fm = AMat::zeros(alg, small.len(), full.len());
        let mut tm = AMat::zeros(alg, full.len(), small.len());
        let keep: Vec<usize> = if m == n {
            keep_n.clone()
        } else if m == n + 1 {
            keep_n1.clone()
        } else {
            (0..full.len()).collect()
        };
        for (r, &k) in keep.iter().enumerate() {
            fm.set(r, k, alg.idempotent(full[k]));
            tm.set(k, r, alg.idempotent(full[k]));
        }
        if m == n {
            for r in 0..keep.len() {
                fm.set(r, p, alg.neg(dc_uinv.get(r, 0)));
            }
        }
        if m == n + 1 {
            for c in 0..keep.len() {
                tm.set(q, c, alg.neg(uinv_dr.get(0, c)));
            }
        }
        from_maps.insert(m, fm);
        to_maps.insert(m, tm);
    }
    let from = GradedMap::from_components(&reduced, x, 0, from_maps)?;
    let to = GradedMap::from_components(x, &reduced, 0, to_maps)?;
    let mut hm = AMat::zeros(alg, cn1.len(), cn.len());
    hm.set(q, p, uinv_m.get(0, 0).clone());
    let homotopy = GradedMap::from_components(x, x, -1, BTreeMap::from([(n + 1, hm)]))?;
    Ok(Step { reduced, to, from, homotopy })
}

/// A homotopy-minimal complex homotopy equivalent to `x`, with the equivalence.
pub fn minimize(x: &ProjComplex) -> Result<(ProjComplex, Equivalence)> {
    let mut current = x.clone();
    let mut to = GradedMap::identity(x);
    let mut from = GradedMap::identity(x);
    let mut homotopy = GradedMap::zero(x, x, -1);
    while let Some((n, p, q)) = find_pivot(&current) {
        let step = cancel(&current, n, p, q)?;
        // id − to·step.to·step.from·from = d H + H d with H += to · h_step · from
        let conj = to.then(&step.homotopy)?.then(&from)?;
        homotopy = homotopy.add(&conj)?;
        to = to.then(&step.to)?;
        from = step.from.then(&from)?;
        current = step.reduced;
    }
    let minimal = current.with_flag(Minimality::Yes);
    let to = rewrap(&to, x, &minimal)?;
    let from = rewrap(&from, &minimal, x)?;
    let eq = Equivalence {
        target_homotopy: GradedMap::zero(&minimal, &minimal, -1),
        to_minimal: to,
        from_minimal: from,
        source_homotopy: homotopy,
    };
    Ok((minimal, eq))
}

fn rewrap(g: &ChainMap, source: &ProjComplex, target: &ProjComplex) -> Result<ChainMap> {
    GradedMap::from_components(source, target, g.shift, g.components().clone())
}
