//! Exhaustive enumeration of small minimal complexes over finite fields, and the probes built
//! on it: discreteness counts, range histograms, one-parameter families and the dichotomy
//! summary.

mod orbit;
mod probes;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use probes::{
    c_dichotomy_report, discreteness_probe, family_probe, object_counts, probe_instances, range_histogram,
    DichotomyLevel, DichotomySummary, DiscretenessRow, DiscretenessTable, ExtensionCoherence, FamilyCoherence,
    FamilySample, FamilyTemplate, FamilyWitness, HistogramRow, RangeHistogram, Verdict,
};

use crate::algebra::module::is_indecomposable as module_indecomposable;
use crate::algebra::module::modules_isomorphic;
use crate::algebra::{Algebra, Module};
use crate::complex::decompose::is_indecomposable;
use crate::complex::ProjComplex;
use crate::error::{Error, Result};
use crate::field::Matrix;

pub const DEFAULT_CAP: u128 = 1 << 24;

/// Search bounds: complexes live in degrees `0..=m`, each `A e_s` occurs at most `max_mult`
/// times per degree, and the total dimension over the base field is at most `max_dim`.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub m: usize,
    pub max_mult: usize,
    pub max_dim: Option<usize>,
    pub cap: u128,
    #[serde(skip)]
    pub descending: bool,
}

impl Bounds {
    pub fn new(m: usize, max_mult: usize) -> Bounds {
        Bounds { m, max_mult, max_dim: None, cap: DEFAULT_CAP, descending: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    #[serde(skip)]
    pub complex: ProjComplex,
    /// Multiplicity of each `A e_s`, per degree `0..=m`.
    pub multiplicities: Vec<Vec<usize>>,
    /// Dimension vector of `H^n`, per degree `0..=m`.
    pub cohomology: Vec<Vec<usize>>,
    pub hl: usize,
    pub hw: usize,
    pub hr: usize,
    /// Coefficient code of the differentials, minimal within the isomorphism class.
    pub code: u64,
}

impl Representative {
    fn new(complex: ProjComplex, m: usize, code: u64) -> Representative {
        let degrees = 0..=m as i64;
        let multiplicities = degrees.clone().map(|n| complex.multiplicity(n)).collect();
        let cohomology = degrees.map(|n| complex.cohomology_vector(n)).collect();
        let stats = complex.range_stats();
        Representative { complex, multiplicities, cohomology, hl: stats.hl, hw: stats.hw, hr: stats.hr, code }
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Compact key for a per-degree vector, e.g. `1,0|0,2`.
pub fn vector_key(v: &[Vec<usize>]) -> String {
    v.iter().map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("|")
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub algebra: String,
    pub field: String,
    pub bounds: Bounds,
    pub candidates: u128,
    pub orbits: usize,
    pub representatives: Vec<Representative>,
    pub by_multiplicity: BTreeMap<String, usize>,
    pub by_cohomology: BTreeMap<String, usize>,
    pub histogram: BTreeMap<usize, usize>,
    pub observed_ranges: Vec<usize>,
}

fn shapes(alg: &Algebra, b: &Bounds) -> Vec<Vec<Vec<usize>>> {
    let slots = alg.num_slots();
    let positions = (b.m + 1) * slots;
    let mut out = vec![];
    let mut counts = vec![0usize; positions];
    loop {
        if counts.iter().any(|&c| c > 0) {
            let mult: Vec<Vec<usize>> = counts.chunks(slots).map(|c| c.to_vec()).collect();
            let dim: usize = mult
                .iter()
                .flat_map(|d| d.iter().enumerate().map(|(s, &c)| c * alg.projective_basis(s).len()))
                .sum();
            if b.max_dim.is_none_or(|cap| dim <= cap) {
                out.push(mult);
            }
        }
        let mut k = positions;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if counts[k] < b.max_mult {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
        }
    }
}

fn comps_of(mult: &[Vec<usize>]) -> Vec<Vec<usize>> {
    mult.iter().map(|d| d.iter().enumerate().flat_map(|(s, &c)| std::iter::repeat_n(s, c)).collect()).collect()
}

/// A summand that no radical entry can reach splits off as a stalk.
fn has_isolated_summand(comps: &[Vec<usize>], unknowns: &[orbit::Unknown]) -> bool {
    let total: usize = comps.iter().map(|c| c.len()).sum();
    total > 1
        && comps.iter().enumerate().any(|(n, c)| {
            (0..c.len()).any(|i| {
                !unknowns.iter().any(|u| (u.deg == n && u.row == i) || (u.deg + 1 == n && u.col == i))
            })
        })
}

struct ShapeResult {
    candidates: u128,
    orbits: usize,
    found: Vec<(ProjComplex, u64)>,
}

fn sweep_shape(alg: &Algebra, comps: &[Vec<usize>], b: &Bounds, indecomposable_only: bool) -> Result<ShapeResult> {
    let unknowns = orbit::unknowns(alg, comps);
    if indecomposable_only && has_isolated_summand(comps, &unknowns) {
        return Ok(ShapeResult { candidates: 0, orbits: 0, found: vec![] });
    }
    let q = alg.field().order().expect("finite field") as u128;
    let candidates = q.pow(unknowns.len() as u32);
    let minima = orbit::orbit_minima(alg, comps, &unknowns, b.descending)?;
    let mut found = vec![];
    for &code in &minima {
        let digits = orbit::digits_of(code, q as u32, unknowns.len());
        let diffs = orbit::decode(alg, comps, &unknowns, &digits);
        let squares_vanish =
            diffs.windows(2).all(|w| w[0].mul(alg, &w[1]).is_ok_and(|p| p.is_zero(alg)));
        if !squares_vanish {
            continue;
        }
        let x = ProjComplex::new(alg, 0, comps.to_vec(), diffs)?.mark_minimality();
        if !indecomposable_only || is_indecomposable(&x)? {
            found.push((x, code));
        }
    }
    Ok(ShapeResult { candidates, orbits: minima.len(), found })
}

fn search_estimate(alg: &Algebra, b: &Bounds, indecomposable_only: bool) -> (Vec<Vec<Vec<usize>>>, u128) {
    let q = alg.field().order().unwrap_or(0) as u128;
    let mut total: u128 = 0;
    let shapes: Vec<Vec<Vec<usize>>> = shapes(alg, b);
    for mult in &shapes {
        let comps = comps_of(mult);
        let unknowns = orbit::unknowns(alg, &comps);
        if indecomposable_only && has_isolated_summand(&comps, &unknowns) {
            continue;
        }
        total = total.saturating_add(q.checked_pow(unknowns.len() as u32).unwrap_or(u128::MAX));
    }
    (shapes, total)
}

fn sweep(alg: &Algebra, b: &Bounds, indecomposable_only: bool) -> Result<(Vec<Representative>, u128, usize)> {
    let f = alg.field();
    if !f.is_finite() {
        return Err(Error::InfiniteField(f.to_string()));
    }
    let (shapes, estimate) = search_estimate(alg, b, indecomposable_only);
    if estimate > b.cap {
        return Err(Error::SearchCap { estimate, cap: b.cap });
    }
    let results: Vec<ShapeResult> = shapes
        .par_iter()
        .map(|mult| sweep_shape(alg, &comps_of(mult), b, indecomposable_only))
        .collect::<Result<_>>()?;
    let mut reps = vec![];
    let (mut candidates, mut orbits) = (0, 0);
    for r in results {
        candidates += r.candidates;
        orbits += r.orbits;
        reps.extend(r.found.into_iter().map(|(x, code)| Representative::new(x, b.m, code)));
    }
    Ok((reps, candidates, orbits))
}

fn summarize(alg: &Algebra, b: &Bounds, reps: Vec<Representative>, candidates: u128, orbits: usize) -> ClassificationReport {
    let mut by_multiplicity = BTreeMap::new();
    let mut by_cohomology = BTreeMap::new();
    let mut histogram = BTreeMap::new();
    for r in &reps {
        *by_multiplicity.entry(vector_key(&r.multiplicities)).or_insert(0) += 1;
        *by_cohomology.entry(vector_key(&r.cohomology)).or_insert(0) += 1;
        *histogram.entry(r.hr).or_insert(0) += 1;
    }
    let observed_ranges = histogram.keys().copied().collect();
    ClassificationReport {
        algebra: format!("dim {} with {} vertices", alg.dim(), alg.num_slots()),
        field: alg.field().to_string(),
        bounds: b.clone(),
        candidates,
        orbits,
        representatives: reps,
        by_multiplicity,
        by_cohomology,
        histogram,
        observed_ranges,
    }
}

/// Every indecomposable minimal complex in degrees `0..=m` within the bounds, one canonical
/// representative per isomorphism class.
pub fn enumerate_indecomposables(alg: &Algebra, b: &Bounds) -> Result<ClassificationReport> {
    let (reps, candidates, orbits) = sweep(alg, b, true)?;
    Ok(summarize(alg, b, reps, candidates, orbits))
}

/// Every nonzero minimal complex in degrees `0..=m` within the bounds, up to isomorphism.
pub fn enumerate_objects(alg: &Algebra, b: &Bounds) -> Result<Vec<Representative>> {
    Ok(sweep(alg, b, false)?.0)
}

/// Indecomposable representations of a quiver algebra with the given dimension vector, up to
/// isomorphism, by sweeping every tuple of arrow matrices.
pub fn enumerate_modules(alg: &Algebra, dims: &[usize], cap: u128) -> Result<Vec<Module>> {
    let f = alg.field();
    let elems = f.elements().ok_or_else(|| Error::InfiniteField(f.to_string()))?;
    let quiver = alg.quiver().ok_or_else(|| Error::Unsupported("module sweeps need a quiver algebra".into()))?;
    let sizes: Vec<(usize, usize)> = quiver.arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let cells: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let q = elems.len() as u128;
    let estimate = q.checked_pow(cells as u32).unwrap_or(u128::MAX);
    if estimate > cap {
        return Err(Error::SearchCap { estimate, cap });
    }
    let mut out: Vec<Module> = vec![];
    for code in 0..estimate as u64 {
        let digits = orbit::digits_of(code, q as u32, cells);
        let mut it = digits.into_iter();
        let maps = sizes
            .iter()
            .map(|&(r, c)| {
                let rows = (0..r).map(|_| (0..c).map(|_| elems[it.next().unwrap() as usize].clone()).collect()).collect();
                Matrix::from_rows(f, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = match Module::from_arrow_maps(alg, dims.to_vec(), maps) {
            Ok(m) => m,
            Err(Error::InvalidModule(_)) => continue,
            Err(e) => return Err(e),
        };
        if !module_indecomposable(&m)? {
            continue;
        }
        let mut new = true;
        for n in &out {
            if modules_isomorphic(&m, n)? {
                new = false;
                break;
            }
        }
        if new {
            out.push(m);
        }
    }
    Ok(out)
}
