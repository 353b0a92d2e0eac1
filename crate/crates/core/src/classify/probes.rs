use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_indecomposables, vector_key, Bounds, ClassificationReport, Representative};
use crate::algebra::Algebra;
use crate::complex::amat::AMat;
use crate::complex::decompose::{indecomposable_iso, is_indecomposable};
use crate::complex::{decompose_complex, is_isomorphic, ProjComplex, RangeStats};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::functors::{tensor_complex, ExtensionContext};

#[derive(Clone, Debug, Serialize)]
pub struct DiscretenessRow {
    pub cohomology: Vec<Vec<usize>>,
    pub key: String,
    pub count: usize,
}

/// Isomorphism classes of minimal complexes (objects, not only indecomposables) per
/// cohomology dimension vector, plus the same objects counted per `hr`.
#[derive(Clone, Debug, Serialize)]
pub struct DiscretenessTable {
    pub bound: Option<usize>,
    pub objects: usize,
    pub rows: Vec<DiscretenessRow>,
    pub by_hr: BTreeMap<usize, usize>,
}

fn add_into(acc: &mut [Vec<usize>], v: &[Vec<usize>], times: usize) {
    for (a, b) in acc.iter_mut().zip(v) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y * times;
        }
    }
}

fn object_hr(coh: &[Vec<usize>]) -> usize {
    RangeStats::from_cohomology(coh.iter().enumerate().map(|(n, v)| (n as i64, v.iter().sum())).collect()).hr
}

/// Direct sums of the representatives of `report` that stay within its multiplicity and
/// dimension bounds, grouped by cohomology vector. With `coh_bound`, only vectors whose
/// entries are all at most the bound are kept.
pub fn object_counts(report: &ClassificationReport, coh_bound: Option<usize>) -> DiscretenessTable {
    let reps = &report.representatives;
    let b = &report.bounds;
    let alg_dims: Vec<usize> = reps.iter().map(|r| r.complex.degrees().map(|n| r.complex.realized_dim(n)).sum()).collect();
    let zero_like = |v: &[Vec<usize>]| v.iter().map(|d| vec![0; d.len()]).collect::<Vec<Vec<usize>>>();
    let (mult0, coh0) = match reps.first() {
        Some(r) => (zero_like(&r.multiplicities), zero_like(&r.cohomology)),
        None => (vec![], vec![]),
    };
    let mut counts: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
    let mut by_hr = BTreeMap::new();
    struct Walk<'a> {
        reps: &'a [Representative],
        dims: &'a [usize],
        b: &'a Bounds,
        coh_bound: Option<usize>,
    }
    fn fits(w: &Walk, mult: &[Vec<usize>], coh: &[Vec<usize>], dim: usize) -> bool {
        mult.iter().flatten().all(|&c| c <= w.b.max_mult)
            && w.b.max_dim.is_none_or(|cap| dim <= cap)
            && w.coh_bound.is_none_or(|cb| coh.iter().flatten().all(|&c| c <= cb))
    }
    fn rec(
        w: &Walk,
        i: usize,
        mult: &mut Vec<Vec<usize>>,
        coh: &mut Vec<Vec<usize>>,
        dim: usize,
        counts: &mut BTreeMap<Vec<Vec<usize>>, usize>,
        by_hr: &mut BTreeMap<usize, usize>,
    ) {
        if i == w.reps.len() {
            *counts.entry(coh.clone()).or_insert(0) += 1;
            *by_hr.entry(object_hr(coh)).or_insert(0) += 1;
            return;
        }
        rec(w, i + 1, mult, coh, dim, counts, by_hr);
        let r = &w.reps[i];
        let (saved_m, saved_c) = (mult.clone(), coh.clone());
        let mut d = dim;
        loop {
            add_into(mult, &r.multiplicities, 1);
            add_into(coh, &r.cohomology, 1);
            d += w.dims[i];
            if !fits(w, mult, coh, d) {
                break;
            }
            rec(w, i + 1, mult, coh, d, counts, by_hr);
        }
        *mult = saved_m;
        *coh = saved_c;
    }
    let w = Walk { reps, dims: &alg_dims, b, coh_bound };
    if reps.is_empty() {
        counts.insert(vec![], 1);
        by_hr.insert(0, 1);
    } else {
        rec(&w, 0, &mut mult0.clone(), &mut coh0.clone(), 0, &mut counts, &mut by_hr);
    }
    let objects = counts.values().sum();
    let rows = counts
        .into_iter()
        .map(|(cohomology, count)| DiscretenessRow { key: vector_key(&cohomology), cohomology, count })
        .collect();
    DiscretenessTable { bound: coh_bound, objects, rows, by_hr }
}

/// Objects per cohomology vector within the bounds: indecomposables are enumerated and then
/// closed under direct sums.
pub fn discreteness_probe(alg: &Algebra, b: &Bounds, coh_bound: Option<usize>) -> Result<DiscretenessTable> {
    Ok(object_counts(&enumerate_indecomposables(alg, b)?, coh_bound))
}

#[derive(Clone, Debug, Serialize)]
pub struct HistogramRow {
    pub hr: usize,
    pub count: usize,
    /// Some representative with this `hr` uses the full multiplicity bound, so the count
    /// may still grow with larger bounds.
    pub boundary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeHistogram {
    pub rows: Vec<HistogramRow>,
    /// Histograms of the representatives fitting each smaller multiplicity bound `1..=max`.
    pub series: Vec<(usize, BTreeMap<usize, usize>)>,
}

pub fn range_histogram(report: &ClassificationReport) -> RangeHistogram {
    let max = report.bounds.max_mult;
    let rows = report
        .histogram
        .iter()
        .map(|(&hr, &count)| HistogramRow {
            hr,
            count,
            boundary: report.representatives.iter().any(|r| r.hr == hr && r.max_multiplicity() >= max),
        })
        .collect();
    let series = (1..=max)
        .map(|k| {
            let mut h = BTreeMap::new();
            for r in report.representatives.iter().filter(|r| r.max_multiplicity() <= k) {
                *h.entry(r.hr).or_insert(0) += 1;
            }
            (k, h)
        })
        .collect();
    RangeHistogram { rows, series }
}

/// A complex whose differentials are polynomials in one parameter `t`: `diffs[n][k]` is the
/// coefficient of `t^k` in `d^{lo+n}`.
#[derive(Clone, Debug)]
pub struct FamilyTemplate {
    pub parameter: String,
    pub lo: i64,
    pub comps: Vec<Vec<usize>>,
    pub diffs: Vec<Vec<AMat>>,
}

impl FamilyTemplate {
    pub fn instantiate(&self, alg: &Algebra, t: &Scalar) -> Result<ProjComplex> {
        let f = alg.field();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(n, coeffs)| {
                let mut acc = AMat::zeros(alg, self.comps[n].len(), self.comps[n + 1].len());
                let mut power = f.one();
                for c in coeffs {
                    acc = acc.add(alg, &c.scale(alg, &power))?;
                    power = f.mul(&power, t);
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        ProjComplex::new(alg, self.lo, self.comps.clone(), diffs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySample {
    pub parameter: String,
    pub minimal: bool,
    pub indecomposable: bool,
    pub hr: usize,
    /// Index of an earlier sample isomorphic to this one.
    pub collides_with: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyWitness {
    pub samples: Vec<FamilySample>,
    pub classes: usize,
    pub common_hr: Option<usize>,
    pub hr_constant: bool,
    /// Minimal indecomposable samples that are pairwise non-isomorphic.
    pub witnesses: usize,
    pub ok: bool,
}

fn same_class(x: &ProjComplex, y: &ProjComplex, both_indecomposable: bool) -> Result<bool> {
    if both_indecomposable && x.is_homotopy_minimal() && y.is_homotopy_minimal() {
        Ok(indecomposable_iso(x, y)?.is_some())
    } else {
        Ok(is_isomorphic(x, y)?.is_some())
    }
}

/// Checks minimality, indecomposability, a common `hr` and pairwise non-isomorphism.
pub fn probe_instances(labels: Vec<String>, xs: &[ProjComplex]) -> Result<FamilyWitness> {
    let mut samples: Vec<FamilySample> = vec![];
    let mut classes: Vec<usize> = vec![];
    for (i, (label, x)) in labels.into_iter().zip(xs).enumerate() {
        let indecomposable = is_indecomposable(x)?;
        let hits = classes
            .par_iter()
            .map(|&j| same_class(x, &xs[j], indecomposable && samples[j].indecomposable).map(|b| b.then_some(j)))
            .collect::<Result<Vec<_>>>()?;
        let collides_with = hits.into_iter().flatten().next();
        if collides_with.is_none() {
            classes.push(i);
        }
        samples.push(FamilySample {
            parameter: label,
            minimal: x.is_homotopy_minimal(),
            indecomposable,
            hr: x.range_stats().hr,
            collides_with,
        });
    }
    let common_hr = samples.first().map(|s| s.hr);
    let hr_constant = samples.iter().all(|s| Some(s.hr) == common_hr);
    let witnesses = classes.iter().filter(|&&j| samples[j].minimal && samples[j].indecomposable).count();
    let ok = hr_constant && samples.iter().all(|s| s.minimal && s.indecomposable && s.collides_with.is_none());
    Ok(FamilyWitness { classes: classes.len(), common_hr, hr_constant, witnesses, ok, samples })
}

pub fn family_probe(alg: &Algebra, template: &FamilyTemplate, samples: &[Scalar]) -> Result<FamilyWitness> {
    let f = alg.field();
    let xs = samples.iter().map(|t| template.instantiate(alg, t)).collect::<Result<Vec<_>>>()?;
    probe_instances(samples.iter().map(|t| f.format(t)).collect(), &xs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No new indecomposables appear when the multiplicity bound is raised to its maximum.
    FiniteWithinBounds,
    /// Raising the multiplicity bound produced new indecomposables.
    Growing,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyLevel {
    pub m: usize,
    pub count: usize,
    pub count_below: Option<usize>,
    pub verdict: Verdict,
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCoherence {
    pub degree: usize,
    pub levels: Vec<DichotomyLevel>,
    pub verdicts_agree: bool,
    pub transfers_checked: usize,
    pub transfer_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCoherence {
    pub small: FamilyWitness,
    pub big: Option<FamilyWitness>,
    pub ranges_ok: bool,
    pub verdicts_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomySummary {
    pub field: String,
    pub levels: Vec<DichotomyLevel>,
    pub monotone: bool,
    pub extension: Option<ExtensionCoherence>,
    pub family: Option<FamilyCoherence>,
}

fn levels(alg: &Algebra, b: &Bounds) -> Result<(Vec<DichotomyLevel>, Vec<ClassificationReport>)> {
    let mut levels = vec![];
    let mut reports = vec![];
    for m in 0..=b.m {
        let report = enumerate_indecomposables(alg, &Bounds { m, ..b.clone() })?;
        let count = report.representatives.len();
        let count_below = (b.max_mult >= 2)
            .then(|| report.representatives.iter().filter(|r| r.max_multiplicity() < b.max_mult).count());
        let verdict = match count_below {
            None => Verdict::Undetermined,
            Some(c) if c == count => Verdict::FiniteWithinBounds,
            Some(_) => Verdict::Growing,
        };
        levels.push(DichotomyLevel { m, count, count_below, verdict, histogram: report.histogram.clone() });
        reports.push(report);
    }
    Ok((levels, reports))
}

fn check_monotone(reports: &[ClassificationReport]) -> Result<()> {
    for w in reports.windows(2) {
        for r in &w[0].representatives {
            if !w[1].representatives.iter().any(|s| s.complex == r.complex && s.hr == r.hr) {
                return Err(Error::Invariant(format!(
                    "representative with multiplicities {} at m = {} missing at m = {}",
                    vector_key(&r.multiplicities),
                    w[0].bounds.m,
                    w[1].bounds.m
                )));
            }
        }
    }
    Ok(())
}

/// Every summand of `X ⊗ K` must appear among the representatives over `K`, with range in
/// `[hr(X)/l, hr(X)]`.
fn check_transfer(small: &[ClassificationReport], big: &[ClassificationReport], ctx: &ExtensionContext) -> Result<(usize, bool)> {
    let l = ctx.degree();
    let mut checked = 0;
    let mut ok = true;
    for (rs, rb) in small.iter().zip(big) {
        for r in &rs.representatives {
            for s in decompose_complex(&tensor_complex(&r.complex, ctx)?)? {
                checked += 1;
                let hr = s.complex.range_stats().hr;
                let mut found = false;
                for t in rb.representatives.iter().filter(|t| t.hr == hr) {
                    if is_isomorphic(&s.complex, &t.complex)?.is_some() {
                        found = true;
                        break;
                    }
                }
                ok &= found && hr <= r.hr && l * hr >= r.hr;
            }
        }
    }
    Ok((checked, ok))
}

/// Representation-type summary over `m = 0..=b.m` (finite fields) or along a one-parameter
/// family (any field), optionally compared across a field extension.
pub fn c_dichotomy_report(
    alg: &Algebra,
    ctx: Option<&ExtensionContext>,
    b: &Bounds,
    family: Option<(&FamilyTemplate, &[Scalar])>,
) -> Result<DichotomySummary> {
    let f = alg.field();
    if let Some(c) = ctx {
        if c.small() != alg {
            return Err(Error::AlgebraMismatch);
        }
    }
    let mut summary = DichotomySummary { field: f.to_string(), levels: vec![], monotone: true, extension: None, family: None };
    if f.is_finite() {
        let (lv, reports) = levels(alg, b)?;
        check_monotone(&reports)?;
        summary.levels = lv;
        if let Some(c) = ctx.filter(|c| c.big().field().is_finite()) {
            let (big_levels, big_reports) = levels(c.big(), b)?;
            check_monotone(&big_reports)?;
            let verdicts_agree = summary.levels.iter().zip(&big_levels).all(|(x, y)| x.verdict == y.verdict);
            let (transfers_checked, transfer_ok) = check_transfer(&reports, &big_reports, c)?;
            summary.extension =
                Some(ExtensionCoherence { degree: c.degree(), levels: big_levels, verdicts_agree, transfers_checked, transfer_ok });
        }
    } else if family.is_none() {
        return Err(Error::InfiniteField(format!("{f}: only family probes are available, pass a family")));
    }
    if let Some((template, params)) = family {
        let small = family_probe(alg, template, params)?;
        let (big, ranges_ok) = match ctx {
            Some(c) => {
                let xs = params
                    .iter()
                    .map(|t| tensor_complex(&template.instantiate(alg, t)?, c))
                    .collect::<Result<Vec<_>>>()?;
                let w = probe_instances(params.iter().map(|t| f.format(t)).collect(), &xs)?;
                let l = c.degree();
                let ranges_ok = small.samples.iter().zip(&w.samples).all(|(s, t)| t.hr <= s.hr && l * t.hr >= s.hr);
                (Some(w), ranges_ok)
            }
            None => (None, true),
        };
        let verdicts_agree = big.as_ref().is_none_or(|w| w.ok == small.ok);
        summary.family = Some(FamilyCoherence { small, big, ranges_ok, verdicts_agree });
    }
    Ok(summary)
}
