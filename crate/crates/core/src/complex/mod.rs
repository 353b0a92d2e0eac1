//! Bounded complexes of finitely generated projective modules over a basic algebra.

pub mod amat;
pub mod chain;
pub mod decompose;
pub mod minimize;
pub mod resolution;

use std::fmt;

pub use amat::AMat;
pub use chain::{hom_space, ChainMap, GradedMap, HomSpace, Homotopy};
pub use decompose::{decompose_complex, is_isomorphic, ComplexSummand, IsoCertificate};
pub use minimize::{minimize, Equivalence};
pub use resolution::{projective_resolution, resolve_complex, Resolution};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Unknown,
    Yes,
    No,
}

/// A complex `X^lo → … → X^hi` where each `X^n` is a direct sum of indecomposable
/// projectives `A e_s` listed by slot, and `d^n : X^n → X^{n+1}` is an [`AMat`] with rows
/// indexed by the summands of `X^n`. Empty end terms are trimmed; the zero complex has no
/// terms.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    algebra: Algebra,
    lo: i64,
    comps: Vec<Vec<usize>>,
    diffs: Vec<AMat>,
    minimal: Minimality,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.lo == other.lo && self.comps == other.comps && self.diffs == other.diffs
    }
}
impl Eq for ProjComplex {}

/// Cohomological range data: `hl` is the largest cohomology dimension, `hw` the width of the
/// cohomological support and `hr = hl · hw`. Acyclic complexes have all three equal to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeStats {
    pub hl: usize,
    pub hw: usize,
    pub hr: usize,
    pub cohomology: Vec<(i64, usize)>,
}

impl RangeStats {
    pub fn from_cohomology(cohomology: Vec<(i64, usize)>) -> RangeStats {
        let nonzero: Vec<i64> = cohomology.iter().filter(|(_, d)| *d > 0).map(|(n, _)| *n).collect();
        let hl = cohomology.iter().map(|(_, d)| *d).max().unwrap_or(0);
        let hw = match (nonzero.first(), nonzero.last()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        };
        let stats = RangeStats { hl, hw, hr: hl * hw, cohomology };
        assert!(stats.hr == stats.hl * stats.hw && ((stats.hl == 0) == (stats.hw == 0)));
        stats
    }
}

impl ProjComplex {
    /// Validates shapes, corner membership of every entry and `d ∘ d = 0`.
    pub fn new(algebra: &Algebra, lo: i64, comps: Vec<Vec<usize>>, diffs: Vec<AMat>) -> Result<ProjComplex> {
        if diffs.len() != comps.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!("{} terms need {} differentials", comps.len(), comps.len().saturating_sub(1))));
        }
        for c in comps.iter().flatten() {
            if *c >= algebra.num_slots() {
                return Err(Error::UnknownName(format!("projective at slot {}", c + 1)));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if !d.fits(algebra, &comps[k], &comps[k + 1]) {
                return Err(Error::InvalidComplex(format!("differential in degree {} has entries outside e_i A e_j", lo + k as i64)));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k].mul(algebra, &diffs[k + 1])?.is_zero(algebra) {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {}", lo + k as i64)));
            }
        }
        Ok(Self::unchecked(algebra, lo, comps, diffs))
    }

    pub(crate) fn unchecked(algebra: &Algebra, mut lo: i64, mut comps: Vec<Vec<usize>>, mut diffs: Vec<AMat>) -> ProjComplex {
        while comps.first().is_some_and(|c| c.is_empty()) {
            comps.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while comps.last().is_some_and(|c| c.is_empty()) {
            comps.pop();
            diffs.pop();
        }
        if comps.is_empty() {
            lo = 0;
        }
        ProjComplex { algebra: algebra.clone(), lo, comps, diffs, minimal: Minimality::Unknown }
    }

    pub fn zero(algebra: &Algebra) -> ProjComplex {
        Self::unchecked(algebra, 0, vec![], vec![])
    }

    /// `⊕ A e_s` concentrated in one degree.
    pub fn stalk(algebra: &Algebra, slots: Vec<usize>, degree: i64) -> Result<ProjComplex> {
        Self::new(algebra, degree, vec![slots], vec![])
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Top degree; `lo − 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }
    pub fn minimal_flag(&self) -> Minimality {
        self.minimal
    }
    pub(crate) fn with_flag(mut self, flag: Minimality) -> ProjComplex {
        self.minimal = flag;
        self
    }

    /// Summand slots of `X^n` (empty outside the support).
    pub fn comps(&self, n: i64) -> &[usize] {
        if n < self.lo || n > self.hi() {
            return &[];
        }
        &self.comps[(n - self.lo) as usize]
    }

    /// `d^n : X^n → X^{n+1}` (a zero matrix of the right shape outside the support).
    pub fn diff(&self, n: i64) -> AMat {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        AMat::zeros(&self.algebra, self.comps(n).len(), self.comps(n + 1).len())
    }

    /// Multiplicity of each `A e_s` in `X^n`.
    pub fn multiplicity(&self, n: i64) -> Vec<usize> {
        let mut m = vec![0; self.algebra.num_slots()];
        for &s in self.comps(n) {
            m[s] += 1;
        }
        m
    }

    pub fn total_multiplicity(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    pub fn realized_dim(&self, n: i64) -> usize {
        amat::realized_dim(&self.algebra, self.comps(n))
    }

    pub fn realized_diff(&self, n: i64) -> Matrix {
        self.diff(n).realize(&self.algebra, self.comps(n), self.comps(n + 1))
    }

    /// Every differential entry lies in the radical.
    pub fn is_homotopy_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical(&self.algebra))
    }

    /// Sets the minimality flag from [`ProjComplex::is_homotopy_minimal`].
    pub fn mark_minimality(mut self) -> ProjComplex {
        self.minimal = if self.is_homotopy_minimal() { Minimality::Yes } else { Minimality::No };
        self
    }

    /// `dim_k H^n(X)` for `n` in the support.
    pub fn cohomology(&self) -> Vec<(i64, usize)> {
        let ranks: Vec<usize> = (self.lo - 1..=self.hi()).map(|n| self.realized_diff(n).rank()).collect();
        self.degrees()
            .map(|n| {
                let k = (n - self.lo) as usize;
                (n, self.realized_dim(n) - ranks[k + 1] - ranks[k])
            })
            .collect()
    }

    /// Dimension vector (per slot) of `H^n(X)`.
    pub fn cohomology_vector(&self, n: i64) -> Vec<usize> {
        let slots_here = amat::realized_left_slots(&self.algebra, self.comps(n));
        let slots_next = amat::realized_left_slots(&self.algebra, self.comps(n + 1));
        let slots_prev = amat::realized_left_slots(&self.algebra, self.comps(n - 1));
        let (out, inc) = (self.realized_diff(n), self.realized_diff(n - 1));
        (0..self.algebra.num_slots())
            .map(|s| {
                let here: Vec<usize> = (0..slots_here.len()).filter(|&i| slots_here[i] == s).collect();
                let next: Vec<usize> = (0..slots_next.len()).filter(|&i| slots_next[i] == s).collect();
                let prev: Vec<usize> = (0..slots_prev.len()).filter(|&i| slots_prev[i] == s).collect();
                let r_out = sub_rank(&out, &next, &here);
                let r_in = sub_rank(&inc, &here, &prev);
                here.len() - r_out - r_in
            })
            .collect()
    }

    pub fn range_stats(&self) -> RangeStats {
        RangeStats::from_cohomology(self.cohomology())
    }

    /// `X[n]` with `X[n]^i = X^{i+n}` and differential `(−1)^n d`.
    pub fn shift(&self, n: i64) -> ProjComplex {
        let diffs = if n % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg(&self.algebra)).collect()
        };
        let lo = if self.is_zero() { 0 } else { self.lo - n };
        Self::unchecked(&self.algebra, lo, self.comps.clone(), diffs).with_flag(self.minimal)
    }

    /// Drops every term in degrees below `t`.
    pub fn brutal_truncate(&self, t: i64) -> ProjComplex {
        if t <= self.lo {
            return self.clone();
        }
        if t > self.hi() {
            return Self::zero(&self.algebra);
        }
        let k = (t - self.lo) as usize;
        let flag = if self.minimal == Minimality::Yes { Minimality::Yes } else { Minimality::Unknown };
        Self::unchecked(&self.algebra, t, self.comps[k..].to_vec(), self.diffs[k..].to_vec()).with_flag(flag)
    }

    /// Degreewise direct sum (summands of `self` listed first in each degree).
    pub fn direct_sum(&self, other: &ProjComplex) -> Result<ProjComplex> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let comps = (lo..=hi).map(|n| [self.comps(n), other.comps(n)].concat()).collect();
        let diffs = (lo..hi).map(|n| self.diff(n).direct_sum(&self.algebra, &other.diff(n))).collect();
        Ok(Self::unchecked(&self.algebra, lo, comps, diffs))
    }

    /// Multi-line description: one line per term and per nonzero differential.
    pub fn describe(&self) -> String {
        format!("{self}")
    }
}

fn sub_rank(m: &Matrix, rows: &[usize], cols: &[usize]) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let f = m.field();
    let mut sub = Matrix::zeros(f, rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            sub.set(i, j, m.get(r, c).clone());
        }
    }
    sub.rank()
}

impl fmt::Display for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        let a = &self.algebra;
        for n in self.degrees() {
            let names: Vec<String> = self.comps(n).iter().map(|&s| format!("P{}", a.slot_name(s))).collect();
            writeln!(f, "deg {n}: {}", names.join(" + "))?;
            if n < self.hi() {
                let d = self.diff(n);
                let rows: Vec<String> = (0..d.rows())
                    .map(|i| format!("[{}]", (0..d.cols()).map(|j| crate::spec::format_element(a, d.get(i, j))).collect::<Vec<_>>().join(", ")))
                    .collect();
                writeln!(f, "  d{n} = [{}]", rows.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
