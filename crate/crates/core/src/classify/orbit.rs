//! Orbits of radical differentials under the automorphism groups of the terms.
//!
//! For a fixed shape (the list of indecomposable projectives in each degree) a minimal
//! complex is a tuple of differentials whose entries lie in the radical. Two such tuples give
//! isomorphic complexes exactly when they differ by automorphisms `g_n` of the terms:
//! `d^n ↦ g_n^{-1} d^n g_{n+1}`. The group acts linearly on the coefficient vector of the
//! differentials, so every orbit is swept with a breadth-first closure under a generating set
//! of each `Aut(X^n)`: elementary transvections `1 + c·b·E_ij` for basis elements `b` of the
//! corner `e_{s_i} A e_{s_j}`, and diagonal units of each local corner ring.

use crate::algebra::{AlgElem, Algebra};
use crate::complex::amat::AMat;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// One coordinate of the differential coefficient vector.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Unknown {
    pub deg: usize,
    pub row: usize,
    pub col: usize,
    pub basis: usize,
}

pub(crate) fn unknowns(alg: &Algebra, comps: &[Vec<usize>]) -> Vec<Unknown> {
    let mut out = vec![];
    for deg in 0..comps.len().saturating_sub(1) {
        for (row, &s) in comps[deg].iter().enumerate() {
            for (col, &t) in comps[deg + 1].iter().enumerate() {
                for b in alg.peirce(s, t) {
                    if alg.basis()[b].radical {
                        out.push(Unknown { deg, row, col, basis: b });
                    }
                }
            }
        }
    }
    out
}

fn fin(a: &Scalar) -> u32 {
    match a {
        Scalar::Fin(v) => *v,
        _ => unreachable!("finite-field scalar expected"),
    }
}

pub(crate) fn decode(alg: &Algebra, comps: &[Vec<usize>], unknowns: &[Unknown], digits: &[u32]) -> Vec<AMat> {
    let mut diffs: Vec<AMat> =
        (0..comps.len().saturating_sub(1)).map(|n| AMat::zeros(alg, comps[n].len(), comps[n + 1].len())).collect();
    for (u, &d) in unknowns.iter().zip(digits) {
        if d != 0 {
            let mut e = diffs[u.deg].get(u.row, u.col).clone();
            e[u.basis] = Scalar::Fin(d);
            diffs[u.deg].set(u.row, u.col, e);
        }
    }
    diffs
}

fn encode(unknowns: &[Unknown], diffs: &[AMat]) -> Vec<u32> {
    unknowns.iter().map(|u| fin(&diffs[u.deg].get(u.row, u.col)[u.basis])).collect()
}

pub(crate) fn digits_of(mut code: u64, q: u32, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (code % q as u64) as u32;
            code /= q as u64;
            d
        })
        .collect()
}

fn code_of(digits: &[u32], q: u32) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

/// Every element of the corner ring `e_s A e_s`, enumerated over the finite base field.
fn corner_elements(alg: &Algebra, s: usize) -> Vec<AlgElem> {
    let f = alg.field();
    let elems = f.elements().expect("finite field");
    let idx = alg.peirce(s, s);
    let q = elems.len() as u64;
    (0..q.pow(idx.len() as u32))
        .map(|code| {
            let mut x = alg.zero();
            for (k, d) in digits_of(code, q as u32, idx.len()).into_iter().enumerate() {
                x[idx[k]] = elems[d as usize].clone();
            }
            x
        })
        .collect()
}

/// Pairs `(g, g^{-1})` generating `Aut(⊕ A e_{s_i})`.
fn generators(alg: &Algebra, slots: &[usize]) -> Vec<(AMat, AMat)> {
    let f = alg.field();
    let nonzero: Vec<Scalar> = f.elements().expect("finite field").into_iter().skip(1).collect();
    let id = AMat::identity(alg, slots);
    let mut out = vec![];
    for (i, &s) in slots.iter().enumerate() {
        for (j, &t) in slots.iter().enumerate() {
            if i == j {
                continue;
            }
            for b in alg.peirce(s, t) {
                for c in &nonzero {
                    let x = alg.scale(&alg.elem(b), c);
                    let (mut g, mut h) = (id.clone(), id.clone());
                    g.set(i, j, x.clone());
                    h.set(i, j, alg.neg(&x));
                    out.push((g, h));
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for (i, &s) in slots.iter().enumerate() {
        if !seen.insert(s) {
            continue;
        }
        for u in corner_elements(alg, s) {
            if u == alg.idempotent(s) {
                continue;
            }
            if let Some(v) = alg.corner_inverse(&u, s) {
                let (mut g, mut h) = (id.clone(), id.clone());
                g.set(i, i, u);
                h.set(i, i, v);
                out.push((g, h));
            }
        }
    }
    out
}

/// Linear action of the generators on coefficient vectors, as column images.
fn action_columns(alg: &Algebra, comps: &[Vec<usize>], unknowns: &[Unknown]) -> Result<Vec<Vec<Vec<u32>>>> {
    let n = unknowns.len();
    let mut out = vec![];
    for deg in 0..comps.len() {
        if comps[deg].is_empty() {
            continue;
        }
        for (g, h) in generators(alg, &comps[deg]) {
            let mut cols = Vec::with_capacity(n);
            for u in 0..n {
                let mut digits = vec![0; n];
                digits[u] = 1;
                let mut diffs = decode(alg, comps, unknowns, &digits);
                if deg > 0 {
                    diffs[deg - 1] = diffs[deg - 1].mul(alg, &g)?;
                }
                if deg < diffs.len() {
                    diffs[deg] = h.mul(alg, &diffs[deg])?;
                }
                if diffs.iter().any(|d| !d.is_radical(alg)) {
                    return Err(Error::Invariant("automorphism left the radical".into()));
                }
                cols.push(encode(unknowns, &diffs));
            }
            out.push(cols);
        }
    }
    Ok(out)
}

/// Finite-field addition and multiplication on packed element indices.
struct Tables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Tables {
    fn new(f: &Field) -> Tables {
        let elems = f.elements().expect("finite field");
        let q = elems.len();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = fin(&f.add(&elems[a], &elems[b]));
                mul[a * q + b] = fin(&f.mul(&elems[a], &elems[b]));
            }
        }
        Tables { q, add, mul }
    }

    fn apply(&self, cols: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; v.len()];
        for (u, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&cols[u]) {
                let p = self.mul[c as usize * self.q + x as usize];
                *o = self.add[*o as usize * self.q + p as usize];
            }
        }
        out
    }
}

/// Bitset over all coefficient codes of a shape.
struct Visited(Vec<u64>);

impl Visited {
    fn new(total: u64) -> Visited {
        Visited(vec![0; total.div_ceil(64) as usize])
    }
    fn insert(&mut self, c: u64) -> bool {
        let (w, b) = ((c / 64) as usize, c % 64);
        let fresh = self.0[w] >> b & 1 == 0;
        self.0[w] |= 1 << b;
        fresh
    }
    fn contains(&self, c: u64) -> bool {
        self.0[(c / 64) as usize] >> (c % 64) & 1 == 1
    }
}

/// Minimal code of every orbit, sweeping candidates in ascending or descending order.
pub(crate) fn orbit_minima(alg: &Algebra, comps: &[Vec<usize>], unknowns: &[Unknown], descending: bool) -> Result<Vec<u64>> {
    let f = alg.field();
    let q = f.order().ok_or_else(|| Error::InfiniteField(f.to_string()))?;
    let n = unknowns.len();
    let total = (q as u64).pow(n as u32);
    let gens = action_columns(alg, comps, unknowns)?;
    let mut visited = Visited::new(total);
    let mut minima = vec![];
    let codes: Box<dyn Iterator<Item = u64>> = if descending { Box::new((0..total).rev()) } else { Box::new(0..total) };
    if q == 2 {
        let masks: Vec<Vec<u64>> =
            gens.iter().map(|cols| cols.iter().map(|c| code_of(c, 2)).collect()).collect();
        for start in codes {
            if visited.contains(start) {
                continue;
            }
            visited.insert(start);
            let (mut stack, mut min) = (vec![start], start);
            while let Some(c) = stack.pop() {
                min = min.min(c);
                for cols in &masks {
                    let (mut out, mut v) = (0u64, c);
                    while v != 0 {
                        out ^= cols[v.trailing_zeros() as usize];
                        v &= v - 1;
                    }
                    if visited.insert(out) {
                        stack.push(out);
                    }
                }
            }
            minima.push(min);
        }
    } else {
        let tables = Tables::new(f);
        for start in codes {
            if visited.contains(start) {
                continue;
            }
            visited.insert(start);
            let (mut stack, mut min) = (vec![start], start);
            while let Some(c) = stack.pop() {
                min = min.min(c);
                let v = digits_of(c, q, n);
                for cols in &gens {
                    let out = code_of(&tables.apply(cols, &v), q);
                    if visited.insert(out) {
                        stack.push(out);
                    }
                }
            }
            minima.push(min);
        }
    }
    minima.sort_unstable();
    Ok(minima)
}
