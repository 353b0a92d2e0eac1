//! Matrices with entries in the algebra, acting on row vectors from the right, and their
//! realization as field matrices on `⊕ A e_s`.

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};

/// `rows × cols` matrix of algebra elements. As a map `⊕_i A e_{s_i} → ⊕_j A e_{t_j}` it sends
/// a row vector `x` to `x · M`, so entry `(i, j)` lies in `e_{s_i} A e_{t_j}` and the composite
/// "`F` then `G`" is the product `F · G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AMat {
    rows: usize,
    cols: usize,
    entries: Vec<AlgElem>,
}

impl AMat {
    pub fn zeros(alg: &Algebra, rows: usize, cols: usize) -> AMat {
        AMat { rows, cols, entries: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: &Algebra, slots: &[usize]) -> AMat {
        let mut m = AMat::zeros(alg, slots.len(), slots.len());
        for (i, &s) in slots.iter().enumerate() {
            m.set(i, i, alg.idempotent(s));
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<AlgElem>) -> AMat {
        assert_eq!(entries.len(), rows * cols);
        AMat { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &AlgElem {
        &self.entries[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: AlgElem) {
        self.entries[r * self.cols + c] = v;
    }
    pub fn entries(&self) -> &[AlgElem] {
        &self.entries
    }

    pub fn mul(&self, alg: &Algebra, other: &AMat) -> Result<AMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = AMat::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if alg.is_zero(b) {
                        continue;
                    }
                    let v = alg.add(out.get(i, j), &alg.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &AMat, op: impl Fn(&AlgElem, &AlgElem) -> AlgElem) -> Result<AMat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("algebra matrices of different shapes".into()));
        }
        Ok(AMat { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| op(a, b)).collect() })
    }

    pub fn add(&self, alg: &Algebra, other: &AMat) -> Result<AMat> {
        self.zip(other, |a, b| alg.add(a, b))
    }

    pub fn sub(&self, alg: &Algebra, other: &AMat) -> Result<AMat> {
        self.zip(other, |a, b| alg.sub(a, b))
    }

    pub fn neg(&self, alg: &Algebra) -> AMat {
        AMat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| alg.neg(a)).collect() }
    }

    pub fn scale(&self, alg: &Algebra, c: &Scalar) -> AMat {
        AMat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| alg.scale(a, c)).collect() }
    }

    pub fn is_zero(&self, alg: &Algebra) -> bool {
        self.entries.iter().all(|a| alg.is_zero(a))
    }

    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.entries.iter().all(|a| alg.is_radical(a))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AMat {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        AMat { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, alg: &Algebra, other: &AMat) -> AMat {
        let mut out = AMat::zeros(alg, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Whether entry `(i, j)` lies in `e_{src_i} A e_{tgt_j}` for every entry.
    pub fn fits(&self, alg: &Algebra, src: &[usize], tgt: &[usize]) -> bool {
        self.rows == src.len()
            && self.cols == tgt.len()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| alg.in_corner(self.get(i, j), src[i], tgt[j])))
    }

    /// Field matrix (column convention) of the map `⊕ A e_{src_i} → ⊕ A e_{tgt_j}`.
    pub fn realize(&self, alg: &Algebra, src: &[usize], tgt: &[usize]) -> Matrix {
        let (so, sb) = layout(alg, src);
        let (to, tb) = layout(alg, tgt);
        let mut m = Matrix::zeros(alg.field(), *to.last().unwrap(), *so.last().unwrap());
        for i in 0..self.rows {
            for (bi, &b) in sb[i].iter().enumerate() {
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if alg.is_zero(e) {
                        continue;
                    }
                    let prod = alg.mul(&alg.elem(b), e);
                    for (ci, &c) in tb[j].iter().enumerate() {
                        m.set(to[j] + ci, so[i] + bi, prod[c].clone());
                    }
                }
            }
        }
        m
    }

    /// Reads an algebra matrix back from a realized module map, via the images of the
    /// generators `e_{src_i}`.
    pub fn from_realized(alg: &Algebra, src: &[usize], tgt: &[usize], m: &Matrix) -> AMat {
        let (so, sb) = layout(alg, src);
        let mut out = AMat::zeros(alg, src.len(), tgt.len());
        for (i, &s) in src.iter().enumerate() {
            let gen = sb[i].iter().position(|&b| b == alg.idempotent_index(s)).unwrap();
            let img = m.col(so[i] + gen);
            let row = realized_to_row(alg, tgt, &img);
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Offsets and basis index lists of the realized space `⊕ A e_{s}`.
pub fn layout(alg: &Algebra, slots: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let bases: Vec<Vec<usize>> = slots.iter().map(|&s| alg.projective_basis(s)).collect();
    let mut off = vec![0];
    for b in &bases {
        off.push(off.last().unwrap() + b.len());
    }
    (off, bases)
}

pub fn realized_dim(alg: &Algebra, slots: &[usize]) -> usize {
    slots.iter().map(|&s| alg.projective_basis(s).len()).sum()
}

/// Left slot of each realized basis vector.
pub fn realized_left_slots(alg: &Algebra, slots: &[usize]) -> Vec<usize> {
    slots.iter().flat_map(|&s| alg.projective_basis(s)).map(|b| alg.basis()[b].left).collect()
}

/// Realized vector to a row of algebra elements (component `j` in `A e_{slots_j}`).
pub fn realized_to_row(alg: &Algebra, slots: &[usize], v: &[Scalar]) -> Vec<AlgElem> {
    let (off, bases) = layout(alg, slots);
    bases
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let mut e = alg.zero();
            for (k, &idx) in b.iter().enumerate() {
                e[idx] = v[off[j] + k].clone();
            }
            e
        })
        .collect()
}

pub fn row_to_realized(alg: &Algebra, slots: &[usize], row: &[AlgElem]) -> Vec<Scalar> {
    let (_, bases) = layout(alg, slots);
    bases.iter().zip(row).flat_map(|(b, e)| b.iter().map(|&idx| e[idx].clone()).collect::<Vec<_>>()).collect()
}

/// Realized left multiplication by `a` on `⊕ A e_{s}`.
pub fn left_action(alg: &Algebra, slots: &[usize], a: &[Scalar]) -> Matrix {
    let (off, bases) = layout(alg, slots);
    let n = *off.last().unwrap();
    let mut m = Matrix::zeros(alg.field(), n, n);
    for (j, b) in bases.iter().enumerate() {
        for (k, &idx) in b.iter().enumerate() {
            let prod = alg.mul(a, &alg.elem(idx));
            for (r, &c) in b.iter().enumerate() {
                m.set(off[j] + r, off[j] + k, prod[c].clone());
            }
        }
    }
    m
}
