use std::fmt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.format(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        for x in rows.iter().flatten() {
            field.normalize(x)?;
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let v = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, v).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.mul_add(a, b, out.get(i, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.mul_add(a, b, &acc);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Field, &Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("elementwise operation".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(&self.field, a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack".into()));
        }
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        m.put_block(0, 0, self);
        m.put_block(0, self.cols, other);
        Ok(m)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack".into()));
        }
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols);
        m.put_block(0, 0, self);
        m.put_block(self.rows, 0, other);
        Ok(m)
    }

    /// Gauss-Jordan elimination with the first nonzero entry of each column as pivot.
    pub fn echelon(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if f.is_zero(rv) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rref(&self) -> Matrix {
        self.echelon().rref
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let Echelon { rref, pivots } = self.echelon();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = vec![];
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(rref.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let f = &self.field;
        let aug = self.hstack(&Matrix::from_cols(f, self.rows, &[b.to_vec()]))?;
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rref.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(rref.block(0, n, n, n))
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }
}

/// Incrementally built subspace of `F^dim`, able to test membership and express members in
/// terms of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    dim: usize,
    /// Echelon rows (leading entry 1 at `pivot`) with the combination of inserted vectors
    /// producing them.
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn new(field: &Field, dim: usize) -> Subspace {
        Subspace { field: field.clone(), dim, rows: vec![], basis: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Reduces `v` against the echelon rows; returns the residue and the combination of
    /// basis vectors that was subtracted.
    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut comb = vec![f.zero(); self.basis.len()];
        for (p, row, rc) in &self.rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in *p..self.dim {
                if !f.is_zero(&row[j]) {
                    w[j] = f.sub(&w[j], &f.mul(&c, &row[j]));
                }
            }
            for (k, x) in rc.iter().enumerate() {
                if !f.is_zero(x) {
                    comb[k] = f.add(&comb[k], &f.mul(&c, x));
                }
            }
        }
        (w, comb)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let (w, _) = self.reduce(v);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in terms of the inserted basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (w, comb) = self.reduce(v);
        if w.iter().all(|x| self.field.is_zero(x)) {
            Some(comb)
        } else {
            None
        }
    }

    /// Adds `v` to the basis if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let (mut w, comb) = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else { return false };
        let k = self.basis.len();
        // new row = (v - Σ comb_i b_i) / w_p ; track combination over basis incl. v
        let inv = f.inv(&w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        let mut rc: Vec<Scalar> = comb.iter().map(|c| f.neg(&f.mul(c, &inv))).collect();
        rc.push(inv);
        for (_, _, other) in self.rows.iter_mut() {
            other.push(f.zero());
        }
        // keep rows fully reduced at the new pivot
        for (_, row, orc) in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.dim {
                if !f.is_zero(&w[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&c, &w[j]));
                }
            }
            for (j, x) in rc.iter().enumerate() {
                if !f.is_zero(x) {
                    orc[j] = f.sub(&orc[j], &f.mul(&c, x));
                }
            }
        }
        let pos = self.rows.iter().position(|(q, _, _)| *q > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, (p, w, rc));
        self.basis.push(v);
        debug_assert_eq!(self.basis.len(), k + 1);
        true
    }
}
