//! Chain maps, homotopies and hom spaces between complexes of projectives.

use std::collections::BTreeMap;

use super::amat::AMat;
use super::ProjComplex;
use crate::algebra::{Algebra, AssocAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar, Subspace};

/// A family of maps `X^n → Y^{n+shift}`: a chain map for shift 0, a homotopy for shift −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub shift: i64,
    maps: BTreeMap<i64, AMat>,
}

pub type ChainMap = GradedMap;
pub type Homotopy = GradedMap;

impl GradedMap {
    pub fn zero(source: &ProjComplex, target: &ProjComplex, shift: i64) -> GradedMap {
        GradedMap { source: source.clone(), target: target.clone(), shift, maps: BTreeMap::new() }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let alg = x.algebra();
        let maps = x.degrees().map(|n| (n, AMat::identity(alg, x.comps(n)))).collect();
        let mut g = GradedMap { source: x.clone(), target: x.clone(), shift: 0, maps };
        g.prune();
        g
    }

    /// Builds from per-degree components; missing degrees are zero.
    pub fn from_components(source: &ProjComplex, target: &ProjComplex, shift: i64, maps: BTreeMap<i64, AMat>) -> Result<GradedMap> {
        let alg = source.algebra();
        for (&n, m) in &maps {
            if !m.fits(alg, source.comps(n), target.comps(n + shift)) {
                return Err(Error::ShapeMismatch(format!("map component in degree {n}")));
            }
        }
        let mut g = GradedMap { source: source.clone(), target: target.clone(), shift, maps };
        g.prune();
        Ok(g)
    }

    fn prune(&mut self) {
        let alg = self.source.algebra().clone();
        self.maps.retain(|_, m| m.rows() > 0 && m.cols() > 0 && !m.is_zero(&alg));
    }

    fn algebra(&self) -> &Algebra {
        self.source.algebra()
    }

    /// Component `X^n → Y^{n+shift}`.
    pub fn component(&self, n: i64) -> AMat {
        self.maps.get(&n).cloned().unwrap_or_else(|| {
            AMat::zeros(self.algebra(), self.source.comps(n).len(), self.target.comps(n + self.shift).len())
        })
    }

    pub fn components(&self) -> &BTreeMap<i64, AMat> {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// "`self` then `other`".
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.target != other.source {
            return Err(Error::ShapeMismatch("composable maps need matching complexes".into()));
        }
        let alg = self.algebra();
        let mut maps = BTreeMap::new();
        for (&n, m) in &self.maps {
            let o = other.component(n + self.shift);
            maps.insert(n, m.mul(alg, &o)?);
        }
        let mut g = GradedMap { source: self.source.clone(), target: other.target.clone(), shift: self.shift + other.shift, maps };
        g.prune();
        Ok(g)
    }

    fn combine(&self, other: &GradedMap, sign: bool) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target || self.shift != other.shift {
            return Err(Error::ShapeMismatch("maps between different complexes".into()));
        }
        let alg = self.algebra();
        let mut maps = self.maps.clone();
        for (&n, m) in &other.maps {
            let cur = self.component(n);
            maps.insert(n, if sign { cur.add(alg, m)? } else { cur.sub(alg, m)? });
        }
        let mut g = GradedMap { maps, ..self.clone() };
        g.prune();
        Ok(g)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, false)
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let alg = self.algebra().clone();
        let mut g = self.clone();
        for m in g.maps.values_mut() {
            *m = m.scale(&alg, c);
        }
        g.prune();
        g
    }

    /// `d_X^n F^{n+1} = F^n d_Y^n` in every degree.
    pub fn is_chain_map(&self) -> bool {
        if self.shift != 0 {
            return false;
        }
        let alg = self.algebra();
        let (x, y) = (&self.source, &self.target);
        let lo = x.lo().min(y.lo()) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        (lo..=hi).all(|n| {
            let l = x.diff(n).mul(alg, &self.component(n + 1)).unwrap();
            let r = self.component(n).mul(alg, &y.diff(n)).unwrap();
            l == r
        })
    }

    /// The null-homotopic chain map `d h + h d` of a homotopy `h`:
    /// `F^n = d_X^n H^{n+1} + H^n d_Y^{n−1}`.
    pub fn boundary(&self) -> Result<ChainMap> {
        if self.shift != -1 {
            return Err(Error::ShapeMismatch("boundary of a map that is not a homotopy".into()));
        }
        let alg = self.algebra();
        let (x, y) = (&self.source, &self.target);
        let mut maps = BTreeMap::new();
        for n in x.degrees() {
            let a = x.diff(n).mul(alg, &self.component(n + 1))?;
            let b = self.component(n).mul(alg, &y.diff(n - 1))?;
            maps.insert(n, a.add(alg, &b)?);
        }
        let mut g = GradedMap { source: x.clone(), target: y.clone(), shift: 0, maps };
        g.prune();
        Ok(g)
    }

    /// Realized block matrix from `⊕_n X^n` to `⊕_n Y^n` (degrees in increasing order).
    pub fn realize(&self) -> Matrix {
        let alg = self.algebra();
        let (x, y) = (&self.source, &self.target);
        let xoff = degree_offsets(x);
        let yoff = degree_offsets(y);
        let rows = y.degrees().map(|n| y.realized_dim(n)).sum();
        let cols = x.degrees().map(|n| x.realized_dim(n)).sum();
        let mut m = Matrix::zeros(alg.field(), rows, cols);
        for (&n, comp) in &self.maps {
            let r = comp.realize(alg, x.comps(n), y.comps(n + self.shift));
            m.put_block(yoff[&(n + self.shift)], xoff[&n], &r);
        }
        m
    }

    /// Inverse of [`GradedMap::realize`] for block-diagonal realized module maps.
    pub fn from_realized(source: &ProjComplex, target: &ProjComplex, shift: i64, m: &Matrix) -> Result<GradedMap> {
        let alg = source.algebra();
        let xoff = degree_offsets(source);
        let yoff = degree_offsets(target);
        let mut maps = BTreeMap::new();
        for n in source.degrees() {
            let t = n + shift;
            if target.comps(t).is_empty() {
                continue;
            }
            let block = m.block(yoff[&t], xoff[&n], target.realized_dim(t), source.realized_dim(n));
            maps.insert(n, AMat::from_realized(alg, source.comps(n), target.comps(t), &block));
        }
        GradedMap::from_components(source, target, shift, maps)
    }
}

fn degree_offsets(x: &ProjComplex) -> BTreeMap<i64, usize> {
    let mut off = BTreeMap::new();
    let mut acc = 0;
    for n in x.degrees() {
        off.insert(n, acc);
        acc += x.realized_dim(n);
    }
    off
}

/// Coordinates of graded maps `X^n → Y^{n+shift}`: one unknown per basis element of each
/// `e_{s_i} A e_{t_j}`.
#[derive(Clone, Debug)]
pub struct MapLayout {
    pub shift: i64,
    /// `(degree, row, col, algebra basis index)` per unknown.
    pub unknowns: Vec<(i64, usize, usize, usize)>,
    index: BTreeMap<(i64, usize, usize, usize), usize>,
}

impl MapLayout {
    pub fn new(x: &ProjComplex, y: &ProjComplex, shift: i64) -> MapLayout {
        let alg = x.algebra();
        let mut unknowns = vec![];
        for n in x.degrees() {
            let (src, tgt) = (x.comps(n), y.comps(n + shift));
            for (i, &s) in src.iter().enumerate() {
                for (j, &t) in tgt.iter().enumerate() {
                    for b in alg.peirce(s, t) {
                        unknowns.push((n, i, j, b));
                    }
                }
            }
        }
        let index = unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        MapLayout { shift, unknowns, index }
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn to_map(&self, x: &ProjComplex, y: &ProjComplex, v: &[Scalar]) -> GradedMap {
        let alg = x.algebra();
        let mut maps: BTreeMap<i64, AMat> = BTreeMap::new();
        for (k, &(n, i, j, b)) in self.unknowns.iter().enumerate() {
            if alg.field().is_zero(&v[k]) {
                continue;
            }
            let m = maps.entry(n).or_insert_with(|| AMat::zeros(alg, x.comps(n).len(), y.comps(n + self.shift).len()));
            let mut e = m.get(i, j).clone();
            e[b] = v[k].clone();
            m.set(i, j, e);
        }
        let mut g = GradedMap { source: x.clone(), target: y.clone(), shift: self.shift, maps };
        g.prune();
        g
    }

    pub fn to_vec(&self, g: &GradedMap) -> Vec<Scalar> {
        let f = g.source.algebra().field();
        let mut v = vec![f.zero(); self.len()];
        for (&n, m) in g.components() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    for (b, c) in m.get(i, j).iter().enumerate() {
                        if !f.is_zero(c) {
                            v[self.index[&(n, i, j, b)]] = c.clone();
                        }
                    }
                }
            }
        }
        v
    }
}

/// Chain maps `X → Y`, the null-homotopic subspace, and homotopy witnesses.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub layout: MapLayout,
    pub hlayout: MapLayout,
    /// Basis of all chain maps.
    pub chain_maps: Vec<ChainMap>,
    /// Basis of the null-homotopic chain maps, each with a witness `h` (`f = d h + h d`).
    pub null_homotopic: Vec<(ChainMap, Homotopy)>,
    null_span: Subspace,
    chain_span: Subspace,
}

impl HomSpace {
    pub fn chain_dim(&self) -> usize {
        self.chain_maps.len()
    }
    pub fn null_dim(&self) -> usize {
        self.null_homotopic.len()
    }
    /// `dim Hom` in the homotopy category.
    pub fn homotopy_dim(&self) -> usize {
        self.chain_dim() - self.null_dim()
    }

    /// Coordinates of a chain map in the basis [`HomSpace::chain_maps`].
    pub fn coords(&self, f: &ChainMap) -> Option<Vec<Scalar>> {
        self.chain_span.coords(&self.layout.to_vec(f))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> ChainMap {
        let fld = self.source.algebra().field();
        let mut v = vec![fld.zero(); self.layout.len()];
        for (c, b) in coeffs.iter().zip(self.chain_span.basis()) {
            if !fld.is_zero(c) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = fld.mul_add(c, y, x);
                }
            }
        }
        self.layout.to_map(&self.source, &self.target, &v)
    }

    /// A homotopy `h` with `f = d h + h d`, if `f` is null-homotopic.
    pub fn witness(&self, f: &ChainMap) -> Option<Homotopy> {
        let c = self.null_span.coords(&self.layout.to_vec(f))?;
        let mut h = GradedMap::zero(&self.source, &self.target, -1);
        for (coef, (_, w)) in c.iter().zip(&self.null_homotopic) {
            h = h.add(&w.scale(coef)).ok()?;
        }
        Some(h)
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.null_span.contains(&self.layout.to_vec(f))
    }
}

pub fn hom_space(x: &ProjComplex, y: &ProjComplex) -> Result<HomSpace> {
    if x.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = x.algebra();
    let f = alg.field();
    let layout = MapLayout::new(x, y, 0);
    // equations: entries of d_X^n F^{n+1} − F^n d_Y^n, indexed by (n, i, j, coordinate)
    let mut eq_index: BTreeMap<(i64, usize, usize, usize), usize> = BTreeMap::new();
    for n in x.lo() - 1..=x.hi() {
        for (i, &s) in x.comps(n).iter().enumerate() {
            for (j, &t) in y.comps(n + 1).iter().enumerate() {
                for b in alg.peirce(s, t) {
                    let k = eq_index.len();
                    eq_index.insert((n, i, j, b), k);
                }
            }
        }
    }
    let mut cols: Vec<Vec<Scalar>> = vec![];
    for &(m, i, j, b) in &layout.unknowns {
        let mut col = vec![f.zero(); eq_index.len()];
        let unit = alg.elem(b);
        // as F^{(m−1)+1}: (d_X^{m−1})[r, i] · b at (m−1, r, j)
        let dx = x.diff(m - 1);
        for r in 0..dx.rows() {
            let p = alg.mul(dx.get(r, i), &unit);
            for (k, c) in p.iter().enumerate() {
                if !f.is_zero(c) {
                    let e = eq_index[&(m - 1, r, j, k)];
                    col[e] = f.add(&col[e], c);
                }
            }
        }
        // as F^m: −b · (d_Y^m)[j, c] at (m, i, c)
        let dy = y.diff(m);
        for cc in 0..dy.cols() {
            let p = alg.mul(&unit, dy.get(j, cc));
            for (k, c) in p.iter().enumerate() {
                if !f.is_zero(c) {
                    let e = eq_index[&(m, i, cc, k)];
                    col[e] = f.sub(&col[e], c);
                }
            }
        }
        cols.push(col);
    }
    let kernel = kernel_of_columns(f, eq_index.len(), layout.len(), &cols);
    let mut chain_span = Subspace::new(f, layout.len());
    for v in &kernel {
        chain_span.insert(v.clone());
    }
    let chain_maps = chain_span.basis().iter().map(|v| layout.to_map(x, y, v)).collect();

    let hlayout = MapLayout::new(x, y, -1);
    let mut null_span = Subspace::new(f, layout.len());
    let mut null_homotopic = vec![];
    for k in 0..hlayout.len() {
        let mut hv = vec![f.zero(); hlayout.len()];
        hv[k] = f.one();
        let h = hlayout.to_map(x, y, &hv);
        let fmap = h.boundary()?;
        if null_span.insert(layout.to_vec(&fmap)) {
            null_homotopic.push((fmap, h));
        }
    }
    Ok(HomSpace { source: x.clone(), target: y.clone(), layout, hlayout, chain_maps, null_homotopic, null_span, chain_span })
}

fn kernel_of_columns(f: &Field, rows: usize, ncols: usize, cols: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if rows == 0 {
        return (0..ncols)
            .map(|i| {
                let mut v = vec![f.zero(); ncols];
                v[i] = f.one();
                v
            })
            .collect();
    }
    Matrix::from_cols(f, rows, cols).kernel()
}

/// The endomorphism algebra of a complex in the category of complexes, on the realized
/// basis of [`HomSpace::chain_maps`].
pub fn end_algebra(x: &ProjComplex) -> Result<(AssocAlgebra, HomSpace)> {
    let hs = hom_space(x, x)?;
    let mats: Vec<Matrix> = hs.chain_maps.iter().map(|m| m.realize()).collect();
    let e = AssocAlgebra::from_matrices(x.algebra().field(), &mats)?;
    Ok((e, hs))
}

/// Whether `End(X)` modulo null-homotopic maps is a local ring.
pub fn homotopy_end_is_local(x: &ProjComplex) -> Result<bool> {
    let (e, hs) = end_algebra(x)?;
    let ideal: Vec<Vec<Scalar>> = hs
        .null_homotopic
        .iter()
        .map(|(m, _)| hs.coords(m).ok_or_else(|| Error::Invariant("null-homotopic map outside the chain maps".into())))
        .collect::<Result<_>>()?;
    e.quotient(&ideal)?.is_local()
}
