//! Finite-dimensional left modules, stored as one matrix per algebra basis element acting on
//! a vector space graded by the slots (`M = ⊕ e_s M`).

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar, Subspace};

use super::{AlgElem, Algebra, AssocAlgebra, Presentation};

#[derive(Clone, Debug)]
pub struct Module {
    algebra: Algebra,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// Action of each algebra basis element on column vectors.
    actions: Vec<Matrix>,
}

/// A direct summand with its inclusion (`M.dim × S.dim`) and projection (`S.dim × M.dim`).
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for d in dims {
        off.push(off.last().unwrap() + d);
    }
    off
}

impl Module {
    /// Validates slot grading and the representation property.
    pub fn new(algebra: &Algebra, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Module> {
        let m = Module { algebra: algebra.clone(), offsets: offsets_of(&dims), dims, actions };
        m.validate()?;
        Ok(m)
    }

    fn unchecked(algebra: &Algebra, dims: Vec<usize>, actions: Vec<Matrix>) -> Module {
        Module { algebra: algebra.clone(), offsets: offsets_of(&dims), dims, actions }
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = self.total_dim();
        if self.dims.len() != a.num_slots() || self.actions.len() != a.dim() {
            return Err(Error::InvalidModule("wrong number of slots or actions".into()));
        }
        for (i, m) in self.actions.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidModule(format!("action of {} has the wrong shape", a.basis()[i].label)));
            }
            let (l, r) = (a.basis()[i].left, a.basis()[i].right);
            for row in 0..n {
                for col in 0..n {
                    if !a.field().is_zero(m.get(row, col)) && (self.slot_of(row) != l || self.slot_of(col) != r) {
                        return Err(Error::InvalidModule(format!("action of {} leaves its slot", a.basis()[i].label)));
                    }
                }
            }
        }
        for s in 0..a.num_slots() {
            let e = &self.actions[a.idempotent_index(s)];
            if *e != self.slot_projection(s) {
                return Err(Error::InvalidModule(format!("idempotent e{} does not act as a projection", a.slot_name(s))));
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(&self.actions[j])?;
                let rhs = self.act(&a.mul(&a.elem(i), &a.elem(j)));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "actions violate the product {}·{}",
                        a.basis()[i].label,
                        a.basis()[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    fn slot_projection(&self, s: usize) -> Matrix {
        let f = self.algebra.field();
        let mut m = Matrix::zeros(f, self.total_dim(), self.total_dim());
        for i in self.offsets[s]..self.offsets[s + 1] {
            m.set(i, i, f.one());
        }
        m
    }

    /// A quiver representation: `arrow_maps[k]` is `dims[target] × dims[source]`.
    pub fn from_arrow_maps(algebra: &Algebra, dims: Vec<usize>, arrow_maps: Vec<Matrix>) -> Result<Module> {
        let quiver = algebra.quiver().ok_or_else(|| Error::Unsupported("arrow actions need a quiver algebra".into()))?;
        let f = algebra.field();
        if arrow_maps.len() != quiver.arrows.len() || dims.len() != quiver.vertices.len() {
            return Err(Error::InvalidModule("one matrix per arrow and one dimension per vertex are required".into()));
        }
        let off = offsets_of(&dims);
        let n = *off.last().unwrap();
        let mut full = vec![];
        for (k, arr) in quiver.arrows.iter().enumerate() {
            let m = &arrow_maps[k];
            if m.rows() != dims[arr.target] || m.cols() != dims[arr.source] {
                return Err(Error::InvalidModule(format!("matrix for arrow {} has the wrong shape", arr.name)));
            }
            let mut big = Matrix::zeros(f, n, n);
            big.put_block(off[arr.target], off[arr.source], m);
            full.push(big);
        }
        let word_action = |vertex: usize, word: &[usize]| -> Result<Matrix> {
            let mut acc = Matrix::zeros(f, n, n);
            for i in off[vertex]..off[vertex + 1] {
                acc.set(i, i, f.one());
            }
            for &a in word.iter().rev() {
                acc = full[a].mul(&acc)?;
            }
            Ok(acc)
        };
        if let Presentation::Quiver { relations, .. } = algebra.presentation() {
            for (ri, r) in relations.iter().enumerate() {
                let mut sum = Matrix::zeros(f, n, n);
                for (c, w) in &r.terms {
                    let src = quiver.arrows[*w.last().unwrap()].source;
                    sum = sum.add(&word_action(src, w)?.scale(c))?;
                }
                if !sum.is_zero() {
                    return Err(Error::InvalidModule(format!("relation {} does not vanish on the arrow matrices", ri + 1)));
                }
            }
        }
        let mut actions = vec![];
        for b in algebra.basis() {
            if b.radical {
                let word: Vec<usize> = b.label.split('*').map(|nm| quiver.arrow_index(nm).unwrap()).collect();
                actions.push(word_action(b.right, &word)?);
            } else {
                actions.push(word_action(b.left, &[])?);
            }
        }
        Module::new(algebra, dims, actions)
    }

    /// A module over a structure-constant algebra from matrices for the user basis labels.
    /// For `k[t]/(f)` only `t` is needed; `1` always acts as the identity.
    pub fn from_labeled_actions(algebra: &Algebra, total: usize, named: &[(String, Matrix)]) -> Result<Module> {
        let Presentation::Structure { labels, .. } = algebra.presentation() else {
            return Err(Error::Unsupported("labeled actions need a structure-constant algebra".into()));
        };
        let f = algebra.field();
        let lookup = |name: &str| named.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone());
        let mut user_actions = vec![];
        for l in labels {
            let m = if l == "1" {
                Matrix::identity(f, total)
            } else if let Some(m) = lookup(l) {
                m
            } else if let Some(k) = l.strip_prefix("t^").and_then(|k| k.parse::<u32>().ok()) {
                let t = lookup("t").ok_or_else(|| Error::UnknownName("action of t".into()))?;
                let mut acc = Matrix::identity(f, total);
                for _ in 0..k {
                    acc = acc.mul(&t)?;
                }
                acc
            } else {
                return Err(Error::UnknownName(format!("action of {l}")));
            };
            if m.rows() != total || m.cols() != total {
                return Err(Error::InvalidModule(format!("action of {l} has the wrong shape")));
            }
            user_actions.push(m);
        }
        // adapted basis element i = Σ_u c_u user_u with c = column i of the inverse transition
        let user_cols: Vec<AlgElem> = labels.iter().map(|l| algebra.element_by_name(l).unwrap()).collect();
        let p = Matrix::from_cols(f, algebra.dim(), &user_cols);
        let pinv = p.inverse()?;
        let mut adapted = vec![];
        for i in 0..algebra.dim() {
            let mut m = Matrix::zeros(f, total, total);
            for (u, ua) in user_actions.iter().enumerate() {
                let c = pinv.get(u, i);
                if !f.is_zero(c) {
                    m = m.add(&ua.scale(c))?;
                }
            }
            adapted.push(m);
        }
        // regrade: basis of M = images of the slot idempotents
        let mut cols = vec![];
        let mut dims = vec![];
        for s in 0..algebra.num_slots() {
            let e = &adapted[algebra.idempotent_index(s)];
            let mut span = Subspace::new(f, total);
            for j in 0..total {
                span.insert(e.col(j));
            }
            dims.push(span.dim());
            cols.extend(span.basis().iter().cloned());
        }
        if cols.len() != total {
            return Err(Error::InvalidModule("slot idempotents do not sum to the identity".into()));
        }
        let q = Matrix::from_cols(f, total, &cols);
        let qinv = q.inverse().map_err(|_| Error::InvalidModule("slot idempotents are not orthogonal".into()))?;
        let actions = adapted.iter().map(|m| qinv.mul(&m.mul(&q)?)).collect::<Result<Vec<_>>>()?;
        Module::new(algebra, dims, actions)
    }

    /// The indecomposable projective `A e_s` on the basis elements with right slot `s`,
    /// ordered by left slot.
    pub fn projective(algebra: &Algebra, s: usize) -> Result<Module> {
        if s >= algebra.num_slots() {
            return Err(Error::UnknownName(format!("slot {}", s + 1)));
        }
        let f = algebra.field();
        let idx = algebra.projective_basis(s);
        let dims: Vec<usize> = (0..algebra.num_slots())
            .map(|t| idx.iter().filter(|&&i| algebra.basis()[i].left == t).count())
            .collect();
        let n = idx.len();
        let mut actions = vec![];
        for b in 0..algebra.dim() {
            let mut m = Matrix::zeros(f, n, n);
            for (col, &p) in idx.iter().enumerate() {
                let prod = algebra.mul(&algebra.elem(b), &algebra.elem(p));
                for (row, &q) in idx.iter().enumerate() {
                    m.set(row, col, prod[q].clone());
                }
            }
            actions.push(m);
        }
        Ok(Module::unchecked(algebra, dims, actions))
    }

    /// The simple module at slot `s`.
    pub fn simple(algebra: &Algebra, s: usize) -> Result<Module> {
        if s >= algebra.num_slots() {
            return Err(Error::UnknownName(format!("slot {}", s + 1)));
        }
        let f = algebra.field();
        let mut dims = vec![0; algebra.num_slots()];
        dims[s] = 1;
        let mut actions = vec![Matrix::zeros(f, 1, 1); algebra.dim()];
        actions[algebra.idempotent_index(s)] = Matrix::identity(f, 1);
        if algebra.peirce(s, s).iter().filter(|&&b| !algebra.basis()[b].radical).count() > 1 {
            return Err(Error::Unsupported("simple modules of non-split slots".into()));
        }
        Ok(Module::unchecked(algebra, dims, actions))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }
    pub fn offset(&self, s: usize) -> usize {
        self.offsets[s]
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn slot_of(&self, index: usize) -> usize {
        (0..self.dims.len()).find(|&s| index < self.offsets[s + 1]).unwrap()
    }

    /// The action matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let f = self.field();
        let n = self.total_dim();
        let mut m = Matrix::zeros(f, n, n);
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(&self.actions[i].scale(c)).unwrap();
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.field();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let (emb_a, emb_b) = self.sum_embeddings(other);
        let n = dims.iter().sum();
        let actions = (0..self.algebra.dim())
            .map(|i| {
                let mut m = Matrix::zeros(f, n, n);
                m = m.add(&emb_a.mul(&self.actions[i])?.mul(&emb_a.transpose())?)?;
                m.add(&emb_b.mul(&other.actions[i])?.mul(&emb_b.transpose())?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Module::unchecked(&self.algebra, dims, actions))
    }

    /// Coordinate embeddings of `self` and `other` into `self ⊕ other` (slot-interleaved).
    pub fn sum_embeddings(&self, other: &Module) -> (Matrix, Matrix) {
        let f = self.field();
        let n = self.total_dim() + other.total_dim();
        let mut ea = Matrix::zeros(f, n, self.total_dim());
        let mut eb = Matrix::zeros(f, n, other.total_dim());
        let mut row = 0;
        for s in 0..self.dims.len() {
            for i in 0..self.dims[s] {
                ea.set(row, self.offsets[s] + i, f.one());
                row += 1;
            }
            for i in 0..other.dims[s] {
                eb.set(row, other.offsets[s] + i, f.one());
                row += 1;
            }
        }
        (ea, eb)
    }

    /// Submodule spanned (as a module) by the given vectors, with its inclusion matrix.
    pub fn submodule(&self, vectors: &[Vec<Scalar>]) -> Result<(Module, Matrix)> {
        let f = self.field();
        let n = self.total_dim();
        let mut per_slot: Vec<Subspace> = (0..self.dims.len()).map(|_| Subspace::new(f, n)).collect();
        let mut queue: Vec<Vec<Scalar>> = vectors.to_vec();
        while let Some(v) = queue.pop() {
            for s in 0..self.dims.len() {
                let mut w = vec![f.zero(); n];
                w[self.offsets[s]..self.offsets[s + 1]].clone_from_slice(&v[self.offsets[s]..self.offsets[s + 1]]);
                if per_slot[s].insert(w.clone()) {
                    for i in 0..self.algebra.dim() {
                        if self.algebra.basis()[i].right == s {
                            queue.push(self.actions[i].mul_vec(&w));
                        }
                    }
                }
            }
        }
        let dims: Vec<usize> = per_slot.iter().map(|s| s.dim()).collect();
        let cols: Vec<Vec<Scalar>> = per_slot.iter().flat_map(|s| s.basis().to_vec()).collect();
        let inc = Matrix::from_cols(f, n, &cols);
        let mut all = Subspace::new(f, n);
        for c in &cols {
            all.insert(c.clone());
        }
        let k = cols.len();
        let mut actions = vec![];
        for i in 0..self.algebra.dim() {
            let mut m = Matrix::zeros(f, k, k);
            for (j, c) in cols.iter().enumerate() {
                let img = self.actions[i].mul_vec(c);
                let coords = all.coords(&img).ok_or_else(|| Error::Invariant("generated span is not a submodule".into()))?;
                for (r, v) in coords.into_iter().enumerate() {
                    m.set(r, j, v);
                }
            }
            actions.push(m);
        }
        Ok((Module::unchecked(&self.algebra, dims, actions), inc))
    }

    /// Quotient by a submodule given by its inclusion matrix, with the projection matrix.
    pub fn quotient(&self, inclusion: &Matrix) -> Result<(Module, Matrix)> {
        let f = self.field();
        let n = self.total_dim();
        let mut span = Subspace::new(f, n);
        for j in 0..inclusion.cols() {
            span.insert(inclusion.col(j));
        }
        let sub_dim = span.dim();
        let mut comp = vec![];
        let mut dims = vec![0; self.dims.len()];
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            if span.insert(e.clone()) {
                comp.push(e);
                dims[self.slot_of(i)] += 1;
            }
        }
        let k = comp.len();
        let proj_coords = |v: &[Scalar]| -> Vec<Scalar> {
            let c = span.coords(v).expect("span is everything");
            // insertion order: submodule basis first, then complement
            c[sub_dim..].to_vec()
        };
        let mut proj = Matrix::zeros(f, k, n);
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            for (r, v) in proj_coords(&e).into_iter().enumerate() {
                proj.set(r, i, v);
            }
        }
        let mut actions = vec![];
        for i in 0..self.algebra.dim() {
            let mut m = Matrix::zeros(f, k, k);
            for (j, c) in comp.iter().enumerate() {
                for (r, v) in proj_coords(&self.actions[i].mul_vec(c)).into_iter().enumerate() {
                    m.set(r, j, v);
                }
            }
            actions.push(m);
        }
        Ok((Module::unchecked(&self.algebra, dims, actions), proj))
    }

    /// Whether the given vectors span a submodule.
    pub fn is_submodule_span(&self, vectors: &[Vec<Scalar>]) -> bool {
        let mut span = Subspace::new(self.field(), self.total_dim());
        for v in vectors {
            span.insert(v.clone());
        }
        vectors.iter().all(|v| self.actions.iter().all(|a| span.contains(&a.mul_vec(v))))
    }
}

/// Basis of `Hom_A(M, N)` as `N.dim × M.dim` matrices.
pub fn hom_modules(m: &Module, n: &Module) -> Result<Vec<Matrix>> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let a = &m.algebra;
    let f = a.field();
    // unknowns: per slot s, (i in N_s, j in M_s)
    let mut unknown_offset = vec![0];
    for s in 0..a.num_slots() {
        unknown_offset.push(unknown_offset[s] + n.dims[s] * m.dims[s]);
    }
    let nu = *unknown_offset.last().unwrap();
    let mut rows: Vec<Vec<Scalar>> = vec![];
    for (bi, b) in a.basis().iter().enumerate() {
        if bi == a.idempotent_index(b.left) {
            continue;
        }
        let (s, t) = (b.right, b.left);
        let (nb, mb) = (&n.actions[bi], &m.actions[bi]);
        // equation entries (r in N_t, c in M_s): (N_b φ_s)[r,c] − (φ_t M_b)[r,c]
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); nu];
                for i in 0..n.dims[s] {
                    let u = unknown_offset[s] + i * m.dims[s] + c;
                    row[u] = f.add(&row[u], nb.get(n.offsets[t] + r, n.offsets[s] + i));
                }
                for j in 0..m.dims[t] {
                    let u = unknown_offset[t] + r * m.dims[t] + j;
                    row[u] = f.sub(&row[u], mb.get(m.offsets[t] + j, m.offsets[s] + c));
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..nu)
            .map(|i| {
                let mut v = vec![f.zero(); nu];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, rows)?.kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(f, n.total_dim(), m.total_dim());
            for s in 0..a.num_slots() {
                for i in 0..n.dims[s] {
                    for j in 0..m.dims[s] {
                        phi.set(n.offsets[s] + i, m.offsets[s] + j, v[unknown_offset[s] + i * m.dims[s] + j].clone());
                    }
                }
            }
            phi
        })
        .collect())
}

/// `rad M = J·M` with its inclusion, and the top `M / rad M` with its projection.
#[derive(Clone, Debug)]
pub struct RadicalData {
    pub radical: Module,
    pub inclusion: Matrix,
    pub top: Module,
    pub projection: Matrix,
}

pub fn radical_of_module(m: &Module) -> Result<RadicalData> {
    let a = &m.algebra;
    let mut vectors = vec![];
    for i in a.radical_indices() {
        let act = &m.actions[i];
        for j in 0..m.total_dim() {
            let v = act.col(j);
            if v.iter().any(|x| !a.field().is_zero(x)) {
                vectors.push(v);
            }
        }
    }
    let (radical, inclusion) = m.submodule(&vectors)?;
    let (top, projection) = m.quotient(&inclusion)?;
    Ok(RadicalData { radical, inclusion, top, projection })
}

/// Endomorphism algebra of a module together with its matrix basis.
pub fn endomorphism_algebra(m: &Module) -> Result<(AssocAlgebra, Vec<Matrix>)> {
    let basis = hom_modules(m, m)?;
    let e = AssocAlgebra::from_matrices(m.field(), &basis)?;
    Ok((e, basis))
}

fn combine(f: &Field, coeffs: &[Scalar], basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(f, rows, cols);
    for (c, b) in coeffs.iter().zip(basis) {
        if !f.is_zero(c) {
            out = out.add(&b.scale(c)).unwrap();
        }
    }
    out
}

/// Summand cut out by an idempotent endomorphism.
pub fn summand_of_idempotent(m: &Module, eps: &Matrix) -> Result<Summand> {
    let f = m.field();
    let n = m.total_dim();
    let mut cols = vec![];
    let mut dims = vec![];
    for s in 0..m.dims.len() {
        let mut span = Subspace::new(f, n);
        for j in m.offsets[s]..m.offsets[s + 1] {
            span.insert(eps.col(j));
        }
        dims.push(span.dim());
        cols.extend(span.basis().iter().cloned());
    }
    let k = cols.len();
    let inclusion = Matrix::from_cols(f, n, &cols);
    let mut image = Subspace::new(f, n);
    for c in &cols {
        image.insert(c.clone());
    }
    let mut projection = Matrix::zeros(f, k, n);
    for j in 0..n {
        let coords = image.coords(&eps.col(j)).ok_or_else(|| Error::Invariant("idempotent image".into()))?;
        for (r, v) in coords.into_iter().enumerate() {
            projection.set(r, j, v);
        }
    }
    let actions = (0..m.algebra.dim())
        .map(|i| projection.mul(&m.actions[i].mul(&inclusion)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Summand { module: Module::unchecked(&m.algebra, dims, actions), inclusion, projection })
}

/// Krull-Schmidt decomposition into indecomposable summands.
pub fn decompose_module(m: &Module) -> Result<Vec<Summand>> {
    if m.total_dim() == 0 {
        return Ok(vec![]);
    }
    let (end, basis) = endomorphism_algebra(m)?;
    let n = m.total_dim();
    let ids = end.primitive_idempotents()?;
    ids.iter()
        .map(|e| summand_of_idempotent(m, &combine(m.field(), e, &basis, n, n)))
        .collect()
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.total_dim() == 0 {
        return Ok(false);
    }
    endomorphism_algebra(m)?.0.is_local()
}

/// For indecomposable modules: an isomorphism `X → Y` if one exists. Some composite `g f`
/// of basis homs leaves the radical of `End(X)` exactly when `X ≅ Y`.
pub fn indecomposables_isomorphism(x: &Module, y: &Module) -> Result<Option<Matrix>> {
    if x.dims != y.dims {
        return Ok(None);
    }
    let hxy = hom_modules(x, y)?;
    let hyx = hom_modules(y, x)?;
    let (end, ebasis) = endomorphism_algebra(x)?;
    let rad = end.radical()?;
    let mut span = Subspace::new(x.field(), ebasis.len());
    for r in &rad {
        span.insert(r.clone());
    }
    let mut ends = Subspace::new(x.field(), x.total_dim() * x.total_dim());
    for b in &ebasis {
        ends.insert(b.data().to_vec());
    }
    for fm in &hxy {
        for gm in &hyx {
            let gf = gm.mul(fm)?;
            let c = ends.coords(gf.data()).ok_or_else(|| Error::Invariant("composite outside End".into()))?;
            if !span.contains(&c) {
                return Ok(Some(fm.clone()));
            }
        }
    }
    Ok(None)
}

/// Isomorphism test for arbitrary modules by matching indecomposable summands.
pub fn modules_isomorphic(x: &Module, y: &Module) -> Result<bool> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if x.dims != y.dims {
        return Ok(false);
    }
    let xs = decompose_module(x)?;
    let mut ys: Vec<Module> = decompose_module(y)?.into_iter().map(|s| s.module).collect();
    for s in xs {
        let mut hit = None;
        for (i, t) in ys.iter().enumerate() {
            if indecomposables_isomorphism(&s.module, t)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                ys.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(ys.is_empty())
}
