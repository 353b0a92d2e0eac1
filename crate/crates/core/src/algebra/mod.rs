//! Finite-dimensional basic algebras with a Peirce-adapted basis.
//!
//! Every basis element `b` carries slots `(left, right)` with `e_left · b · e_right = b`, and a
//! flag telling whether it lies in the radical. Quiver algebras use residue classes of paths
//! (slots are vertices, the radical is the arrow ideal). Structure-constant algebras are
//! rebased onto such a basis after splitting their unit into primitive idempotents.

pub mod assoc;
pub mod module;
pub mod quiver;

use std::fmt;
use std::sync::Arc;

pub use assoc::AssocAlgebra;
pub use module::Module;
pub use quiver::{Arrow, Path, Quiver, Relation};

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar, Subspace};

/// Coordinates of an algebra element over the algebra basis.
pub type AlgElem = Vec<Scalar>;

pub const DEFAULT_LENGTH_CAP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub left: usize,
    pub right: usize,
    pub radical: bool,
}

#[derive(Clone, Debug)]
pub enum Presentation {
    Quiver { quiver: Quiver, relations: Vec<Relation>, cap: usize },
    /// Structure constants in a user basis (`table[i][j]` = coordinates of `u_i u_j`).
    Structure { labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>, one: Vec<Scalar> },
}

struct AlgebraDef {
    field: Field,
    presentation: Presentation,
    slot_names: Vec<String>,
    basis: Vec<BasisElem>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    idempotents: Vec<usize>,
    /// Adapted coordinates of the user basis (structure-constant algebras).
    user_elems: Vec<AlgElem>,
    nilpotency: usize,
}

#[derive(Clone)]
pub struct Algebra(Arc<AlgebraDef>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.basis == other.0.basis && self.0.table == other.0.table)
    }
}
impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim(), self.0.field)
    }
}

impl Algebra {
    pub fn from_quiver(field: &Field, quiver: Quiver, relations: Vec<Relation>) -> Result<Algebra> {
        Self::from_quiver_with_cap(field, quiver, relations, DEFAULT_LENGTH_CAP)
    }

    pub fn from_quiver_with_cap(field: &Field, quiver: Quiver, relations: Vec<Relation>, cap: usize) -> Result<Algebra> {
        let pb = quiver::build_path_basis(field, &quiver, &relations, cap)?;
        let basis: Vec<BasisElem> = pb
            .basis
            .iter()
            .map(|p| BasisElem {
                label: quiver.label(p),
                left: quiver.target(p),
                right: quiver.source(p),
                radical: !p.word.is_empty(),
            })
            .collect();
        let n = basis.len();
        let mut table = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if let Some(p) = quiver.concat(&pb.basis[i], &pb.basis[j]) {
                    table[i][j] = pb.normal_form(&p);
                }
            }
        }
        let idempotents = (0..quiver.vertices.len()).collect();
        let def = AlgebraDef {
            field: field.clone(),
            slot_names: quiver.vertices.clone(),
            presentation: Presentation::Quiver { quiver, relations, cap },
            basis,
            table,
            idempotents,
            user_elems: vec![],
            nilpotency: pb.nilpotency,
        };
        Ok(Algebra(Arc::new(def)))
    }

    /// `k[t]/(f)` for a monic `f` (constant term first), with user basis `1, t, …, t^{d-1}`.
    pub fn monogenic(field: &Field, f: &[Scalar]) -> Result<Algebra> {
        let f = f.to_vec();
        if f.len() < 2 || !field.is_one(f.last().unwrap()) {
            return Err(Error::NotMonic);
        }
        let d = f.len() - 1;
        let mut table = vec![vec![vec![]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut prod = vec![field.zero(); i + j + 1];
                prod[i + j] = field.one();
                let (_, r) = crate::field::poly::divrem(field, &prod, &f);
                let mut v = vec![field.zero(); d];
                for (k, c) in r.into_iter().enumerate() {
                    v[k] = c;
                }
                table[i][j] = v;
            }
        }
        let labels = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let mut one = vec![field.zero(); d];
        one[0] = field.one();
        Self::from_structure(field, labels, table, one)
    }

    /// An algebra from structure constants in a user basis. The algebra must be basic.
    pub fn from_structure(field: &Field, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>, one: Vec<Scalar>) -> Result<Algebra> {
        let a = AssocAlgebra::new(field, table.clone(), one.clone())?;
        let d = a.dim();
        let rad = a.radical()?;
        let mut rad_span = Subspace::new(field, d);
        for r in &rad {
            rad_span.insert(r.clone());
        }
        let ids = a.primitive_idempotents()?;
        let n = ids.len();
        for s in 0..n {
            for t in s + 1..n {
                for i in 0..d {
                    let u = a.mul(&a.mul(&ids[s], &a.basis_elem(i)), &ids[t]);
                    if a.is_zero(&u) {
                        continue;
                    }
                    for j in 0..d {
                        let v = a.mul(&a.mul(&ids[t], &a.basis_elem(j)), &ids[s]);
                        if !rad_span.contains(&a.mul(&u, &v)) {
                            return Err(Error::NonBasic(s + 1, t + 1));
                        }
                    }
                }
            }
        }
        // Peirce-adapted basis: per (s, t), non-radical complement first, then e_s J e_t
        let mut new_basis: Vec<AlgElem> = vec![];
        let mut elems: Vec<BasisElem> = vec![];
        let mut idempotents = vec![0; n];
        for s in 0..n {
            for t in 0..n {
                let mut jst = Subspace::new(field, d);
                for r in &rad {
                    jst.insert(a.mul(&a.mul(&ids[s], r), &ids[t]));
                }
                let mut span = jst.clone();
                let mut top = vec![];
                if s == t {
                    span.insert(ids[s].clone());
                    top.push(ids[s].clone());
                    idempotents[s] = new_basis.len();
                }
                for i in 0..d {
                    let v = a.mul(&a.mul(&ids[s], &a.basis_elem(i)), &ids[t]);
                    if span.insert(v.clone()) {
                        top.push(v);
                    }
                }
                for (k, v) in top.into_iter().enumerate() {
                    let label = if s == t && k == 0 { format!("e{}", s + 1) } else { format!("u{}{}_{}", s + 1, t + 1, k) };
                    elems.push(BasisElem { label, left: s, right: t, radical: false });
                    new_basis.push(v);
                }
                for (k, v) in jst.basis().iter().enumerate() {
                    elems.push(BasisElem { label: format!("r{}{}_{}", s + 1, t + 1, k), left: s, right: t, radical: true });
                    new_basis.push(v.clone());
                }
            }
        }
        if new_basis.len() != d {
            return Err(Error::Invariant("Peirce decomposition lost dimensions".into()));
        }
        let p = Matrix::from_cols(field, d, &new_basis);
        let pinv = p.inverse()?;
        let to_new = |x: &[Scalar]| pinv.mul_vec(x);
        let mut new_table = vec![vec![vec![]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = to_new(&a.mul(&new_basis[i], &new_basis[j]));
                new_table[i][j] = prod.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect();
            }
        }
        let user_elems = (0..d).map(|i| to_new(&a.basis_elem(i))).collect();
        let mut nilpotency = 1;
        let mut power = rad.clone();
        while !power.is_empty() {
            nilpotency += 1;
            let mut next = Subspace::new(field, d);
            for x in &power {
                for r in &rad {
                    next.insert(a.mul(x, r));
                }
            }
            power = next.basis().to_vec();
        }
        let def = AlgebraDef {
            field: field.clone(),
            presentation: Presentation::Structure { labels, table, one },
            slot_names: (1..=n).map(|s| s.to_string()).collect(),
            basis: elems,
            table: new_table,
            idempotents,
            user_elems,
            nilpotency,
        };
        Ok(Algebra(Arc::new(def)))
    }

    /// The same presentation with scalars embedded in an extension field.
    pub fn base_change(&self, big: &Field) -> Result<Algebra> {
        let emb = |v: &[Scalar]| v.iter().map(|c| big.embed(c)).collect::<Vec<_>>();
        match &self.0.presentation {
            Presentation::Quiver { quiver, relations, cap } => {
                let rels = relations
                    .iter()
                    .map(|r| Relation { terms: r.terms.iter().map(|(c, w)| (big.embed(c), w.clone())).collect() })
                    .collect();
                Algebra::from_quiver_with_cap(big, quiver.clone(), rels, *cap)
            }
            Presentation::Structure { labels, table, one } => {
                let t = table.iter().map(|row| row.iter().map(|v| emb(v)).collect()).collect();
                Algebra::from_structure(big, labels.clone(), t, emb(one))
            }
        }
    }

    /// The presentation's own basis in adapted coordinates: paths for quiver algebras, the
    /// user basis for structure-constant algebras.
    pub fn user_basis(&self) -> Vec<AlgElem> {
        match &self.0.presentation {
            Presentation::Quiver { .. } => (0..self.dim()).map(|i| self.elem(i)).collect(),
            Presentation::Structure { .. } => self.0.user_elems.clone(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }
    pub fn presentation(&self) -> &Presentation {
        &self.0.presentation
    }
    pub fn quiver(&self) -> Option<&Quiver> {
        match &self.0.presentation {
            Presentation::Quiver { quiver, .. } => Some(quiver),
            _ => None,
        }
    }
    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }
    pub fn num_slots(&self) -> usize {
        self.0.slot_names.len()
    }
    pub fn slot_name(&self, s: usize) -> &str {
        &self.0.slot_names[s]
    }
    pub fn slot_index(&self, name: &str) -> Option<usize> {
        self.0.slot_names.iter().position(|v| v == name)
    }
    pub fn basis(&self) -> &[BasisElem] {
        &self.0.basis
    }
    /// Smallest `N` with `J^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.0.nilpotency
    }
    pub fn ptr_eq(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn zero(&self) -> AlgElem {
        vec![self.0.field.zero(); self.dim()]
    }

    pub fn elem(&self, i: usize) -> AlgElem {
        let mut v = self.zero();
        v[i] = self.0.field.one();
        v
    }

    pub fn idempotent_index(&self, s: usize) -> usize {
        self.0.idempotents[s]
    }

    pub fn idempotent(&self, s: usize) -> AlgElem {
        self.elem(self.0.idempotents[s])
    }

    pub fn unit(&self) -> AlgElem {
        let mut v = self.zero();
        for &i in &self.0.idempotents {
            v[i] = self.0.field.one();
        }
        v
    }

    /// Basis indices of `e_s A e_t`.
    pub fn peirce(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].left == s && self.0.basis[i].right == t).collect()
    }

    /// Basis indices of `A e_s`, ordered by left slot.
    pub fn projective_basis(&self, s: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.dim()).filter(|&i| self.0.basis[i].right == s).collect();
        idx.sort_by_key(|&i| (self.0.basis[i].left, i));
        idx
    }

    /// Inverse of `u` inside the local ring `e_s A e_s`, if `u` is a unit there.
    pub fn corner_inverse(&self, u: &[Scalar], s: usize) -> Option<AlgElem> {
        if !self.in_corner(u, s, s) || self.is_radical(u) {
            return None;
        }
        let idx = self.peirce(s, s);
        let f = &self.0.field;
        // columns: u * b for b in the corner basis, restricted to corner coordinates
        let cols: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&b| {
                let p = self.mul(u, &self.elem(b));
                idx.iter().map(|&k| p[k].clone()).collect()
            })
            .collect();
        let m = Matrix::from_cols(f, idx.len(), &cols);
        let e = self.idempotent(s);
        let rhs: Vec<Scalar> = idx.iter().map(|&k| e[k].clone()).collect();
        let sol = m.solve(&rhs).ok()??;
        let mut v = self.zero();
        for (c, &b) in sol.into_iter().zip(&idx) {
            v[b] = c;
        }
        Some(v)
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].radical).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> AlgElem {
        let f = &self.0.field;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            let ri = self.0.basis[i].right;
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) || self.0.basis[j].left != ri {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in &self.0.table[i][j] {
                    out[*k] = f.mul_add(&ab, c, &out[*k]);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> AlgElem {
        x.iter().zip(y).map(|(a, b)| self.0.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> AlgElem {
        x.iter().zip(y).map(|(a, b)| self.0.field.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &[Scalar]) -> AlgElem {
        x.iter().map(|a| self.0.field.neg(a)).collect()
    }

    pub fn scale(&self, x: &[Scalar], c: &Scalar) -> AlgElem {
        x.iter().map(|a| self.0.field.mul(a, c)).collect()
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(|a| self.0.field.is_zero(a))
    }

    /// Whether `x` lies in the radical.
    pub fn is_radical(&self, x: &[Scalar]) -> bool {
        x.iter().enumerate().all(|(i, a)| self.0.field.is_zero(a) || self.0.basis[i].radical)
    }

    /// Whether `x ∈ e_s A e_t`.
    pub fn in_corner(&self, x: &[Scalar], s: usize, t: usize) -> bool {
        x.iter().enumerate().all(|(i, a)| self.0.field.is_zero(a) || (self.0.basis[i].left == s && self.0.basis[i].right == t))
    }

    /// Element named in the input syntax: an arrow, a vertex idempotent `e<v>`, or a user
    /// basis label of a structure-constant algebra.
    pub fn element_by_name(&self, name: &str) -> Option<AlgElem> {
        match &self.0.presentation {
            Presentation::Quiver { quiver, .. } => {
                if let Some(a) = quiver.arrow_index(name) {
                    let p = quiver.word_path(&[a]).unwrap();
                    let label = quiver.label(&p);
                    return self.0.basis.iter().position(|b| b.label == label).map(|i| self.elem(i));
                }
                let v = name.strip_prefix('e').and_then(|v| quiver.vertex_index(v))?;
                Some(self.idempotent(v))
            }
            Presentation::Structure { labels, .. } => {
                labels.iter().position(|l| l == name).map(|i| self.0.user_elems[i].clone())
            }
        }
    }

    /// Dense structure constants as an [`AssocAlgebra`].
    pub fn to_assoc(&self) -> AssocAlgebra {
        let d = self.dim();
        let table: Vec<Vec<Vec<Scalar>>> = (0..d)
            .map(|i| (0..d).map(|j| self.mul(&self.elem(i), &self.elem(j))).collect())
            .collect();
        AssocAlgebra::new(&self.0.field, table, self.unit()).expect("algebra tables are associative")
    }

    /// Human-readable element, e.g. `a + 2*b*c`.
    pub fn format_elem(&self, x: &[Scalar]) -> String {
        let f = &self.0.field;
        let mut terms = vec![];
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let label = &self.0.basis[i].label;
            if f.is_one(c) {
                terms.push(label.clone());
            } else {
                terms.push(format!("{}*{}", f.format(c), label));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn kronecker(f: &Field) -> Algebra {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { name: "a".into(), source: 0, target: 1 }, Arrow { name: "b".into(), source: 0, target: 1 }],
        )
        .unwrap();
        Algebra::from_quiver(f, q, vec![]).unwrap()
    }

    #[test]
    fn kronecker_basis() {
        let f2 = Field::prime(2).unwrap();
        let a = kronecker(&f2);
        let labels: Vec<_> = a.basis().iter().map(|b| b.label.clone()).collect();
        assert_eq!(labels, vec!["e1", "e2", "a", "b"]);
        assert_eq!(a.radical_indices(), vec![2, 3]);
        let e1 = a.idempotent(0);
        let arrow = a.element_by_name("a").unwrap();
        assert_eq!(a.mul(&arrow, &e1), arrow);
        assert!(a.is_zero(&a.mul(&e1, &arrow)));
        assert_eq!(a.to_assoc().dim(), 4);
    }

    #[test]
    fn monogenic_split_and_local() {
        let f2 = Field::prime(2).unwrap();
        let one = f2.one();
        let dual = Algebra::monogenic(&f2, &[f2.zero(), f2.zero(), one.clone()]).unwrap();
        assert_eq!((dual.num_slots(), dual.radical_indices().len(), dual.nilpotency()), (1, 1, 2));
        let f4 = Algebra::monogenic(&f2, &[one.clone(), one.clone(), one.clone()]).unwrap();
        assert_eq!((f4.num_slots(), f4.radical_indices().len()), (1, 0));
        // over F_4 the same polynomial splits: F_4 x F_4
        let big = Field::extension(&f2, &[one.clone(), one.clone(), one.clone()], false).unwrap();
        let split = f4.base_change(&big).unwrap();
        assert_eq!(split.num_slots(), 2);
        assert!(split.peirce(0, 1).is_empty());
        let t = split.element_by_name("t").unwrap();
        let t2 = split.mul(&t, &t);
        assert_eq!(split.add(&split.add(&t2, &t), &split.unit()), split.zero());
    }

    #[test]
    fn matrix_algebra_is_not_basic() {
        let f2 = Field::prime(2).unwrap();
        let (z, o) = (f2.zero(), f2.one());
        // M_2(F_2) with basis E11, E12, E21, E22
        let e = |i: usize| {
            let mut v = vec![z.clone(); 4];
            v[i] = o.clone();
            v
        };
        let mut table = vec![vec![vec![z.clone(); 4]; 4]; 4];
        for (x, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            for (y, (k, l)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                if j == k {
                    table[x][y] = e(2 * i + l);
                }
            }
        }
        let one = vec![o.clone(), z.clone(), z.clone(), o.clone()];
        let labels = vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()];
        assert!(matches!(Algebra::from_structure(&f2, labels, table, one), Err(Error::NonBasic(1, 2))));
    }
}
