//! Finite-dimensional associative unital algebras given by structure constants: Jacobson
//! radical, minimal polynomials, locality and complete sets of primitive idempotents.
//!
//! Endomorphism rings of modules and complexes are turned into an [`AssocAlgebra`] before
//! any Krull-Schmidt reasoning happens.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::poly::{self, Splitting};
use crate::field::{Field, Matrix, Scalar, Subspace};

pub type Elem = Vec<Scalar>;

#[derive(Clone, Debug)]
pub struct AssocAlgebra {
    field: Field,
    dim: usize,
    one: Elem,
    /// `table[i][j]` = coordinates of `b_i b_j`.
    table: Vec<Vec<Elem>>,
}

const FULL_ASSOC_CHECK_DIM: usize = 8;

impl AssocAlgebra {
    /// Validates the unit and associativity (exhaustively up to dimension 8, on a
    /// deterministic random sample of triples above).
    pub fn new(field: &Field, table: Vec<Vec<Elem>>, one: Elem) -> Result<AssocAlgebra> {
        let dim = one.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::ShapeMismatch("structure constant table".into()));
        }
        let a = AssocAlgebra { field: field.clone(), dim, one, table };
        a.check_axioms()?;
        Ok(a)
    }

    fn unchecked(field: &Field, table: Vec<Vec<Elem>>, one: Elem) -> AssocAlgebra {
        AssocAlgebra { field: field.clone(), dim: one.len(), one, table }
    }

    fn check_axioms(&self) -> Result<()> {
        let f = &self.field;
        for i in 0..self.dim {
            let b = self.basis_elem(i);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return Err(Error::Invariant(format!("element {i} does not satisfy the unit law")));
            }
        }
        let triples: Vec<(Elem, Elem, Elem)> = if self.dim <= FULL_ASSOC_CHECK_DIM {
            let mut v = vec![];
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        v.push((self.basis_elem(i), self.basis_elem(j), self.basis_elem(k)));
                    }
                }
            }
            v
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xA550C);
            (0..64).map(|_| (self.random(&mut rng), self.random(&mut rng), self.random(&mut rng))).collect()
        };
        for (x, y, z) in triples {
            let l = self.mul(&self.mul(&x, &y), &z);
            let r = self.mul(&x, &self.mul(&y, &z));
            if l.iter().zip(&r).any(|(a, b)| !f.is_zero(&f.sub(a, b))) {
                return Err(Error::Invariant("structure constants are not associative".into()));
            }
        }
        Ok(())
    }

    /// Builds the algebra spanned by `basis`, a linearly independent set of square matrices
    /// closed under multiplication and containing the identity in its span.
    pub fn from_matrices(field: &Field, basis: &[Matrix]) -> Result<AssocAlgebra> {
        let dim = basis.len();
        if dim == 0 {
            return Ok(AssocAlgebra::unchecked(field, vec![], vec![]));
        }
        let n = basis[0].rows();
        let mut span = Subspace::new(field, n * n);
        for b in basis {
            if !span.insert(b.data().to_vec()) {
                return Err(Error::Invariant("dependent basis for a matrix algebra".into()));
            }
        }
        let coords = |m: &Matrix| -> Result<Elem> {
            span.coords(m.data()).ok_or_else(|| Error::Invariant("matrix span is not closed under products".into()))
        };
        let one = coords(&Matrix::identity(field, n))?;
        let mut table = vec![vec![vec![]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i][j] = coords(&basis[i].mul(&basis[j])?)?;
            }
        }
        Ok(AssocAlgebra::unchecked(field, table, one))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn one(&self) -> &Elem {
        &self.one
    }

    pub fn zero(&self) -> Elem {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.mul_add(&ab, c, &out[k]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[Scalar], c: &Scalar) -> Elem {
        x.iter().map(|a| self.field.mul(a, c)).collect()
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Elem {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Matrix of left multiplication by `x`, acting on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim).map(|j| self.mul(x, &self.basis_elem(j))).collect();
        Matrix::from_cols(&self.field, self.dim, &cols)
    }

    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        self.left_mult_matrix(x).rank() == self.dim
    }

    pub fn inverse(&self, x: &[Scalar]) -> Option<Elem> {
        let y = self.left_mult_matrix(x).solve(&self.one).ok()??;
        // a one-sided inverse in a finite-dimensional algebra is two-sided
        Some(y)
    }

    pub fn pow(&self, x: &[Scalar], mut e: u64) -> Elem {
        let mut acc = self.one.clone();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Evaluates a polynomial at `x` (with `x^0` the unit).
    pub fn eval_poly(&self, p: &[Scalar], x: &[Scalar]) -> Elem {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(&self.one, c));
        }
        acc
    }

    /// Monic minimal polynomial of `x`.
    pub fn min_poly(&self, x: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut span = Subspace::new(f, self.dim);
        let mut power = self.one.clone();
        loop {
            if let Some(c) = span.coords(&power) {
                let mut p: Vec<Scalar> = c.iter().map(|v| f.neg(v)).collect();
                p.push(f.one());
                return p;
            }
            span.insert(power.clone());
            power = self.mul(&power, x);
        }
    }

    /// Basis of the Jacobson radical.
    pub fn radical(&self) -> Result<Vec<Elem>> {
        if self.dim == 0 {
            return Ok(vec![]);
        }
        if self.field.characteristic() == 0 {
            Ok(self.radical_trace_form())
        } else {
            self.radical_modular()
        }
    }

    fn radical_trace_form(&self) -> Vec<Elem> {
        let f = &self.field;
        let d = self.dim;
        let mut gram = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&self.basis_elem(i), &self.basis_elem(j));
                let l = self.left_mult_matrix(&prod);
                let mut tr = f.zero();
                for k in 0..d {
                    tr = f.add(&tr, l.get(k, k));
                }
                gram.set(i, j, tr);
            }
        }
        gram.transpose().kernel()
    }

    /// Iterated generalized traces over the prime field of a modular field: the radical is
    /// cut out step by step by the forms `a ↦ (Tr(ã^{p^i}) mod p^{i+1}) / p^i` on integer
    /// lifts of the regular representation.
    fn radical_modular(&self) -> Result<Vec<Elem>> {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let e = f.degree();
        let d = self.dim;
        let n = d * e;
        let prime = f.prime_field();
        let to_fp = |x: &Elem| -> Vec<u64> {
            let mut v = vec![0u64; n];
            for (i, c) in x.iter().enumerate() {
                let dg = f.prime_digits(c);
                for k in 0..e {
                    v[i * e + k] = dg[k] as u64;
                }
            }
            v
        };
        let from_fp = |v: &[u64]| -> Elem {
            (0..d)
                .map(|i| f.from_prime_digits(&(0..e).map(|k| v[i * e + k] as u32).collect::<Vec<_>>()))
                .collect()
        };
        // F_p basis of A: digit k of coordinate i at index i*e + k
        let fp_basis: Vec<Elem> = (0..n)
            .map(|t| from_fp(&(0..n).map(|u| (u == t) as u64).collect::<Vec<_>>()))
            .collect();
        // regular representation over F_p, integer lifted
        let reg = |x: &Elem| -> Vec<Vec<u64>> {
            let mut m = vec![vec![0u64; n]; n];
            for (col, b) in fp_basis.iter().enumerate() {
                let img = to_fp(&self.mul(x, b));
                for row in 0..n {
                    m[row][col] = img[row];
                }
            }
            m
        };
        let mut levels = 0u32;
        while p.pow(levels + 1) <= n as u64 {
            levels += 1;
        }
        // I_{-1} = A over F_p
        let mut ideal: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
        for i in 0..=levels {
            if ideal.is_empty() {
                break;
            }
            let modulus = p.pow(i + 1);
            let pi = p.pow(i);
            let g = |v: &[u64]| -> u64 {
                let m = reg(&from_fp(v));
                let pw = mat_pow_mod(&m, pi, modulus);
                let tr = (0..n).fold(0u64, |acc, k| (acc + pw[k][k]) % modulus);
                (tr / pi) % p
            };
            // M[k][j] = g_i(a_j b_k)
            let rows: Vec<Vec<Scalar>> = fp_basis
                .iter()
                .map(|b| {
                    ideal
                        .iter()
                        .map(|a| {
                            let prod = self.mul(&from_fp(a), b);
                            prime.from_i64(g(&to_fp(&prod)) as i64)
                        })
                        .collect()
                })
                .collect();
            let mat = Matrix::from_rows(&prime, rows)?;
            let ker = mat.kernel();
            ideal = ker
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; n];
                    for (coef, a) in c.iter().zip(&ideal) {
                        let cv = prime.prime_digits(coef)[0] as u64;
                        if cv == 0 {
                            continue;
                        }
                        for t in 0..n {
                            v[t] = (v[t] + cv * a[t]) % p;
                        }
                    }
                    v
                })
                .collect();
        }
        let mut span = Subspace::new(f, d);
        for v in &ideal {
            span.insert(from_fp(v));
        }
        Ok(span.basis().to_vec())
    }

    /// Quotient by a two-sided ideal given by a spanning set.
    pub fn quotient(&self, ideal: &[Elem]) -> Result<AssocAlgebra> {
        let f = &self.field;
        let mut span = Subspace::new(f, self.dim);
        for v in ideal {
            span.insert(v.clone());
        }
        let k = span.dim();
        let mut reps = vec![];
        for i in 0..self.dim {
            let b = self.basis_elem(i);
            if span.insert(b.clone()) {
                reps.push(b);
            }
        }
        let reduce = |x: &Elem| -> Result<Elem> {
            let c = span.coords(x).ok_or_else(|| Error::Invariant("quotient coordinates".into()))?;
            Ok(c[k..].to_vec())
        };
        let q = reps.len();
        let mut table = vec![vec![vec![]; q]; q];
        for i in 0..q {
            for j in 0..q {
                table[i][j] = reduce(&self.mul(&reps[i], &reps[j]))?;
            }
        }
        Ok(AssocAlgebra::unchecked(f, table, reduce(&self.one)?))
    }

    /// Subalgebra `e A e` with unit `e`, together with the embedding of its basis into `A`.
    pub fn corner(&self, e: &[Scalar]) -> Result<(AssocAlgebra, Vec<Elem>)> {
        let f = &self.field;
        let mut span = Subspace::new(f, self.dim);
        for i in 0..self.dim {
            let v = self.mul(&self.mul(e, &self.basis_elem(i)), e);
            span.insert(v);
        }
        let basis = span.basis().to_vec();
        let k = basis.len();
        let coords = |x: &Elem| span.coords(x).ok_or_else(|| Error::Invariant("corner algebra not closed".into()));
        let one = coords(&e.to_vec())?;
        let mut table = vec![vec![vec![]; k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = coords(&self.mul(&basis[i], &basis[j]))?;
            }
        }
        Ok((AssocAlgebra::unchecked(f, table, one), basis))
    }

    /// Maps an element of a corner algebra back into `A`.
    pub fn lift_from_corner(&self, embedding: &[Elem], x: &[Scalar]) -> Elem {
        let mut out = self.zero();
        for (c, b) in x.iter().zip(embedding) {
            if !self.field.is_zero(c) {
                out = self.add(&out, &self.scale(b, c));
            }
        }
        out
    }

    /// Whether the algebra is local (its quotient by the radical is a division algebra).
    /// The zero algebra is not local.
    pub fn is_local(&self) -> Result<bool> {
        if self.dim == 0 {
            return Ok(false);
        }
        Ok(self.nontrivial_idempotent()?.is_none())
    }

    /// A complete set of primitive orthogonal idempotents summing to one, in a
    /// deterministic order.
    pub fn primitive_idempotents(&self) -> Result<Vec<Elem>> {
        if self.dim == 0 {
            return Ok(vec![]);
        }
        let mut done = vec![];
        let mut work = vec![self.one.clone()];
        while let Some(e) = work.pop() {
            let (corner, emb) = self.corner(&e)?;
            match corner.nontrivial_idempotent()? {
                None => done.push(e),
                Some(e1) => {
                    let e1 = self.lift_from_corner(&emb, &e1);
                    let e2 = self.sub(&e, &e1);
                    work.push(e2);
                    work.push(e1);
                }
            }
        }
        Ok(done)
    }

    /// An idempotent other than 0 and 1, or `None` when the algebra is local.
    pub fn nontrivial_idempotent(&self) -> Result<Option<Elem>> {
        let f = self.field.clone();
        let rad = self.radical()?;
        let semisimple_dim = self.dim - rad.len();
        if semisimple_dim <= 1 {
            return Ok(None);
        }
        let mut rad_span = Subspace::new(&f, self.dim);
        for r in &rad {
            rad_span.insert(r.clone());
        }
        let commutative = (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let (x, y) = (self.basis_elem(i), self.basis_elem(j));
                rad_span.contains(&self.sub(&self.mul(&x, &y), &self.mul(&y, &x)))
            })
        });
        if f.is_finite() && commutative {
            return self.berlekamp_idempotent(&rad_span);
        }
        // candidates: basis elements, then deterministic pseudo-random elements
        let mut rng = ChaCha8Rng::seed_from_u64(0x1DE0 + self.dim as u64);
        for t in 0..(self.dim + 400) {
            let x = if t < self.dim { self.basis_elem(t) } else { self.random(&mut rng) };
            let mu = self.min_poly(&x);
            match poly::coprime_split(&f, &mu) {
                Splitting::Split(g, h) => return Ok(Some(self.crt_idempotent(&x, &g, &h))),
                Splitting::Primary(g) if commutative && g.len() - 1 == semisimple_dim => {
                    // x generates a field of full dimension modulo the radical
                    return Ok(None);
                }
                _ => {}
            }
        }
        Err(Error::Undecided(format!(
            "no idempotent found in an algebra of dimension {} with semisimple part of dimension {} over {}",
            self.dim, semisimple_dim, f
        )))
    }

    fn crt_idempotent(&self, x: &[Scalar], g: &[Scalar], h: &[Scalar]) -> Elem {
        let f = &self.field;
        let (_, _, v) = poly::ext_gcd(f, g, h);
        // v h ≡ 1 mod g and ≡ 0 mod h
        let vh = poly::mul(f, &v, h);
        self.eval_poly(&vh, x)
    }

    /// Commutative case over a finite field: the kernel of `x ↦ x^q − x` modulo the radical
    /// has dimension equal to the number of simple factors.
    fn berlekamp_idempotent(&self, rad_span: &Subspace) -> Result<Option<Elem>> {
        let f = &self.field;
        let q = f.order().unwrap() as u64;
        let d = self.dim;
        let mut cols = vec![];
        for i in 0..d {
            let b = self.basis_elem(i);
            cols.push(self.sub(&self.pow(&b, q), &b));
        }
        for v in rad_span.basis() {
            cols.push(v.clone());
        }
        let m = Matrix::from_cols(f, d, &cols);
        let ker = m.kernel();
        let mut fixed = Subspace::new(f, d);
        for v in rad_span.basis() {
            fixed.insert(v.clone());
        }
        fixed.insert(self.one.clone());
        for k in &ker {
            let x: Elem = k[..d].to_vec();
            if fixed.contains(&x) {
                continue;
            }
            let mu = self.min_poly(&x);
            if let Splitting::Split(g, h) = poly::coprime_split(f, &mu) {
                return Ok(Some(self.crt_idempotent(&x, &g, &h)));
            }
            return Err(Error::Invariant("Frobenius-fixed element with unsplit minimal polynomial".into()));
        }
        Ok(None)
    }
}

fn mat_pow_mod(m: &[Vec<u64>], mut e: u64, modulus: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64 % modulus).collect()).collect();
    let mut b: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % modulus).collect()).collect();
    let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = x[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] = (out[i][j] + a * y[k][j]) % modulus;
                }
            }
        }
        out
    };
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &b);
        }
        b = mul(&b, &b);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_algebra(f: &Field, mats: &[Matrix]) -> AssocAlgebra {
        AssocAlgebra::from_matrices(f, mats).unwrap()
    }

    fn unit(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        m.set(i, j, f.one());
        m
    }

    #[test]
    fn upper_triangular_over_q() {
        let q = Field::rationals();
        let a = matrix_algebra(&q, &[unit(&q, 2, 0, 0), unit(&q, 2, 1, 1), unit(&q, 2, 0, 1)]);
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 1);
        // the radical is the strictly upper part: coordinates (0, 0, c)
        assert!(q.is_zero(&rad[0][0]) && q.is_zero(&rad[0][1]));
        assert_eq!(a.primitive_idempotents().unwrap().len(), 2);
        assert!(!a.is_local().unwrap());
    }

    #[test]
    fn f4_over_f2_is_a_field() {
        let f2 = Field::prime(2).unwrap();
        // F2[t]/(t^2+t+1) via the companion matrix
        let t = Matrix::from_ints(&f2, &[&[0, 1], &[1, 1]]);
        let a = matrix_algebra(&f2, &[Matrix::identity(&f2, 2), t]);
        assert!(a.radical().unwrap().is_empty());
        assert!(a.is_local().unwrap());
    }

    #[test]
    fn dual_numbers_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let x = Matrix::from_ints(&f2, &[&[0, 0], &[1, 0]]);
        let a = matrix_algebra(&f2, &[Matrix::identity(&f2, 2), x]);
        let rad = a.radical().unwrap();
        assert_eq!(rad, vec![vec![f2.zero(), f2.one()]]);
        assert!(a.is_local().unwrap());
    }

    #[test]
    fn full_matrix_algebra_over_f2_splits() {
        let f2 = Field::prime(2).unwrap();
        let mats: Vec<Matrix> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| unit(&f2, 2, i, j)).collect();
        let a = matrix_algebra(&f2, &mats);
        assert!(a.radical().unwrap().is_empty());
        let ids = a.primitive_idempotents().unwrap();
        assert_eq!(ids.len(), 2);
        for e in &ids {
            assert_eq!(a.mul(e, e), *e);
        }
        assert!(a.is_zero(&a.mul(&ids[0], &ids[1])));
    }

    /// Brute-force radical over F2: x is in J iff x*y is nilpotent for all y.
    fn brute_radical_dim(a: &AssocAlgebra) -> usize {
        let d = a.dim();
        let all: Vec<Elem> = (0..1u32 << d).map(|c| (0..d).map(|i| Scalar::Fin((c >> i) & 1)).collect()).collect();
        let nilpotent = |x: &Elem| a.is_zero(&a.pow(x, d as u64 + 1));
        let count = all.iter().filter(|x| all.iter().all(|y| nilpotent(&a.mul(x, y)))).count();
        count.trailing_zeros() as usize
    }

    #[test]
    fn modular_radical_matches_brute_force_on_group_algebras() {
        let f2 = Field::prime(2).unwrap();
        // F2[C2 x C2] realized by permutation matrices of size 4: local, radical dim 3
        let perm = |p: [usize; 4]| {
            let mut m = Matrix::zeros(&f2, 4, 4);
            for (i, &j) in p.iter().enumerate() {
                m.set(j, i, f2.one());
            }
            m
        };
        let g = [perm([0, 1, 2, 3]), perm([1, 0, 3, 2]), perm([2, 3, 0, 1]), perm([3, 2, 1, 0])];
        let a = matrix_algebra(&f2, &g);
        assert_eq!(a.radical().unwrap().len(), brute_radical_dim(&a));
        assert_eq!(a.radical().unwrap().len(), 3);
        // F2[S3] via 3x3 permutation matrices spans a 4-dim algebra? use the 6 permutation
        // matrices' span (dimension 5) and compare with brute force.
        let perms3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let mut span = Subspace::new(&f2, 9);
        let mut basis = vec![];
        for p in perms3 {
            let mut m = Matrix::zeros(&f2, 3, 3);
            for (i, &j) in p.iter().enumerate() {
                m.set(j, i, f2.one());
            }
            if span.insert(m.data().to_vec()) {
                basis.push(m);
            }
        }
        let b = matrix_algebra(&f2, &basis);
        assert_eq!(b.radical().unwrap().len(), brute_radical_dim(&b));
    }
}
