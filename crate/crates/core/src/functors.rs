//! Base change `− ⊗_k K` and restriction of scalars along a finite field extension, on
//! complexes of projectives, with the checks that tie the two together.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgElem, Algebra, Presentation};
use crate::complex::amat::{left_action, AMat};
use crate::complex::resolution::top_generators;
use crate::complex::{decompose_complex, is_isomorphic, ComplexSummand, GradedMap, IsoCertificate, ProjComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

/// An algebra `A` over `k` together with `A_K = A ⊗_k K` for a finite extension `K/k`.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    small: Algebra,
    big: Algebra,
    degree: usize,
    /// Columns: images in `A_K` of the basis of `A`.
    embedding: Matrix,
    /// Columns: basis of `A_K` written in the images of the basis of `A`.
    embedding_inv: Matrix,
}

impl ExtensionContext {
    /// `K` must be `k` itself or a simple extension of it.
    pub fn new(algebra: &Algebra, big_field: &Field) -> Result<ExtensionContext> {
        let k = algebra.field();
        let d = algebra.dim();
        if big_field == k {
            let id = Matrix::identity(k, d);
            return Ok(ExtensionContext { small: algebra.clone(), big: algebra.clone(), degree: 1, embedding: id.clone(), embedding_inv: id });
        }
        if !big_field.is_extension() || big_field.base() != *k {
            return Err(Error::NotExtension);
        }
        let big = algebra.base_change(big_field)?;
        if big.dim() != d {
            return Err(Error::Invariant("base change changed the dimension".into()));
        }
        let (us, ub) = (algebra.user_basis(), big.user_basis());
        let us_inv = Matrix::from_cols(k, d, &us).inverse()?;
        let mut embedding = Matrix::zeros(big_field, d, d);
        for j in 0..d {
            let mut col = big.zero();
            for (i, u) in ub.iter().enumerate() {
                let c = big_field.embed(us_inv.get(i, j));
                col = big.add(&col, &big.scale(u, &c));
            }
            for (r, v) in col.into_iter().enumerate() {
                embedding.set(r, j, v);
            }
        }
        let embedding_inv = embedding.inverse()?;
        let ctx = ExtensionContext { small: algebra.clone(), big, degree: big_field.degree(), embedding, embedding_inv };
        ctx.check_structure_constants()?;
        Ok(ctx)
    }

    /// The embedding `A → A_K` is multiplicative on basis elements and, for quiver algebras,
    /// the identity on paths.
    fn check_structure_constants(&self) -> Result<()> {
        let d = self.small.dim();
        if let Presentation::Quiver { .. } = self.small.presentation() {
            let same = self.small.basis() == self.big.basis() && self.embedding == Matrix::identity(self.big.field(), d);
            if !same {
                return Err(Error::Invariant("base change reordered the path basis".into()));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.embed_elem(&self.small.mul(&self.small.elem(i), &self.small.elem(j)));
                let rhs = self.big.mul(&self.embed_elem(&self.small.elem(i)), &self.embed_elem(&self.small.elem(j)));
                if lhs != rhs {
                    return Err(Error::Invariant("extended structure constants disagree".into()));
                }
            }
        }
        Ok(())
    }

    pub fn small(&self) -> &Algebra {
        &self.small
    }

    pub fn big(&self) -> &Algebra {
        &self.big
    }

    /// `l = [K : k]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn embed_elem(&self, x: &[Scalar]) -> AlgElem {
        let v: Vec<Scalar> = x.iter().map(|c| self.embed_scalar(c)).collect();
        self.embedding.mul_vec(&v)
    }

    fn embed_scalar(&self, c: &Scalar) -> Scalar {
        if self.degree == 1 {
            c.clone()
        } else {
            self.big.field().embed(c)
        }
    }

    fn embed_matrix(&self, m: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.big.field(), m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, self.embed_scalar(m.get(r, c)));
            }
        }
        out
    }

    /// A `K`-matrix as a `k`-matrix, coordinate `j` of row `r` landing in row `r·l + j`.
    fn expand(&self, m: &Matrix) -> Result<Matrix> {
        let l = self.degree;
        if l == 1 {
            return Ok(m.clone());
        }
        let kf = self.big.field();
        let basis = kf.power_basis();
        let mut out = Matrix::zeros(self.small.field(), m.rows() * l, m.cols() * l);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if kf.is_zero(v) {
                    continue;
                }
                for (i, a) in basis.iter().enumerate() {
                    for (j, x) in kf.coordinates(&kf.mul(a, v))?.into_iter().enumerate() {
                        out.set(r * l + j, c * l + i, x);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_small(&self, x: &ProjComplex) -> Result<()> {
        if *x.algebra() != self.small {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn check_big(&self, y: &ProjComplex) -> Result<()> {
        if *y.algebra() != self.big {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

/// A complex of modules given by realized data, identified with a complex of projectives.
struct ProjectiveForm {
    complex: ProjComplex,
    /// Per degree: realized `⊕ A e_t → V^n` (column convention).
    phi: BTreeMap<i64, Matrix>,
}

/// Each term is given by left-action matrices for every basis element of `alg` and by the
/// blocks of a direct-sum decomposition into projectives (spanning vectors per block); the
/// differentials are `V^n → V^{n+1}` in column convention.
fn projective_form(alg: &Algebra, lo: i64, terms: &[(Vec<Matrix>, Vec<Vec<Vec<Scalar>>>)], diffs: &[Matrix]) -> Result<ProjectiveForm> {
    let f = alg.field();
    let mut comps = vec![];
    let mut phis = vec![];
    for (actions, blocks) in terms {
        let mut gens = vec![];
        for block in blocks {
            gens.extend(top_generators(alg, actions, block));
        }
        let mut cols = vec![];
        for (t, g) in &gens {
            for b in alg.projective_basis(*t) {
                cols.push(actions[b].mul_vec(g));
            }
        }
        let n = actions.first().map_or(0, |a| a.rows());
        if cols.len() != n {
            return Err(Error::Invariant("term is not projective of the expected size".into()));
        }
        let phi = Matrix::from_cols(f, n, &cols);
        if n > 0 && phi.rank() != n {
            return Err(Error::Invariant("generators do not give a free presentation".into()));
        }
        comps.push(gens.iter().map(|(t, _)| *t).collect::<Vec<_>>());
        phis.push(phi);
    }
    let mut amats = vec![];
    for (k, d) in diffs.iter().enumerate() {
        let (src, tgt) = (&comps[k], &comps[k + 1]);
        if src.is_empty() || tgt.is_empty() {
            amats.push(AMat::zeros(alg, src.len(), tgt.len()));
            continue;
        }
        let m = phis[k + 1].inverse()?.mul(d)?.mul(&phis[k])?;
        amats.push(AMat::from_realized(alg, src, tgt, &m));
    }
    let phi = phis.into_iter().enumerate().map(|(k, p)| (lo + k as i64, p)).collect();
    let complex = ProjComplex::new(alg, lo, comps, amats)?.mark_minimality();
    Ok(ProjectiveForm { complex, phi })
}

fn unit_vectors(f: &Field, n: usize, range: std::ops::Range<usize>) -> Vec<Vec<Scalar>> {
    range
        .map(|i| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        })
        .collect()
}

fn summand_ranges(alg: &Algebra, slots: &[usize], scale: usize) -> Vec<std::ops::Range<usize>> {
    let mut out = vec![];
    let mut acc = 0;
    for &s in slots {
        let w = alg.projective_basis(s).len() * scale;
        out.push(acc..acc + w);
        acc += w;
    }
    out
}

fn tensor_form(x: &ProjComplex, ctx: &ExtensionContext) -> Result<ProjectiveForm> {
    ctx.check_small(x)?;
    let (a, b) = (&ctx.small, &ctx.big);
    if x.is_zero() {
        return Ok(ProjectiveForm { complex: ProjComplex::zero(b), phi: BTreeMap::new() });
    }
    let kf = b.field();
    let mut terms = vec![];
    for n in x.degrees() {
        let slots = x.comps(n);
        let small_actions: Vec<Matrix> = (0..a.dim()).map(|i| ctx.embed_matrix(&left_action(a, slots, &a.elem(i)))).collect();
        let dim = x.realized_dim(n);
        let actions: Vec<Matrix> = (0..b.dim())
            .map(|m| {
                let mut acc = Matrix::zeros(kf, dim, dim);
                for (j, act) in small_actions.iter().enumerate() {
                    let c = ctx.embedding_inv.get(j, m);
                    if !kf.is_zero(c) {
                        acc = acc.add(&act.scale(c)).unwrap();
                    }
                }
                acc
            })
            .collect();
        let blocks = summand_ranges(a, slots, 1).into_iter().map(|r| unit_vectors(kf, dim, r)).collect();
        terms.push((actions, blocks));
    }
    let diffs: Vec<Matrix> = (x.lo()..x.hi()).map(|n| ctx.embed_matrix(&x.realized_diff(n))).collect();
    projective_form(b, x.lo(), &terms, &diffs)
}

fn restriction_form(y: &ProjComplex, ctx: &ExtensionContext) -> Result<ProjectiveForm> {
    ctx.check_big(y)?;
    let (a, b) = (&ctx.small, &ctx.big);
    if y.is_zero() {
        return Ok(ProjectiveForm { complex: ProjComplex::zero(a), phi: BTreeMap::new() });
    }
    let l = ctx.degree;
    let kf = a.field();
    let mut terms = vec![];
    for n in y.degrees() {
        let slots = y.comps(n);
        let dim = y.realized_dim(n) * l;
        let actions: Vec<Matrix> =
            (0..a.dim()).map(|i| ctx.expand(&left_action(b, slots, &ctx.embed_elem(&a.elem(i))))).collect::<Result<_>>()?;
        let blocks = summand_ranges(b, slots, l).into_iter().map(|r| unit_vectors(kf, dim, r)).collect();
        terms.push((actions, blocks));
    }
    let diffs: Vec<Matrix> = (y.lo()..y.hi()).map(|n| ctx.expand(&y.realized_diff(n))).collect::<Result<_>>()?;
    projective_form(a, y.lo(), &terms, &diffs)
}

/// `X ⊗_k K` as a complex of projective `A_K`-modules. For quiver algebras the components and
/// differential entries are those of `X` with coefficients embedded.
pub fn tensor_complex(x: &ProjComplex, ctx: &ExtensionContext) -> Result<ProjComplex> {
    Ok(tensor_form(x, ctx)?.complex)
}

/// The restriction `F(Y)` of a complex over `A_K` to `A`: each `A_K e_s` becomes `l` copies of
/// the corresponding projective and every entry expands into its `l × l` coordinate block.
pub fn restrict_complex(y: &ProjComplex, ctx: &ExtensionContext) -> Result<ProjComplex> {
    Ok(restriction_form(y, ctx)?.complex)
}

fn chain_map_from_blocks(x: &ProjComplex, y: &ProjComplex, blocks: &BTreeMap<i64, Matrix>) -> Result<GradedMap> {
    let alg = x.algebra();
    let maps = blocks.iter().map(|(&n, m)| (n, AMat::from_realized(alg, x.comps(n), y.comps(n), m))).collect();
    GradedMap::from_components(x, y, 0, maps)
}

/// The isomorphism `F(X ⊗ K) ≅ X^{⊕l}` given by `x ⊗ λ ↦ (λ_i x)_i`, with its inverse.
pub fn unit_iso(x: &ProjComplex, ctx: &ExtensionContext) -> Result<IsoCertificate> {
    let t = tensor_form(x, ctx)?;
    let r = restriction_form(&t.complex, ctx)?;
    let l = ctx.degree;
    let mut sum = ProjComplex::zero(x.algebra());
    for _ in 0..l {
        sum = sum.direct_sum(x)?;
    }
    let kf = x.algebra().field();
    let mut forward = BTreeMap::new();
    let mut backward = BTreeMap::new();
    for n in x.degrees() {
        let dim = x.realized_dim(n);
        let mut perm = Matrix::zeros(kf, dim * l, dim * l);
        for row in 0..dim {
            for j in 0..l {
                perm.set(j * dim + row, row * l + j, kf.one());
            }
        }
        let m = perm.mul(&ctx.expand(&t.phi[&n])?)?.mul(&r.phi[&n])?;
        backward.insert(n, m.inverse()?);
        forward.insert(n, m);
    }
    let cert = IsoCertificate {
        forward: chain_map_from_blocks(&r.complex, &sum, &forward)?,
        backward: chain_map_from_blocks(&sum, &r.complex, &backward)?,
    };
    if !cert.verify()? {
        return Err(Error::Invariant("unit isomorphism does not verify".into()));
    }
    Ok(cert)
}

/// An indecomposable summand `Y` of `X ⊗ K` with `X` a summand of `F(Y)`.
#[derive(Clone, Debug)]
pub struct UpWitness {
    pub tensor_summands: Vec<ComplexSummand>,
    /// Index of `Y` in `tensor_summands`.
    pub chosen: usize,
    pub restriction: ProjComplex,
    pub restriction_summands: Vec<ComplexSummand>,
    /// Index of the summand of `F(Y)` isomorphic to `X`, with the isomorphism.
    pub matched: usize,
    pub certificate: IsoCertificate,
}

/// An indecomposable summand `X` of `F(Y)` with `Y` a summand of `X ⊗ K`.
#[derive(Clone, Debug)]
pub struct DownWitness {
    pub restriction_summands: Vec<ComplexSummand>,
    pub chosen: usize,
    pub tensor: ProjComplex,
    pub tensor_summands: Vec<ComplexSummand>,
    pub matched: usize,
    pub certificate: IsoCertificate,
}

fn find_iso(target: &ProjComplex, among: &[ComplexSummand]) -> Result<Option<(usize, IsoCertificate)>> {
    for (i, s) in among.iter().enumerate() {
        if let Some(c) = is_isomorphic(&s.complex, target)? {
            return Ok(Some((i, c)));
        }
    }
    Ok(None)
}

pub fn summand_witness_up(x: &ProjComplex, ctx: &ExtensionContext) -> Result<UpWitness> {
    let tensor_summands = decompose_complex(&tensor_complex(x, ctx)?)?;
    for (chosen, y) in tensor_summands.iter().enumerate() {
        let restriction = restrict_complex(&y.complex, ctx)?;
        let restriction_summands = decompose_complex(&restriction)?;
        if let Some((matched, certificate)) = find_iso(x, &restriction_summands)? {
            return Ok(UpWitness { tensor_summands, chosen, restriction, restriction_summands, matched, certificate });
        }
    }
    Err(Error::Invariant("no summand of the base change restricts onto the input".into()))
}

pub fn summand_witness_down(y: &ProjComplex, ctx: &ExtensionContext) -> Result<DownWitness> {
    let restriction_summands = decompose_complex(&restrict_complex(y, ctx)?)?;
    if restriction_summands.len() > ctx.degree {
        return Err(Error::Invariant(format!(
            "restriction has {} summands, more than the degree {}",
            restriction_summands.len(),
            ctx.degree
        )));
    }
    for (chosen, x) in restriction_summands.iter().enumerate() {
        let tensor = tensor_complex(&x.complex, ctx)?;
        let tensor_summands = decompose_complex(&tensor)?;
        if let Some((matched, certificate)) = find_iso(y, &tensor_summands)? {
            return Ok(DownWitness { restriction_summands, chosen, tensor, tensor_summands, matched, certificate });
        }
    }
    Err(Error::Invariant("no summand of the restriction extends onto the input".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Ranges of the summands after base change (`Up`, bounds `[r/l, r]`) or restriction
/// (`Down`, bounds `[r, l·r]`) of an indecomposable complex of range `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeBoundReport {
    pub input: String,
    pub direction: Direction,
    pub l: usize,
    pub r: usize,
    pub summand_ranges: Vec<usize>,
    pub bounds_ok: bool,
    pub certificates_ok: bool,
}

pub fn range_bound_report(input: &str, x: &ProjComplex, direction: Direction, ctx: &ExtensionContext) -> Result<RangeBoundReport> {
    let l = ctx.degree;
    let r = x.range_stats().hr;
    let (image, certificates_ok) = match direction {
        Direction::Up => (tensor_complex(x, ctx)?, unit_iso(x, ctx)?.verify()?),
        Direction::Down => (restrict_complex(x, ctx)?, true),
    };
    let parts = decompose_complex(&image)?;
    let mut certificates_ok = certificates_ok;
    for p in &parts {
        certificates_ok &= p.inclusion.then(&p.projection)? == GradedMap::identity(&p.complex);
    }
    let summand_ranges: Vec<usize> = parts.iter().map(|p| p.complex.range_stats().hr).collect();
    let bounds_ok = parts.len() <= l
        && summand_ranges.iter().all(|&s| match direction {
            Direction::Up => r <= l * s && s <= r,
            Direction::Down => r <= s && s <= l * r,
        });
    Ok(RangeBoundReport { input: input.to_string(), direction, l, r, summand_ranges, bounds_ok, certificates_ok })
}
