//! Krull-Schmidt decomposition of complexes and isomorphism testing.

use std::collections::BTreeMap;

use super::amat::{left_action, realized_to_row, AMat};
use super::chain::{end_algebra, hom_space, ChainMap, GradedMap};
use super::resolution::top_generators;
use super::{minimize, Minimality, ProjComplex};
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar, Subspace};

/// A direct summand `Y` of `X` with chain maps `ι: Y → X`, `π: X → Y`, `ι then π = id_Y`.
#[derive(Clone, Debug)]
pub struct ComplexSummand {
    pub complex: ProjComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Mutually inverse chain maps between the minimal forms of two complexes.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub forward: ChainMap,
    pub backward: ChainMap,
}

impl IsoCertificate {
    pub fn verify(&self) -> Result<bool> {
        let x = &self.forward.source;
        let y = &self.forward.target;
        Ok(self.forward.is_chain_map()
            && self.backward.is_chain_map()
            && self.forward.then(&self.backward)? == GradedMap::identity(x)
            && self.backward.then(&self.forward)? == GradedMap::identity(y))
    }
}

/// The summand cut out by an idempotent chain endomorphism `eps` of `x`.
pub fn summand_of_idempotent(x: &ProjComplex, eps: &ChainMap) -> Result<ComplexSummand> {
    let alg = x.algebra();
    let f = alg.field();
    let mut comps = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in x.degrees() {
        let slots = x.comps(n);
        let e = eps.component(n).realize(alg, slots, slots);
        let actions: Vec<Matrix> = (0..alg.dim()).map(|b| left_action(alg, slots, &alg.elem(b))).collect();
        let image: Vec<Vec<Scalar>> = (0..e.cols()).map(|j| e.col(j)).filter(|v| v.iter().any(|c| !f.is_zero(c))).collect();
        let gens = top_generators(alg, &actions, &image);
        let yslots: Vec<usize> = gens.iter().map(|(s, _)| *s).collect();
        let mut i_m = AMat::zeros(alg, yslots.len(), slots.len());
        for (k, (_, g)) in gens.iter().enumerate() {
            for (j, v) in realized_to_row(alg, slots, g).into_iter().enumerate() {
                i_m.set(k, j, v);
            }
        }
        let i_real = i_m.realize(alg, &yslots, slots);
        let mut span = Subspace::new(f, i_real.rows());
        for j in 0..i_real.cols() {
            if !span.insert(i_real.col(j)) {
                return Err(Error::Invariant("summand generators are dependent".into()));
            }
        }
        let mut p_real = Matrix::zeros(f, i_real.cols(), i_real.rows());
        for j in 0..e.cols() {
            let c = span.coords(&e.col(j)).ok_or_else(|| Error::Invariant("image of the idempotent not covered".into()))?;
            for (r, v) in c.into_iter().enumerate() {
                p_real.set(r, j, v);
            }
        }
        let p_m = AMat::from_realized(alg, slots, &yslots, &p_real);
        comps.insert(n, yslots);
        incl.insert(n, i_m);
        proj.insert(n, p_m);
    }
    let mut diffs = vec![];
    for n in x.lo()..x.hi() {
        let d = incl[&n].mul(alg, &x.diff(n))?.mul(alg, &proj[&(n + 1)])?;
        diffs.push(d);
    }
    let y = ProjComplex::unchecked(alg, x.lo(), comps.into_values().collect(), diffs);
    let inclusion = GradedMap::from_components(&y, x, 0, incl)?;
    let projection = GradedMap::from_components(x, &y, 0, proj)?;
    Ok(ComplexSummand { complex: y, inclusion, projection })
}

/// Decomposition into indecomposable complexes (in the category of complexes) from a
/// complete set of primitive idempotents of the chain endomorphism algebra.
pub fn decompose_complex(x: &ProjComplex) -> Result<Vec<ComplexSummand>> {
    if x.is_zero() {
        return Ok(vec![]);
    }
    let (e, hs) = end_algebra(x)?;
    let ids = e.primitive_idempotents()?;
    let flag = if x.is_homotopy_minimal() { Minimality::Yes } else { Minimality::Unknown };
    ids.iter()
        .map(|c| {
            let eps = hs.combination(c);
            let mut s = summand_of_idempotent(x, &eps)?;
            s.complex = s.complex.with_flag(flag);
            Ok(s)
        })
        .collect()
}

/// Whether the chain endomorphism algebra is local.
pub fn is_indecomposable(x: &ProjComplex) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    end_algebra(x)?.0.is_local()
}

fn same_shape(x: &ProjComplex, y: &ProjComplex) -> bool {
    let (lo, hi) = (x.lo().min(y.lo()), x.hi().max(y.hi()));
    (lo..=hi).all(|n| x.multiplicity(n) == y.multiplicity(n))
}

/// For indecomposable complexes: mutually inverse chain maps, if `x ≅ y`. Some composite
/// `g ∘ f` of basis maps leaves the radical of `End(x)` exactly when they are isomorphic.
pub fn indecomposable_iso(x: &ProjComplex, y: &ProjComplex) -> Result<Option<(ChainMap, ChainMap)>> {
    if !same_shape(x, y) {
        return Ok(None);
    }
    let hxy = hom_space(x, y)?;
    let hyx = hom_space(y, x)?;
    let (e, hxx) = end_algebra(x)?;
    let mut rad = Subspace::new(x.algebra().field(), e.dim());
    for r in e.radical()? {
        rad.insert(r);
    }
    for fm in &hxy.chain_maps {
        for gm in &hyx.chain_maps {
            let fg = fm.then(gm)?;
            let c = hxx.coords(&fg).ok_or_else(|| Error::Invariant("composite is not a chain map".into()))?;
            if rad.contains(&c) {
                continue;
            }
            let inv = e.inverse(&c).ok_or_else(|| Error::Invariant("non-radical endomorphism of an indecomposable is not invertible".into()))?;
            let w = hxx.combination(&inv);
            let back = gm.then(&w)?;
            return Ok(Some((fm.clone(), back)));
        }
    }
    Ok(None)
}

/// Isomorphism of the minimal forms (equivalently, homotopy equivalence), by matching
/// indecomposable summands.
pub fn is_isomorphic(x: &ProjComplex, y: &ProjComplex) -> Result<Option<IsoCertificate>> {
    if x.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let x0 = if x.is_homotopy_minimal() { x.clone() } else { minimize(x)?.0 };
    let y0 = if y.is_homotopy_minimal() { y.clone() } else { minimize(y)?.0 };
    if !same_shape(&x0, &y0) {
        return Ok(None);
    }
    let xs = decompose_complex(&x0)?;
    let mut ys: Vec<Option<ComplexSummand>> = decompose_complex(&y0)?.into_iter().map(Some).collect();
    let mut forward = GradedMap::zero(&x0, &y0, 0);
    let mut backward = GradedMap::zero(&y0, &x0, 0);
    for s in &xs {
        let mut matched = false;
        for slot in ys.iter_mut() {
            let Some(t) = slot else { continue };
            if let Some((f, g)) = indecomposable_iso(&s.complex, &t.complex)? {
                forward = forward.add(&s.projection.then(&f)?.then(&t.inclusion)?)?;
                backward = backward.add(&t.projection.then(&g)?.then(&s.inclusion)?)?;
                *slot = None;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    if ys.iter().any(|t| t.is_some()) {
        return Ok(None);
    }
    let cert = IsoCertificate { forward, backward };
    if !cert.verify()? {
        return Err(Error::Invariant("assembled isomorphism does not invert".into()));
    }
    Ok(Some(cert))
}
