//! Minimal projective resolutions built from iterated projective covers.

use super::amat::{left_action, realized_to_row, AMat};
use super::{minimize, Minimality, ProjComplex};
use crate::algebra::{Algebra, Module};
use crate::error::Result;
use crate::field::{Matrix, Scalar, Subspace};

/// A resolution `P_L → … → P_0` placed in degrees `−L..0`. `complete` means the last
/// kernel vanished, so the complex is the whole minimal resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: ProjComplex,
    pub complete: bool,
    /// Realized augmentation `P_0 → M` (column convention), when resolving a module.
    pub augmentation: Option<Matrix>,
}

/// Minimal generators of the submodule spanned by `vectors` inside a space with the given
/// action matrices: each generator is a vector in `e_s V` for the returned slot `s`, and the
/// generators span the submodule modulo its radical.
pub(crate) fn top_generators(alg: &Algebra, actions: &[Matrix], vectors: &[Vec<Scalar>]) -> Vec<(usize, Vec<Scalar>)> {
    let f = alg.field();
    let Some(first) = actions.first() else { return vec![] };
    let n = first.rows();
    let mut span = Subspace::new(f, n);
    for i in alg.radical_indices() {
        for v in vectors {
            span.insert(actions[i].mul_vec(v));
        }
    }
    let mut gens = vec![];
    for s in 0..alg.num_slots() {
        let e = &actions[alg.idempotent_index(s)];
        for v in vectors {
            let c = e.mul_vec(v);
            if span.contains(&c) {
                continue;
            }
            for a in actions {
                span.insert(a.mul_vec(&c));
            }
            gens.push((s, c));
        }
    }
    gens
}

/// Truncated minimal projective resolution of a module with at most `depth` differentials.
pub fn projective_resolution(m: &Module, depth: usize) -> Result<Resolution> {
    let alg = m.algebra();
    let f = alg.field();
    let module_actions: Vec<Matrix> = (0..alg.dim()).map(|i| m.action(i).clone()).collect();
    let all: Vec<Vec<Scalar>> = (0..m.total_dim())
        .map(|i| {
            let mut v = vec![f.zero(); m.total_dim()];
            v[i] = f.one();
            v
        })
        .collect();
    let gens = top_generators(alg, &module_actions, &all);
    let p0: Vec<usize> = gens.iter().map(|(s, _)| *s).collect();
    // augmentation: basis element b of A e_{s_k} ↦ b · g_k
    let mut aug_cols = vec![];
    for (s, g) in &gens {
        for b in alg.projective_basis(*s) {
            aug_cols.push(m.action(b).mul_vec(g));
        }
    }
    let augmentation = Matrix::from_cols(f, m.total_dim(), &aug_cols);
    let mut terms = vec![p0];
    let mut diffs: Vec<AMat> = vec![];
    let mut kernel = if aug_cols.is_empty() { vec![] } else { augmentation.kernel() };
    while !kernel.is_empty() && diffs.len() < depth {
        let slots = terms.last().unwrap().clone();
        let actions: Vec<Matrix> = (0..alg.dim()).map(|b| left_action(alg, &slots, &alg.elem(b))).collect();
        let gens = top_generators(alg, &actions, &kernel);
        let next: Vec<usize> = gens.iter().map(|(s, _)| *s).collect();
        let mut d = AMat::zeros(alg, next.len(), slots.len());
        for (k, (_, g)) in gens.iter().enumerate() {
            for (j, e) in realized_to_row(alg, &slots, g).into_iter().enumerate() {
                d.set(k, j, e);
            }
        }
        kernel = d.realize(alg, &next, &slots).kernel();
        diffs.push(d);
        terms.push(next);
    }
    let complete = kernel.is_empty();
    let len = diffs.len() as i64;
    terms.reverse();
    diffs.reverse();
    let complex = ProjComplex::unchecked(alg, -len, terms, diffs).with_flag(Minimality::Yes);
    Ok(Resolution { complex, complete, augmentation: Some(augmentation) })
}

/// A bounded complex of projectives is its own projective resolution; its minimal form is
/// returned.
pub fn resolve_complex(x: &ProjComplex) -> Result<Resolution> {
    let (min, _) = minimize(x)?;
    Ok(Resolution { complex: min, complete: true, augmentation: None })
}
