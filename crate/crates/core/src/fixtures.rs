//! Small algebras, complexes and brute-force oracles shared by unit tests.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::{AlgElem, Algebra, Arrow, Quiver, Relation};
use crate::complex::amat::AMat;
use crate::complex::{ChainMap, GradedMap, ProjComplex};
use crate::field::{Field, Matrix};

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn quiver(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Quiver {
    Quiver::new(
        vertices.iter().map(|v| v.to_string()).collect(),
        arrows.iter().map(|&(n, s, t)| Arrow { name: n.into(), source: s, target: t }).collect(),
    )
    .unwrap()
}

/// `k[x]/(x²)` as a one-loop quiver.
pub fn dual(f: &Field) -> Algebra {
    let q = quiver(&["1"], &[("x", 0, 0)]);
    Algebra::from_quiver(f, q, vec![Relation { terms: vec![(f.one(), vec![0, 0])] }]).unwrap()
}

/// The base field itself: one vertex, no arrows.
pub fn point(f: &Field) -> Algebra {
    Algebra::from_quiver(f, quiver(&["1"], &[]), vec![]).unwrap()
}

/// `1 --a--> 2`.
pub fn a2(f: &Field) -> Algebra {
    Algebra::from_quiver(f, quiver(&["1", "2"], &[("a", 0, 1)]), vec![]).unwrap()
}

/// Two arrows `a, b: 1 → 2`.
pub fn kronecker(f: &Field) -> Algebra {
    Algebra::from_quiver(f, quiver(&["1", "2"], &[("a", 0, 1), ("b", 0, 1)]), vec![]).unwrap()
}

/// Parses `"0"`, `"x"`, `"e1"`, `"a+b"`, `"-a"`.
pub fn el(alg: &Algebra, s: &str) -> AlgElem {
    let mut acc = alg.zero();
    for term in s.split('+') {
        let term = term.trim();
        if term == "0" {
            continue;
        }
        let (neg, name) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let e = alg.element_by_name(name).unwrap_or_else(|| panic!("unknown element {name}"));
        acc = if neg { alg.sub(&acc, &e) } else { alg.add(&acc, &e) };
    }
    acc
}

pub fn amat(alg: &Algebra, rows: &[&[&str]]) -> AMat {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    AMat::from_entries(r, c, rows.iter().flat_map(|row| row.iter().map(|s| el(alg, s))).collect())
}

/// Complex starting in degree `lo` with slot names per degree and differentials given row by row.
pub fn cx(alg: &Algebra, lo: i64, comps: &[&[&str]], diffs: &[&[&[&str]]]) -> ProjComplex {
    let comps = comps.iter().map(|c| c.iter().map(|n| alg.slot_index(n).unwrap()).collect()).collect();
    let diffs = diffs.iter().map(|d| amat(alg, d)).collect();
    ProjComplex::new(alg, lo, comps, diffs).unwrap()
}

/// Every graded map `x^n → y^{n+shift}` over a finite field, by enumeration.
fn all_graded_maps(x: &ProjComplex, y: &ProjComplex, shift: i64, chain: bool) -> Vec<GradedMap> {
    let alg = x.algebra();
    let elems = alg.field().elements().expect("finite field");
    let degrees: Vec<i64> = x.degrees().collect();
    let mut per_degree: Vec<Vec<AMat>> = vec![];
    for &n in &degrees {
        let (src, tgt) = (x.comps(n), y.comps(n + shift));
        let mut cells = vec![];
        for (i, &s) in src.iter().enumerate() {
            for (j, &t) in tgt.iter().enumerate() {
                for b in alg.peirce(s, t) {
                    cells.push((i, j, b));
                }
            }
        }
        let mut out = vec![];
        let total = elems.len().pow(cells.len() as u32);
        for code in 0..total {
            let mut m = AMat::zeros(alg, src.len(), tgt.len());
            let mut c = code;
            for &(i, j, b) in &cells {
                let mut e = m.get(i, j).clone();
                e[b] = elems[c % elems.len()].clone();
                c /= elems.len();
                m.set(i, j, e);
            }
            out.push(m);
        }
        per_degree.push(out);
    }
    let mut results = vec![];
    let mut chosen: Vec<AMat> = vec![];
    fn rec(
        k: usize,
        degrees: &[i64],
        per_degree: &[Vec<AMat>],
        chosen: &mut Vec<AMat>,
        x: &ProjComplex,
        y: &ProjComplex,
        shift: i64,
        chain: bool,
        results: &mut Vec<GradedMap>,
    ) {
        let alg = x.algebra();
        if k == degrees.len() {
            let maps: BTreeMap<i64, AMat> = degrees.iter().cloned().zip(chosen.iter().cloned()).collect();
            let g = GradedMap::from_components(x, y, shift, maps).unwrap();
            if !chain || g.is_chain_map() {
                results.push(g);
            }
            return;
        }
        let n = degrees[k];
        for cand in &per_degree[k] {
            if chain && k > 0 {
                let l = x.diff(n - 1).mul(alg, cand).unwrap();
                let r = chosen[k - 1].mul(alg, &y.diff(n - 1)).unwrap();
                if l != r {
                    continue;
                }
            }
            chosen.push(cand.clone());
            rec(k + 1, degrees, per_degree, chosen, x, y, shift, chain, results);
            chosen.pop();
        }
    }
    rec(0, &degrees, &per_degree, &mut chosen, x, y, shift, chain, &mut results);
    results
}

pub fn all_chain_maps(x: &ProjComplex, y: &ProjComplex) -> Vec<ChainMap> {
    all_graded_maps(x, y, 0, true)
}

fn key(m: &ChainMap) -> String {
    format!("{:?}", m.realize())
}

/// Set of null-homotopic chain maps `x → y`, by enumerating every homotopy.
pub fn all_null_homotopic(x: &ProjComplex, y: &ProjComplex) -> HashSet<String> {
    all_graded_maps(x, y, -1, false).iter().map(|h| key(&h.boundary().unwrap())).collect()
}

/// Whether some pair of chain maps is mutually inverse up to homotopy.
pub fn homotopy_equivalent(x: &ProjComplex, y: &ProjComplex) -> bool {
    let fs = all_chain_maps(x, y);
    let gs = all_chain_maps(y, x);
    let nx = all_null_homotopic(x, x);
    let ny = all_null_homotopic(y, y);
    let (ix, iy) = (GradedMap::identity(x), GradedMap::identity(y));
    fs.iter().any(|f| {
        gs.iter().any(|g| {
            nx.contains(&key(&ix.sub(&f.then(g).unwrap()).unwrap())) && ny.contains(&key(&iy.sub(&g.then(f).unwrap()).unwrap()))
        })
    })
}

/// Whether some chain map `x → y` is invertible.
pub fn isomorphic_brute(x: &ProjComplex, y: &ProjComplex) -> bool {
    let dx: usize = x.degrees().map(|n| x.realized_dim(n)).sum();
    let dy: usize = y.degrees().map(|n| y.realized_dim(n)).sum();
    dx == dy && all_chain_maps(x, y).iter().any(|f| f.realize().inverse().is_ok())
}

/// Every minimal complex in degrees `0..=m` with at most `max_mult` copies of each
/// projective per degree, listed without any identification.
pub fn all_minimal(alg: &Algebra, m: usize, max_mult: usize) -> Vec<ProjComplex> {
    let f = alg.field();
    let elems = f.elements().unwrap();
    let radical = |s: usize, t: usize| -> Vec<AlgElem> {
        let idx: Vec<usize> = alg.peirce(s, t).into_iter().filter(|&b| alg.basis()[b].radical).collect();
        let mut out = vec![alg.zero()];
        for &b in &idx {
            out = out
                .iter()
                .flat_map(|x| elems.iter().map(move |c| (x.clone(), c.clone())))
                .map(|(x, c)| alg.add(&x, &alg.scale(&alg.elem(b), &c)))
                .collect();
        }
        out
    };
    let n = alg.num_slots();
    let mut shapes: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..=m {
        let mut next = vec![];
        for sh in &shapes {
            for code in 0..(max_mult + 1).pow(n as u32) {
                let mut c = code;
                let mut comp = vec![];
                for s in 0..n {
                    comp.extend(std::iter::repeat_n(s, c % (max_mult + 1)));
                    c /= max_mult + 1;
                }
                let mut sh = sh.clone();
                sh.push(comp);
                next.push(sh);
            }
        }
        shapes = next;
    }
    let mut out = vec![];
    for comps in shapes {
        if comps.iter().all(|c| c.is_empty()) {
            continue;
        }
        let mut partial: Vec<Vec<AMat>> = vec![vec![]];
        for d in 0..m {
            let cells: Vec<Vec<AlgElem>> = comps[d]
                .iter()
                .flat_map(|&s| comps[d + 1].iter().map(move |&t| (s, t)))
                .map(|(s, t)| radical(s, t))
                .collect();
            let mut mats: Vec<Vec<AlgElem>> = vec![vec![]];
            for opts in &cells {
                mats = mats.iter().flat_map(|v| opts.iter().map(move |o| [v.clone(), vec![o.clone()]].concat())).collect();
            }
            let (r, c) = (comps[d].len(), comps[d + 1].len());
            partial = partial
                .iter()
                .flat_map(|p| mats.iter().map(move |e| [p.clone(), vec![AMat::from_entries(r, c, e.clone())]].concat()))
                .collect();
        }
        for diffs in partial {
            if let Ok(x) = ProjComplex::new(alg, 0, comps.clone(), diffs) {
                out.push(x);
            }
        }
    }
    out
}

/// Number of indecomposable summands in the category of complexes, from the idempotents of
/// the enumerated endomorphism ring.
pub fn summand_count(x: &ProjComplex) -> usize {
    let ends: Vec<Matrix> = all_chain_maps(x, x).iter().map(|m| m.realize()).collect();
    let idem: Vec<Matrix> = ends.iter().filter(|e| e.mul(e).unwrap() == **e).cloned().collect();
    fn count(e: &Matrix, idem: &[Matrix]) -> usize {
        if e.rank() == 0 {
            return 0;
        }
        for f in idem {
            if f.rank() > 0 && f != e && &f.mul(e).unwrap() == f && &e.mul(f).unwrap() == f {
                return count(f, idem) + count(&e.sub(f).unwrap(), idem);
            }
        }
        1
    }
    let n: usize = x.degrees().map(|d| x.realized_dim(d)).sum();
    count(&Matrix::identity(x.algebra().field(), n), &idem)
}

fn entry_names(alg: &Algebra, s: usize, t: usize) -> Vec<AlgElem> {
    let peirce = alg.peirce(s, t);
    let mut out = vec![];
    for mask in 0u32..(1 << peirce.len()) {
        let mut e = alg.zero();
        for (k, &b) in peirce.iter().enumerate() {
            if mask >> k & 1 == 1 {
                e = alg.add(&e, &alg.elem(b));
            }
        }
        out.push(e);
    }
    out
}

/// A random two-term complex over an F_2 algebra with at most three summands in total.
pub fn two_term(alg: &Algebra, seed: &[u32]) -> ProjComplex {
    let n = alg.num_slots();
    let k0 = 1 + seed[0] as usize % 2;
    let k1 = 1 + seed[1] as usize % (4 - k0);
    let c0: Vec<usize> = (0..k0).map(|i| seed[2 + i] as usize % n).collect();
    let c1: Vec<usize> = (0..k1).map(|i| seed[4 + i] as usize % n).collect();
    let mut d = AMat::zeros(alg, k0, k1);
    for i in 0..k0 {
        for j in 0..k1 {
            let opts = entry_names(alg, c0[i], c1[j]);
            d.set(i, j, opts[seed[6 + 3 * i + j] as usize % opts.len()].clone());
        }
    }
    ProjComplex::new(alg, 0, vec![c0, c1], vec![d]).unwrap()
}

pub fn algebra_for(which: u32) -> Algebra {
    match which % 3 {
        0 => dual(&f2()),
        1 => a2(&f2()),
        _ => kronecker(&f2()),
    }
}

