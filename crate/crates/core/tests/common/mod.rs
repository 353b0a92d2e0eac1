//! Independent brute-force oracles and corpus generators for the acceptance suite.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use minplex_core::algebra::{AlgElem, Algebra, Arrow, Quiver, Relation};
use minplex_core::complex::{AMat, ChainMap, GradedMap, ProjComplex};
use minplex_core::field::{Field, Matrix};

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
/// projective per degree and at most `max_total` summands overall, listed without any
/// identification.
pub fn all_minimal(alg: &Algebra, m: usize, max_mult: usize, max_total: usize) -> Vec<ProjComplex> {
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
        let total: usize = comps.iter().map(|c| c.len()).sum();
        if total == 0 || total > max_total {
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


/// Every invertible endomorphism of `⊕ A e_{s_i}` over F_2, by sweeping all endomorphisms.
fn automorphisms(alg: &Algebra, slots: &[usize]) -> Vec<AMat> {
    let mut cells = vec![];
    for (i, &s) in slots.iter().enumerate() {
        for (j, &t) in slots.iter().enumerate() {
            for b in alg.peirce(s, t) {
                cells.push((i, j, b));
            }
        }
    }
    let n: usize = slots.iter().map(|&s| alg.projective_basis(s).len()).sum();
    let mut out = vec![];
    for code in 0u64..1 << cells.len() {
        let mut g = AMat::zeros(alg, slots.len(), slots.len());
        for (k, &(i, j, b)) in cells.iter().enumerate() {
            if code >> k & 1 == 1 {
                let e = alg.add(g.get(i, j), &alg.elem(b));
                g.set(i, j, e);
            }
        }
        if g.realize(alg, slots, slots).rank() == n {
            out.push(g);
        }
    }
    out
}

/// Isomorphism classes of nonzero minimal complexes in degrees 0 and 1 over an F_2 algebra
/// with at most `max_mult` copies of each projective per degree, counted per cohomology
/// dimension vector. Classes are orbits of the differential under every pair of automorphisms
/// of the two terms.
pub fn object_classes_brute(alg: &Algebra, max_mult: usize) -> BTreeMap<Vec<Vec<usize>>, usize> {
    assert_eq!(alg.field().order(), Some(2));
    let n = alg.num_slots();
    let mut auts: BTreeMap<Vec<usize>, Vec<AMat>> = BTreeMap::new();
    let mut out = BTreeMap::new();
    let mults: Vec<Vec<usize>> = (0..(max_mult + 1).pow(n as u32))
        .map(|code| (0..n).map(|s| code / (max_mult + 1).pow(s as u32) % (max_mult + 1)).collect())
        .collect();
    let slots_of = |m: &[usize]| -> Vec<usize> { (0..n).flat_map(|s| std::iter::repeat_n(s, m[s])).collect() };
    for m0 in &mults {
        for m1 in &mults {
            let (c0, c1) = (slots_of(m0), slots_of(m1));
            if c0.is_empty() && c1.is_empty() {
                continue;
            }
            let mut unknowns = vec![];
            for (i, &s) in c0.iter().enumerate() {
                for (j, &t) in c1.iter().enumerate() {
                    for b in alg.peirce(s, t) {
                        if alg.basis()[b].radical {
                            unknowns.push((i, j, b));
                        }
                    }
                }
            }
            let decode = |code: u64| {
                let mut d = AMat::zeros(alg, c0.len(), c1.len());
                for (k, &(i, j, b)) in unknowns.iter().enumerate() {
                    if code >> k & 1 == 1 {
                        d.set(i, j, alg.add(d.get(i, j), &alg.elem(b)));
                    }
                }
                d
            };
            let encode = |d: &AMat| -> u64 {
                let mut code = 0;
                for (k, &(i, j, b)) in unknowns.iter().enumerate() {
                    if alg.field().is_one(&d.get(i, j)[b]) {
                        code |= 1 << k;
                    }
                }
                assert!(d.is_radical(alg));
                code
            };
            let units: Vec<AMat> = (0..unknowns.len()).map(|k| decode(1 << k)).collect();
            let mut actions: Vec<Vec<u64>> = vec![];
            for g in auts.entry(c0.clone()).or_insert_with(|| automorphisms(alg, &c0)).iter() {
                actions.push(units.iter().map(|u| encode(&g.mul(alg, u).unwrap())).collect());
            }
            for g in auts.entry(c1.clone()).or_insert_with(|| automorphisms(alg, &c1)).iter() {
                actions.push(units.iter().map(|u| encode(&u.mul(alg, g).unwrap())).collect());
            }
            actions.sort();
            actions.dedup();
            let total = 1u64 << unknowns.len();
            let mut seen = vec![false; total as usize];
            for start in 0..total {
                if seen[start as usize] {
                    continue;
                }
                seen[start as usize] = true;
                let mut stack = vec![start];
                while let Some(c) = stack.pop() {
                    for cols in &actions {
                        let image = (0..cols.len()).filter(|k| c >> k & 1 == 1).fold(0, |acc, k| acc ^ cols[k]);
                        if !seen[image as usize] {
                            seen[image as usize] = true;
                            stack.push(image);
                        }
                    }
                }
                let x = ProjComplex::new(alg, 0, vec![c0.clone(), c1.clone()], vec![decode(start)]).unwrap();
                let key: Vec<Vec<usize>> = (0..=1).map(|d| x.cohomology_vector(d)).collect();
                *out.entry(key).or_insert(0) += 1;
            }
        }
    }
    out
}

/// A random element of `e_s A e_t`.
pub fn random_entry(alg: &Algebra, s: usize, t: usize, radical_only: bool, rng: &mut impl rand::Rng) -> AlgElem {
    let mut e = alg.zero();
    for b in alg.peirce(s, t) {
        if (!radical_only || alg.basis()[b].radical) && rng.gen_bool(0.5) {
            e = alg.add(&e, &alg.elem(b));
        }
    }
    e
}

fn random_mults(n: usize, max_mult: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
    (0..n)
        .flat_map(|s| {
            let k = match rng.gen_range(0..20) {
                0..=9 => 0,
                10..=16 => 1,
                _ => 2,
            };
            std::iter::repeat_n(s, k.min(max_mult))
        })
        .collect()
}

/// A random nonzero minimal complex in degrees `0..=m` over an algebra whose radical squares
/// to zero.
pub fn random_minimal(alg: &Algebra, m: usize, max_mult: usize, rng: &mut impl rand::Rng) -> ProjComplex {
    loop {
        let comps: Vec<Vec<usize>> = (0..=m).map(|_| random_mults(alg.num_slots(), max_mult, rng)).collect();
        if comps.iter().all(|c| c.is_empty()) {
            continue;
        }
        let diffs = (0..m)
            .map(|n| {
                let mut d = AMat::zeros(alg, comps[n].len(), comps[n + 1].len());
                for (i, &s) in comps[n].iter().enumerate() {
                    for (j, &t) in comps[n + 1].iter().enumerate() {
                        d.set(i, j, random_entry(alg, s, t, true, rng));
                    }
                }
                d
            })
            .collect();
        if let Ok(x) = ProjComplex::new(alg, 0, comps, diffs) {
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// A random automorphism of `⊕ A e_{s_i}` with its inverse, as a product of elementary
/// transvections and diagonal units.
pub fn random_automorphism(alg: &Algebra, slots: &[usize], rng: &mut impl rand::Rng) -> (AMat, AMat) {
    let id = AMat::identity(alg, slots);
    let (mut g, mut h) = (id.clone(), id.clone());
    for _ in 0..2 * slots.len() {
        let (mut e, mut einv) = (id.clone(), id.clone());
        let i = rng.gen_range(0..slots.len());
        let j = rng.gen_range(0..slots.len());
        if i == j {
            let s = slots[i];
            let u = alg.add(&alg.idempotent(s), &random_entry(alg, s, s, true, rng));
            let v = alg.corner_inverse(&u, s).expect("unit");
            e.set(i, i, u);
            einv.set(i, i, v);
        } else {
            let x = random_entry(alg, slots[i], slots[j], false, rng);
            e.set(i, j, x.clone());
            einv.set(i, j, alg.neg(&x));
        }
        g = g.mul(alg, &e).unwrap();
        h = einv.mul(alg, &h).unwrap();
    }
    (g, h)
}

/// A random complex that is usually not minimal: a minimal complex plus contractible cones,
/// with every term twisted by a random automorphism and the result shifted.
pub fn random_complex(alg: &Algebra, rng: &mut impl rand::Rng) -> ProjComplex {
    let m = rng.gen_range(0..=2);
    let mut x = random_minimal(alg, m, 2, rng);
    for _ in 0..rng.gen_range(0..=2) {
        let s = rng.gen_range(0..alg.num_slots());
        let n = rng.gen_range(0..=m as i64);
        let cone = ProjComplex::new(alg, n - 1, vec![vec![s], vec![s]], vec![AMat::identity(alg, &[s])]).unwrap();
        x = x.direct_sum(&cone).unwrap();
    }
    let gs: BTreeMap<i64, (AMat, AMat)> = x.degrees().map(|n| (n, random_automorphism(alg, x.comps(n), rng))).collect();
    let comps: Vec<Vec<usize>> = x.degrees().map(|n| x.comps(n).to_vec()).collect();
    let diffs: Vec<AMat> = (x.lo()..x.hi())
        .map(|n| gs[&n].1.mul(alg, &x.diff(n)).unwrap().mul(alg, &gs[&(n + 1)].0).unwrap())
        .collect();
    let y = ProjComplex::new(alg, x.lo(), comps, diffs).unwrap();
    y.shift(rng.gen_range(-2..=2))
}

/// A random null-homotopic endomorphism `dh + hd` of `x`.
pub fn random_null_homotopic(x: &ProjComplex, rng: &mut impl rand::Rng) -> ChainMap {
    let alg = x.algebra();
    let maps: BTreeMap<i64, AMat> = x
        .degrees()
        .filter(|&n| n > x.lo())
        .map(|n| {
            let (src, tgt) = (x.comps(n), x.comps(n - 1));
            let mut h = AMat::zeros(alg, src.len(), tgt.len());
            for (i, &s) in src.iter().enumerate() {
                for (j, &t) in tgt.iter().enumerate() {
                    h.set(i, j, random_entry(alg, s, t, false, rng));
                }
            }
            (n, h)
        })
        .collect();
    GradedMap::from_components(x, x, -1, maps).unwrap().boundary().unwrap()
}
