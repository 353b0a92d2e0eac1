use crate::error::Error;
use crate::field::Field;
use super::*;
use crate::algebra::Module;
use crate::fixtures::*;

fn ax(alg: &Algebra) -> ProjComplex {
    cx(alg, 0, &[&["1"], &["1"]], &[&[&["x"]]])
}

fn a1(alg: &Algebra) -> ProjComplex {
    cx(alg, 0, &[&["1"], &["1"]], &[&[&["e1"]]])
}

#[test]
fn minimality_checks() {
    let k = f2();
    let d = dual(&k);
    assert!(ax(&d).is_homotopy_minimal());
    assert!(!a1(&d).is_homotopy_minimal());
    let zero_diff = cx(&d, 0, &[&["1"], &["1"]], &[&[&["0"]]]);
    assert!(zero_diff.is_homotopy_minimal());
    assert_eq!(a1(&d).mark_minimality().minimal_flag(), Minimality::No);
}

#[test]
fn construction_rejects_nonzero_square() {
    let d = dual(&f2());
    let comps = vec![vec![0], vec![0], vec![0]];
    let one = fixtures_amat(&d, "e1");
    assert!(ProjComplex::new(&d, 0, comps, vec![one.clone(), one]).is_err());
}

fn fixtures_amat(alg: &Algebra, e: &str) -> AMat {
    amat(alg, &[&[e]])
}

#[test]
fn minimize_minimal_is_identity() {
    let d = dual(&f2());
    let x = ax(&d);
    let (m, eq) = minimize(&x).unwrap();
    assert_eq!(m, x);
    assert_eq!(eq.to_minimal, GradedMap::identity(&x));
    assert!(eq.source_homotopy.is_zero());
    assert!(eq.verify().unwrap());
}

#[test]
fn minimize_cone_of_identity_is_zero() {
    let a = a2(&f2());
    let cone = cx(&a, 0, &[&["1"], &["1"]], &[&[&["e1"]]]);
    let (m, eq) = minimize(&cone).unwrap();
    assert!(m.is_zero());
    assert!(eq.verify().unwrap());
}

#[test]
fn minimize_cancels_unit_summand() {
    let d = dual(&f2());
    let x = a1(&d).direct_sum(&ax(&d)).unwrap();
    let (m, eq) = minimize(&x).unwrap();
    assert_eq!(m, ax(&d));
    assert!(eq.verify().unwrap());
    assert!(homotopy_equivalent(&x, &m));
    assert!(!homotopy_equivalent(&x, &ProjComplex::zero(&d)));
}

#[test]
fn minimize_mixed_entries_over_q() {
    let q = Field::rationals();
    let k = kronecker(&q);
    // P2 ⊕ P1 → P1 ⊕ P1 with a unit in the P1 → P1 block
    let x = cx(&k, 0, &[&["2", "1"], &["1", "1"]], &[&[&["a", "b"], &["e1", "e1"]]]);
    let (m, eq) = minimize(&x).unwrap();
    assert!(m.is_homotopy_minimal());
    assert_eq!(m.total_multiplicity(), 2);
    assert!(eq.verify().unwrap());
    assert_eq!(m.cohomology(), vec![(0, 0), (1, 2)]);
}

#[test]
fn cohomology_examples() {
    let d = dual(&f2());
    assert_eq!(ax(&d).cohomology(), vec![(0, 1), (1, 1)]);
    assert_eq!(ax(&d).cohomology_vector(1), vec![1]);
    let k = kronecker(&f2());
    let stalk = ProjComplex::stalk(&k, vec![0, 1], 0).unwrap();
    assert_eq!(stalk.cohomology(), vec![(0, 4)]);
    assert_eq!(stalk.cohomology_vector(0), vec![1, 3]);
    assert!(a1(&d).cohomology().iter().all(|(_, h)| *h == 0));
}

#[test]
fn range_statistics() {
    let d = dual(&f2());
    let k = kronecker(&f2());
    let stalk = ProjComplex::stalk(&k, vec![0], 0).unwrap();
    let s = stalk.range_stats();
    assert_eq!((s.hl, s.hw, s.hr), (3, 1, 3));
    let s = ax(&d).range_stats();
    assert_eq!((s.hl, s.hw, s.hr), (1, 2, 2));
    let s = a1(&d).range_stats();
    assert_eq!((s.hl, s.hw, s.hr), (0, 0, 0));
    assert_eq!(ProjComplex::zero(&d).range_stats().hr, 0);
}

#[test]
fn shifts() {
    let d = dual(&f2());
    let x = ax(&d);
    assert_eq!(x.shift(0), x);
    let st = ProjComplex::stalk(&d, vec![0], 0).unwrap();
    assert_eq!(st.shift(1).lo(), -1);
    for n in -3..4 {
        assert_eq!(x.shift(n).range_stats().hr, 2);
        assert_eq!(x.shift(n).shift(-n), x);
    }
    let q = Field::rationals();
    let dq = dual(&q);
    let xq = ax(&dq).shift(1);
    assert_eq!(xq.diff(-1).get(0, 0), &dq.neg(&el(&dq, "x")));
}

#[test]
fn brutal_truncations() {
    let d = dual(&f2());
    let x = ax(&d);
    assert_eq!(x.brutal_truncate(-5), x);
    assert!(x.brutal_truncate(2).is_zero());
    let s = Module::simple(&d, 0).unwrap();
    let res = projective_resolution(&s, 4).unwrap();
    assert_eq!((res.complex.lo(), res.complex.hi()), (-4, 0));
    let t = res.complex.brutal_truncate(-2);
    assert_eq!((t.lo(), t.hi()), (-2, 0));
    let expected = cx(&d, -2, &[&["1"], &["1"], &["1"]], &[&[&["x"]], &[&["x"]]]);
    assert_eq!(t, expected);
}

#[test]
fn resolutions() {
    let d = dual(&f2());
    let p = Module::projective(&d, 0).unwrap();
    let r = projective_resolution(&p, 3).unwrap();
    assert!(r.complete);
    assert_eq!(r.complex, ProjComplex::stalk(&d, vec![0], 0).unwrap());

    let s = Module::simple(&d, 0).unwrap();
    let r = projective_resolution(&s, 3).unwrap();
    assert!(!r.complete);
    let expected = cx(&d, -3, &[&["1"], &["1"], &["1"], &["1"]], &[&[&["x"]], &[&["x"]], &[&["x"]]]);
    assert_eq!(r.complex, expected);
    let aug = r.augmentation.unwrap();
    assert_eq!((aug.rows(), aug.cols(), aug.rank()), (1, 2, 1));
    // cohomology of the truncated resolution: the simple in degree 0, plus the tail kernel
    assert_eq!(r.complex.cohomology(), vec![(-3, 1), (-2, 0), (-1, 0), (0, 1)]);

    let a = a2(&f2());
    let s1 = Module::simple(&a, 0).unwrap();
    let r = projective_resolution(&s1, 5).unwrap();
    assert!(r.complete);
    assert_eq!(r.complex, cx(&a, -1, &[&["2"], &["1"]], &[&[&["a"]]]));
    assert_eq!(r.complex.cohomology(), vec![(-1, 0), (0, 1)]);
}

#[test]
fn hom_space_examples() {
    let a = a2(&f2());
    let p1 = ProjComplex::stalk(&a, vec![0], 0).unwrap();
    let h = hom_space(&p1, &p1).unwrap();
    assert_eq!((h.chain_dim(), h.null_dim()), (1, 0));
    let far = ProjComplex::stalk(&a, vec![0], 5).unwrap();
    let h = hom_space(&p1, &far).unwrap();
    assert_eq!((h.chain_dim(), h.null_dim()), (0, 0));

    let d = dual(&f2());
    let x = ax(&d);
    let h = hom_space(&x, &x).unwrap();
    let xx = GradedMap::from_components(&x, &x, 0, [(0, amat(&d, &[&["x"]])), (1, amat(&d, &[&["x"]]))].into()).unwrap();
    assert!(xx.is_chain_map());
    assert!(h.chain_dim() >= 2);
    assert!(h.is_null_homotopic(&xx));
    let w = h.witness(&xx).unwrap();
    assert_eq!(w.boundary().unwrap(), xx);
    // brute force: all chain maps and all null-homotopic maps
    let all = all_chain_maps(&x, &x);
    assert_eq!(all.len(), 1 << h.chain_dim());
    assert_eq!(all_null_homotopic(&x, &x).len(), 1 << h.null_dim());
}

#[test]
fn hom_space_algebra_mismatch() {
    let x = ax(&dual(&f2()));
    let y = ProjComplex::stalk(&a2(&f2()), vec![0], 0).unwrap();
    assert!(matches!(hom_space(&x, &y), Err(Error::AlgebraMismatch)));
}

#[test]
fn null_homotopic_endomorphisms_are_radical() {
    let d = dual(&f2());
    let x = ax(&d);
    let h = hom_space(&x, &x).unwrap();
    for (f, _) in &h.null_homotopic {
        let g = GradedMap::identity(&x).sub(f).unwrap();
        assert!(g.realize().inverse().is_ok());
    }
}

/// `P2² → P1` resolving the simple at 1, with a basis change on `P2²` when `twist` is set.
fn kronecker_resolved_s1(k: &Algebra, twist: bool) -> ProjComplex {
    let d: &[&[&str]] = if twist { &[&["a+b"], &["b"]] } else { &[&["a"], &["b"]] };
    cx(k, -1, &[&["2", "2"], &["1"]], &[d])
}

#[test]
fn isomorphism_examples() {
    let d = dual(&f2());
    let x = ax(&d);
    let cert = is_isomorphic(&x, &x).unwrap().unwrap();
    assert!(cert.verify().unwrap());

    let a = a2(&f2());
    let p1 = ProjComplex::stalk(&a, vec![0], 0).unwrap();
    let p2 = ProjComplex::stalk(&a, vec![1], 0).unwrap();
    assert!(is_isomorphic(&p1, &p2).unwrap().is_none());

    let k = kronecker(&f2());
    let s1 = projective_resolution(&Module::simple(&k, 0).unwrap(), 4).unwrap().complex;
    let s2 = projective_resolution(&Module::simple(&k, 1).unwrap(), 4).unwrap().complex;
    assert!(is_isomorphic(&s1, &s2).unwrap().is_none());
    assert!(!isomorphic_brute(&s1, &s2));
    let plain = kronecker_resolved_s1(&k, false);
    let twisted = kronecker_resolved_s1(&k, true);
    assert_eq!(s1, plain);
    let cert = is_isomorphic(&plain, &twisted).unwrap().unwrap();
    assert!(cert.verify().unwrap());
    assert!(isomorphic_brute(&plain, &twisted));
}

#[test]
fn homotopy_equivalent_complexes_have_isomorphic_minimal_forms() {
    let d = dual(&f2());
    let x = a1(&d).direct_sum(&ax(&d)).unwrap();
    let cert = is_isomorphic(&x, &ax(&d)).unwrap().unwrap();
    assert!(cert.verify().unwrap());
}

/// `P2 → P1` with differential `λa − b`, and `a` for `λ = ∞`.
fn kronecker_line(k: &Algebra, entry: &str) -> ProjComplex {
    cx(k, 0, &[&["2"], &["1"]], &[&[&[entry]]])
}

#[test]
fn decompositions() {
    let d = dual(&f2());
    let x = ax(&d);
    let xx = x.direct_sum(&x).unwrap();
    let parts = decompose_complex(&xx).unwrap();
    assert_eq!(parts.len(), 2);
    for p in &parts {
        assert!(is_isomorphic(&p.complex, &x).unwrap().is_some());
        assert_eq!(p.inclusion.then(&p.projection).unwrap(), GradedMap::identity(&p.complex));
    }
    assert_eq!(decompose_complex(&x).unwrap().len(), 1);

    let k = kronecker(&f2());
    let lines: Vec<ProjComplex> = ["a", "b", "a+b"].iter().map(|e| kronecker_line(&k, e)).collect();
    let sum = lines[0].direct_sum(&lines[1]).unwrap().direct_sum(&lines[2]).unwrap();
    let parts = decompose_complex(&sum).unwrap();
    assert_eq!(parts.len(), 3);
    assert_eq!(summand_count(&sum), 3);
    for i in 0..3 {
        for j in 0..3 {
            let iso = is_isomorphic(&parts[i].complex, &parts[j].complex).unwrap().is_some();
            assert_eq!(iso, i == j);
            assert_eq!(isomorphic_brute(&parts[i].complex, &parts[j].complex), i == j);
        }
    }
}

#[test]
fn indecomposability_transfer() {
    let d = dual(&f2());
    let k = kronecker(&f2());
    let cases = vec![
        ax(&d),
        ax(&d).direct_sum(&ax(&d)).unwrap(),
        kronecker_line(&k, "a"),
        kronecker_resolved_s1(&k, false),
        ProjComplex::stalk(&k, vec![0, 1], 0).unwrap(),
    ];
    for x in &cases {
        assert_eq!(decompose::is_indecomposable(x).unwrap(), chain::homotopy_end_is_local(x).unwrap());
    }
}

mod generated {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn minimize_certificate_and_invariance(which in 0u32..3, seed in proptest::collection::vec(0u32..64, 12)) {
            let alg = algebra_for(which);
            let x = two_term(&alg, &seed);
            let (m, eq) = minimize(&x).unwrap();
            prop_assert!(m.is_homotopy_minimal());
            prop_assert!(eq.verify().unwrap());
            prop_assert_eq!(m.cohomology().into_iter().filter(|c| c.1 > 0).collect::<Vec<_>>(),
                x.cohomology().into_iter().filter(|c| c.1 > 0).collect::<Vec<_>>());
            prop_assert_eq!(m.range_stats().hr, x.range_stats().hr);
            let (m2, _) = minimize(&m).unwrap();
            prop_assert_eq!(m2, m);
            for n in -2..3 {
                prop_assert_eq!(x.shift(n).range_stats().hr, x.range_stats().hr);
            }
        }

        #[test]
        fn decomposition_matches_oracle(which in 0u32..3, seed in proptest::collection::vec(0u32..64, 12)) {
            let alg = algebra_for(which);
            let (x, _) = minimize(&two_term(&alg, &seed)).unwrap();
            let parts = decompose_complex(&x).unwrap();
            prop_assert_eq!(parts.len(), summand_count(&x));
            for p in &parts {
                prop_assert_eq!(p.inclusion.then(&p.projection).unwrap(), GradedMap::identity(&p.complex));
                prop_assert!(decompose::is_indecomposable(&p.complex).unwrap());
                prop_assert_eq!(decompose::is_indecomposable(&p.complex).unwrap(), chain::homotopy_end_is_local(&p.complex).unwrap());
            }
        }

        #[test]
        fn isomorphism_matches_oracle(which in 0u32..3, s1 in proptest::collection::vec(0u32..64, 12), s2 in proptest::collection::vec(0u32..64, 12)) {
            let alg = algebra_for(which);
            let (x, _) = minimize(&two_term(&alg, &s1)).unwrap();
            let (y, _) = minimize(&two_term(&alg, &s2)).unwrap();
            let decided = is_isomorphic(&x, &y).unwrap();
            prop_assert_eq!(decided.is_some(), isomorphic_brute(&x, &y));
            if let Some(c) = decided {
                prop_assert!(c.verify().unwrap());
            }
        }
    }
}

#[test]
fn complexes_with_an_empty_middle_term() {
    let alg = dual(&f2());
    let p = alg.slot_index("1").unwrap();
    let x = ProjComplex::new(&alg, 0, vec![vec![p], vec![], vec![p]], vec![AMat::zeros(&alg, 1, 0), AMat::zeros(&alg, 0, 1)]).unwrap();
    let id = GradedMap::identity(&x);
    assert_eq!(id.then(&id).unwrap(), id);
    let cert = is_isomorphic(&x, &x).unwrap().unwrap();
    assert!(cert.verify().unwrap());
    assert_eq!(decompose_complex(&x).unwrap().len(), 2);
}
