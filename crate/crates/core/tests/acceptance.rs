//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use common::*;
use minplex_core::algebra::Algebra;
use minplex_core::classify::{
    c_dichotomy_report, discreteness_probe, enumerate_indecomposables, enumerate_modules, family_probe,
    object_counts, range_histogram, Bounds, DEFAULT_CAP,
};
use minplex_core::complex::{decompose_complex, is_isomorphic, minimize, GradedMap, ProjComplex};
use minplex_core::field::Field;
use minplex_core::functors::{
    range_bound_report, restrict_complex, summand_witness_down, summand_witness_up, tensor_complex, unit_iso,
    Direction, ExtensionContext,
};
use minplex_core::spec::parse_spec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn nonzero(c: Vec<(i64, usize)>) -> Vec<(i64, usize)> {
    c.into_iter().filter(|&(_, d)| d > 0).collect()
}

/// Random minimal complexes over F_2 algebras together with their base changes to F_4 and F_8.
struct Corpus {
    complexes: Vec<(usize, ProjComplex)>,
    /// `contexts[algebra][extension]`, extensions F_4 (l = 2) and F_8 (l = 3).
    contexts: Vec<Vec<ExtensionContext>>,
    /// Indecomposable summands of the corpus complexes, tagged with their algebra.
    indecomposables: Vec<(usize, ProjComplex)>,
    /// Indecomposable summands of `X ⊗ K` for every indecomposable `X`, tagged with the
    /// algebra and extension.
    big: Vec<(usize, usize, ProjComplex)>,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let k = f2();
        let algebras = [dual(&k), a2(&k), kronecker(&k)];
        let f4 = Field::extension(&k, &[k.one(), k.one(), k.one()], false).unwrap();
        let f8 = Field::extension(&k, &[k.one(), k.one(), k.zero(), k.one()], false).unwrap();
        let contexts: Vec<Vec<ExtensionContext>> = algebras
            .iter()
            .map(|a| vec![ExtensionContext::new(a, &f4).unwrap(), ExtensionContext::new(a, &f8).unwrap()])
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let complexes: Vec<(usize, ProjComplex)> = (0..50)
            .map(|i| {
                let which = i % 3;
                let m = rng.gen_range(0..=2);
                (which, random_minimal(&algebras[which], m, 2, &mut rng))
            })
            .collect();
        let mut indecomposables = vec![];
        for (which, x) in &complexes {
            for s in decompose_complex(x).unwrap() {
                indecomposables.push((*which, s.complex));
            }
        }
        let mut big = vec![];
        for (which, x) in &indecomposables {
            for (e, ctx) in contexts[*which].iter().enumerate() {
                for s in decompose_complex(&tensor_complex(x, ctx).unwrap()).unwrap() {
                    big.push((*which, e, s.complex));
                }
            }
        }
        Corpus { complexes, contexts, indecomposables, big }
    })
}

fn unit_isomorphisms() -> Outcome {
    let c = corpus();
    let mut passed = 0;
    for (which, x) in &c.complexes {
        let all = c.contexts[*which].iter().all(|ctx| {
            unit_iso(x, ctx).is_ok_and(|cert| {
                let source_dim: usize = cert.forward.source.degrees().map(|n| cert.forward.source.realized_dim(n)).sum();
                let x_dim: usize = x.degrees().map(|n| x.realized_dim(n)).sum();
                cert.verify().unwrap_or(false) && source_dim == ctx.degree() * x_dim
            })
        });
        passed += all as usize;
    }
    outcome(passed == c.complexes.len(), format!("{passed}/{} verified over F_4 and F_8", c.complexes.len()))
}

fn range_transfer() -> Outcome {
    let c = corpus();
    let (mut checks, mut bad) = (0, 0);
    for (which, x) in &c.complexes {
        for ctx in &c.contexts[*which] {
            let y = tensor_complex(x, ctx).unwrap();
            checks += 1;
            if nonzero(y.cohomology()) != nonzero(x.cohomology()) || y.range_stats().hr != x.range_stats().hr {
                bad += 1;
            }
            let mut ys = vec![y.clone()];
            ys.extend(decompose_complex(&y).unwrap().into_iter().map(|s| s.complex));
            for y in ys {
                let fy = restrict_complex(&y, ctx).unwrap();
                let scaled: Vec<(i64, usize)> = nonzero(y.cohomology()).into_iter().map(|(n, d)| (n, ctx.degree() * d)).collect();
                checks += 1;
                if nonzero(fy.cohomology()) != scaled || fy.range_stats().hr != ctx.degree() * y.range_stats().hr {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0, format!("{checks} equalities checked, {bad} violations"))
}

fn summand_counts() -> Outcome {
    let c = corpus();
    let (mut checks, mut bad) = (0, 0);
    for (which, x) in &c.indecomposables {
        for ctx in &c.contexts[*which] {
            checks += 1;
            if decompose_complex(&tensor_complex(x, ctx).unwrap()).unwrap().len() > ctx.degree() {
                bad += 1;
            }
        }
    }
    for (which, e, y) in &c.big {
        let ctx = &c.contexts[*which][*e];
        checks += 1;
        if decompose_complex(&restrict_complex(y, ctx).unwrap()).unwrap().len() > ctx.degree() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{checks} decompositions, {bad} with more than l summands"))
}

fn interval_containments() -> Outcome {
    let c = corpus();
    let (mut checks, mut bad) = (0, 0);
    for (which, x) in &c.indecomposables {
        for ctx in &c.contexts[*which] {
            let r = range_bound_report("x", x, Direction::Up, ctx).unwrap();
            checks += 1;
            bad += !(r.bounds_ok && r.certificates_ok) as usize;
        }
    }
    for (which, e, y) in &c.big {
        let r = range_bound_report("y", y, Direction::Down, &c.contexts[*which][*e]).unwrap();
        checks += 1;
        bad += !(r.bounds_ok && r.certificates_ok) as usize;
    }
    let k = f2();
    let split = Algebra::monogenic(&k, &[k.one(), k.one(), k.one()]).unwrap();
    let f4 = Field::extension(&k, &[k.one(), k.one(), k.one()], false).unwrap();
    let ctx = ExtensionContext::new(&split, &f4).unwrap();
    let z = ProjComplex::stalk(&split, vec![0], 0).unwrap();
    let r = range_bound_report("z", &z, Direction::Up, &ctx).unwrap();
    let brute = summand_count(&tensor_complex(&z, &ctx).unwrap());
    let lower = r.r == 2 && r.summand_ranges == [1, 1] && brute == 2 && r.bounds_ok;
    outcome(
        bad == 0 && lower,
        format!(
            "{checks} reports, {bad} violations; split case ranges {:?} of r={} (brute summands {brute})",
            r.summand_ranges, r.r
        ),
    )
}

fn witness_round_trips() -> Outcome {
    let c = corpus();
    let (mut up, mut down) = (0, 0);
    let mut total_up = 0;
    for (which, x) in &c.indecomposables {
        for ctx in &c.contexts[*which] {
            total_up += 1;
            up += summand_witness_up(x, ctx).is_ok_and(|w| w.certificate.verify().unwrap_or(false)) as usize;
        }
    }
    for (which, e, y) in &c.big {
        down += summand_witness_down(y, &c.contexts[*which][*e]).is_ok_and(|w| w.certificate.verify().unwrap_or(false))
            as usize;
    }
    outcome(
        up == total_up && down == c.big.len(),
        format!("up {up}/{total_up}, down {down}/{}", c.big.len()),
    )
}

fn enumeration_ground_truth() -> Outcome {
    let alg = a2(&f2());
    let report = enumerate_indecomposables(&alg, &Bounds::new(1, 1)).unwrap();
    let mut oracle: Vec<ProjComplex> = vec![];
    for x in all_minimal(&alg, 1, 1, usize::MAX) {
        if summand_count(&x) == 1 && !oracle.iter().any(|o| isomorphic_brute(o, &x)) {
            oracle.push(x);
        }
    }
    let matched = report
        .representatives
        .iter()
        .all(|r| oracle.iter().filter(|o| isomorphic_brute(o, &r.complex)).count() == 1);
    let kron = kronecker(&f2());
    let modules = enumerate_modules(&kron, &[1, 1], DEFAULT_CAP).unwrap().len();
    let k = f2();
    let elems = k.elements().unwrap();
    let mut lines = std::collections::BTreeSet::new();
    for a in &elems {
        for b in &elems {
            if k.is_zero(a) && k.is_zero(b) {
                continue;
            }
            let lead = if k.is_zero(a) { b } else { a };
            let inv = k.inv(lead).unwrap();
            lines.insert((k.format(&k.mul(a, &inv)), k.format(&k.mul(b, &inv))));
        }
    }
    outcome(
        report.representatives.len() == 5 && oracle.len() == 5 && matched && modules == lines.len() && modules == 3,
        format!(
            "A_2: {} (oracle {}), Kronecker (1,1) modules: {modules} (P^1(F_2) has {})",
            report.representatives.len(),
            oracle.len(),
            lines.len()
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let alg = dual(&f2());
    let all = all_minimal(&alg, 2, 3, 3);
    let mut bad = 0;
    for x in &all {
        let parts = decompose_complex(x).unwrap();
        if parts.len() != summand_count(x) || parts.iter().any(|p| summand_count(&p.complex) != 1) {
            bad += 1;
        }
    }
    let dims = |x: &ProjComplex| -> Vec<usize> { (0..=2).map(|n| x.realized_dim(n)).collect() };
    let mut pairs = 0;
    for (i, x) in all.iter().enumerate() {
        for y in &all[i..] {
            let fast = is_isomorphic(x, y).unwrap();
            let brute = dims(x) == dims(y) && isomorphic_brute(x, y);
            pairs += 1;
            if fast.is_some() != brute || fast.is_some_and(|c| !c.verify().unwrap()) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{} complexes, {pairs} pairs, {bad} disagreements", all.len()))
}

const KRONECKER_Q: &str = r#"
field = "Q"

[quiver]
vertices = ["1", "2"]
arrows = ["a: 1 -> 2", "b: 1 -> 2"]

[extension]
minpoly = [1, 0, 1]

[family.X]
terms = [["P2"], ["P1"]]
diffs = [[["t*a - b"]]]
samples = []
"#;

fn strong_unboundedness() -> Outcome {
    let spec = parse_spec(KRONECKER_Q, false).unwrap();
    let q = &spec.field;
    let params: Vec<_> = (0..100).map(|i| q.from_i64(i)).collect();
    let fam = &spec.families["X"].template;
    let w = family_probe(&spec.algebra, fam, &params).unwrap();
    let xs: Vec<ProjComplex> = params.iter().map(|t| fam.instantiate(&spec.algebra, t).unwrap()).collect();
    let mut clashes = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            clashes += is_isomorphic(&xs[i], &xs[j]).unwrap().is_some() as usize;
        }
    }
    let s = c_dichotomy_report(&spec.algebra, spec.extension.as_ref(), &Bounds::new(1, 1), Some((fam, &params))).unwrap();
    let fc = s.family.unwrap();
    let big = fc.big.as_ref().unwrap();
    let ok = w.ok && w.classes == 100 && w.common_hr == Some(2) && clashes == 0 && big.ok && big.classes == 100 && fc.ranges_ok && fc.verdicts_agree;
    outcome(
        ok,
        format!(
            "Q: {}/100 classes, hr {:?}, {clashes} pairwise isomorphisms; Q(i): {}/100 classes, verdicts agree {}",
            w.classes, w.common_hr, big.classes, fc.verdicts_agree
        ),
    )
}

fn minimality_invariants() -> Outcome {
    let k = f2();
    let algebras = [dual(&k), a2(&k), kronecker(&k)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut failures, mut non_minimal, mut null_maps) = (0, 0, 0);
    for i in 0..200 {
        let x = random_complex(&algebras[i % 3], &mut rng);
        non_minimal += !x.is_homotopy_minimal() as usize;
        let (x0, eq) = minimize(&x).unwrap();
        let (x1, _) = minimize(&x0).unwrap();
        let shift = rng.gen_range(-3..=3);
        let (xs0, _) = minimize(&x.shift(shift)).unwrap();
        let shifted: Vec<(i64, usize)> = nonzero(x.cohomology()).into_iter().map(|(n, d)| (n - shift, d)).collect();
        let mut ok = eq.verify().unwrap()
            && x0.is_homotopy_minimal()
            && x1.total_multiplicity() == x0.total_multiplicity()
            && is_isomorphic(&x0, &x1).unwrap().is_some()
            && nonzero(x0.cohomology()) == nonzero(x.cohomology())
            && x0.range_stats().hr == x.range_stats().hr
            && nonzero(x.shift(shift).cohomology()) == shifted
            && x.shift(shift).range_stats().hr == x.range_stats().hr
            && is_isomorphic(&xs0, &x0.shift(shift)).unwrap().is_some();
        if !x0.is_zero() {
            for _ in 0..3 {
                let f = random_null_homotopic(&x0, &mut rng);
                null_maps += 1;
                ok &= GradedMap::identity(&x0).sub(&f).unwrap().realize().inverse().is_ok();
            }
        }
        failures += !ok as usize;
    }
    outcome(
        failures == 0,
        format!("200 complexes ({non_minimal} non-minimal), {null_maps} null-homotopic maps, {failures} failures"),
    )
}

fn discreteness() -> Outcome {
    let alg = kronecker(&f2());
    let mut matches = vec![];
    for b in 1..=2 {
        let report = enumerate_indecomposables(&alg, &Bounds::new(1, b)).unwrap();
        let got: BTreeMap<Vec<Vec<usize>>, usize> =
            object_counts(&report, None).rows.into_iter().map(|r| (r.cohomology, r.count)).collect();
        let mut brute = object_classes_brute(&alg, b);
        brute.insert(vec![vec![0, 0], vec![0, 0]], 1);
        matches.push(got == brute);
    }
    let tables: Vec<_> = (1..=3).map(|b| discreteness_probe(&alg, &Bounds::new(1, b), None).unwrap()).collect();
    let slice = |hr: usize| -> Vec<usize> { tables.iter().map(|t| t.by_hr.get(&hr).copied().unwrap_or(0)).collect() };
    let slices: Vec<(usize, Vec<usize>)> = (2..=4).map(|hr| (hr, slice(hr))).collect();
    let growing = slices.iter().all(|(_, s)| s.windows(2).all(|w| w[0] < w[1]));
    let h = range_histogram(&enumerate_indecomposables(&alg, &Bounds::new(1, 3)).unwrap());
    let indecomposable_slice: Vec<usize> = h.series.iter().map(|(_, s)| s.get(&2).copied().unwrap_or(0)).collect();
    let shown: Vec<String> = slices.iter().map(|(hr, s)| format!("hr={hr}: {s:?}")).collect();
    outcome(
        matches.iter().all(|&m| m) && growing,
        format!(
            "brute force match at bounds 1,2: {matches:?}; object slices over bounds 1..3 {}; indecomposables at hr=2: {indecomposable_slice:?}",
            shown.join(", ")
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("unit isomorphism F(X⊗K) ≅ X^l", unit_isomorphisms),
        ("range transfer equalities", range_transfer),
        ("summand-count bounds", summand_counts),
        ("interval containments", interval_containments),
        ("summand witness round trips", witness_round_trips),
        ("enumeration ground truth", enumeration_ground_truth),
        ("decomposition and isomorphism oracles", oracle_equivalence),
        ("strong-unboundedness witness", strong_unboundedness),
        ("minimality and homotopy invariants", minimality_invariants),
        ("finite-field discreteness probe", discreteness),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(o) => (o.ok, o.detail),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        failed += !ok as usize;
        println!(
            "criterion {n:>2} {}: {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
