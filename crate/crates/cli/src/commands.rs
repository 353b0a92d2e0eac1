use std::fmt::Write as _;
use std::path::Path;

use minplex_core::classify::{
    c_dichotomy_report, enumerate_indecomposables, object_counts, family_probe, range_histogram, vector_key,
    Bounds, ClassificationReport, FamilyWitness, DEFAULT_CAP,
};
use minplex_core::complex::{
    decompose_complex, hom_space, is_isomorphic, minimize, projective_resolution, resolve_complex, ProjComplex,
};
use minplex_core::field::Scalar;
use minplex_core::functors::{
    range_bound_report, restrict_complex, summand_witness_down, summand_witness_up, tensor_complex, unit_iso,
    Direction,
};
use minplex_core::spec::{emit_complex, emit_header, format_element, parse_spec, SpecFile};
use minplex_core::{Error, Result};
use serde_json::{json, Value};

use crate::{BoundArgs, Cli, ClassifyCmd, Command, ComplexCmd, Emit, ExtensionCmd};

/// Everything a command produces; the `--emit` mode picks what gets printed.
#[derive(Default)]
pub struct Output {
    pub text: String,
    pub records: Vec<Value>,
    pub repr: Option<String>,
    pub code: i32,
}

impl Output {
    pub fn print(&self, emit: Emit) {
        match emit {
            Emit::Table => print!("{}", self.text),
            Emit::Records => {
                for r in &self.records {
                    println!("{r}");
                }
            }
            Emit::Repr => match &self.repr {
                Some(r) => print!("{r}"),
                None => print!("{}", self.text),
            },
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn block(&mut self, s: &str) {
        for l in s.lines() {
            let _ = writeln!(self.text, "  {l}");
        }
    }
}

fn load(path: &Path, assume_irreducible: bool) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, col: 0, msg: format!("cannot read {}: {e}", path.display()) })?;
    parse_spec(&text, assume_irreducible)
}

fn over_extension(spec: &SpecFile, x: &ProjComplex) -> bool {
    x.algebra() != &spec.algebra
}

fn repr_of(spec: &SpecFile, named: &[(String, &ProjComplex)]) -> String {
    let mut out = emit_header(spec);
    for (name, x) in named {
        out.push('\n');
        out.push_str(&emit_complex(name, x, over_extension(spec, x)));
    }
    out
}

fn summary(x: &ProjComplex) -> Value {
    let s = x.range_stats();
    json!({
        "zero": x.is_zero(),
        "lo": x.lo(),
        "hi": x.hi(),
        "terms": x.degrees().map(|n| x.multiplicity(n)).collect::<Vec<_>>(),
        "minimal": x.is_homotopy_minimal(),
        "hl": s.hl,
        "hw": s.hw,
        "hr": s.hr,
        "display": x.to_string(),
    })
}

fn show(out: &mut Output, x: &ProjComplex) {
    if x.is_zero() {
        out.line("zero complex");
    } else {
        out.block(&x.to_string());
    }
}

fn bounds(b: &BoundArgs) -> Bounds {
    Bounds { max_dim: b.max_dim, cap: b.cap.unwrap_or(DEFAULT_CAP), ..Bounds::new(b.m, b.max_mult) }
}

fn fraction(a: usize, b: usize) -> String {
    if b != 0 && a % b == 0 {
        (a / b).to_string()
    } else {
        format!("{a}/{b}")
    }
}

fn list(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ai = cli.global.assume_irreducible;
    match &cli.command {
        Command::Validate { spec } => validate(&load(spec, ai)?),
        Command::Complex(c) => complex(c, ai),
        Command::Extension(c) => extension(c, ai),
        Command::Classify(c) => classify(c, ai),
    }
}

fn validate(spec: &SpecFile) -> Result<Output> {
    let alg = &spec.algebra;
    let mut out = Output::default();
    let radical = alg.radical_indices().len();
    out.line(format!("field {}", spec.field));
    out.line(format!("algebra: dim {}, radical dim {}, {} vertices", alg.dim(), radical, alg.num_slots()));
    let basis: Vec<String> = (0..alg.dim()).map(|i| format_element(alg, &alg.elem(i))).collect();
    out.line(format!("basis: {}", basis.join(" ")));
    let mut rec = json!({
        "field": spec.field.to_string(),
        "dim": alg.dim(),
        "radical_dim": radical,
        "vertices": alg.num_slots(),
        "basis": basis,
    });
    if let Some(ctx) = &spec.extension {
        out.line(format!("extension: {} (degree {})", ctx.big().field(), ctx.degree()));
        rec["extension_degree"] = json!(ctx.degree());
    }
    for (name, x) in &spec.complexes {
        let s = x.range_stats();
        let over = if over_extension(spec, x) { " over the extension" } else { "" };
        out.line(format!("complex {name}{over}: hr={} minimal={}", s.hr, x.is_homotopy_minimal()));
    }
    for (name, m) in &spec.modules {
        out.line(format!("module {name}: dims {}", list(m.dims())));
    }
    for (name, fam) in &spec.families {
        out.line(format!("family {name}: {} samples", fam.samples.len()));
    }
    rec["complexes"] = json!(spec.complexes.keys().collect::<Vec<_>>());
    rec["modules"] = json!(spec.modules.keys().collect::<Vec<_>>());
    rec["families"] = json!(spec.families.keys().collect::<Vec<_>>());
    out.records.push(rec);
    Ok(out)
}

fn complex(cmd: &ComplexCmd, ai: bool) -> Result<Output> {
    let mut out = Output::default();
    match cmd {
        ComplexCmd::Minimize { spec, name } => {
            let spec = load(spec, ai)?;
            let x = spec.complex(name)?;
            let (x0, eq) = minimize(x)?;
            if !eq.verify()? {
                return Err(Error::Invariant("homotopy equivalence does not verify".into()));
            }
            show(&mut out, &x0);
            out.line(format!("homotopy equivalence verified ({} -> {} summands)", x.total_multiplicity(), x0.total_multiplicity()));
            out.records.push(json!({ "name": name, "minimal": summary(&x0), "verified": true }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_min"), &x0)]));
        }
        ComplexCmd::Cohomology { spec, name } => {
            let spec = load(spec, ai)?;
            let x = spec.complex(name)?;
            let mut rows = vec![];
            for n in x.degrees() {
                let v = x.cohomology_vector(n);
                let d: usize = v.iter().sum();
                out.line(format!("H^{n}: dim {d} {}", list(&v)));
                rows.push(json!({ "degree": n, "dim": d, "vector": v }));
            }
            if x.is_zero() {
                out.line("acyclic");
            }
            out.records.push(json!({ "name": name, "cohomology": rows }));
        }
        ComplexCmd::Range { spec, name } => {
            let spec = load(spec, ai)?;
            let s = spec.complex(name)?.range_stats();
            out.line(format!("hl={} hw={} hr={}", s.hl, s.hw, s.hr));
            out.records.push(json!({ "name": name, "hl": s.hl, "hw": s.hw, "hr": s.hr }));
        }
        ComplexCmd::Truncate { spec, name, at } => {
            let spec = load(spec, ai)?;
            let t = spec.complex(name)?.brutal_truncate(*at);
            show(&mut out, &t);
            out.records.push(json!({ "name": name, "at": at, "truncation": summary(&t) }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_ge{at}").replace('-', "m"), &t)]));
        }
        ComplexCmd::Resolve { spec, name, depth } => {
            let spec = load(spec, ai)?;
            let res = match spec.modules.get(name) {
                Some(m) => projective_resolution(m, *depth)?,
                None => resolve_complex(spec.complex(name)?)?,
            };
            show(&mut out, &res.complex);
            out.line(if res.complete { "complete" } else { "truncated" });
            out.records.push(json!({ "name": name, "complete": res.complete, "resolution": summary(&res.complex) }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_res"), &res.complex)]));
        }
        ComplexCmd::Hom { spec, source, target } => {
            let spec = load(spec, ai)?;
            let h = hom_space(spec.complex(source)?, spec.complex(target)?)?;
            out.line(format!(
                "Hom_K({source},{target}): dim {} (chain maps {}, null-homotopic {})",
                h.homotopy_dim(),
                h.chain_dim(),
                h.null_dim()
            ));
            out.records.push(json!({
                "source": source, "target": target,
                "chain_dim": h.chain_dim(), "null_dim": h.null_dim(), "homotopy_dim": h.homotopy_dim(),
            }));
        }
        ComplexCmd::Iso { spec, left, right } => {
            let spec = load(spec, ai)?;
            let cert = is_isomorphic(spec.complex(left)?, spec.complex(right)?)?;
            let verified = match &cert {
                Some(c) => c.verify()?,
                None => false,
            };
            match (&cert, verified) {
                (Some(_), true) => out.line("isomorphic (certificate verified)"),
                (Some(_), false) => {
                    out.line("isomorphic (certificate FAILED)");
                    out.code = 3;
                }
                (None, _) => out.line("not isomorphic"),
            }
            out.records.push(json!({ "left": left, "right": right, "isomorphic": cert.is_some(), "verified": verified }));
        }
        ComplexCmd::Decompose { spec, name } => {
            let spec = load(spec, ai)?;
            let parts = decompose_complex(spec.complex(name)?)?;
            out.line(format!("{} indecomposable summand(s)", parts.len()));
            let mut recs = vec![];
            let mut named = vec![];
            for (i, p) in parts.iter().enumerate() {
                out.line(format!("summand {i}: hr={}", p.complex.range_stats().hr));
                show(&mut out, &p.complex);
                recs.push(summary(&p.complex));
                named.push((format!("{name}_{i}"), &p.complex));
            }
            out.records.push(json!({ "name": name, "summands": recs }));
            out.repr = Some(repr_of(&spec, &named));
        }
    }
    Ok(out)
}

fn base_complex<'a>(spec: &'a SpecFile, name: &str) -> Result<&'a ProjComplex> {
    let x = spec.complex(name)?;
    if over_extension(spec, x) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(x)
}

fn big_complex<'a>(spec: &'a SpecFile, name: &str) -> Result<&'a ProjComplex> {
    let x = spec.complex(name)?;
    if !over_extension(spec, x) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(x)
}

fn extension(cmd: &ExtensionCmd, ai: bool) -> Result<Output> {
    let mut out = Output::default();
    match cmd {
        ExtensionCmd::Tensor { spec, name } => {
            let spec = load(spec, ai)?;
            let ctx = spec.context()?;
            let y = tensor_complex(base_complex(&spec, name)?, ctx)?;
            show(&mut out, &y);
            out.records.push(json!({ "name": name, "tensor": summary(&y) }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_K"), &y)]));
        }
        ExtensionCmd::Restrict { spec, name } => {
            let spec = load(spec, ai)?;
            let ctx = spec.context()?;
            let x = restrict_complex(big_complex(&spec, name)?, ctx)?;
            show(&mut out, &x);
            out.records.push(json!({ "name": name, "restriction": summary(&x) }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_F"), &x)]));
        }
        ExtensionCmd::UnitIso { spec, name } => {
            let spec = load(spec, ai)?;
            let ctx = spec.context()?;
            let cert = unit_iso(base_complex(&spec, name)?, ctx)?;
            let ok = cert.verify()?;
            out.line(format!("F(X⊗K) ≅ X^l: {} (l = {})", if ok { "verified" } else { "FAILED" }, ctx.degree()));
            out.records.push(json!({ "name": name, "l": ctx.degree(), "verified": ok }));
            if !ok {
                out.code = 3;
            }
        }
        ExtensionCmd::Witnesses { spec, name, down } => {
            let spec = load(spec, ai)?;
            let ctx = spec.context()?;
            let (first, chosen, second, matched, ok, y) = if *down {
                let w = summand_witness_down(big_complex(&spec, name)?, ctx)?;
                let y = w.restriction_summands[w.chosen].complex.clone();
                (w.restriction_summands.len(), w.chosen, w.tensor_summands.len(), w.matched, w.certificate.verify()?, y)
            } else {
                let w = summand_witness_up(base_complex(&spec, name)?, ctx)?;
                let y = w.tensor_summands[w.chosen].complex.clone();
                (w.tensor_summands.len(), w.chosen, w.restriction_summands.len(), w.matched, w.certificate.verify()?, y)
            };
            let (there, back) = if *down { ("F(Y)", "X⊗K") } else { ("X⊗K", "F(Y)") };
            out.line(format!("{there}: {first} summand(s), chosen #{chosen}"));
            show(&mut out, &y);
            out.line(format!("{back}: {second} summand(s), #{matched} ≅ input: {}", if ok { "verified" } else { "FAILED" }));
            out.records.push(json!({
                "name": name, "direction": if *down { "down" } else { "up" },
                "summands": first, "chosen": chosen, "back_summands": second, "matched": matched,
                "verified": ok, "witness": summary(&y),
            }));
            out.repr = Some(repr_of(&spec, &[(format!("{name}_witness"), &y)]));
            if !ok {
                out.code = 3;
            }
        }
        ExtensionCmd::Bounds { spec, name, down } => {
            let spec = load(spec, ai)?;
            let ctx = spec.context()?;
            let (x, direction) =
                if *down { (big_complex(&spec, name)?, Direction::Down) } else { (base_complex(&spec, name)?, Direction::Up) };
            let r = range_bound_report(name, x, direction, ctx)?;
            let (lo, hi) = match direction {
                Direction::Up => (fraction(r.r, r.l), r.r.to_string()),
                Direction::Down => (r.r.to_string(), (r.l * r.r).to_string()),
            };
            let ranges = r.summand_ranges.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            let ok = r.bounds_ok && r.certificates_ok;
            out.line(format!("summand ranges [{ranges}] ⊆ [{lo},{hi}]: {}", if r.bounds_ok { "ok" } else { "VIOLATED" }));
            if !r.certificates_ok {
                out.line("certificates: FAILED");
            }
            out.records.push(serde_json::to_value(&r).expect("serializable"));
            if !ok {
                out.code = 3;
            }
        }
    }
    Ok(out)
}

fn enumerate_text(out: &mut Output, r: &ClassificationReport) {
    out.line(format!(
        "{} indecomposable(s) over {} in degrees 0..={}, multiplicity <= {} ({} candidates, {} orbits)",
        r.representatives.len(),
        r.field,
        r.bounds.m,
        r.bounds.max_mult,
        r.candidates,
        r.orbits
    ));
    for (i, rep) in r.representatives.iter().enumerate() {
        out.line(format!(
            "#{i} terms {} cohomology {} hl={} hw={} hr={}",
            vector_key(&rep.multiplicities),
            vector_key(&rep.cohomology),
            rep.hl,
            rep.hw,
            rep.hr
        ));
        out.block(&rep.complex.to_string());
    }
    let hist: Vec<String> = r.histogram.iter().map(|(h, c)| format!("{h}:{c}")).collect();
    out.line(format!("histogram {}", hist.join(" ")));
}

fn integer_samples(f: &minplex_core::field::Field, n: i64) -> Vec<Scalar> {
    (0..n).map(|i| f.from_i64(i)).collect()
}

fn family_text(out: &mut Output, w: &FamilyWitness) {
    let n = w.samples.len();
    let hr = if w.hr_constant { "hr constant".to_string() } else { "hr varies".to_string() };
    out.line(format!("{}/{n} pairwise non-isomorphic, {hr}", w.classes));
    if let Some(h) = w.common_hr {
        out.line(format!("hr={h} witnesses={}", w.witnesses));
    }
    for (i, s) in w.samples.iter().enumerate() {
        let mut notes = vec![];
        if !s.minimal {
            notes.push("not minimal".to_string());
        }
        if !s.indecomposable {
            notes.push("decomposable".to_string());
        }
        if let Some(j) = s.collides_with {
            notes.push(format!("isomorphic to sample {j} ({})", w.samples[j].parameter));
        }
        if !notes.is_empty() {
            out.line(format!("sample {i} ({}): {}", s.parameter, notes.join(", ")));
        }
    }
}

fn classify(cmd: &ClassifyCmd, ai: bool) -> Result<Output> {
    let mut out = Output::default();
    match cmd {
        ClassifyCmd::Enumerate { spec, bounds: b } => {
            let spec = load(spec, ai)?;
            let r = enumerate_indecomposables(&spec.algebra, &bounds(b))?;
            enumerate_text(&mut out, &r);
            let mut v = serde_json::to_value(&r).expect("serializable");
            for (rec, rep) in v["representatives"].as_array_mut().expect("array").iter_mut().zip(&r.representatives) {
                rec["display"] = json!(rep.complex.to_string());
            }
            out.records.push(v);
            let names: Vec<String> = (0..r.representatives.len()).map(|i| format!("R{i}")).collect();
            let named: Vec<(String, &ProjComplex)> =
                names.into_iter().zip(r.representatives.iter().map(|x| &x.complex)).collect();
            out.repr = Some(repr_of(&spec, &named));
        }
        ClassifyCmd::Discreteness { spec, bounds: b, coh_bound } => {
            let spec = load(spec, ai)?;
            let report = enumerate_indecomposables(&spec.algebra, &bounds(b))?;
            let t = object_counts(&report, *coh_bound);
            out.line(format!("{} object(s) in {} cohomology class(es)", t.objects, t.rows.len()));
            out.line("cohomology objects indecomposables");
            for row in &t.rows {
                let ind = report.by_cohomology.get(&row.key).copied().unwrap_or(0);
                out.line(format!("{} {} {ind}", row.key, row.count));
            }
            let by_hr: Vec<String> = t.by_hr.iter().map(|(h, c)| format!("{h}:{c}")).collect();
            out.line(format!("objects by hr {}", by_hr.join(" ")));
            let mut v = serde_json::to_value(&t).expect("serializable");
            v["indecomposables_by_cohomology"] = json!(report.by_cohomology);
            out.records.push(v);
        }
        ClassifyCmd::Histogram { spec, bounds: b } => {
            let spec = load(spec, ai)?;
            let r = enumerate_indecomposables(&spec.algebra, &bounds(b))?;
            let h = range_histogram(&r);
            out.line("hr count");
            for row in &h.rows {
                out.line(format!("{} {}{}", row.hr, row.count, if row.boundary { " (at bound)" } else { "" }));
            }
            for (bound, s) in &h.series {
                let cells: Vec<String> = s.iter().map(|(k, c)| format!("{k}:{c}")).collect();
                out.line(format!("max-mult {bound}: {}", cells.join(" ")));
            }
            out.records.push(serde_json::to_value(&h).expect("serializable"));
        }
        ClassifyCmd::Family { spec, name, samples } => {
            let spec = load(spec, ai)?;
            let fam = spec.families.get(name).ok_or_else(|| Error::UnknownName(format!("family {name}")))?;
            let alg = if fam.over_extension { spec.context()?.big().clone() } else { spec.algebra.clone() };
            let params = match samples {
                Some(n) => integer_samples(alg.field(), *n),
                None => fam.samples.clone(),
            };
            let w = family_probe(&alg, &fam.template, &params)?;
            family_text(&mut out, &w);
            out.records.push(serde_json::to_value(&w).expect("serializable"));
        }
        ClassifyCmd::Dichotomy { spec, bounds: b, family, samples } => {
            let spec = load(spec, ai)?;
            let fam = match family {
                Some(name) => {
                    let fam = spec.families.get(name).ok_or_else(|| Error::UnknownName(format!("family {name}")))?;
                    if fam.over_extension {
                        return Err(Error::Unsupported("the dichotomy family must be over the base field".into()));
                    }
                    let params = match samples {
                        Some(n) => integer_samples(&spec.field, *n),
                        None => fam.samples.clone(),
                    };
                    Some((&fam.template, params))
                }
                None => None,
            };
            let s = c_dichotomy_report(
                &spec.algebra,
                spec.extension.as_ref(),
                &bounds(b),
                fam.as_ref().map(|(t, p)| (*t, p.as_slice())),
            )?;
            out.line(format!("field {}", s.field));
            for l in &s.levels {
                out.line(format!("m={} indecomposables {} verdict {:?}", l.m, l.count, l.verdict));
            }
            if !s.levels.is_empty() {
                out.line(format!("monotone in m: {}", s.monotone));
            }
            let mut ok = s.monotone || s.levels.is_empty();
            if let Some(e) = &s.extension {
                let counts: Vec<usize> = e.levels.iter().map(|l| l.count).collect();
                out.line(format!(
                    "extension degree {}: counts {}, verdicts agree {}, transfers {} ok {}",
                    e.degree,
                    list(&counts),
                    e.verdicts_agree,
                    e.transfers_checked,
                    e.transfer_ok
                ));
                ok &= e.transfer_ok;
            }
            if let Some(fc) = &s.family {
                family_text(&mut out, &fc.small);
                if let Some(big) = &fc.big {
                    out.line(format!(
                        "after base change: {}/{} pairwise non-isomorphic, ranges preserved {}",
                        big.classes,
                        big.samples.len(),
                        fc.ranges_ok
                    ));
                }
                ok &= fc.ranges_ok;
            }
            out.records.push(serde_json::to_value(&s).expect("serializable"));
            if !ok {
                out.code = 3;
            }
        }
    }
    Ok(out)
}
