//! The spec file: a TOML document naming a field, an algebra (quiver with relations, or a
//! monogenic algebra `k[t]/(f)`), an optional extension field, and named complexes, modules
//! and one-parameter families. See `docs/spec-format.md` for the grammar.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{AlgElem, Algebra, Arrow, Module, Quiver, Relation};
use crate::classify::FamilyTemplate;
use crate::complex::{AMat, ProjComplex};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Matrix, Scalar};
use crate::functors::ExtensionContext;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
    Tuple(Vec<RawScalar>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: Spanned<String>,
    #[serde(default)]
    assume_irreducible: bool,
    extension: Option<RawExtension>,
    quiver: Option<RawQuiver>,
    monogenic: Option<RawMonogenic>,
    #[serde(default)]
    complex: BTreeMap<String, RawComplex>,
    #[serde(default)]
    module: BTreeMap<String, RawModule>,
    #[serde(default)]
    family: BTreeMap<String, RawFamily>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    minpoly: Spanned<Vec<RawScalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<Spanned<String>>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
    cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonogenic {
    poly: Spanned<Vec<RawScalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    over: Option<Spanned<String>>,
    #[serde(default)]
    lo: i64,
    terms: Vec<Vec<Spanned<String>>>,
    #[serde(default)]
    diffs: Vec<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    over: Option<Spanned<String>>,
    dims: Vec<usize>,
    #[serde(default)]
    maps: BTreeMap<String, Spanned<Vec<Vec<RawScalar>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    over: Option<Spanned<String>>,
    #[serde(default = "default_parameter")]
    parameter: String,
    #[serde(default)]
    lo: i64,
    terms: Vec<Vec<Spanned<String>>>,
    diffs: Vec<Vec<Vec<Spanned<String>>>>,
    #[serde(default)]
    samples: Vec<RawScalar>,
}

fn default_parameter() -> String {
    "t".into()
}

/// A family template together with the sample parameters listed in the file.
#[derive(Clone, Debug)]
pub struct Family {
    pub template: FamilyTemplate,
    pub samples: Vec<Scalar>,
    pub over_extension: bool,
}

/// A parsed and fully built spec file.
#[derive(Clone, Debug)]
pub struct SpecFile {
    pub field: Field,
    pub algebra: Algebra,
    pub extension: Option<ExtensionContext>,
    pub complexes: BTreeMap<String, ProjComplex>,
    pub modules: BTreeMap<String, Module>,
    pub families: BTreeMap<String, Family>,
}

impl SpecFile {
    pub fn complex(&self, name: &str) -> Result<&ProjComplex> {
        self.complexes.get(name).ok_or_else(|| Error::UnknownName(format!("complex {name}")))
    }

    pub fn context(&self) -> Result<&ExtensionContext> {
        self.extension.as_ref().ok_or(Error::NotExtension)
    }
}

/// Line and column (both 1-based) of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, col)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        let (line, col) = position(self.text, offset);
        Error::Parse { line, col, msg: msg.into() }
    }

    /// Attaches a position to errors that do not carry one.
    fn at<T>(&self, offset: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            Error::UnknownName(msg) | Error::ShapeMismatch(msg) | Error::InvalidComplex(msg) | Error::InvalidModule(msg) => {
                self.err(offset, msg)
            }
            other => other,
        })
    }
}

fn parse_field_name(s: &str) -> Option<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Some(FieldSpec::Rationals);
    }
    let p = s.strip_prefix("Fp(")?.strip_suffix(')')?.trim().parse().ok()?;
    Some(FieldSpec::Prime(p))
}

fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((s.parse().ok()?, BigInt::one())),
    }
}

fn scalar(f: &Field, raw: &RawScalar) -> Result<Scalar> {
    match raw {
        RawScalar::Int(v) => Ok(f.from_i64(*v)),
        RawScalar::Text(s) => {
            let (n, d) = parse_ratio(s).ok_or_else(|| Error::ShapeMismatch(format!("not a number: {s:?}")))?;
            f.from_ratio(&n, &d)
        }
        RawScalar::Tuple(cs) => {
            let base = f.base();
            let coords = cs.iter().map(|c| scalar(&base, c)).collect::<Result<Vec<_>>>()?;
            f.from_coordinates(&coords)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<(Tok, usize)>, (usize, String)> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = vec![];
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Num(text.parse().unwrap()), at));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().map(|x| x.1).collect()), at));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), at));
            i += 1;
        } else {
            return Err((at, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt, BigInt),
    Tuple(Vec<(bool, BigInt, BigInt)>),
    Name(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn num(&mut self) -> PResult<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err((self.offset(), "expected a number".into())),
        }
    }
    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }
    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }
    fn unary(&mut self) -> PResult<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            let e = self.num()?;
            let e: u32 = e.try_into().map_err(|_| (at, "exponent too large".to_string()))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }
    fn literal(&mut self) -> PResult<(bool, BigInt, BigInt)> {
        let neg = self.eat('-');
        let n = self.num()?;
        let d = if self.eat('/') { self.num()? } else { BigInt::one() };
        Ok((neg, n, d))
    }
    fn atom(&mut self) -> PResult<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let d = if self.eat('/') { self.num()? } else { BigInt::one() };
                Ok(Expr::Num(n, d))
            }
            Some(Tok::Name(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s, at))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let save = self.pos;
                if let Ok(first) = self.literal() {
                    if self.eat(',') {
                        let mut parts = vec![first];
                        loop {
                            parts.push(self.literal()?);
                            if !self.eat(',') {
                                break;
                            }
                        }
                        if !self.eat(')') {
                            return Err((self.offset(), "expected ')'".into()));
                        }
                        return Ok(Expr::Tuple(parts));
                    }
                }
                self.pos = save;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err((self.offset(), "expected ')'".into()));
                }
                Ok(e)
            }
            _ => Err((at, "expected a number, a name or '('".into())),
        }
    }
}

fn parse_expr(s: &str) -> PResult<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err((p.offset(), "unexpected trailing input".into()));
    }
    Ok(e)
}

fn literal_scalar(f: &Field, neg: bool, n: &BigInt, d: &BigInt) -> Result<Scalar> {
    let n = if neg { -n } else { n.clone() };
    f.from_ratio(&n, d)
}

fn tuple_scalar(f: &Field, parts: &[(bool, BigInt, BigInt)]) -> Result<Scalar> {
    let base = f.base();
    let coords = parts.iter().map(|(neg, n, d)| literal_scalar(&base, *neg, n, d)).collect::<Result<Vec<_>>>()?;
    f.from_coordinates(&coords)
}

/// Polynomials in the family parameter with algebra coefficients, lowest degree first.
struct Eval<'a> {
    alg: &'a Algebra,
    parameter: Option<&'a str>,
    ctx: &'a Ctx<'a>,
    base: usize,
}

type Poly = Vec<AlgElem>;

impl Eval<'_> {
    fn constant(&self, c: Scalar) -> Poly {
        vec![self.alg.scale(&self.alg.unit(), &c)]
    }
    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        let n = x.len().max(y.len());
        let z = self.alg.zero();
        (0..n).map(|i| self.alg.add(x.get(i).unwrap_or(&z), y.get(i).unwrap_or(&z))).collect()
    }
    fn neg(&self, x: &Poly) -> Poly {
        x.iter().map(|e| self.alg.neg(e)).collect()
    }
    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        let mut out = vec![self.alg.zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] = self.alg.add(&out[i + j], &self.alg.mul(a, b));
            }
        }
        out
    }
    fn eval(&self, e: &Expr) -> Result<Poly> {
        let f = self.alg.field();
        Ok(match e {
            Expr::Num(n, d) => self.constant(f.from_ratio(n, d)?),
            Expr::Tuple(parts) => self.constant(tuple_scalar(f, parts)?),
            Expr::Name(s, _) if Some(s.as_str()) == self.parameter => vec![self.alg.zero(), self.alg.unit()],
            Expr::Name(s, at) => vec![self
                .alg
                .element_by_name(s)
                .ok_or_else(|| self.ctx.err(self.base + at, format!("unknown name {s:?}")))?],
            Expr::Neg(x) => self.neg(&self.eval(x)?),
            Expr::Add(x, y) => self.add(&self.eval(x)?, &self.eval(y)?),
            Expr::Sub(x, y) => self.add(&self.eval(x)?, &self.neg(&self.eval(y)?)),
            Expr::Mul(x, y) => self.mul(&self.eval(x)?, &self.eval(y)?),
            Expr::Pow(x, k) => {
                let b = self.eval(x)?;
                (0..*k).fold(self.constant(f.one()), |acc, _| self.mul(&acc, &b))
            }
        })
    }
}

/// Linear combinations of arrow words, for relations.
fn eval_words(f: &Field, q: &Quiver, e: &Expr, ctx: &Ctx, base: usize) -> Result<Vec<(Scalar, Vec<usize>)>> {
    let rec = |x: &Expr| eval_words(f, q, x, ctx, base);
    let combine = |x: Vec<(Scalar, Vec<usize>)>, y: Vec<(Scalar, Vec<usize>)>| {
        let mut out = vec![];
        for (a, u) in &x {
            for (b, v) in &y {
                out.push((f.mul(a, b), [u.clone(), v.clone()].concat()));
            }
        }
        out
    };
    Ok(match e {
        Expr::Num(n, d) => vec![(f.from_ratio(n, d)?, vec![])],
        Expr::Tuple(parts) => vec![(tuple_scalar(f, parts)?, vec![])],
        Expr::Name(s, at) => {
            let a = q.arrow_index(s).ok_or_else(|| ctx.err(base + at, format!("unknown arrow {s:?}")))?;
            vec![(f.one(), vec![a])]
        }
        Expr::Neg(x) => rec(x)?.into_iter().map(|(c, w)| (f.neg(&c), w)).collect(),
        Expr::Add(x, y) => [rec(x)?, rec(y)?].concat(),
        Expr::Sub(x, y) => [rec(x)?, rec(&Expr::Neg(y.clone()))?].concat(),
        Expr::Mul(x, y) => combine(rec(x)?, rec(y)?),
        Expr::Pow(x, k) => {
            let b = rec(x)?;
            (0..*k).fold(vec![(f.one(), vec![])], |acc, _| combine(acc, b.clone()))
        }
    })
}

/// Byte offset of the first character inside a spanned TOML string.
fn inner(s: &Spanned<String>) -> usize {
    s.span().start + 1
}

impl Ctx<'_> {
    fn expr(&self, s: &Spanned<String>) -> Result<Expr> {
        parse_expr(s.get_ref()).map_err(|(at, msg)| self.err(inner(s) + at, msg))
    }

    fn poly(&self, alg: &Algebra, parameter: Option<&str>, s: &Spanned<String>) -> Result<Poly> {
        let e = self.expr(s)?;
        self.at(inner(s), Eval { alg, parameter, ctx: self, base: inner(s) }.eval(&e))
    }

    fn quiver(&self, f: &Field, raw: &RawQuiver) -> Result<Algebra> {
        let mut arrows = vec![];
        for a in &raw.arrows {
            let bad = || self.err(inner(a), "arrows are written \"name: source -> target\"");
            let (name, ends) = a.get_ref().split_once(':').ok_or_else(bad)?;
            let (s, t) = ends.split_once("->").ok_or_else(bad)?;
            let vertex = |v: &str| {
                raw.vertices
                    .iter()
                    .position(|x| x == v.trim())
                    .ok_or_else(|| self.err(inner(a), format!("unknown vertex {:?}", v.trim())))
            };
            arrows.push(Arrow { name: name.trim().to_string(), source: vertex(s)?, target: vertex(t)? });
        }
        let quiver = Quiver::new(raw.vertices.clone(), arrows)?;
        let mut relations = vec![];
        for r in &raw.relations {
            let e = self.expr(r)?;
            relations.push(Relation { terms: self.at(inner(r), eval_words(f, &quiver, &e, self, inner(r)))? });
        }
        match raw.cap {
            Some(cap) => Algebra::from_quiver_with_cap(f, quiver, relations, cap),
            None => Algebra::from_quiver(f, quiver, relations),
        }
    }

    fn complex(&self, alg: &Algebra, parameter: Option<&str>, lo: i64, terms: &[Vec<Spanned<String>>], diffs: &[Vec<Vec<Spanned<String>>>]) -> Result<(Vec<Vec<usize>>, Vec<Vec<AMat>>)> {
        let mut comps = vec![];
        for term in terms {
            let mut slots = vec![];
            for p in term {
                let slot = p.get_ref().strip_prefix('P').and_then(|v| alg.slot_index(v));
                slots.push(slot.ok_or_else(|| self.err(inner(p), format!("unknown projective {:?}", p.get_ref())))?);
            }
            comps.push(slots);
        }
        if diffs.len() != comps.len().saturating_sub(1) {
            let at = terms.first().and_then(|t| t.first()).map_or(0, inner);
            return Err(self.err(at, format!("{} terms need {} differentials", comps.len(), comps.len().saturating_sub(1))));
        }
        let mut out = vec![];
        for (n, d) in diffs.iter().enumerate() {
            let (r, c) = (comps[n].len(), comps[n + 1].len());
            let bad_shape = d.len() != r || d.iter().any(|row| row.len() != c);
            if bad_shape {
                let at = d.first().and_then(|row| row.first()).map_or(0, inner);
                return Err(self.err(at, format!("differential {} must be {r} x {c}", lo + n as i64)));
            }
            let mut coeffs: Vec<Vec<AlgElem>> = vec![];
            for (i, row) in d.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    let p = self.poly(alg, parameter, s)?;
                    for (k, e) in p.into_iter().enumerate() {
                        if coeffs.len() <= k {
                            coeffs.push(vec![alg.zero(); r * c]);
                        }
                        coeffs[k][i * c + j] = e;
                    }
                }
            }
            if coeffs.is_empty() {
                coeffs.push(vec![alg.zero(); r * c]);
            }
            out.push(coeffs.into_iter().map(|e| AMat::from_entries(r, c, e)).collect());
        }
        Ok((comps, out))
    }
}

fn pick<'a>(ctx: &Ctx, over: &Option<Spanned<String>>, small: &'a Algebra, ext: Option<&'a ExtensionContext>) -> Result<(&'a Algebra, bool)> {
    match over {
        None => Ok((small, false)),
        Some(s) => match s.get_ref().as_str() {
            "base" => Ok((small, false)),
            "extension" => ext.map(|c| (c.big(), true)).ok_or_else(|| ctx.err(inner(s), "no [extension] section")),
            other => Err(ctx.err(inner(s), format!("`over` must be \"base\" or \"extension\", got {other:?}"))),
        },
    }
}

/// Parses and builds a spec file. `assume_irreducible` skips the irreducibility check for
/// extension polynomials that cannot be certified (also settable in the file).
pub fn parse_spec(text: &str, assume_irreducible: bool) -> Result<SpecFile> {
    let ctx = Ctx { text };
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let at = e.span().map_or(0, |s| s.start);
        ctx.err(at, e.message().to_string())
    })?;
    let assume = assume_irreducible || raw.assume_irreducible;
    let fspec = parse_field_name(raw.field.get_ref())
        .ok_or_else(|| ctx.err(inner(&raw.field), "field must be \"Fp(<prime>)\" or \"Q\""))?;
    let field = ctx.at(inner(&raw.field), Field::from_spec(&fspec, assume))?;
    let algebra = match (&raw.quiver, &raw.monogenic) {
        (Some(q), None) => ctx.quiver(&field, q)?,
        (None, Some(m)) => {
            let coeffs = m.poly.get_ref().iter().map(|c| scalar(&field, c)).collect::<Result<Vec<_>>>();
            let coeffs = ctx.at(m.poly.span().start, coeffs)?;
            Algebra::monogenic(&field, &coeffs)?
        }
        _ => return Err(ctx.err(0, "exactly one of [quiver] and [monogenic] is required")),
    };
    let extension = match &raw.extension {
        Some(e) => {
            let coeffs = e.minpoly.get_ref().iter().map(|c| scalar(&field, c)).collect::<Result<Vec<_>>>();
            let coeffs = ctx.at(e.minpoly.span().start, coeffs)?;
            let big = Field::extension(&field, &coeffs, assume)?;
            Some(ExtensionContext::new(&algebra, &big)?)
        }
        None => None,
    };
    let mut complexes = BTreeMap::new();
    for (name, c) in &raw.complex {
        let (alg, _) = pick(&ctx, &c.over, &algebra, extension.as_ref())?;
        let (comps, diffs) = ctx.complex(alg, None, c.lo, &c.terms, &c.diffs)?;
        let diffs = diffs.into_iter().map(|mut d| d.swap_remove(0)).collect();
        let at = c.terms.first().and_then(|t| t.first()).map_or(0, inner);
        let x = ctx.at(at, ProjComplex::new(alg, c.lo, comps, diffs))?;
        complexes.insert(name.clone(), x);
    }
    let mut modules = BTreeMap::new();
    for (name, m) in &raw.module {
        let (alg, _) = pick(&ctx, &m.over, &algebra, extension.as_ref())?;
        let f = alg.field();
        let mut named = vec![];
        for (label, rows) in &m.maps {
            let at = rows.span().start;
            let rows: Result<Vec<Vec<Scalar>>> = rows.get_ref().iter().map(|r| r.iter().map(|c| scalar(f, c)).collect()).collect();
            let mat = ctx.at(at, rows.and_then(|rows| Matrix::from_rows(f, rows)))?;
            named.push((label.clone(), mat, at));
        }
        let module = if let Some(q) = alg.quiver() {
            let mut maps = vec![];
            for a in &q.arrows {
                let found = named.iter().find(|(l, _, _)| l == &a.name);
                let (r, c) = (m.dims[a.target.min(m.dims.len().saturating_sub(1))], m.dims[a.source.min(m.dims.len().saturating_sub(1))]);
                maps.push(found.map_or_else(|| Matrix::zeros(f, r, c), |(_, mat, _)| mat.clone()));
            }
            if let Some((l, _, at)) = named.iter().find(|(l, _, _)| q.arrow_index(l).is_none()) {
                return Err(ctx.err(*at, format!("unknown arrow {l:?}")));
            }
            Module::from_arrow_maps(alg, m.dims.clone(), maps)?
        } else {
            let total = m.dims.iter().sum();
            let pairs: Vec<(String, Matrix)> = named.into_iter().map(|(l, mat, _)| (l, mat)).collect();
            Module::from_labeled_actions(alg, total, &pairs)?
        };
        modules.insert(name.clone(), module);
    }
    let mut families = BTreeMap::new();
    for (name, fam) in &raw.family {
        let (alg, over_extension) = pick(&ctx, &fam.over, &algebra, extension.as_ref())?;
        let (comps, diffs) = ctx.complex(alg, Some(&fam.parameter), fam.lo, &fam.terms, &fam.diffs)?;
        let samples = fam.samples.iter().map(|s| scalar(alg.field(), s)).collect::<Result<Vec<_>>>()?;
        let template = FamilyTemplate { parameter: fam.parameter.clone(), lo: fam.lo, comps, diffs };
        families.insert(name.clone(), Family { template, samples, over_extension });
    }
    Ok(SpecFile { field, algebra, extension, complexes, modules, families })
}

/// An element written in the input syntax: paths for quiver algebras, user basis labels
/// (`1`, `t`, `t^2`, …) for monogenic algebras.
pub fn format_element(alg: &Algebra, x: &[Scalar]) -> String {
    if alg.quiver().is_some() {
        return alg.format_elem(x);
    }
    let f = alg.field();
    let user = alg.user_basis();
    let m = Matrix::from_cols(f, alg.dim(), &user);
    let coords = m.solve(x).ok().flatten().expect("user basis spans the algebra");
    let labels = match alg.presentation() {
        crate::algebra::Presentation::Structure { labels, .. } => labels.clone(),
        _ => unreachable!(),
    };
    let terms: Vec<String> = coords
        .iter()
        .zip(&labels)
        .filter(|(c, _)| !f.is_zero(c))
        .map(|(c, l)| if f.is_one(c) { l.clone() } else { format!("{}*{}", f.format(c), l) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A `[complex.NAME]` section that parses back to `x`.
pub fn emit_complex(name: &str, x: &ProjComplex, over_extension: bool) -> String {
    let alg = x.algebra();
    let mut out = format!("[complex.{name}]\n");
    if over_extension {
        out.push_str("over = \"extension\"\n");
    }
    if x.is_zero() {
        out.push_str("terms = []\n");
        return out;
    }
    out.push_str(&format!("lo = {}\n", x.lo()));
    let terms: Vec<String> = x
        .degrees()
        .map(|n| format!("[{}]", x.comps(n).iter().map(|&s| format!("\"P{}\"", alg.slot_name(s))).collect::<Vec<_>>().join(", ")))
        .collect();
    out.push_str(&format!("terms = [{}]\n", terms.join(", ")));
    let diffs: Vec<String> = (x.lo()..x.hi())
        .map(|n| {
            let d = x.diff(n);
            let rows: Vec<String> = (0..d.rows())
                .map(|i| format!("[{}]", (0..d.cols()).map(|j| format!("\"{}\"", format_element(alg, d.get(i, j)))).collect::<Vec<_>>().join(", ")))
                .collect();
            format!("[{}]", rows.join(", "))
        })
        .collect();
    out.push_str(&format!("diffs = [{}]\n", diffs.join(", ")));
    out
}

/// Header lines (`field`, algebra, extension) that rebuild the algebra of a parsed spec.
pub fn emit_header(spec: &SpecFile) -> String {
    let f = &spec.field;
    let mut out = format!("field = \"{f}\"\n");
    let coeffs = |p: &[Scalar]| p.iter().map(|c| format!("\"{}\"", f.format(c))).collect::<Vec<_>>().join(", ");
    let alg = &spec.algebra;
    match alg.presentation() {
        crate::algebra::Presentation::Quiver { quiver, relations, .. } => {
            out.push_str("\n[quiver]\n");
            let vs: Vec<String> = quiver.vertices.iter().map(|v| format!("\"{v}\"")).collect();
            out.push_str(&format!("vertices = [{}]\n", vs.join(", ")));
            let arrows: Vec<String> = quiver
                .arrows
                .iter()
                .map(|a| format!("\"{}: {} -> {}\"", a.name, quiver.vertices[a.source], quiver.vertices[a.target]))
                .collect();
            out.push_str(&format!("arrows = [{}]\n", arrows.join(", ")));
            let rels: Vec<String> = relations
                .iter()
                .map(|r| {
                    let terms: Vec<String> = r
                        .terms
                        .iter()
                        .map(|(c, w)| {
                            let word = w.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*");
                            if f.is_one(c) { word } else { format!("{}*{}", f.format(c), word) }
                        })
                        .collect();
                    format!("\"{}\"", terms.join(" + "))
                })
                .collect();
            out.push_str(&format!("relations = [{}]\n", rels.join(", ")));
        }
        crate::algebra::Presentation::Structure { .. } => {
            let poly = match alg.dim() {
                0 => vec![],
                d => {
                    let t = alg.element_by_name("t").unwrap_or_else(|| alg.unit());
                    let tp = (0..d).fold(alg.unit(), |acc, _| alg.mul(&acc, &t));
                    let user = alg.user_basis();
                    let m = Matrix::from_cols(f, d, &user);
                    let mut c = m.solve(&tp).ok().flatten().expect("user basis spans the algebra");
                    c.iter_mut().for_each(|x| *x = f.neg(x));
                    c.push(f.one());
                    c
                }
            };
            out.push_str(&format!("\n[monogenic]\npoly = [{}]\n", coeffs(&poly)));
        }
    }
    if let Some(ctx) = &spec.extension {
        if let FieldSpec::Extension { minpoly, .. } = ctx.big().field().spec() {
            out.push_str(&format!("\n[extension]\nminpoly = [{}]\n", coeffs(minpoly)));
        }
    }
    out
}
