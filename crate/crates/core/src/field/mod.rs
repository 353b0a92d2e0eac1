//! Exact fields: prime fields, the rationals and simple separable extensions
//! of either, plus the dense linear algebra used by every other module.
//!
//! A [`Field`] is a cheap, shareable handle; [`Scalar`]s are plain values whose
//! meaning depends on the field that operates on them. Finite extensions are
//! packed into a single integer code (base-`p` digits of the power-basis
//! coordinates), rational extensions carry their coordinate vector.

mod matrix;
pub mod poly;

pub use matrix::{Matrix, Subspace};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field element. Only meaningful together with its owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    /// Element of a finite field, packed as base-`p` digits of its power-basis coordinates.
    Fin(u32),
    /// A rational number in lowest terms.
    Rat(Box<BigRational>),
    /// Element of a finite extension of Q, as power-basis coordinates.
    Ext(Box<[BigRational]>),
}

/// Structural description of a field, as written in spec files.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
    /// `base[x]/(minpoly)`; `base` is `Prime` or `Rationals`, `minpoly` is monic with
    /// coefficients over the base, constant term first.
    Extension { base: Box<FieldSpec>, minpoly: Vec<Scalar> },
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

struct FieldDef {
    spec: FieldSpec,
    /// Characteristic (0 for Q and its extensions).
    p: u32,
    /// Degree over the base field.
    degree: usize,
    /// Number of elements for finite fields.
    order: Option<u32>,
    /// Monic minimal polynomial as base digits (finite extensions).
    fin_minpoly: Vec<u32>,
    /// Monic minimal polynomial over Q (rational extensions).
    rat_minpoly: Vec<BigRational>,
    tables: Option<Tables>,
    base: Option<Field>,
}

/// Shared handle to an exact field.
#[derive(Clone)]
pub struct Field(Arc<FieldDef>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.spec {
            FieldSpec::Prime(p) => write!(f, "Fp({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Extension { .. } => {
                let base = self.base();
                let coeffs = &self.0.spec_minpoly_strings();
                write!(f, "{}[x]/({})", base, poly::format_poly(coeffs))
            }
        }
    }
}

impl FieldDef {
    fn spec_minpoly_strings(&self) -> Vec<String> {
        match &self.spec {
            FieldSpec::Extension { minpoly, .. } => minpoly
                .iter()
                .map(|c| match c {
                    Scalar::Fin(v) => v.to_string(),
                    Scalar::Rat(r) => r.to_string(),
                    Scalar::Ext(_) => "?".into(),
                })
                .collect(),
            _ => vec![],
        }
    }
}

const TABLE_LIMIT: u32 = 256;
const ORDER_LIMIT: u64 = 1 << 24;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p as u64 >= 1 << 31 {
            return Err(Error::FieldTooLarge(p as u64));
        }
        Ok(Field(Arc::new(FieldDef {
            spec: FieldSpec::Prime(p),
            p,
            degree: 1,
            order: Some(p),
            fin_minpoly: vec![],
            rat_minpoly: vec![],
            tables: None,
            base: None,
        })))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(FieldDef {
            spec: FieldSpec::Rationals,
            p: 0,
            degree: 1,
            order: None,
            fin_minpoly: vec![],
            rat_minpoly: vec![],
            tables: None,
            base: None,
        }))
    }

    /// Builds `base[x]/(minpoly)`. `minpoly` lists coefficients over `base`, constant
    /// term first, and must be monic. Separability is always checked; irreducibility is
    /// checked unless `assume_irreducible` is set.
    pub fn extension(base: &Field, minpoly: &[Scalar], assume_irreducible: bool) -> Result<Field> {
        if base.is_extension() {
            return Err(Error::Unsupported(
                "towers must be flattened to a simple extension of Fp or Q".into(),
            ));
        }
        let mut m: Vec<Scalar> = minpoly.iter().map(|c| base.normalize(c)).collect::<Result<_>>()?;
        poly::trim(base, &mut m);
        if m.len() < 2 || !base.is_one(m.last().unwrap()) {
            return Err(Error::NotMonic);
        }
        if !poly::is_separable(base, &m) {
            if !assume_irreducible {
                if let Err(e @ Error::Reducible(_)) = poly::check_irreducible(base, &m) {
                    return Err(e);
                }
            }
            return Err(Error::Inseparable);
        }
        if !assume_irreducible {
            poly::check_irreducible(base, &m)?;
        }
        let degree = m.len() - 1;
        let spec = FieldSpec::Extension { base: Box::new(base.spec().clone()), minpoly: m.clone() };
        match base.0.spec {
            FieldSpec::Prime(p) => {
                let order = (p as u64).checked_pow(degree as u32).unwrap_or(u64::MAX);
                if order > ORDER_LIMIT {
                    return Err(Error::FieldTooLarge(order));
                }
                let fin_minpoly: Vec<u32> = m.iter().map(|c| base.fin(c)).collect();
                let mut def = FieldDef {
                    spec,
                    p,
                    degree,
                    order: Some(order as u32),
                    fin_minpoly,
                    rat_minpoly: vec![],
                    tables: None,
                    base: Some(base.clone()),
                };
                if order as u32 <= TABLE_LIMIT {
                    def.tables = Some(build_tables(&def));
                }
                Ok(Field(Arc::new(def)))
            }
            FieldSpec::Rationals => {
                let rat_minpoly = m.iter().map(|c| base.rat(c).clone()).collect();
                Ok(Field(Arc::new(FieldDef {
                    spec,
                    p: 0,
                    degree,
                    order: None,
                    fin_minpoly: vec![],
                    rat_minpoly,
                    tables: None,
                    base: Some(base.clone()),
                })))
            }
            FieldSpec::Extension { .. } => unreachable!(),
        }
    }

    /// Builds a field from its structural description.
    pub fn from_spec(spec: &FieldSpec, assume_irreducible: bool) -> Result<Field> {
        match spec {
            FieldSpec::Prime(p) => Field::prime(*p),
            FieldSpec::Rationals => Ok(Field::rationals()),
            FieldSpec::Extension { base, minpoly } => {
                let b = Field::from_spec(base, assume_irreducible)?;
                Field::extension(&b, minpoly, assume_irreducible)
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u32> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.order.is_some()
    }

    pub fn is_extension(&self) -> bool {
        self.0.base.is_some()
    }

    /// Degree over the base field (1 for prime fields and Q).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// The base field of an extension, or the field itself.
    pub fn base(&self) -> Field {
        self.0.base.clone().unwrap_or_else(|| self.clone())
    }

    /// The prime field (Fp or Q) underneath.
    pub fn prime_field(&self) -> Field {
        self.base()
    }

    pub fn zero(&self) -> Scalar {
        match (&self.0.spec, self.0.order) {
            (_, Some(_)) => Scalar::Fin(0),
            (FieldSpec::Rationals, None) => Scalar::Rat(Box::new(BigRational::zero())),
            _ => Scalar::Ext(vec![BigRational::zero(); self.0.degree].into_boxed_slice()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match (&self.0.spec, self.0.order) {
            (_, Some(_)) => {
                let p = self.0.p as i64;
                Scalar::Fin(v.rem_euclid(p) as u32)
            }
            (FieldSpec::Rationals, None) => Scalar::Rat(Box::new(BigRational::from_integer(v.into()))),
            _ => {
                let mut c = vec![BigRational::zero(); self.0.degree];
                c[0] = BigRational::from_integer(v.into());
                Scalar::Ext(c.into_boxed_slice())
            }
        }
    }

    /// Embeds a rational `num/den` (characteristic must not divide `den`).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.0.p == 0 {
            let r = BigRational::new(num.clone(), den.clone());
            return Ok(self.embed_rat(r));
        }
        let p = BigInt::from(self.0.p);
        let n = ((num % &p) + &p) % &p;
        let d = ((den % &p) + &p) % &p;
        let n: u32 = n.try_into().unwrap();
        let d: u32 = d.try_into().unwrap();
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        let a = Scalar::Fin(n);
        let b = Scalar::Fin(d);
        self.div(&self.embed_prime_fin(&a), &self.embed_prime_fin(&b))
    }

    fn embed_prime_fin(&self, a: &Scalar) -> Scalar {
        // prime-field residues have the same packed code in every extension
        a.clone()
    }

    fn embed_rat(&self, r: BigRational) -> Scalar {
        match self.0.spec {
            FieldSpec::Rationals => Scalar::Rat(Box::new(r)),
            _ => {
                let mut c = vec![BigRational::zero(); self.0.degree];
                c[0] = r;
                Scalar::Ext(c.into_boxed_slice())
            }
        }
    }

    fn fin(&self, a: &Scalar) -> u32 {
        match a {
            Scalar::Fin(v) => *v,
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    fn rat<'a>(&self, a: &'a Scalar) -> &'a BigRational {
        match a {
            Scalar::Rat(r) => r,
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    /// Checks that `a` is a well-formed element of this field and returns its canonical form.
    pub fn normalize(&self, a: &Scalar) -> Result<Scalar> {
        match (a, self.0.order, &self.0.spec) {
            (Scalar::Fin(v), Some(q), _) if *v < q => Ok(a.clone()),
            (Scalar::Rat(_), None, FieldSpec::Rationals) => Ok(a.clone()),
            (Scalar::Ext(c), None, FieldSpec::Extension { .. }) if c.len() == self.0.degree => Ok(a.clone()),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Whether `a` is a well-formed element of this field.
    pub fn owns(&self, a: &Scalar) -> bool {
        self.normalize(a).is_ok()
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Ext(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
            Scalar::Ext(c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
        }
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut d = vec![0; self.0.degree];
        for x in d.iter_mut() {
            *x = v % p;
            v /= p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        let p = self.0.p;
        d.iter().rev().fold(0u32, |acc, &x| acc * p + x)
    }

    fn fin_add(&self, a: u32, b: u32) -> u32 {
        if self.0.degree == 1 {
            let p = self.0.p as u64;
            return ((a as u64 + b as u64) % p) as u32;
        }
        if let Some(t) = &self.0.tables {
            return t.add[(a * self.0.order.unwrap() + b) as usize] as u32;
        }
        let p = self.0.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.undigits(&s)
    }

    fn fin_neg(&self, a: u32) -> u32 {
        if self.0.degree == 1 {
            return if a == 0 { 0 } else { self.0.p - a };
        }
        if let Some(t) = &self.0.tables {
            return t.neg[a as usize] as u32;
        }
        let p = self.0.p;
        let d: Vec<u32> = self.digits(a).iter().map(|x| (p - x) % p).collect();
        self.undigits(&d)
    }

    fn fin_mul(&self, a: u32, b: u32) -> u32 {
        if self.0.degree == 1 {
            let p = self.0.p as u64;
            return ((a as u64 * b as u64) % p) as u32;
        }
        if let Some(t) = &self.0.tables {
            return t.mul[(a * self.0.order.unwrap() + b) as usize] as u32;
        }
        fin_ext_mul(&self.0, a, b)
    }

    fn fin_inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.0.degree == 1 {
            let p = self.0.p as u64;
            return Ok(pow_mod(a as u64, p - 2, p) as u32);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.inv[a as usize] as u32);
        }
        let q = self.0.order.unwrap() as u64;
        let mut e = q - 2;
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = fin_ext_mul(&self.0, acc, base);
            }
            base = fin_ext_mul(&self.0, base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_add(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x + &**y)),
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y.iter()).map(|(u, v)| u + v).collect())
            }
            _ => panic!("mixed scalar representations in {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fin(x) => Scalar::Fin(self.fin_neg(*x)),
            Scalar::Rat(x) => Scalar::Rat(Box::new(-&**x)),
            Scalar::Ext(x) => Scalar::Ext(x.iter().map(|u| -u).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_add(*x, self.fin_neg(*y))),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x - &**y)),
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y.iter()).map(|(u, v)| u - v).collect())
            }
            _ => panic!("mixed scalar representations in {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_mul(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x * &**y)),
            (Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(rat_ext_mul(&self.0.rat_minpoly, x, y)),
            _ => panic!("mixed scalar representations in {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match a {
            Scalar::Fin(x) => Ok(Scalar::Fin(self.fin_inv(*x)?)),
            Scalar::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(Box::new(x.recip())))
                }
            }
            Scalar::Ext(x) => Ok(Scalar::Ext(rat_ext_inv(&self.0.rat_minpoly, x)?)),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a * b + c`, the inner step of elimination.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        self.add(&self.mul(a, b), c)
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Owner-checked operations for scalars coming from untrusted input.
    pub fn checked(&self, op: FieldOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.normalize(a)?;
        self.normalize(b)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
        }
    }

    /// Coordinates `(λ_1, …, λ_l)` of `λ` in the power basis `1, x, …, x^{l-1}` over the base.
    pub fn coordinates(&self, a: &Scalar) -> Result<Vec<Scalar>> {
        if !self.is_extension() {
            return Err(Error::NotExtension);
        }
        self.normalize(a)?;
        Ok(match a {
            Scalar::Fin(v) => self.digits(*v).into_iter().map(Scalar::Fin).collect(),
            Scalar::Ext(c) => c.iter().map(|x| Scalar::Rat(Box::new(x.clone()))).collect(),
            Scalar::Rat(_) => unreachable!(),
        })
    }

    /// Inverse of [`Field::coordinates`].
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Result<Scalar> {
        if coords.len() != self.0.degree {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.0.degree,
                coords.len()
            )));
        }
        let base = self.base();
        for c in coords {
            base.normalize(c)?;
        }
        Ok(match self.0.order {
            Some(_) => Scalar::Fin(self.undigits(&coords.iter().map(|c| base.fin(c)).collect::<Vec<_>>())),
            None if self.is_extension() => {
                Scalar::Ext(coords.iter().map(|c| base.rat(c).clone()).collect())
            }
            None => coords[0].clone(),
        })
    }

    /// Image of a base-field scalar.
    pub fn embed(&self, a: &Scalar) -> Scalar {
        match (a, self.0.order) {
            (Scalar::Fin(_), Some(_)) => a.clone(),
            (Scalar::Rat(r), None) => self.embed_rat((**r).clone()),
            _ => panic!("cannot embed {a:?} into {self}"),
        }
    }

    /// The generator `x` of an extension (its image of the power basis element `x^1`).
    pub fn generator(&self) -> Result<Scalar> {
        if !self.is_extension() {
            return Err(Error::NotExtension);
        }
        let base = self.base();
        let mut c = vec![base.zero(); self.0.degree];
        if self.0.degree > 1 {
            c[1] = base.one();
        } else {
            // degree-one extension: x is the root of x + c0
            c[0] = base.neg(&self.minpoly()[0]);
        }
        self.from_coordinates(&c)
    }

    /// Power basis `1, x, …, x^{l-1}`.
    pub fn power_basis(&self) -> Vec<Scalar> {
        let base = self.base();
        (0..self.0.degree)
            .map(|i| {
                let mut c = vec![base.zero(); self.0.degree];
                c[i] = base.one();
                self.from_coordinates(&c).unwrap()
            })
            .collect()
    }

    /// Monic minimal polynomial over the base (empty for non-extensions).
    pub fn minpoly(&self) -> Vec<Scalar> {
        match &self.0.spec {
            FieldSpec::Extension { minpoly, .. } => minpoly.clone(),
            _ => vec![],
        }
    }

    /// All elements in canonical order, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.0.order.map(|q| (0..q).map(Scalar::Fin).collect())
    }

    /// Digits over the prime field (finite fields only).
    pub fn prime_digits(&self, a: &Scalar) -> Vec<u32> {
        self.digits(self.fin(a))
    }

    /// Inverse of [`Field::prime_digits`].
    pub fn from_prime_digits(&self, d: &[u32]) -> Scalar {
        Scalar::Fin(self.undigits(d))
    }

    /// A pseudo-random element; over Q small fractions.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.0.order {
            Some(q) => Scalar::Fin(rng.gen_range(0..q)),
            None => {
                let mut r = || BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=3).into());
                match self.0.spec {
                    FieldSpec::Rationals => Scalar::Rat(Box::new(r())),
                    _ => Scalar::Ext((0..self.0.degree).map(|_| r()).collect()),
                }
            }
        }
    }

    /// Exact textual form: integers, fractions `p/q`, coordinate tuples for extensions.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fin(v) if self.0.degree == 1 => v.to_string(),
            Scalar::Fin(v) => {
                let d = self.digits(*v);
                format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
            Scalar::Rat(r) => r.to_string(),
            Scalar::Ext(c) => format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        }
    }

    /// Whether `a` is a nonzero integer multiple of one in Q (helper for root searches).
    pub(crate) fn as_rational(&self, a: &Scalar) -> Option<BigRational> {
        match a {
            Scalar::Rat(r) => Some((**r).clone()),
            _ => None,
        }
    }

    pub(crate) fn from_rational(&self, r: BigRational) -> Scalar {
        self.embed_rat(r)
    }
}

/// Binary field operation selector for [`Field::checked`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn fin_ext_mul(def: &FieldDef, a: u32, b: u32) -> u32 {
    let p = def.p as u64;
    let e = def.degree;
    let dig = |mut v: u32| {
        let mut d = vec![0u64; e];
        for x in d.iter_mut() {
            *x = (v % def.p) as u64;
            v /= def.p;
        }
        d
    };
    let (da, db) = (dig(a), dig(b));
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, x) in da.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..e {
            let m = def.fin_minpoly[i] as u64;
            prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
        }
    }
    prod[..e].iter().rev().fold(0u32, |acc, &x| acc * def.p + x as u32)
}

fn build_tables(def: &FieldDef) -> Tables {
    let q = def.order.unwrap();
    let p = def.p;
    let e = def.degree;
    let dig = |mut v: u32| {
        let mut d = vec![0u32; e];
        for x in d.iter_mut() {
            *x = v % p;
            v /= p;
        }
        d
    };
    let undig = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
    let mut add = vec![0u8; (q * q) as usize];
    let mut mul = vec![0u8; (q * q) as usize];
    let mut neg = vec![0u8; q as usize];
    let mut inv = vec![0u8; q as usize];
    for a in 0..q {
        let da = dig(a);
        neg[a as usize] = undig(&da.iter().map(|x| (p - x) % p).collect::<Vec<_>>()) as u8;
        for b in 0..q {
            let db = dig(b);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undig(&s) as u8;
            let m = fin_ext_mul(def, a, b);
            mul[(a * q + b) as usize] = m as u8;
            if m == 1 {
                inv[a as usize] = b as u8;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

fn rat_ext_mul(m: &[BigRational], x: &[BigRational], y: &[BigRational]) -> Box<[BigRational]> {
    let e = x.len();
    let mut prod = vec![BigRational::zero(); 2 * e - 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                prod[i + j] += a * b;
            }
        }
    }
    for k in (e..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for i in 0..e {
            if !m[i].is_zero() {
                let t = &c * &m[i];
                prod[k - e + i] -= t;
            }
        }
    }
    prod.truncate(e);
    prod.into_boxed_slice()
}

fn rat_ext_inv(m: &[BigRational], x: &[BigRational]) -> Result<Box<[BigRational]>> {
    // extended Euclid on a(t), m(t) over Q
    let q = Field::rationals();
    let to = |v: &[BigRational]| v.iter().map(|c| Scalar::Rat(Box::new(c.clone()))).collect::<Vec<_>>();
    let a = to(x);
    let mm = to(m);
    let mut a_t = a.clone();
    poly::trim(&q, &mut a_t);
    if a_t.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let (g, u, _) = poly::ext_gcd(&q, &a_t, &mm);
    // g is monic and constant since m is irreducible (or at least coprime to a)
    if g.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    let e = x.len();
    let (_, r) = poly::divrem(&q, &u, &mm);
    let mut out = vec![BigRational::zero(); e];
    for (i, c) in r.iter().enumerate() {
        out[i] = match c {
            Scalar::Rat(v) => (**v).clone(),
            _ => unreachable!(),
        };
    }
    Ok(out.into_boxed_slice())
}

pub(crate) fn bigint_abs(x: &BigInt) -> BigInt {
    x.abs()
}
