//! Dense univariate polynomials over a [`Field`], coefficients constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{bigint_abs, Field, Scalar};
use crate::error::{Error, Result};

pub type Poly = Vec<Scalar>;

pub fn trim(f: &Field, p: &mut Poly) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree(f: &Field, p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

pub fn add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            _ => unreachable!(),
        })
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let nb: Poly = b.iter().map(|c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(x, y, &out[i + j]);
        }
    }
    trim(f, &mut out);
    out
}

pub fn scale(f: &Field, a: &[Scalar], c: &Scalar) -> Poly {
    let mut out: Poly = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

/// Quotient and remainder. Panics on a zero divisor.
pub fn divrem(f: &Field, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let mut b = b.to_vec();
    trim(f, &mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(f, &mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = f.sub(&r[k + i], &f.mul(&c, bc));
        }
        q[k] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn make_monic(f: &Field, a: &[Scalar]) -> Poly {
    match a.last() {
        None => vec![],
        Some(l) => scale(f, a, &f.inv(l).unwrap()),
    }
}

/// Monic gcd.
pub fn gcd(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// `(g, u, v)` with `u·a + v·b = g`, `g` the monic gcd.
pub fn ext_gcd(f: &Field, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let li = f.inv(r0.last().unwrap()).unwrap();
    (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
}

pub fn derivative(f: &Field, a: &[Scalar]) -> Poly {
    let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(&f.from_i64(i as i64), c)).collect();
    trim(f, &mut out);
    out
}

pub fn eval(f: &Field, a: &[Scalar], x: &Scalar) -> Scalar {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// `gcd(m, m′)` is a nonzero constant.
pub fn is_separable(f: &Field, m: &[Scalar]) -> bool {
    let d = derivative(f, m);
    if d.is_empty() {
        return degree(f, m) == Some(0);
    }
    gcd(f, m, &d).len() == 1
}

fn powmod(f: &Field, base: &[Scalar], mut e: u128, m: &[Scalar]) -> Poly {
    let mut acc = vec![f.one()];
    let (_, mut b) = divrem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &b), m).1;
        }
        b = divrem(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// `x^(q^d) mod m`, computed by repeated q-th powering.
fn frobenius_power(f: &Field, m: &[Scalar], d: usize) -> Poly {
    let q = f.order().expect("finite field") as u128;
    let mut x = vec![f.zero(), f.one()];
    for _ in 0..d {
        x = powmod(f, &x, q, m);
    }
    x
}

/// Errors with [`Error::Reducible`] (or [`Error::IrreducibilityUndecided`] over Q in
/// degree ≥ 4) unless `m` is irreducible.
pub fn check_irreducible(f: &Field, m: &[Scalar]) -> Result<()> {
    let n = degree(f, m).ok_or(Error::NotMonic)?;
    if n <= 1 {
        return Ok(());
    }
    if f.is_finite() {
        // Rabin: no irreducible factor of degree ≤ n/2
        let x = vec![f.zero(), f.one()];
        for d in 1..=n / 2 {
            let xq = frobenius_power(f, m, d);
            let g = gcd(f, &sub(f, &xq, &x), m);
            if g.len() > 1 {
                return Err(Error::Reducible(format!("has a factor of degree {}", g.len() - 1)));
            }
        }
        return Ok(());
    }
    if f.is_extension() {
        return Err(Error::Undecided("irreducibility over a number field".into()));
    }
    if let Some(r) = rational_roots(f, m).first() {
        return Err(Error::Reducible(format!("has the rational root {}", f.format(r))));
    }
    if n <= 3 {
        Ok(())
    } else {
        Err(Error::IrreducibilityUndecided(n))
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = bigint_abs(n);
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of a polynomial over Q (distinct, sorted).
pub fn rational_roots(f: &Field, p: &[Scalar]) -> Vec<Scalar> {
    let coeffs: Vec<BigRational> = match p.iter().map(|c| f.as_rational(c)).collect::<Option<Vec<_>>>() {
        Some(c) => c,
        None => return vec![],
    };
    let mut coeffs = coeffs;
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return vec![];
    }
    let mut roots = vec![];
    // strip x^k
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() > 1 {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = &ints[0];
        let an = ints.last().unwrap();
        for num in divisors(a0) {
            for den in divisors(an) {
                for sign in [1, -1] {
                    let r = BigRational::new(&num * sign, den.clone());
                    let v = ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * &r + BigRational::from_integer(c.clone()));
                    if v.is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.into_iter().map(|r| f.from_rational(r)).collect()
}

/// Roots lying in the field itself: exhaustive for finite fields, rational roots over Q,
/// none reported for number fields.
pub fn roots(f: &Field, p: &[Scalar]) -> Vec<Scalar> {
    match f.elements() {
        Some(els) => els.into_iter().filter(|x| f.is_zero(&eval(f, p, x))).collect(),
        None if !f.is_extension() => rational_roots(f, p),
        None => vec![],
    }
}

/// Outcome of trying to split a polynomial into coprime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `p = g·h` with `g`, `h` coprime and both non-constant.
    Split(Poly, Poly),
    /// `p` is a power of a single irreducible polynomial, given here.
    Primary(Poly),
    /// No split was found but primality could not be certified.
    Unknown,
}

/// Exact over finite fields (distinct-degree search) and over Q in the cases reachable by
/// rational roots plus a degree ≤ 3 irreducibility certificate.
pub fn coprime_split(f: &Field, p: &[Scalar]) -> Splitting {
    let p = make_monic(f, p);
    let n = match degree(f, &p) {
        Some(n) if n >= 1 => n,
        _ => return Splitting::Primary(p),
    };
    let factor = if f.is_finite() { smallest_irreducible_factor(f, &p) } else { rational_factor(f, &p) };
    let factor = factor.or_else(|| if n == 2 && !f.is_finite() { quadratic_factor(f, &p) } else { None });
    let Some(g1) = factor else {
        if (!f.is_extension() && n <= 3) || (n == 2 && sqrt_decidable(f)) {
            return Splitting::Primary(p);
        }
        return Splitting::Unknown;
    };
    let mut g = vec![f.one()];
    let mut h = p.clone();
    loop {
        let (q, r) = divrem(f, &h, &g1);
        if !r.is_empty() {
            break;
        }
        g = mul(f, &g, &g1);
        h = q;
    }
    if h.len() <= 1 {
        Splitting::Primary(g1)
    } else {
        Splitting::Split(g, h)
    }
}

fn sqrt_decidable(f: &Field) -> bool {
    f.characteristic() == 0 && f.degree() <= 2
}

/// A linear factor of a monic quadratic in characteristic 0, from a square root of the
/// discriminant.
fn quadratic_factor(f: &Field, p: &[Scalar]) -> Option<Poly> {
    let (c, b) = (&p[0], &p[1]);
    let disc = f.sub(&f.mul(b, b), &f.mul(&f.from_i64(4), c));
    let s = sqrt(f, &disc)?;
    let root = f.div(&f.sub(&s, b), &f.from_i64(2)).ok()?;
    Some(vec![f.neg(&root), f.one()])
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (BigRational::new(&n * &n, &d * &d) == *r).then(|| BigRational::new(n, d))
}

/// A square root inside `f`, for `Q` and quadratic extensions of `Q`.
pub fn sqrt(f: &Field, a: &Scalar) -> Option<Scalar> {
    if f.characteristic() != 0 {
        return None;
    }
    if !f.is_extension() {
        return rational_sqrt(&f.as_rational(a)?).map(|r| f.from_rational(r));
    }
    if f.degree() != 2 {
        return None;
    }
    let q = f.base();
    let rat = |x: &Scalar| q.as_rational(x).unwrap();
    let m = f.minpoly();
    let (mq, mp) = (rat(&m[0]), rat(&m[1]));
    let two = BigRational::from_integer(2.into());
    let delta = &mp * &mp - BigRational::from_integer(4.into()) * &mq;
    let c = f.coordinates(a).ok()?;
    let (u, v) = (rat(&c[0]), rat(&c[1]));
    // a = U + V β with β = 2α + p, β² = Δ
    let uu = &u - &v * &mp / &two;
    let vv = &v / &two;
    let beta = f.from_coordinates(&[q.from_rational(mp.clone()), q.from_rational(two.clone())]).ok()?;
    let build = |x: BigRational, y: BigRational| f.add(&f.from_rational(x), &f.mul(&f.from_rational(y), &beta));
    if vv.is_zero() {
        if let Some(x) = rational_sqrt(&uu) {
            return Some(build(x, BigRational::zero()));
        }
        return rational_sqrt(&(&uu / &delta)).map(|y| build(BigRational::zero(), y));
    }
    let n = rational_sqrt(&(&uu * &uu - &delta * &vv * &vv))?;
    for x2 in [(&uu + &n) / &two, (&uu - &n) / &two] {
        if let Some(x) = rational_sqrt(&x2) {
            if !x.is_zero() {
                let y = &vv / (&two * &x);
                return Some(build(x, y));
            }
        }
    }
    None
}

fn rational_factor(f: &Field, p: &[Scalar]) -> Option<Poly> {
    rational_roots(f, p).first().map(|r| vec![f.neg(r), f.one()])
}

fn smallest_irreducible_factor(f: &Field, p: &[Scalar]) -> Option<Poly> {
    let n = degree(f, p)?;
    let x = vec![f.zero(), f.one()];
    for d in 1..=n {
        let xq = frobenius_power(f, p, d);
        let h = gcd(f, &sub(f, &xq, &x), p);
        if h.len() <= 1 {
            continue;
        }
        let dh = h.len() - 1;
        if dh == d {
            return Some(h);
        }
        // several distinct degree-d factors: search monic divisors of degree d
        return monic_divisor_of_degree(f, &h, d);
    }
    None
}

fn monic_divisor_of_degree(f: &Field, h: &[Scalar], d: usize) -> Option<Poly> {
    let els = f.elements()?;
    let q = els.len();
    let total = (q as u128).checked_pow(d as u32)?;
    for code in 0..total {
        let mut c = code;
        let mut cand: Poly = (0..d)
            .map(|_| {
                let v = els[(c % q as u128) as usize].clone();
                c /= q as u128;
                v
            })
            .collect();
        cand.push(f.one());
        if divrem(f, h, &cand).1.is_empty() {
            return Some(cand);
        }
    }
    None
}

/// Human-readable polynomial in `x` from coefficient strings (constant term first).
pub fn format_poly(coeffs: &[String]) -> String {
    let mut terms = vec![];
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c.as_str(), i) {
            (_, 0) => c.clone(),
            ("1", _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &Field, v: &[i64]) -> Poly {
        v.iter().map(|&c| f.from_i64(c)).collect()
    }

    #[test]
    fn separability_examples() {
        let f2 = Field::prime(2).unwrap();
        assert!(is_separable(&f2, &ints(&f2, &[1, 1, 1])));
        assert!(!is_separable(&f2, &ints(&f2, &[0, 0, 1])));
        let q = Field::rationals();
        assert!(is_separable(&q, &ints(&q, &[1, 0, 1])));
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let q = Field::rationals();
        // (x-1)(x-2) and (x-1)(x+3)
        let a = ints(&q, &[2, -3, 1]);
        let b = ints(&q, &[-3, 2, 1]);
        assert_eq!(gcd(&q, &a, &b), ints(&q, &[-1, 1]));
        let (g, u, v) = ext_gcd(&q, &a, &b);
        assert_eq!(add(&q, &mul(&q, &u, &a), &mul(&q, &v, &b)), g);
    }

    #[test]
    fn splitting_over_f2() {
        let f2 = Field::prime(2).unwrap();
        // x^2 + x = x(x+1)
        assert!(matches!(coprime_split(&f2, &ints(&f2, &[0, 1, 1])), Splitting::Split(_, _)));
        // (x^2+x+1)^2
        let m = ints(&f2, &[1, 1, 1]);
        assert_eq!(coprime_split(&f2, &mul(&f2, &m, &m)), Splitting::Primary(m.clone()));
        // product of the two irreducible cubics
        let c1 = ints(&f2, &[1, 1, 0, 1]);
        let c2 = ints(&f2, &[1, 0, 1, 1]);
        assert!(matches!(coprime_split(&f2, &mul(&f2, &c1, &c2)), Splitting::Split(_, _)));
    }

    #[test]
    fn rational_root_search() {
        let q = Field::rationals();
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let r = rational_roots(&q, &ints(&q, &[1, -5, 6]));
        assert_eq!(r.len(), 2);
        assert!(check_irreducible(&q, &ints(&q, &[1, 0, 1])).is_ok());
        assert!(check_irreducible(&q, &ints(&q, &[-2, 0, 0, 1])).is_ok());
        assert!(matches!(check_irreducible(&q, &ints(&q, &[-1, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn square_roots_in_gaussian_rationals() {
        let q = Field::rationals();
        let k = Field::extension(&q, &ints(&q, &[1, 0, 1]), false).unwrap();
        let i = k.generator().unwrap();
        let minus_one = k.from_i64(-1);
        let s = sqrt(&k, &minus_one).unwrap();
        assert_eq!(k.mul(&s, &s), minus_one);
        let two_i = k.mul(&k.from_i64(2), &i);
        let s = sqrt(&k, &two_i).unwrap();
        assert_eq!(k.mul(&s, &s), two_i);
        assert!(sqrt(&k, &k.from_i64(2)).is_none());
        assert!(sqrt(&k, &k.from_i64(-4)).is_some());
        assert_eq!(sqrt(&q, &q.from_i64(9)), Some(q.from_i64(3)));
        assert!(matches!(coprime_split(&k, &ints(&k, &[1, 0, 1])), Splitting::Split(_, _)));
        assert!(matches!(coprime_split(&k, &ints(&k, &[-2, 0, 1])), Splitting::Primary(_)));
    }
}
