//! Ground fields and their elements.
//!
//! Three kinds of field are supported: the rationals, prime fields `F_p`
//! with `p` odd, and quadratic extensions `k(sqrt d)` of either, where `d`
//! must be a verified non-square in `k`. Elements carry enough data to know
//! their field, so arithmetic never needs a separate context object; mixing
//! elements of different fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A ground field descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
    Quadratic(Box<QuadraticField>),
}

/// `base(sqrt d)` with `d` a non-square of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    pub base: Field,
    pub d: Scalar,
}

/// Element of `F_p`, stored as its canonical representative in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

/// `re + im * sqrt(d)`.
#[derive(Clone, Debug)]
pub struct QuadElem {
    re: Scalar,
    im: Scalar,
    d: Scalar,
}

/// A field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(Fp),
    Quad(Box<QuadElem>),
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Fp {
        let m = modulus as i128;
        Fp { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed prime fields");
    }

    fn inv(&self) -> Fp {
        assert!(self.value != 0, "division by zero in F_{}", self.modulus);
        Fp { value: mod_pow(self.value, self.modulus - 2, self.modulus), modulus: self.modulus }
    }

    /// Euler criterion; zero counts as a square.
    fn is_square(&self) -> bool {
        self.value == 0 || mod_pow(self.value, (self.modulus - 1) / 2, self.modulus) == 1
    }

    /// Tonelli–Shanks.
    fn sqrt(&self) -> Option<Fp> {
        let p = self.modulus;
        if self.value == 0 {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while mod_pow(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut m = s;
        let mut c = mod_pow(z, q, p);
        let mut t = mod_pow(self.value, q, p);
        let mut r = mod_pow(self.value, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mulm(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mulm(b, b);
            }
            m = i;
            c = mulm(b, b);
            t = mulm(t, c);
            r = mulm(r, b);
        }
        Some(Fp { value: r, modulus: p })
    }
}

/// Square-free integer representing the class of a nonzero rational modulo squares.
pub fn squarefree_class(q: &BigRational) -> BigInt {
    let n = q.numer() * q.denom();
    let sign = n.sign();
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= m {
        let mut e = 0;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &f;
        }
        f += 1;
    }
    out *= m;
    if sign == Sign::Minus {
        -out
    } else {
        out
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Field {
    /// `F_p`, rejecting `p = 2` and composites.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::Char2Unsupported);
        }
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `self(sqrt d)`; `d` must be a non-square of `self`.
    pub fn quadratic(&self, d: Scalar) -> Result<Field> {
        if matches!(self, Field::Quadratic(_)) {
            return Err(Error::Validation("quadratic extensions of extensions are not supported".into()));
        }
        if d.field() != *self {
            return Err(Error::Validation("extension parameter lies in a different field".into()));
        }
        if self.is_square(&d) {
            return Err(Error::SquareParameter(d.to_string()));
        }
        Ok(Field::Quadratic(Box::new(QuadraticField { base: self.clone(), d })))
    }

    /// Accepts `Q`, `Fp:P`, `F_P` and `FP`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{t}` (expected Q or Fp:P)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field `{t}`")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Quadratic(q) => q.base.characteristic(),
        }
    }

    pub fn base(&self) -> &Field {
        match self {
            Field::Quadratic(q) => &q.base,
            other => other,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod(Fp::new(n as i128, *p)),
            Field::Quadratic(q) => Scalar::Quad(Box::new(QuadElem {
                re: q.base.from_i64(n),
                im: q.base.zero(),
                d: q.d.clone(),
            })),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(r.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let n = r.numer().mod_floor(&m).to_i128().expect("reduced value fits");
                let d = r.denom().mod_floor(&m).to_i128().expect("reduced value fits");
                if d == 0 {
                    return Err(Error::Parse(format!("denominator of {r} vanishes in F_{p}")));
                }
                Ok(Scalar::Mod(Fp::new(n, *p)) / Scalar::Mod(Fp::new(d, *p)))
            }
            Field::Quadratic(q) => {
                let re = q.base.from_rational(r)?;
                Ok(Scalar::Quad(Box::new(QuadElem { re, im: q.base.zero(), d: q.d.clone() })))
            }
        }
    }

    /// `sqrt d` as an element of this (quadratic) field.
    pub fn sqrt_generator(&self) -> Option<Scalar> {
        match self {
            Field::Quadratic(q) => Some(Scalar::Quad(Box::new(QuadElem {
                re: q.base.zero(),
                im: q.base.one(),
                d: q.d.clone(),
            }))),
            _ => None,
        }
    }

    /// Promote a base-field element into this field.
    pub fn embed(&self, x: &Scalar) -> Scalar {
        match self {
            Field::Quadratic(q) => match x {
                Scalar::Quad(_) => x.clone(),
                _ => Scalar::Quad(Box::new(QuadElem { re: x.clone(), im: q.base.zero(), d: q.d.clone() })),
            },
            _ => x.clone(),
        }
    }

    pub fn is_square(&self, x: &Scalar) -> bool {
        self.sqrt(x).is_some()
    }

    /// A square root inside this field, if one exists.
    pub fn sqrt(&self, x: &Scalar) -> Option<Scalar> {
        match x {
            Scalar::Rat(r) => rational_sqrt(r).map(Scalar::Rat),
            Scalar::Mod(f) => f.sqrt().map(Scalar::Mod),
            Scalar::Quad(q) => {
                if q.im.is_zero() {
                    let base = self.base();
                    if let Some(s) = base.sqrt(&q.re) {
                        return Some(self.embed(&s));
                    }
                    // re = d * t^2  =>  sqrt = t * sqrt(d)
                    let t2 = q.re.clone() / q.d.clone();
                    if let Some(t) = base.sqrt(&t2) {
                        return Some(Scalar::Quad(Box::new(QuadElem { re: base.zero(), im: t, d: q.d.clone() })));
                    }
                }
                None
            }
        }
    }

    /// All elements of a prime field, in canonical order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Mod(Fp { value: v, modulus: *p })).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Quadratic(q) => write!(f, "{}(sqrt({}))", q.base, q.d),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(f) => Field::Prime(f.modulus),
            Scalar::Quad(q) => Field::Quadratic(Box::new(QuadraticField { base: q.re.field(), d: q.d.clone() })),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(f) => f.value == 0,
            Scalar::Quad(q) => q.re.is_zero() && q.im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(f) => f.value == 1,
            Scalar::Quad(q) => q.re.is_one() && q.im.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fp(&self) -> Option<Fp> {
        match self {
            Scalar::Mod(f) => Some(*f),
            _ => None,
        }
    }

    /// `(re, im)` of an element of a quadratic extension; base elements give `im = 0`.
    pub fn quad_parts(&self) -> (Scalar, Scalar) {
        match self {
            Scalar::Quad(q) => (q.re.clone(), q.im.clone()),
            other => (other.clone(), other.zero_like()),
        }
    }

    /// Field norm down to the base field (identity on base fields squared).
    pub fn norm(&self) -> Scalar {
        match self {
            Scalar::Quad(q) => q.re.clone() * q.re.clone() - q.d.clone() * q.im.clone() * q.im.clone(),
            other => other.clone() * other.clone(),
        }
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Quad(q) => Scalar::Quad(Box::new(QuadElem { re: q.re.clone(), im: -q.im.clone(), d: q.d.clone() })),
            other => other.clone(),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "division by zero in Q");
                Scalar::Rat(r.recip())
            }
            Scalar::Mod(f) => Scalar::Mod(f.inv()),
            Scalar::Quad(q) => {
                let n = self.norm();
                let ninv = n.inv();
                Scalar::Quad(Box::new(QuadElem {
                    re: q.re.clone() * ninv.clone(),
                    im: -(q.im.clone() * ninv),
                    d: q.d.clone(),
                }))
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    fn promote_pair(a: &Scalar, b: &Scalar) -> (QuadElem, QuadElem) {
        let d = match (a, b) {
            (Scalar::Quad(x), Scalar::Quad(y)) => {
                assert!(x.d == y.d, "mixed quadratic extensions");
                x.d.clone()
            }
            (Scalar::Quad(x), _) => x.d.clone(),
            (_, Scalar::Quad(y)) => y.d.clone(),
            _ => unreachable!(),
        };
        let lift = |s: &Scalar| match s {
            Scalar::Quad(q) => (**q).clone(),
            other => QuadElem { re: other.clone(), im: other.zero_like(), d: d.clone() },
        };
        (lift(a), lift(b))
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                a.check(b);
                let v = (a.value as u128 + b.value as u128) % a.modulus as u128;
                Scalar::Mod(Fp { value: v as u64, modulus: a.modulus })
            }
            (Scalar::Quad(_), _) | (_, Scalar::Quad(_)) => {
                let (x, y) = Scalar::promote_pair(self, other);
                Scalar::Quad(Box::new(QuadElem { re: x.re.add_ref(&y.re), im: x.im.add_ref(&y.im), d: x.d }))
            }
            _ => panic!("mixed fields: {self} and {other}"),
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                a.check(b);
                let v = (a.value as u128 * b.value as u128) % a.modulus as u128;
                Scalar::Mod(Fp { value: v as u64, modulus: a.modulus })
            }
            (Scalar::Quad(_), _) | (_, Scalar::Quad(_)) => {
                let (x, y) = Scalar::promote_pair(self, other);
                let re = x.re.mul_ref(&y.re).add_ref(&x.d.mul_ref(&x.im.mul_ref(&y.im)));
                let im = x.re.mul_ref(&y.im).add_ref(&x.im.mul_ref(&y.re));
                Scalar::Quad(Box::new(QuadElem { re, im, d: x.d }))
            }
            _ => panic!("mixed fields: {self} and {other}"),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(Fp { value: (a.modulus - a.value) % a.modulus, modulus: a.modulus }),
            Scalar::Quad(q) => Scalar::Quad(Box::new(QuadElem { re: q.re.neg_ref(), im: q.im.neg_ref(), d: q.d.clone() })),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Mod(a), Scalar::Mod(b)) => a == b,
            (Scalar::Quad(a), Scalar::Quad(b)) => a.d == b.d && a.re == b.re && a.im == b.im,
            (Scalar::Quad(a), b) | (b, Scalar::Quad(a)) => a.im.is_zero() && a.re == *b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(a) => write!(f, "{}", a.value),
            Scalar::Quad(q) => {
                if q.im.is_zero() {
                    return write!(f, "{}", q.re);
                }
                let surd = if q.im.is_one() {
                    format!("sqrt({})", q.d)
                } else if (-q.im.clone()).is_one() {
                    format!("-sqrt({})", q.d)
                } else {
                    format!("({})*sqrt({})", q.im, q.d)
                };
                if q.re.is_zero() {
                    write!(f, "{surd}")
                } else {
                    write!(f, "{} + {surd}", q.re)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.inv()));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
