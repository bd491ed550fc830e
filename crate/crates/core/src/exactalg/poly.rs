//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so iteration, printing and every derived report are
//! byte-reproducible. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::scalar::{Field, Scalar};

/// Coefficient field plus ordered variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Ring {
        Arc::new(PolyRing { field, vars })
    }

    /// Ring with variables `prefix1..prefixN`.
    pub fn with_indexed_vars(field: Field, prefix: &str, n: usize) -> Ring {
        PolyRing::new(field, (1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: Field) -> Ring {
        PolyRing::new(field, self.vars.clone())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &MultiPoly) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> MultiPoly {
        MultiPoly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn from_i64(ring: &Ring, n: i64) -> MultiPoly {
        MultiPoly::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Ring, i: usize) -> MultiPoly {
        assert!(i < ring.nvars(), "variable index out of range");
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        MultiPoly::monomial(ring, Monomial(e), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> MultiPoly {
        assert_eq!(m.0.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &MultiPoly) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong dimension");
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t * x.pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            MultiPoly::accumulate(&mut terms, m2, c * &self.field().from_i64(e as i64));
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }

    /// `sum_i v_i * (dp/dy_i)(at)`.
    pub fn directional_derivative(&self, v: &[Scalar], at: &[Scalar]) -> Result<Scalar> {
        let n = self.ring.nvars();
        if v.len() != n || at.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "polynomial has {n} variables, direction has {} and point has {}",
                v.len(),
                at.len()
            )));
        }
        let mut acc = self.field().zero();
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                acc = acc + vi * &self.partial(i).eval(at);
            }
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`; the images live in `target`.
    pub fn substitute(&self, images: &[MultiPoly], target: &Ring) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, target.field().embed(c));
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Move into a ring whose variables extend this one's: variable `i` goes to `target` index `map[i]`.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.ring.nvars());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in map.iter().enumerate() {
                e[k] += m.0[i];
            }
            terms.insert(Monomial(e), target.field().embed(c));
        }
        MultiPoly { ring: target.clone(), terms }
    }

    /// Map coefficients into another field (reduction mod p, or embedding into an extension).
    pub fn change_field(&self, target: &Ring) -> Result<MultiPoly> {
        assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let image = match (c, target.field()) {
                (Scalar::Rat(r), f) => f.from_rational(r)?,
                (x, f) if x.field() == *f => x.clone(),
                (x, f) if x.field() == *f.base() => f.embed(x),
                (x, f) => return Err(Error::Validation(format!("cannot map {x} into {f}"))),
            };
            MultiPoly::accumulate(&mut terms, m.clone(), image);
        }
        Ok(MultiPoly { ring: target.clone(), terms })
    }

    /// Polynomial in terms of the named variables; used for reports.
    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()) => (true, -c.clone()),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
                .collect();
            let coef = if matches!(mag, Scalar::Quad(_)) && !mag.quad_parts().1.is_zero() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if mono.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ring.vars()))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            MultiPoly::accumulate(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            MultiPoly::accumulate(&mut terms, m.clone(), -c);
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                MultiPoly::accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Ring {
        PolyRing::with_indexed_vars(Field::Rational, "y", 3)
    }

    #[test]
    fn grlex_order_and_printing() {
        let r = ring3();
        let y1 = MultiPoly::var(&r, 0);
        let y2 = MultiPoly::var(&r, 1);
        let y3 = MultiPoly::var(&r, 2);
        let p = &(&y1 * &y3) - &(&y2 * &y2);
        assert_eq!(p.to_string(), "y1*y3 - y2^2");
        let q = &(&p + &y1) + &MultiPoly::from_i64(&r, 3);
        assert_eq!(q.to_string(), "y1*y3 - y2^2 + y1 + 3");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn directional_derivatives() {
        let r = ring3();
        let f = Field::Rational;
        let p = &(&MultiPoly::var(&r, 0) * &MultiPoly::var(&r, 2)) - &MultiPoly::var(&r, 1).pow(2);
        let s = |v: [i64; 3]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert!(p.directional_derivative(&s([1, 0, 0]), &s([0, 0, 0])).unwrap().is_zero());
        assert_eq!(p.directional_derivative(&s([0, 0, 1]), &s([1, 0, 0])).unwrap(), f.one());
        let lin = MultiPoly::var(&r, 0);
        assert_eq!(lin.directional_derivative(&s([1, 0, 0]), &s([5, -2, 7])).unwrap(), f.one());
        assert!(matches!(
            p.directional_derivative(&s([1, 0, 0])[..2], &s([0, 0, 0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn reduction_mod_p() {
        let r = ring3();
        let half = MultiPoly::constant(&r, Field::Rational.from_rational(&num_rational::BigRational::new(1.into(), 2.into())).unwrap());
        let p = &half * &MultiPoly::var(&r, 0);
        let r7 = r.with_field(Field::Prime(7));
        assert_eq!(p.change_field(&r7).unwrap().to_string(), "4*y1");
    }
}
