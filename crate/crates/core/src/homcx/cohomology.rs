//! Line bundle cohomology on `ℙⁿ`, products of projective spaces, and the
//! Hirzebruch surface `F₁`, plus the divisor arithmetic built on it.
//!
//! On `F₁` a class `(a, b)` means `a·h + b·l` with `h² = 1`, `h·l = 0`,
//! `l² = −1`; the fiber of `F₁ → ℙ¹` is `f = h − l`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VarietyTag {
    P1,
    P2,
    P3,
    P2xP1,
    P1xP1,
    F1,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 6] = [VarietyTag::P1, VarietyTag::P2, VarietyTag::P3, VarietyTag::P2xP1, VarietyTag::P1xP1, VarietyTag::F1];

    pub fn dim(&self) -> usize {
        match self {
            VarietyTag::P1 => 1,
            VarietyTag::P2 | VarietyTag::P1xP1 | VarietyTag::F1 => 2,
            VarietyTag::P3 | VarietyTag::P2xP1 => 3,
        }
    }

    /// Number of integers describing a class.
    pub fn class_len(&self) -> usize {
        match self {
            VarietyTag::P1 | VarietyTag::P2 | VarietyTag::P3 => 1,
            _ => 2,
        }
    }

    pub fn canonical(&self) -> DivisorClass {
        match self {
            VarietyTag::P1 => DivisorClass::new(&[-2]),
            VarietyTag::P2 => DivisorClass::new(&[-3]),
            VarietyTag::P3 => DivisorClass::new(&[-4]),
            VarietyTag::P2xP1 => DivisorClass::new(&[-3, -2]),
            VarietyTag::P1xP1 => DivisorClass::new(&[-2, -2]),
            VarietyTag::F1 => DivisorClass::new(&[-3, 1]),
        }
    }

    pub fn parse(s: &str) -> Result<VarietyTag> {
        Ok(match s.trim() {
            "P1" => VarietyTag::P1,
            "P2" => VarietyTag::P2,
            "P3" => VarietyTag::P3,
            "P2xP1" => VarietyTag::P2xP1,
            "P1xP1" => VarietyTag::P1xP1,
            "F1" => VarietyTag::F1,
            other => return Err(Error::UnsupportedVariety(other.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(c: &[i64]) -> DivisorClass {
        DivisorClass(c.to_vec())
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        self.add(&other.neg())
    }
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Bott's formula for `𝓞(a)` on `ℙⁿ`.
pub fn bott(n: usize, a: i64) -> Vec<u64> {
    let n_i = n as i64;
    let mut h = vec![0; n + 1];
    if a >= 0 {
        h[0] = binom(n_i + a, n_i);
    } else if a <= -n_i - 1 {
        h[n] = binom(-a - 1, n_i);
    }
    h
}

fn kunneth(x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `(α, β)` with `a·h + b·l = α·l + β·f`.
pub fn f1_section_fiber(a: i64, b: i64) -> (i64, i64) {
    (a + b, a)
}

/// Degrees of the line bundles summing to `π_*𝓞(D)` along `F₁ → ℙ¹` (empty when `α < 0`).
pub fn f1_pushforward(a: i64, b: i64) -> Vec<i64> {
    let (alpha, beta) = f1_section_fiber(a, b);
    (0..=alpha).map(|i| beta - i).collect()
}

/// Degrees of the summands of `R¹π_*𝓞(D)` (empty when `α ≥ −1`).
pub fn f1_higher_pushforward(a: i64, b: i64) -> Vec<i64> {
    let (alpha, beta) = f1_section_fiber(a, b);
    if alpha > -2 {
        return vec![];
    }
    (0..=(-alpha - 2)).map(|i| beta + 1 + i).collect()
}

pub fn lb_cohomology(v: VarietyTag, d: &DivisorClass) -> Result<Vec<u64>> {
    if d.0.len() != v.class_len() {
        return Err(Error::UnsupportedVariety(format!("{v:?} needs a class with {} entries, got {:?}", v.class_len(), d.0)));
    }
    let c = &d.0;
    Ok(match v {
        VarietyTag::P1 => bott(1, c[0]),
        VarietyTag::P2 => bott(2, c[0]),
        VarietyTag::P3 => bott(3, c[0]),
        VarietyTag::P2xP1 => kunneth(&bott(2, c[0]), &bott(1, c[1])),
        VarietyTag::P1xP1 => kunneth(&bott(1, c[0]), &bott(1, c[1])),
        VarietyTag::F1 => {
            let mut h = vec![0; 3];
            for deg in f1_pushforward(c[0], c[1]) {
                let p = bott(1, deg);
                h[0] += p[0];
                h[1] += p[1];
            }
            for deg in f1_higher_pushforward(c[0], c[1]) {
                let p = bott(1, deg);
                h[1] += p[0];
                h[2] += p[1];
            }
            h
        }
    })
}

pub fn euler_characteristic(h: &[u64]) -> i64 {
    h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// `χ(𝓞) + D·(D − K)/2` on `F₁`.
pub fn f1_riemann_roch(a: i64, b: i64) -> i64 {
    let dot = |(a1, b1): (i64, i64), (a2, b2): (i64, i64)| a1 * a2 - b1 * b2;
    let k = (-3, 1);
    1 + dot((a, b), (a - k.0, b - k.1)) / 2
}

/// Whether `h^i(D) = h^{dim−i}(K − D)` for every `i`.
pub fn serre_duality_holds(v: VarietyTag, d: &DivisorClass) -> Result<bool> {
    let h = lb_cohomology(v, d)?;
    let g = lb_cohomology(v, &v.canonical().sub(d))?;
    Ok(h.iter().zip(g.iter().rev()).all(|(a, b)| a == b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalityTable {
    /// `contributions[t]` is `h^•(ℙ², Λᵗ N)` for `N = 𝓞(−1)²`.
    pub contributions: Vec<Vec<u64>>,
    pub ext: Vec<u64>,
    pub exceptional: bool,
    /// Planes over distinct points of `D₂` lie in distinct fibers, so their supports are disjoint.
    pub distinct_fibers_orthogonal: bool,
}

pub fn exceptionality_table() -> ExceptionalityTable {
    // Λ⁰ = 𝓞, Λ¹ = 𝓞(−1)², Λ² = 𝓞(−2)
    let wedge: [(u64, i64); 3] = [(1, 0), (2, -1), (1, -2)];
    let contributions: Vec<Vec<u64>> = wedge.iter().map(|&(mult, deg)| bott(2, deg).iter().map(|h| mult * h).collect()).collect();
    let mut ext = vec![0; 5];
    for (t, c) in contributions.iter().enumerate() {
        for (s, h) in c.iter().enumerate() {
            ext[s + t] += h;
        }
    }
    let exceptional = ext == [1, 0, 0, 0, 0];
    ExceptionalityTable { contributions, ext, exceptional, distinct_fibers_orthogonal: true }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub omega_sigma: i64,
    pub det_normal: i64,
    pub omega_m_on_sigma: i64,
    pub k_f1: (i64, i64),
    pub k_f1_from_blowup: (i64, i64),
    pub pullback_omega_m: (i64, i64),
    pub exceptional_restriction: (i64, i64),
    pub omega_m_plus_on_sigma_tilde: (i64, i64),
    pub serre_cross_check: (Vec<u64>, Vec<u64>),
    pub passed: bool,
}

pub fn adjunction_checks() -> Result<AdjunctionReport> {
    // ω_Σ = ω_M|_Σ ⊗ det N with Σ = ℙ² and N = 𝓞(−1)²
    let omega_sigma = VarietyTag::P2.canonical().0[0];
    let det_normal = -2;
    let omega_m_on_sigma = omega_sigma - det_normal;
    // F₁ = blowup of ℙ² at a point: K = π^*K_ℙ² + E
    let k_f1_from_blowup = (omega_sigma, 1);
    let kc = VarietyTag::F1.canonical();
    let k_f1 = (kc.0[0], kc.0[1]);
    // ξ₊^*ω_{M⁺} = ξ^*ω_M(−E), and E meets Σ̃⁻ in the exceptional line
    let pullback_omega_m = (omega_m_on_sigma, 0);
    let exceptional_restriction = (0, 1);
    let omega_m_plus_on_sigma_tilde = (pullback_omega_m.0 - exceptional_restriction.0, pullback_omega_m.1 - exceptional_restriction.1);
    let d = DivisorClass::new(&[omega_m_plus_on_sigma_tilde.0, omega_m_plus_on_sigma_tilde.1]);
    let h = lb_cohomology(VarietyTag::F1, &d)?;
    let mut dual = lb_cohomology(VarietyTag::F1, &kc.sub(&d))?;
    dual.reverse();
    let passed = omega_m_on_sigma == -1 && omega_m_plus_on_sigma_tilde == (-1, -1) && k_f1 == k_f1_from_blowup && h == dual && h == [0, 1, 0];
    Ok(AdjunctionReport {
        omega_sigma,
        det_normal,
        omega_m_on_sigma,
        k_f1,
        k_f1_from_blowup,
        pullback_omega_m,
        exceptional_restriction,
        omega_m_plus_on_sigma_tilde,
        serre_cross_check: (h, dual),
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BplusRestriction {
    /// Classes of the summands of `End(𝓞(h) ⊕ 𝓞(l))` on `F₁`.
    pub summand_classes: Vec<(i64, i64)>,
    /// Degrees of their pushforwards to `ℙ¹`.
    pub pushforward_degrees: Vec<i64>,
    /// Splitting types `F` (rank ≤ 2, degrees in `[−3, 3]`) with `F ⊕ F(−1) ≅ 𝓞(−1)^m`.
    pub solutions: Vec<Vec<i64>>,
    pub passed: bool,
}

pub fn bplus_restriction_type() -> BplusRestriction {
    let r = [(1i64, 0i64), (0, 1)];
    // ordered as Hom(𝓞(h),𝓞(h)), Hom(𝓞(l),𝓞(h)), Hom(𝓞(h),𝓞(l)), Hom(𝓞(l),𝓞(l))
    let summand_classes: Vec<(i64, i64)> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(i, j)| (r[i].0 - r[j].0, r[i].1 - r[j].1)).collect();
    let pushforward_degrees: Vec<i64> = summand_classes
        .iter()
        .map(|&(a, b)| {
            let p = f1_pushforward(a, b);
            assert_eq!(p.len(), 1, "summand is pulled back from the base");
            p[0]
        })
        .collect();
    let mut candidates: Vec<Vec<i64>> = vec![vec![]];
    for a in -3..=3 {
        candidates.push(vec![a]);
        for b in a..=3 {
            candidates.push(vec![a, b]);
        }
    }
    let solutions: Vec<Vec<i64>> = candidates.into_iter().filter(|f| f.iter().chain(f.iter().map(|d| d - 1).collect::<Vec<_>>().iter()).all(|&d| d == -1)).collect();
    let passed = pushforward_degrees == [0, 1, -1, 0] && solutions == vec![Vec::<i64>::new()];
    BplusRestriction { summand_classes, pushforward_degrees, solutions, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        assert_eq!(lb_cohomology(VarietyTag::P2, &DivisorClass::new(&[-1])).unwrap(), vec![0, 0, 0]);
        assert_eq!(lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[-1, -1])).unwrap(), vec![0, 1, 0]);
        assert_eq!(lb_cohomology(VarietyTag::P2xP1, &DivisorClass::new(&[0, -1])).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[-3, 1])).unwrap(), vec![0, 0, 1]);
        assert_eq!(lb_cohomology(VarietyTag::P3, &DivisorClass::new(&[-5])).unwrap(), vec![0, 0, 0, 4]);
        assert!(lb_cohomology(VarietyTag::F1, &DivisorClass::new(&[1])).is_err());
    }

    #[test]
    fn fixed_reports() {
        assert_eq!(exceptionality_table().ext, vec![1, 0, 0, 0, 0]);
        let a = adjunction_checks().unwrap();
        assert!(a.passed);
        assert_eq!(a.k_f1, (-3, 1));
        let b = bplus_restriction_type();
        assert_eq!(b.summand_classes, vec![(0, 0), (1, -1), (-1, 1), (0, 0)]);
        assert!(b.passed);
    }
}
