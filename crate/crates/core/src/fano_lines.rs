//! Lines on the quadric fibers: classification of the Fano scheme `M_y`,
//! explicit planes at corank-2 points, chart equations inside `Gr(2,4)`, and a
//! brute-force enumerator over small prime fields.
//!
//! Plücker coordinates are ordered `p12, p13, p14, p23, p24, p34` and come from
//! the 2×2 minors of the two spanning rows.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{subsets, Field, MultiPoly, PolyMatrix, PolyRing, Ring, Scalar, ScalarMatrix};
use crate::quadric_family::QuadricFamily;

pub const PLUCKER_ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FanoTag {
    TwoConics,
    DoubleConic,
    TwoPlanes,
    DoublePlane,
}

/// Which of the two planes of a corank-2 fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePair {
    /// Field the planes are defined over: the ground field or `k(√d)`.
    pub field: Field,
    /// `None` when the planes are individually rational.
    pub d: Option<Scalar>,
    pub w_plus: Vec<Vec<Scalar>>,
    pub w_minus: Vec<Vec<Scalar>>,
    pub w0: Vec<Vec<Scalar>>,
    pub vertex: [Scalar; 6],
}

impl PlanePair {
    pub fn plane(&self, which: PlaneSign) -> &[Vec<Scalar>] {
        match which {
            PlaneSign::Plus => &self.w_plus,
            PlaneSign::Minus => &self.w_minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoFiber {
    pub matrix: ScalarMatrix,
    pub tag: FanoTag,
    pub corank: usize,
    pub kernel: Vec<Vec<Scalar>>,
    /// Smooth fibers: `det A`, whose square class decides whether each ruling is rational.
    pub discriminant: Option<Scalar>,
    pub rulings_rational: Option<bool>,
    pub planes: Option<PlanePair>,
}

impl FanoFiber {
    /// Whether the components of the fiber are individually defined over the ground field.
    pub fn components_rational(&self) -> bool {
        match self.tag {
            FanoTag::TwoConics => self.rulings_rational == Some(true),
            FanoTag::TwoPlanes => self.planes.as_ref().is_some_and(|p| p.d.is_none()),
            _ => true,
        }
    }
}

pub fn plucker(r1: &[Scalar], r2: &[Scalar]) -> [Scalar; 6] {
    PLUCKER_ORDER.map(|(i, j)| &r1[i] * &r2[j] - &r1[j] * &r2[i])
}

pub fn plucker_relation(p: &[Scalar; 6]) -> Scalar {
    &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
}

/// `(field, sqrt D)` with `D` embedded; the extension is built only when `D` is a non-square.
fn adjoin_sqrt(field: &Field, dd: &Scalar) -> Result<(Field, Scalar, Option<Scalar>)> {
    if let Some(s) = field.sqrt(dd) {
        return Ok((field.clone(), s, None));
    }
    match field {
        Field::Rational => {
            let r = dd.as_rational().expect("rational");
            let cls = crate::exactalg::scalar::squarefree_class(r);
            let dcls = Scalar::Rat(num_rational::BigRational::from_integer(cls));
            let ext = field.quadratic(dcls.clone())?;
            // D = d t², t rational
            let t = field.sqrt(&(dd / &dcls)).expect("square-free class");
            let s = ext.embed(&t) * ext.sqrt_generator().unwrap();
            Ok((ext, s, Some(dcls)))
        }
        _ => {
            let ext = field.quadratic(dd.clone())?;
            let s = ext.sqrt_generator().unwrap();
            Ok((ext, s, Some(dd.clone())))
        }
    }
}

fn unit_vector(field: &Field, i: usize) -> Vec<Scalar> {
    (0..4).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

/// Standard basis vectors completing the kernel to a basis of `V`.
fn complement(field: &Field, kernel: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let need = 4 - kernel.len();
    for s in subsets(4, need) {
        let mut cols: Vec<Vec<Scalar>> = kernel.to_vec();
        cols.extend(s.iter().map(|&i| unit_vector(field, i)));
        if ScalarMatrix::from_columns(field, 4, &cols).rank() == 4 {
            return s.iter().map(|&i| unit_vector(field, i)).collect();
        }
    }
    unreachable!("kernel vectors are independent")
}

pub fn classify_fiber(a: &ScalarMatrix) -> Result<FanoFiber> {
    if a.rows() != 4 || !a.is_symmetric() {
        return Err(Error::Validation("fiber needs a symmetric 4x4 matrix".into()));
    }
    let field = a.field().clone();
    let kernel = a.kernel_basis();
    let corank = kernel.len();
    match corank {
        0 => {
            let det = a.det()?;
            let rational = field.is_square(&det);
            Ok(FanoFiber { matrix: a.clone(), tag: FanoTag::TwoConics, corank, kernel, discriminant: Some(det), rulings_rational: Some(rational), planes: None })
        }
        1 => Ok(FanoFiber { matrix: a.clone(), tag: FanoTag::DoubleConic, corank, kernel, discriminant: None, rulings_rational: None, planes: None }),
        2 => {
            let planes = split_planes(a, &kernel)?;
            Ok(FanoFiber { matrix: a.clone(), tag: FanoTag::TwoPlanes, corank, kernel, discriminant: None, rulings_rational: None, planes: Some(planes) })
        }
        r => Err(Error::Corank3Unsupported(r)),
    }
}

fn bilinear(a: &ScalarMatrix, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let av = a.mul_vec(v).expect("length 4");
    u.iter().zip(&av).fold(a.field().zero(), |acc, (x, y)| acc + x * y)
}

fn split_planes(a: &ScalarMatrix, kernel: &[Vec<Scalar>]) -> Result<PlanePair> {
    let field = a.field().clone();
    let c = complement(&field, kernel);
    let (fa, fb, fc) = (bilinear(a, &c[0], &c[0]), bilinear(a, &c[0], &c[1]), bilinear(a, &c[1], &c[1]));
    let dd = &fb * &fb - &fa * &fc;
    let (ext, s, d) = adjoin_sqrt(&field, &dd)?;
    let e = |x: &Scalar| ext.embed(x);
    // linear forms ℓ = α t1 + β t2 with f = ℓ+ ℓ- up to a constant
    let (lp, lm) = if !fa.is_zero() {
        ((e(&fa), e(&fb) - &s), (e(&fa), e(&fb) + &s))
    } else {
        ((e(&fb) * ext.from_i64(2), e(&fc)), (ext.zero(), ext.one()))
    };
    let lift = |v: &[Scalar]| v.iter().map(e).collect::<Vec<_>>();
    let kx: Vec<Vec<Scalar>> = kernel.iter().map(|v| lift(v)).collect();
    let (c1, c2) = (lift(&c[0]), lift(&c[1]));
    let plane = |(al, be): (Scalar, Scalar)| {
        let w: Vec<Scalar> = (0..4).map(|i| &be * &c1[i] - &al * &c2[i]).collect();
        let mut basis = kx.clone();
        basis.push(w);
        basis
    };
    let (w_plus, w_minus) = (plane(lp), plane(lm));
    let ax = a.change_field(&ext)?;
    for w in [&w_plus, &w_minus] {
        for u in w.iter() {
            for v in w.iter() {
                if !bilinear(&ax, u, v).is_zero() {
                    return Err(Error::Validation("extracted plane is not isotropic".into()));
                }
            }
        }
    }
    let mut both = w_plus.clone();
    both.extend(w_minus.iter().cloned());
    if ScalarMatrix::from_rows(&ext, both).rank() != 4 {
        return Err(Error::Validation("planes do not meet in the kernel".into()));
    }
    let vertex = plucker(&kernel[0], &kernel[1]);
    Ok(PlanePair { field: ext, d, w_plus, w_minus, w0: kernel.to_vec(), vertex })
}

/// Number of rational lines predicted from the tag and rationality of the components.
///
/// Frozen from the brute-force enumerator.
pub fn predicted_line_count(tag: FanoTag, components_rational: bool, p: u64) -> Option<u64> {
    match (tag, components_rational) {
        (FanoTag::TwoConics, true) => Some(2 * (p + 1)),
        (FanoTag::TwoConics, false) => Some(0),
        (FanoTag::DoubleConic, _) => Some(p + 1),
        (FanoTag::TwoPlanes, true) => Some(2 * (p * p + p + 1) - 1),
        (FanoTag::TwoPlanes, false) => Some(1),
        (FanoTag::DoublePlane, _) => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineEnumeration {
    pub p: u64,
    pub count: usize,
    pub plucker: Vec<[u64; 6]>,
}

/// All `F_p`-rational lines on the quadric `A`, by reduced echelon representatives.
pub fn enumerate_lines_fp(a: &ScalarMatrix) -> Result<LineEnumeration> {
    let p = match a.field() {
        Field::Prime(p) => *p,
        other => return Err(Error::Validation(format!("line enumeration needs a prime field, got {other}"))),
    };
    if p > 13 {
        return Err(Error::Validation(format!("line enumeration is capped at p <= 13, got {p}")));
    }
    let av: Vec<u64> = (0..16).map(|n| a.get(n / 4, n % 4).as_fp().unwrap().value()).collect();
    let form = |u: &[u64; 4], v: &[u64; 4]| -> u64 {
        let mut acc = 0u64;
        for i in 0..4 {
            for j in 0..4 {
                acc = (acc + u[i] * av[i * 4 + j] % p * v[j]) % p;
            }
        }
        acc
    };
    let shapes = subsets(4, 2);
    let blocks: Vec<Vec<[u64; 6]>> = shapes
        .par_iter()
        .map(|s| {
            let (i, j) = (s[0], s[1]);
            let free1: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free2: Vec<usize> = (j + 1..4).collect();
            let nfree = free1.len() + free2.len();
            let mut out = Vec::new();
            for code in 0..p.pow(nfree as u32) {
                let mut c = code;
                let mut r1 = [0u64; 4];
                let mut r2 = [0u64; 4];
                r1[i] = 1;
                r2[j] = 1;
                for &k in &free1 {
                    r1[k] = c % p;
                    c /= p;
                }
                for &k in &free2 {
                    r2[k] = c % p;
                    c /= p;
                }
                if form(&r1, &r1) == 0 && form(&r1, &r2) == 0 && form(&r2, &r2) == 0 {
                    let pl = PLUCKER_ORDER.map(|(a, b)| (r1[a] * r2[b] % p + p * p - r1[b] * r2[a] % p) % p);
                    debug_assert_eq!((pl[0] * pl[5] + p * p - pl[1] * pl[4] % p + pl[2] * pl[3]) % p, 0);
                    out.push(pl);
                }
            }
            out
        })
        .collect();
    let plucker: Vec<[u64; 6]> = blocks.into_iter().flatten().collect();
    for pl in &plucker {
        if (pl[0] * pl[5] % p + p - pl[1] * pl[4] % p + pl[2] * pl[3] % p) % p != 0 {
            return Err(Error::Validation("Plücker relation fails on an enumerated line".into()));
        }
    }
    Ok(LineEnumeration { p, count: plucker.len(), plucker })
}

/// Pivot column pairs of the six standard charts, in order.
pub fn chart_pivots(chart: usize) -> Result<(usize, usize)> {
    PLUCKER_ORDER.get(chart).copied().ok_or_else(|| Error::Validation(format!("chart id must be 0..6, got {chart}")))
}

/// Chart id from `"12"`-style pivot names (1-based) or a plain index.
pub fn parse_chart(s: &str) -> Result<usize> {
    let t = s.trim();
    if let Some(k) = PLUCKER_ORDER.iter().position(|&(i, j)| format!("{}{}", i + 1, j + 1) == t) {
        return Ok(k);
    }
    Err(Error::Parse(format!("unknown chart `{t}` (expected one of 12,13,14,23,24,34)")))
}

#[derive(Clone, Debug)]
pub struct GrassmannChartSection {
    pub chart: usize,
    pub pivots: (usize, usize),
    /// Base variables followed by `b11, b12, b21, b22`.
    pub ring: Ring,
    pub base_vars: usize,
    /// Rows spanning the plane: identity in the pivot columns.
    pub m: PolyMatrix,
    /// `M A Mᵀ`.
    pub s: PolyMatrix,
    /// `s11, s12, s22`: the local equations of `M`, sections of `L^∨ ⊗ S²U^∨`.
    pub entries: [MultiPoly; 3],
}

impl GrassmannChartSection {
    pub fn chart_var(&self, k: usize) -> MultiPoly {
        MultiPoly::var(&self.ring, self.base_vars + k)
    }
}

/// Chart ring over `base` with the four chart variables appended.
pub fn chart_ring(base: &Ring) -> Ring {
    let mut vars = base.vars().to_vec();
    for v in ["b11", "b12", "b21", "b22"] {
        vars.push(v.to_string());
    }
    PolyRing::new(base.field().clone(), vars)
}

pub fn fiber_equations(a: &PolyMatrix, chart: usize) -> Result<GrassmannChartSection> {
    let (pi, pj) = chart_pivots(chart)?;
    let base = a.ring().clone();
    let ring = chart_ring(&base);
    let n = base.nvars();
    let map: Vec<usize> = (0..n).collect();
    let ax = a.map(|p| p.embed(&ring, &map), &ring);
    let others: Vec<usize> = (0..4).filter(|&c| c != pi && c != pj).collect();
    let mut m = PolyMatrix::zeros(&ring, 2, 4);
    m.set(0, pi, MultiPoly::one(&ring));
    m.set(1, pj, MultiPoly::one(&ring));
    for (r, _) in [pi, pj].iter().enumerate() {
        for (c, &col) in others.iter().enumerate() {
            m.set(r, col, MultiPoly::var(&ring, n + 2 * r + c));
        }
    }
    let s = m.mul(&ax)?.mul(&m.transpose())?;
    let entries = [s.get(0, 0).clone(), s.get(0, 1).clone(), s.get(1, 1).clone()];
    Ok(GrassmannChartSection { chart, pivots: (pi, pj), ring, base_vars: n, m, s, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub basis: Vec<Vec<String>>,
    /// `Σ = Gr(2, W)`: chart `k` spans `w_i + x w_k, w_j + y w_k` for the other two indices `i < j`.
    pub gr23_charts: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub point: Vec<String>,
    pub field: String,
    pub d: Option<String>,
    pub chosen: PlaneSign,
    pub w_plus: PlaneReport,
    pub w_minus: PlaneReport,
    pub w0: Vec<Vec<String>>,
    pub vertex_plucker: Vec<String>,
    pub kappa: Vec<Vec<String>>,
    pub kappa_rank: usize,
}

fn plane_report(w: &[Vec<Scalar>]) -> PlaneReport {
    let names = ["w1", "w2", "w3"];
    let charts = (0..3)
        .map(|k| {
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            [format!("{} + x*{}", names[others[0]], names[k]), format!("{} + y*{}", names[others[1]], names[k])]
        })
        .collect();
    PlaneReport { basis: w.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(), gr23_charts: charts }
}

pub fn vertex_and_planes_report(fam: &QuadricFamily, pt: &[Scalar], chosen: PlaneSign) -> Result<VertexReport> {
    let a = fam.matrix_at(pt)?;
    let r = 4 - a.rank();
    if r >= 3 {
        return Err(Error::Corank3Unsupported(r));
    }
    if r != 2 {
        return Err(Error::WrongCorank { expected: 2, found: r });
    }
    let fiber = classify_fiber(&a)?;
    let planes = fiber.planes.expect("corank 2");
    let kappa = fam.kappa_with_kernel(pt, &fiber.kernel);
    let strs = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    Ok(VertexReport {
        point: strs(pt),
        field: planes.field.to_string(),
        d: planes.d.as_ref().map(ToString::to_string),
        chosen,
        w_plus: plane_report(&planes.w_plus),
        w_minus: plane_report(&planes.w_minus),
        w0: planes.w0.iter().map(|v| strs(v)).collect(),
        vertex_plucker: strs(&planes.vertex),
        kappa_rank: kappa.rank(),
        kappa: kappa.to_rows().iter().map(|r| strs(r)).collect(),
    })
}
