//! Free complexes on Grassmannian charts: the Koszul resolution of `𝓞_M` and
//! the four Clifford resolutions of `𝓢_k`, with symbolic and pointwise checks.
//!
//! Terms are listed left to right, so `T_0` is the leftmost (rank 1 or 8) and
//! `T_3` the rightmost. The differential `d_t: T_t → T_{t+1}` is a
//! `rank T_{t+1} × rank T_t` matrix and `d_{t+1}·d_t = 0`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::{CliffordAlgebra, EVEN_BASIS, ODD_BASIS};
use crate::error::{Error, Result};
use crate::exactalg::{Field, MultiPoly, PolyMatrix, Ring, Scalar, ScalarMatrix};
use crate::fano_lines::{fiber_equations, GrassmannChartSection};
use crate::quadric_family::{random_scalar, QuadricFamily};

pub const DEFAULT_SAMPLE_PRIME: u64 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Koszul,
    Clifford { k: i64 },
}

impl ComplexKind {
    pub fn name(&self) -> String {
        match self {
            ComplexKind::Koszul => "koszul".into(),
            ComplexKind::Clifford { k } => format!("clifford_k{k}"),
        }
    }

    /// Fiber dimension of the cokernel sheaf on `M`.
    pub fn expected_rank_on_m(&self) -> usize {
        match self {
            ComplexKind::Koszul => 1,
            ComplexKind::Clifford { .. } => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixComplex {
    pub kind: ComplexKind,
    pub chart: usize,
    pub ring: Ring,
    pub base_vars: usize,
    pub ranks: Vec<usize>,
    pub differentials: Vec<PolyMatrix>,
    /// `s11, s12, s22` on the chart.
    pub sections: [MultiPoly; 3],
    /// Chart rows `u1, u2`.
    pub chart_rows: PolyMatrix,
    /// Twist by `g` carried by each term after trivialization on the chart.
    pub g_twists: Vec<i64>,
    form: Option<PolyMatrix>,
}

impl MatrixComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    pub fn shapes_consistent(&self) -> bool {
        self.differentials.len() + 1 == self.ranks.len()
            && self.differentials.iter().enumerate().all(|(t, d)| d.cols() == self.ranks[t] && d.rows() == self.ranks[t + 1])
    }

    /// First `t` with `d_{t+1}·d_t ≠ 0`, computed symbolically.
    pub fn d_squared_witness(&self) -> Result<Option<usize>> {
        for t in 0..self.differentials.len().saturating_sub(1) {
            if !self.differentials[t + 1].mul(&self.differentials[t])?.is_zero() {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    pub fn specialize(&self, pt: &[Scalar]) -> Vec<ScalarMatrix> {
        self.differentials.iter().map(|d| d.eval(pt)).collect()
    }

    pub fn fiber_homology(&self, pt: &[Scalar]) -> Vec<usize> {
        let ranks: Vec<usize> = self.specialize(pt).iter().map(ScalarMatrix::rank).collect();
        homology_from_ranks(&self.ranks, &ranks)
    }

    pub fn section_values(&self, pt: &[Scalar]) -> [Scalar; 3] {
        [self.sections[0].eval(pt), self.sections[1].eval(pt), self.sections[2].eval(pt)]
    }

    pub fn jacobian_rank(&self, pt: &[Scalar]) -> usize {
        let n = self.ring.nvars();
        let rows = self.sections.iter().map(|s| (0..n).map(|v| s.partial(v).eval(pt)).collect()).collect();
        ScalarMatrix::from_rows(self.ring.field(), rows).rank()
    }

    /// Null-homotopies `h_t: T_{t+1} → T_t`, one family per vector of the chart
    /// whose square is the returned constant.
    pub fn homotopies(&self) -> Vec<(MultiPoly, Vec<PolyMatrix>)> {
        match self.kind {
            ComplexKind::Koszul => (0..3).map(|j| (self.sections[j].clone(), koszul_homotopy(&self.ring, j))).collect(),
            ComplexKind::Clifford { k } => {
                let cl = chart_clifford(self);
                [(1, 0), (0, 1), (1, 1)].iter().map(|&t| clifford_homotopy(self, &cl, k, t)).collect()
            }
        }
    }

    /// Index of the first homotopy family with `d h + h d ≠ c·id`.
    pub fn homotopy_witness(&self) -> Result<Option<usize>> {
        for (idx, (c, h)) in self.homotopies().iter().enumerate() {
            let n = self.ranks.len();
            for t in 0..n {
                let mut lhs = PolyMatrix::zeros(&self.ring, self.ranks[t], self.ranks[t]);
                if t + 1 < n {
                    lhs = add(&lhs, &h[t].mul(&self.differentials[t])?);
                }
                if t > 0 {
                    lhs = add(&lhs, &self.differentials[t - 1].mul(&h[t - 1])?);
                }
                let want = PolyMatrix::identity(&self.ring, self.ranks[t]).map(|e| e * c, &self.ring);
                if lhs.entries() != want.entries() {
                    return Ok(Some(idx));
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "chart": self.chart,
            "variables": self.ring.vars(),
            "field": self.ring.field().to_string(),
            "ranks": self.ranks,
            "g_twists": self.g_twists,
            "euler_characteristic": self.euler_characteristic(),
            "sections": self.sections.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "differentials": self.differentials.iter().map(PolyMatrix::to_string_rows).collect::<Vec<_>>(),
        })
    }
}

fn add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let rows = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j) + b.get(i, j)).collect()).collect();
    PolyMatrix::from_rows(a.ring(), rows)
}

pub fn homology_from_ranks(term_ranks: &[usize], map_ranks: &[usize]) -> Vec<usize> {
    (0..term_ranks.len())
        .map(|t| {
            let out = map_ranks.get(t).copied().unwrap_or(0);
            let inc = if t > 0 { map_ranks[t - 1] } else { 0 };
            term_ranks[t] - out - inc
        })
        .collect()
}

fn chart_data(fam: &QuadricFamily, chart: usize) -> Result<(GrassmannChartSection, PolyMatrix)> {
    let sec = fiber_equations(fam.matrix(), chart)?;
    let map: Vec<usize> = (0..fam.base_dim()).collect();
    let ax = fam.matrix().map(|p| p.embed(&sec.ring, &map), &sec.ring);
    Ok((sec, ax))
}

/// Exterior basis of `Λ^p R³` as bitmasks.
fn wedge_basis(p: u32) -> Vec<u8> {
    (0u8..8).filter(|m| m.count_ones() == p).collect()
}

pub fn build_koszul(fam: &QuadricFamily, chart: usize) -> Result<MatrixComplex> {
    let (sec, _) = chart_data(fam, chart)?;
    let ring = sec.ring.clone();
    let s = sec.entries.clone();
    let mut differentials = Vec::new();
    for t in 0..3u32 {
        let (src, dst) = (wedge_basis(3 - t), wedge_basis(2 - t));
        let mut d = PolyMatrix::zeros(&ring, dst.len(), src.len());
        for (c, &m) in src.iter().enumerate() {
            for pos in 0..3 {
                if m & (1 << pos) == 0 {
                    continue;
                }
                let below = (m & ((1 << pos) - 1)).count_ones();
                let r = dst.iter().position(|&x| x == m & !(1 << pos)).unwrap();
                let v = if below % 2 == 0 { s[pos].clone() } else { -&s[pos] };
                d.set(r, c, v);
            }
        }
        differentials.push(d);
    }
    Ok(MatrixComplex {
        kind: ComplexKind::Koszul,
        chart,
        base_vars: sec.base_vars,
        ring,
        ranks: vec![1, 3, 3, 1],
        differentials,
        sections: s,
        chart_rows: sec.m,
        g_twists: vec![-3, -1, 0, 0],
        form: None,
    })
}

fn koszul_homotopy(ring: &Ring, j: usize) -> Vec<PolyMatrix> {
    (0..3u32)
        .map(|t| {
            let (dst, src) = (wedge_basis(3 - t), wedge_basis(2 - t));
            let mut h = PolyMatrix::zeros(ring, dst.len(), src.len());
            for (c, &m) in src.iter().enumerate() {
                if m & (1 << j) != 0 {
                    continue;
                }
                let below = (m & ((1 << j) - 1)).count_ones();
                let r = dst.iter().position(|&x| x == m | (1 << j)).unwrap();
                h.set(r, c, MultiPoly::from_i64(ring, if below % 2 == 0 { 1 } else { -1 }));
            }
            h
        })
        .collect()
}

pub fn parity_basis(k: i64) -> &'static [u8; 8] {
    if k.rem_euclid(2) == 0 {
        &EVEN_BASIS
    } else {
        &ODD_BASIS
    }
}

/// Clifford filtration degree of each basis vector in the parity of `k`.
pub fn parity_degrees(k: i64) -> Vec<u32> {
    parity_basis(k).iter().map(|m| m.count_ones()).collect()
}

struct ChartClifford {
    cl: CliffordAlgebra,
    u: [Vec<MultiPoly>; 2],
}

impl ChartClifford {
    fn elem_of_mask(&self, mask: u8) -> Vec<MultiPoly> {
        let mut v = vec![MultiPoly::zero(self.cl.ring()); 16];
        v[mask as usize] = MultiPoly::one(self.cl.ring());
        v
    }

    fn left(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Vec<MultiPoly> {
        self.cl.mul(x, y)
    }
}

fn chart_clifford(cx: &MatrixComplex) -> ChartClifford {
    let ring = &cx.ring;
    let ax = cx.clifford_form();
    let cl = CliffordAlgebra::new(&ax).expect("symmetric form");
    let u = [0, 1].map(|i| {
        let mut v = vec![MultiPoly::zero(ring); 16];
        for a in 0..4 {
            v[1 << a] = cx.chart_rows.get(i, a).clone();
        }
        v
    });
    ChartClifford { cl, u }
}

impl MatrixComplex {
    fn clifford_form(&self) -> PolyMatrix {
        self.form.clone().expect("Clifford complexes carry their form")
    }
}

fn coeffs(x: &[MultiPoly], basis: &[u8; 8]) -> Vec<MultiPoly> {
    basis.iter().map(|&m| x[m as usize].clone()).collect()
}

pub fn build_clifford_resolution(fam: &QuadricFamily, chart: usize, k: i64) -> Result<MatrixComplex> {
    let (sec, ax) = chart_data(fam, chart)?;
    let ring = sec.ring.clone();
    let mut cx = MatrixComplex {
        kind: ComplexKind::Clifford { k },
        chart,
        base_vars: sec.base_vars,
        ring: ring.clone(),
        ranks: vec![8, 16, 16, 8],
        differentials: Vec::new(),
        sections: sec.entries.clone(),
        chart_rows: sec.m.clone(),
        g_twists: vec![-2, -1, 0, 0],
        form: Some(ax),
    };
    let cc = chart_clifford(&cx);
    let (b0, b1, b2, b3) = (parity_basis(k - 4), parity_basis(k - 3), parity_basis(k - 1), parity_basis(k));
    // d_0: b ↦ u2⊗(u1 b) − u1⊗(u2 b)
    let mut d0 = PolyMatrix::zeros(&ring, 16, 8);
    for (c, &m) in b0.iter().enumerate() {
        let e = cc.elem_of_mask(m);
        for (j, sign, other) in [(1usize, 1i64, 0usize), (0, -1, 1)] {
            let img = coeffs(&cc.left(&cc.u[other], &e), b1);
            for (g, v) in img.into_iter().enumerate() {
                d0.set(j * 8 + g, c, if sign > 0 { v } else { -&v });
            }
        }
    }
    // d_1: w⊗b ↦ u2⊗(w u1 b) − u1⊗(w u2 b)
    let mut d1 = PolyMatrix::zeros(&ring, 16, 16);
    for i in 0..2 {
        for (c, &m) in b1.iter().enumerate() {
            let e = cc.elem_of_mask(m);
            for (j, sign, other) in [(1usize, 1i64, 0usize), (0, -1, 1)] {
                let img = coeffs(&cc.left(&cc.u[i], &cc.left(&cc.u[other], &e)), b2);
                for (g, v) in img.into_iter().enumerate() {
                    d1.set(j * 8 + g, i * 8 + c, if sign > 0 { v } else { -&v });
                }
            }
        }
    }
    // d_2: w⊗b ↦ w b
    let mut d2 = PolyMatrix::zeros(&ring, 8, 16);
    for i in 0..2 {
        for (c, &m) in b2.iter().enumerate() {
            let img = coeffs(&cc.left(&cc.u[i], &cc.elem_of_mask(m)), b3);
            for (g, v) in img.into_iter().enumerate() {
                d2.set(g, i * 8 + c, v);
            }
        }
    }
    cx.differentials = vec![d0, d1, d2];
    Ok(cx)
}

/// Homotopies for `u = t1 u1 + t2 u2`, with `det(u, u1) = −t2`, `det(u, u2) = t1`.
fn clifford_homotopy(cx: &MatrixComplex, cc: &ChartClifford, k: i64, t: (i64, i64)) -> (MultiPoly, Vec<PolyMatrix>) {
    let ring = &cx.ring;
    let tt = [t.0, t.1];
    let u: Vec<MultiPoly> = (0..16).map(|m| &cc.u[0][m] * &MultiPoly::from_i64(ring, t.0) + &cc.u[1][m] * &MultiPoly::from_i64(ring, t.1)).collect();
    let det_u = [-t.1, t.0];
    let (b0, b1, b2, b3) = (parity_basis(k - 4), parity_basis(k - 3), parity_basis(k - 1), parity_basis(k));
    let s = &cx.sections;
    let c = &(&(&s[0] * &MultiPoly::from_i64(ring, t.0 * t.0)) + &(&s[1] * &MultiPoly::from_i64(ring, 2 * t.0 * t.1))) + &(&s[2] * &MultiPoly::from_i64(ring, t.1 * t.1));
    // h_2: T_3 → T_2, b ↦ u⊗(u b)
    let mut h2 = PolyMatrix::zeros(ring, 16, 8);
    for (col, &m) in b3.iter().enumerate() {
        let ub = coeffs(&cc.left(&u, &cc.elem_of_mask(m)), b2);
        for i in 0..2 {
            for (g, v) in ub.iter().enumerate() {
                h2.set(i * 8 + g, col, v * &MultiPoly::from_i64(ring, tt[i]));
            }
        }
    }
    // h_1: T_2 → T_1, w⊗b ↦ det(u,w) u⊗b
    let mut h1 = PolyMatrix::zeros(ring, 16, 16);
    for j in 0..2 {
        for g in 0..8 {
            for i in 0..2 {
                let v = det_u[j] * tt[i];
                if v != 0 {
                    h1.set(i * 8 + g, j * 8 + g, MultiPoly::from_i64(ring, v));
                }
            }
        }
    }
    debug_assert_eq!(b1, b2);
    // h_0: T_1 → T_0, w⊗b ↦ det(u,w) u b
    let mut h0 = PolyMatrix::zeros(ring, 8, 16);
    for j in 0..2 {
        for (col, &m) in b1.iter().enumerate() {
            let ub = coeffs(&cc.left(&u, &cc.elem_of_mask(m)), b0);
            for (g, v) in ub.iter().enumerate() {
                h0.set(g, j * 8 + col, v * &MultiPoly::from_i64(ring, det_u[j]));
            }
        }
    }
    (c.clone(), vec![h0, h1, h2])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    /// Degree-graded block sizes of the parity of each term.
    pub term_blocks: Vec<Vec<usize>>,
    /// Maximal filtration shift of each differential.
    pub shifts: Vec<i64>,
    pub block_triangular: bool,
}

/// Bookkeeping for the Clifford degree filtration: `1,6,1` on even terms,
/// `4,4` on odd terms, and each differential raising degree by at most its shift.
pub fn filtration_check(cx: &MatrixComplex) -> Option<FiltrationReport> {
    let ComplexKind::Clifford { k } = cx.kind else { return None };
    let parities = [k - 4, k - 3, k - 1, k];
    let degs: Vec<Vec<u32>> = parities
        .iter()
        .enumerate()
        .map(|(t, &p)| {
            let d = parity_degrees(p);
            if cx.ranks[t] == 16 {
                d.iter().chain(d.iter()).copied().collect()
            } else {
                d
            }
        })
        .collect();
    let blocks = parities
        .iter()
        .map(|&p| {
            let d = parity_degrees(p);
            let mut levels: Vec<u32> = d.clone();
            levels.dedup();
            levels.iter().map(|l| d.iter().filter(|x| *x == l).count()).collect()
        })
        .collect();
    let shifts = vec![1i64, 2, 1];
    let mut ok = true;
    for (t, d) in cx.differentials.iter().enumerate() {
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if !d.get(r, c).is_zero() && degs[t + 1][r] as i64 > degs[t][c] as i64 + shifts[t] {
                    ok = false;
                }
            }
        }
    }
    Some(FiltrationReport { term_blocks: blocks, shifts, block_triangular: ok })
}

/// Random chart points over `F_p` on or off `M`; points on `M` are required to be smooth points of `M`.
pub fn sample_chart_points(cx: &MatrixComplex, rng: &mut ChaCha8Rng, count: usize, on_m: bool) -> Result<Vec<Vec<Scalar>>> {
    let field = cx.ring.field().clone();
    let Field::Prime(p) = field else {
        return Err(Error::Validation("chart sampling needs a prime field".into()));
    };
    let n = cx.base_vars;
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 500 * count.max(1) {
            return Err(Error::NoSolution(format!("could not find {count} sample points on={on_m}")));
        }
        let mut pt: Vec<Scalar> = (0..n + 4).map(|_| random_scalar(rng, &field)).collect();
        if !on_m {
            if cx.section_values(&pt).iter().any(|v| !v.is_zero()) {
                out.push(pt);
            }
            continue;
        }
        let roots: Vec<Scalar> = (0..p)
            .map(|x| field.from_i64(x as i64))
            .filter(|x| {
                pt[n + 1] = x.clone();
                cx.sections[0].eval(&pt).is_zero()
            })
            .collect();
        if roots.is_empty() {
            continue;
        }
        pt[n + 1] = roots[rng.gen_range(0..roots.len())].clone();
        let mut sols = Vec::new();
        for x in 0..p {
            pt[n + 2] = field.from_i64(x as i64);
            pt[n + 3] = field.zero();
            let base = cx.sections[1].eval(&pt);
            pt[n + 3] = field.one();
            let slope = cx.sections[1].eval(&pt) - &base;
            let cands: Vec<Scalar> = if slope.is_zero() {
                if base.is_zero() {
                    (0..p).map(|z| field.from_i64(z as i64)).collect()
                } else {
                    vec![]
                }
            } else {
                vec![-(base / slope)]
            };
            for z in cands {
                pt[n + 3] = z.clone();
                if cx.sections[2].eval(&pt).is_zero() {
                    sols.push((pt[n + 2].clone(), z));
                }
            }
        }
        if sols.is_empty() {
            continue;
        }
        let (b21, b22) = sols.swap_remove(rng.gen_range(0..sols.len()));
        pt[n + 2] = b21;
        pt[n + 3] = b22;
        debug_assert!(cx.section_values(&pt).iter().all(Scalar::is_zero));
        if cx.jacobian_rank(&pt) == 3 {
            out.push(pt);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointHomology {
    pub point: Vec<String>,
    pub on_m: bool,
    pub section_values: Vec<String>,
    /// Homology of the complex specialized at the point (fiberwise Tor).
    pub fiber_homology: Vec<usize>,
    /// Homology of the localized complex, certified by the Buchsbaum–Eisenbud criterion.
    pub local_homology: Vec<usize>,
    pub jacobian_rank: usize,
    /// Odd `k`: the cokernel is `V/U`. Even `k`: the unit survives in the cokernel.
    pub last_spot_model: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexCertificate {
    pub kind: String,
    pub chart: usize,
    pub seed: u64,
    pub sample_field: String,
    pub ranks: Vec<usize>,
    pub euler_characteristic: i64,
    pub shapes_consistent: bool,
    pub d_squared_zero: bool,
    pub homotopies_verified: bool,
    pub generic_map_ranks: Vec<usize>,
    pub rank_condition: bool,
    pub filtration: Option<FiltrationReport>,
    pub points: Vec<PointHomology>,
    pub passed: bool,
}

fn last_spot_model(cx: &MatrixComplex, pt: &[Scalar], d2: &ScalarMatrix) -> Option<bool> {
    let ComplexKind::Clifford { k } = cx.kind else { return None };
    let field = d2.field().clone();
    let im = d2.column_space_basis();
    let r = im.len();
    let rank_with = |extra: Vec<Vec<Scalar>>| {
        let mut cols = im.clone();
        cols.extend(extra);
        ScalarMatrix::from_columns(&field, 8, &cols).rank()
    };
    let e = |i: usize| (0..8).map(|j| if i == j { field.one() } else { field.zero() }).collect::<Vec<_>>();
    if k.rem_euclid(2) == 1 {
        // V = span(e1..e4) in the odd basis; U ⊂ image and V maps onto the cokernel
        let rows = cx.chart_rows.eval(pt);
        let u: Vec<Vec<Scalar>> = (0..2).map(|i| (0..8).map(|j| if j < 4 { rows.get(i, j).clone() } else { field.zero() }).collect()).collect();
        Some(r == 6 && rank_with(u) == 6 && rank_with((0..4).map(e).collect()) == 8)
    } else {
        Some(r == 6 && rank_with(vec![e(0)]) == 7)
    }
}

/// Symbolic checks on `fam`'s own field plus pointwise homology at seeded chart
/// points (`samples` on `M` and `samples` off `M`) over `F_p`.
pub fn certify_complex(fam: &QuadricFamily, chart: usize, kind: ComplexKind, samples: usize, seed: u64, p: u64) -> Result<ComplexCertificate> {
    let build = |f: &QuadricFamily| match kind {
        ComplexKind::Koszul => build_koszul(f, chart),
        ComplexKind::Clifford { k } => build_clifford_resolution(f, chart, k),
    };
    let symbolic = build(fam)?;
    let d_squared_zero = symbolic.d_squared_witness()?.is_none();
    let filtration = filtration_check(&symbolic);
    let fp = Field::prime(p)?;
    let fam_p = if fam.field() == &fp { fam.clone() } else { fam.over_field(&fp)? };
    let cx = build(&fam_p)?;
    let homotopies_verified = symbolic.homotopy_witness()?.is_none() && cx.homotopy_witness()?.is_none();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((chart as u64) << 32) ^ kind_tag(kind));
    let off = sample_chart_points(&cx, &mut rng, samples, false)?;
    let on = sample_chart_points(&cx, &mut rng, samples, true)?;
    let generic_map_ranks: Vec<usize> = cx.specialize(&off[0]).iter().map(ScalarMatrix::rank).collect();
    let rank_condition = homology_from_ranks(&cx.ranks, &generic_map_ranks).iter().all(|&h| h == 0);
    let expected = kind.expected_rank_on_m();
    let tagged: Vec<(bool, Vec<Scalar>)> = off.into_iter().map(|p| (false, p)).chain(on.into_iter().map(|p| (true, p))).collect();
    let points: Vec<PointHomology> = tagged
        .par_iter()
        .map(|(on_m, pt)| {
            let mats = cx.specialize(pt);
            let ranks: Vec<usize> = mats.iter().map(ScalarMatrix::rank).collect();
            let fiber = homology_from_ranks(&cx.ranks, &ranks);
            let jac = cx.jacobian_rank(pt);
            let local = if *on_m {
                // exact off M (homotopies) and M smooth of codimension 3 here: only the cokernel survives
                let mut v = vec![0; cx.ranks.len()];
                *v.last_mut().unwrap() = fiber[fiber.len() - 1];
                v
            } else {
                fiber.clone()
            };
            PointHomology {
                point: pt.iter().map(ToString::to_string).collect(),
                on_m: *on_m,
                section_values: cx.section_values(pt).iter().map(ToString::to_string).collect(),
                fiber_homology: fiber,
                local_homology: local,
                jacobian_rank: jac,
                last_spot_model: if *on_m { last_spot_model(&cx, pt, &mats[2]) } else { None },
            }
        })
        .collect();
    let points_ok = points.iter().all(|ph| {
        let mut want = vec![0; cx.ranks.len()];
        if ph.on_m {
            *want.last_mut().unwrap() = expected;
        }
        ph.local_homology == want && (!ph.on_m || ph.jacobian_rank == 3) && ph.last_spot_model != Some(false)
    });
    let passed = symbolic.shapes_consistent()
        && d_squared_zero
        && homotopies_verified
        && rank_condition
        && filtration.as_ref().is_none_or(|f| f.block_triangular)
        && points_ok;
    Ok(ComplexCertificate {
        kind: kind.name(),
        chart,
        seed,
        sample_field: fp.to_string(),
        ranks: symbolic.ranks.clone(),
        euler_characteristic: symbolic.euler_characteristic(),
        shapes_consistent: symbolic.shapes_consistent(),
        d_squared_zero,
        homotopies_verified,
        generic_map_ranks,
        rank_condition,
        filtration,
        points,
        passed,
    })
}

fn kind_tag(kind: ComplexKind) -> u64 {
    match kind {
        ComplexKind::Koszul => 0x4b,
        ComplexKind::Clifford { k } => 0x100 + k.rem_euclid(64) as u64,
    }
}
