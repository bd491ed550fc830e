//! Splitting types of `𝓢_k` on fiber components and fiberwise stand-ins for
//! `ρ_*𝓢_k ≅ 𝓑_k` and `ρ_*𝓢_k(−g) = 0`.
//!
//! All global sections are computed from certified splitting types plus
//! explicit linear algebra at the vertex of a corank-2 fiber.

use serde::Serialize;

use crate::clifford::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{Field, MultiPoly, PolyMatrix, PolyRing, Ring, Scalar, ScalarMatrix};
use crate::fano_lines::{classify_fiber, plucker, FanoFiber, PlaneSign};
use crate::homcx::cohomology::{bott, lb_cohomology, DivisorClass, VarietyTag};
use crate::homcx::complex::parity_basis;
use crate::quadric_family::QuadricFamily;

pub const RANK_B: usize = 8;

/// Clifford algebra of a form at a single point.
pub struct PointClifford {
    cl: CliffordAlgebra,
    ring: Ring,
    field: Field,
    form: ScalarMatrix,
}

impl PointClifford {
    pub fn new(a: &ScalarMatrix) -> Result<PointClifford> {
        let ring = PolyRing::new(a.field().clone(), vec![]);
        let cl = CliffordAlgebra::new(&PolyMatrix::from_scalar(&ring, a))?;
        Ok(PointClifford { cl, ring, field: a.field().clone(), form: a.clone() })
    }

    fn vector(&self, v: &[Scalar]) -> Vec<MultiPoly> {
        let mut e = vec![MultiPoly::zero(&self.ring); 16];
        for (a, x) in v.iter().enumerate() {
            e[1 << a] = MultiPoly::constant(&self.ring, x.clone());
        }
        e
    }

    fn from_coords(&self, x: &[Scalar], k: i64) -> Vec<MultiPoly> {
        let mut e = vec![MultiPoly::zero(&self.ring); 16];
        for (c, &m) in x.iter().zip(parity_basis(k)) {
            e[m as usize] = MultiPoly::constant(&self.ring, c.clone());
        }
        e
    }

    fn coords(&self, x: &[MultiPoly], k: i64) -> Vec<Scalar> {
        parity_basis(k).iter().map(|&m| x[m as usize].constant_value().unwrap_or_else(|| self.field.zero())).collect()
    }

    fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        (0..8).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect()
    }

    /// Columns spanning `U·B_{k−1} ⊂ B_k`.
    pub fn image(&self, u: &[Vec<Scalar>], k: i64) -> ScalarMatrix {
        let mut cols = Vec::new();
        for w in u {
            let we = self.vector(w);
            for i in 0..8 {
                cols.push(self.coords(&self.cl.mul(&we, &self.from_coords(&self.unit_vector(i), k - 1)), k));
            }
        }
        ScalarMatrix::from_columns(&self.field, 8, &cols)
    }

    /// Right multiplication `B_k → B_{k+1}` by a vector.
    pub fn right_mult(&self, v: &[Scalar], k: i64) -> ScalarMatrix {
        let ve = self.vector(v);
        let cols: Vec<Vec<Scalar>> = (0..8).map(|i| self.coords(&self.cl.mul(&self.from_coords(&self.unit_vector(i), k), &ve), k + 1)).collect();
        ScalarMatrix::from_columns(&self.field, 8, &cols)
    }

    pub fn q(&self, v: &[Scalar]) -> Scalar {
        let av = self.form.mul_vec(v).expect("length 4");
        v.iter().zip(&av).fold(self.field.zero(), |acc, (x, y)| acc + x * y)
    }

    /// A vector with `q(v) ≠ 0`, if the form is nonzero.
    pub fn anisotropic_vector(&self) -> Option<Vec<Scalar>> {
        let e = |i: usize| (0..4).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect::<Vec<_>>();
        let mut cands: Vec<Vec<Scalar>> = (0..4).map(e).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                cands.push((0..4).map(|t| if t == i || t == j { self.field.one() } else { self.field.zero() }).collect());
            }
        }
        cands.into_iter().find(|v| !self.q(v).is_zero())
    }
}

fn rank_of_cols(field: &Field, len: usize, a: &ScalarMatrix, extra: &[Vec<Scalar>]) -> usize {
    let mut cols = a.column_space_basis();
    cols.extend(extra.iter().cloned());
    ScalarMatrix::from_columns(field, len, &cols).rank()
}

/// Columns spanning the intersection of two column spaces.
fn intersect(field: &Field, len: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut cols = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let m = ScalarMatrix::from_columns(field, len, &cols);
    let am = ScalarMatrix::from_columns(field, len, a);
    let combos: Vec<Vec<Scalar>> = m.kernel_basis().iter().map(|k| am.mul_vec(&k[..a.len()]).unwrap()).collect();
    if combos.is_empty() {
        return vec![];
    }
    ScalarMatrix::from_columns(field, len, &combos).column_space_basis()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleRecord {
    pub from_chart: usize,
    pub to_chart: usize,
    pub transition: String,
    pub degree: u32,
}

/// Transition functions of `W/U` on the standard charts of `Gr(n−1, W)`.
///
/// Chart `k` spans `w_i + x_i w_k` (`i ≠ k`) and `[w_k]` generates `W/U`; the
/// transition to chart `l` is verified symbolically as `w_l ≡ −x_l w_k`.
pub fn hyperplane_quotient_cocycles(field: &Field, n: usize) -> Result<(Vec<CocycleRecord>, bool)> {
    let mut records = Vec::new();
    let mut generator_ok = true;
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let ring = PolyRing::new(field.clone(), others.iter().map(|i| format!("x{}", i + 1)).collect());
        let e = |i: usize| -> Vec<MultiPoly> { (0..n).map(|j| MultiPoly::from_i64(&ring, (i == j) as i64)).collect() };
        let u: Vec<Vec<MultiPoly>> = others
            .iter()
            .enumerate()
            .map(|(v, &i)| {
                let mut r = e(i);
                r[k] = MultiPoly::var(&ring, v);
                r
            })
            .collect();
        let mut rows = u.clone();
        rows.push(e(k));
        let det = PolyMatrix::from_rows(&ring, rows).det()?;
        generator_ok &= det.constant_value().is_some_and(|c| !c.is_zero());
        for (v, &l) in others.iter().enumerate() {
            let g = -&MultiPoly::var(&ring, v);
            // w_l − g w_k − u_l = 0
            let wl = e(l);
            let wk = e(k);
            let ok = (0..n).all(|c| (&(&wl[c] - &(&g * &wk[c])) - &u[v][c]).is_zero());
            if !ok {
                return Err(Error::Validation(format!("cocycle identity fails between charts {k} and {l}")));
            }
            let degree = g.total_degree().unwrap_or(0);
            records.push(CocycleRecord { from_chart: k, to_chart: l, transition: g.to_string(), degree });
        }
    }
    Ok((records, generator_ok))
}

/// Sample points of `Gr(2, W)`: each chart origin plus a few points of chart 0.
fn plane_sample_lines(w: &[Vec<Scalar>], field: &Field) -> Vec<Vec<Vec<Scalar>>> {
    let comb = |i: usize, k: usize, x: &Scalar| -> Vec<Scalar> { (0..4).map(|c| &w[i][c] + &(x * &w[k][c])).collect() };
    let mut out = Vec::new();
    for k in 0..3 {
        let o: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        out.push(vec![w[o[0]].clone(), w[o[1]].clone()]);
    }
    for (x, y) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
        let (x, y) = (field.from_i64(x), field.from_i64(y));
        out.push(vec![comb(1, 0, &x), comb(2, 0, &y)]);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneRestriction {
    pub k: i64,
    pub which: PlaneSign,
    pub field: String,
    pub splitting: [i64; 2],
    /// Degree of the sub line bundle `W/U`.
    pub sub_degree: u32,
    pub cocycles: Vec<CocycleRecord>,
    pub sub_generator_nonvanishing: bool,
    pub quotient_section_nonvanishing: bool,
    /// `h¹(ℙ², 𝓞(1))`, the obstruction to splitting `0 → 𝓞(1) → 𝓢 → 𝓞 → 0`.
    pub ext1_dimension: u64,
    /// At sample points of `Σ`, the cokernel of `U ⊗ 𝓑_{k−1} → 𝓑_k` is identified with `V/U`
    /// (odd `k`) or with it via right multiplication by an anisotropic vector (even `k`).
    pub cokernel_model: bool,
    /// Even `k`: the unit of `𝓑₀` is nonzero in the cokernel.
    pub unit_section: Option<bool>,
    pub sample_points: usize,
    pub passed: bool,
}

pub fn restriction_type_on_plane(k: i64, fiber: &FanoFiber, which: PlaneSign) -> Result<PlaneRestriction> {
    if fiber.corank != 2 {
        return Err(Error::WrongCorank { expected: 2, found: fiber.corank });
    }
    let planes = fiber.planes.as_ref().expect("corank 2 fibers carry planes");
    let field = planes.field.clone();
    let w = planes.plane(which).to_vec();
    let a = fiber.matrix.change_field(&field)?;
    let (cocycles, sub_generator_nonvanishing) = hyperplane_quotient_cocycles(&field, 3)?;
    let sub_degree = cocycles.iter().map(|c| c.degree).max().unwrap_or(0);
    let e = |i: usize| (0..4).map(|j| if i == j { field.one() } else { field.zero() }).collect::<Vec<Scalar>>();
    let wm = ScalarMatrix::from_columns(&field, 4, &w);
    let v = (0..4).map(e).find(|v| rank_of_cols(&field, 4, &wm, std::slice::from_ref(v)) == 4).expect("W is a hyperplane");
    let lines = plane_sample_lines(&w, &field);
    let quotient_section_nonvanishing = lines.iter().all(|u| {
        let um = ScalarMatrix::from_columns(&field, 4, u);
        um.rank() == 2 && rank_of_cols(&field, 4, &wm, std::slice::from_ref(&v)) == 4
    });
    let ext1_dimension = bott(2, 1)[1];
    let pc = PointClifford::new(&a)?;
    let odd = |k: i64| k.rem_euclid(2) == 1;
    let anis = pc.anisotropic_vector().ok_or_else(|| Error::Validation("zero form".into()))?;
    let mut cokernel_model = true;
    let mut unit_ok = true;
    for u in &lines {
        let im = pc.image(u, k);
        if im.rank() != 6 {
            cokernel_model = false;
            continue;
        }
        if odd(k) {
            let v_cols: Vec<Vec<Scalar>> = (0..4).map(|i| pc.unit_vector(i)).collect();
            let u_cols: Vec<Vec<Scalar>> = u.iter().map(|x| (0..8).map(|j| if j < 4 { x[j].clone() } else { field.zero() }).collect()).collect();
            cokernel_model &= rank_of_cols(&field, 8, &im, &v_cols) == 8 && rank_of_cols(&field, 8, &im, &u_cols) == 6;
        } else {
            // R_v: 𝓑_{k−1} → 𝓑_k carries U·𝓑_{k−2} onto U·𝓑_{k−1}
            let prev = pc.image(u, k - 1);
            let moved = pc.right_mult(&anis, k - 1).mul(&prev)?;
            cokernel_model &= moved.rank() == 6 && rank_of_cols(&field, 8, &im, &moved.column_space_basis()) == 6;
            unit_ok &= rank_of_cols(&field, 8, &im, &[pc.unit_vector(0)]) == 7;
        }
    }
    let unit_section = if odd(k) { None } else { Some(unit_ok) };
    let passed = sub_degree == 1
        && cocycles.iter().all(|c| c.degree == 1)
        && sub_generator_nonvanishing
        && quotient_section_nonvanishing
        && ext1_dimension == 0
        && cokernel_model
        && unit_section != Some(false);
    Ok(PlaneRestriction {
        k,
        which,
        field: field.to_string(),
        splitting: [0, 1],
        sub_degree,
        cocycles,
        sub_generator_nonvanishing,
        quotient_section_nonvanishing,
        ext1_dimension,
        cokernel_model,
        unit_section,
        sample_points: lines.len(),
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicRestriction {
    pub k: i64,
    pub splitting: [i64; 2],
    /// Degree of `g` on a ruling conic: the Plücker coordinates are quadratic forms.
    pub g_degree: u32,
    pub quotient_degree: u32,
    pub isotropic: bool,
    pub cokernel_model: bool,
    pub passed: bool,
}

/// `𝓢_k` on a ruling conic of a smooth fiber, in the Segre model `V = A ⊗ B`,
/// where `V/U ≅ (A/a) ⊗ B ≅ 𝓞(1)²`.
pub fn restriction_type_on_conic(k: i64) -> Result<ConicRestriction> {
    let q = Field::Rational;
    let ring = PolyRing::new(q.clone(), vec!["s".into(), "t".into()]);
    let (s, t, z) = (MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1), MultiPoly::zero(&ring));
    // coordinates x11, x12, x21, x22; the ruling a ⊗ B with a = (s, t)
    let r1 = vec![s.clone(), z.clone(), t.clone(), z.clone()];
    let r2 = vec![z.clone(), s.clone(), z.clone(), t.clone()];
    let h = q.from_i64(2).inv();
    let mut segre = ScalarMatrix::zeros(&q, 4, 4);
    segre.set(0, 3, h.clone());
    segre.set(3, 0, h.clone());
    segre.set(1, 2, -&h);
    segre.set(2, 1, -&h);
    let sa = PolyMatrix::from_scalar(&ring, &segre);
    let rows = PolyMatrix::from_rows(&ring, vec![r1.clone(), r2.clone()]);
    let isotropic = rows.mul(&sa)?.mul(&rows.transpose())?.is_zero();
    let pl = plucker_poly(&r1, &r2);
    let g_degree = pl.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0);
    let homogeneous = pl.iter().all(|p| p.is_zero() || p.terms().all(|(m, _)| m.degree() == 2));
    let (cocycles, gen_ok) = hyperplane_quotient_cocycles(&q, 2)?;
    let quotient_degree = cocycles.iter().map(|c| c.degree).max().unwrap_or(0);
    let pc = PointClifford::new(&segre)?;
    let anis = pc.anisotropic_vector().expect("nonzero form");
    let mut cokernel_model = true;
    for (sv, tv) in [(1, 0), (0, 1), (1, 1), (2, 3), (3, -1)] {
        let (sv, tv) = (q.from_i64(sv), q.from_i64(tv));
        let u = vec![vec![sv.clone(), q.zero(), tv.clone(), q.zero()], vec![q.zero(), sv.clone(), q.zero(), tv.clone()]];
        let im = pc.image(&u, k);
        if k.rem_euclid(2) == 1 {
            let v_cols: Vec<Vec<Scalar>> = (0..4).map(|i| pc.unit_vector(i)).collect();
            cokernel_model &= im.rank() == 6 && rank_of_cols(&q, 8, &im, &v_cols) == 8;
        } else {
            let moved = pc.right_mult(&anis, k - 1).mul(&pc.image(&u, k - 1))?;
            cokernel_model &= im.rank() == 6 && rank_of_cols(&q, 8, &im, &moved.column_space_basis()) == 6;
        }
    }
    let passed = isotropic && homogeneous && g_degree == 2 && quotient_degree == 1 && gen_ok && cokernel_model;
    Ok(ConicRestriction { k, splitting: [1, 1], g_degree, quotient_degree, isotropic, cokernel_model, passed })
}

fn plucker_poly(r1: &[MultiPoly], r2: &[MultiPoly]) -> Vec<MultiPoly> {
    crate::fano_lines::PLUCKER_ORDER.iter().map(|&(i, j)| &(&r1[i] * &r2[j]) - &(&r1[j] * &r2[i])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingData {
    /// Evaluation at the vertex, `(s₊, s₋) ↦ s₊(P) − s₋(P)`, in coordinates of the fiber at `P`.
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitModel {
    /// Splitting of `𝓞 ⊕ det𝒱⊗𝓛(g)` on a conic, then after the `(−g)` twist.
    pub splitting: [i64; 2],
    pub twisted_splitting: [i64; 2],
    pub twisted_h0_sum: u64,
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub point: Vec<String>,
    pub corank: usize,
    pub k: i64,
    pub rank_bk: usize,
    pub component_kind: String,
    pub components: usize,
    pub splitting: [i64; 2],
    pub g_degree: i64,
    pub component_h0: u64,
    pub component_chi: i64,
    pub h0_sum: u64,
    pub chi_sum: i64,
    pub chi_matches_rank_bk: bool,
    pub gluing: Option<GluingData>,
    pub glued_h0: u64,
    pub twisted_splitting: [i64; 2],
    pub twisted_h0_sum: u64,
    pub twisted_gluing: Option<GluingData>,
    pub twisted_glued_h0: u64,
    pub twisted_vanishes: bool,
    pub split_model: Option<SplitModel>,
    pub splitting_certified: bool,
}

fn line_h0(v: VarietyTag, split: &[i64; 2]) -> Result<(u64, i64)> {
    let mut h0 = 0;
    let mut chi = 0;
    for &d in split {
        let h = lb_cohomology(v, &DivisorClass::new(&[d]))?;
        h0 += h[0];
        chi += crate::homcx::cohomology::euler_characteristic(&h);
    }
    Ok((h0, chi))
}

fn negate(m: &ScalarMatrix) -> ScalarMatrix {
    ScalarMatrix::from_rows(m.field(), m.to_rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect())
}

fn strings(m: &ScalarMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn pushforward_rank_proxy(fam: &QuadricFamily, pt: &[Scalar], k: i64) -> Result<PushforwardReport> {
    let a = fam.matrix_at(pt)?;
    let fiber = classify_fiber(&a)?;
    match fiber.corank {
        0 => smooth_proxy(pt, k),
        2 => corank_two_proxy(pt, k, &fiber),
        r => Err(Error::WrongCorank { expected: 2, found: r }),
    }
}

fn smooth_proxy(pt: &[Scalar], k: i64) -> Result<PushforwardReport> {
    let cert = restriction_type_on_conic(k)?;
    let g = cert.g_degree as i64;
    let split = cert.splitting;
    let (h0, chi) = line_h0(VarietyTag::P1, &split)?;
    let tw = [split[0] - g, split[1] - g];
    let (th0, _) = line_h0(VarietyTag::P1, &tw)?;
    let split_model = (k.rem_euclid(2) == 0)
        .then(|| -> Result<SplitModel> {
            let s = [0, g];
            let t = [-g, 0];
            let h = line_h0(VarietyTag::P1, &t)?.0 * 2;
            Ok(SplitModel { splitting: s, twisted_splitting: t, twisted_h0_sum: h, contradiction: h > 0 && th0 == 0 })
        })
        .transpose()?;
    Ok(PushforwardReport {
        point: pt.iter().map(ToString::to_string).collect(),
        corank: 0,
        k,
        rank_bk: RANK_B,
        component_kind: "conic".into(),
        components: 2,
        splitting: split,
        g_degree: g,
        component_h0: h0,
        component_chi: chi,
        h0_sum: 2 * h0,
        chi_sum: 2 * chi,
        chi_matches_rank_bk: 2 * chi == RANK_B as i64,
        gluing: None,
        glued_h0: 2 * h0,
        twisted_splitting: tw,
        twisted_h0_sum: 2 * th0,
        twisted_gluing: None,
        twisted_glued_h0: 2 * th0,
        twisted_vanishes: th0 == 0,
        split_model,
        splitting_certified: cert.passed,
    })
}

fn corank_two_proxy(pt: &[Scalar], k: i64, fiber: &FanoFiber) -> Result<PushforwardReport> {
    let plus = restriction_type_on_plane(k, fiber, PlaneSign::Plus)?;
    let minus = restriction_type_on_plane(k, fiber, PlaneSign::Minus)?;
    let planes = fiber.planes.as_ref().unwrap();
    let field = planes.field.clone();
    let a = fiber.matrix.change_field(&field)?;
    let pc = PointClifford::new(&a)?;
    let split = plus.splitting;
    let g = plus.sub_degree as i64;
    let (h0, chi) = line_h0(VarietyTag::P2, &split)?;
    let tw = [split[0] - g, split[1] - g];
    let (th0, _) = line_h0(VarietyTag::P2, &tw)?;
    // coordinates on the fiber at the vertex: S_P = B_k / K·B_{k−1}
    let at_p = pc.image(&planes.w0, k);
    let proj_rows = at_p.transpose().kernel_basis();
    let proj = ScalarMatrix::from_rows(&field, proj_rows);
    // constant sections: B_k modulo everything killed on the whole plane
    let mut constants_ok = true;
    for w in [&planes.w_plus, &planes.w_minus] {
        let mut n = pc.image(&w[..2], k).column_space_basis();
        for u in plane_sample_lines(w, &field) {
            n = intersect(&field, 8, &n, &pc.image(&u, k).column_space_basis());
        }
        constants_ok &= (RANK_B - n.len()) as u64 == h0;
    }
    let gluing_m = proj.hstack(&negate(&proj));
    let gl_rank = gluing_m.rank();
    // twisted: the section of (W/U)(−g) takes the value [w] at P, transported to parity k
    let anis = pc.anisotropic_vector().ok_or_else(|| Error::Validation("zero form".into()))?;
    let value = |w: &[Scalar]| -> Result<Vec<Scalar>> {
        let mut odd: Vec<Scalar> = w.to_vec();
        odd.extend((0..4).map(|_| field.zero()));
        let c = if k.rem_euclid(2) == 1 { odd } else { pc.right_mult(&anis, 1).mul_vec(&odd)? };
        proj.mul_vec(&c)
    };
    let vp = value(&planes.w_plus[2])?;
    let vm: Vec<Scalar> = value(&planes.w_minus[2])?.iter().map(|x| -x).collect();
    let tw_m = ScalarMatrix::from_columns(&field, proj.rows(), &[vp, vm]);
    let tw_rank = tw_m.rank();
    let twisted_glued = 2 * th0 - tw_rank as u64;
    Ok(PushforwardReport {
        point: pt.iter().map(ToString::to_string).collect(),
        corank: 2,
        k,
        rank_bk: RANK_B,
        component_kind: "plane".into(),
        components: 2,
        splitting: split,
        g_degree: g,
        component_h0: h0,
        component_chi: chi,
        h0_sum: 2 * h0,
        chi_sum: 2 * chi,
        chi_matches_rank_bk: 2 * chi == RANK_B as i64,
        gluing: Some(GluingData { matrix: strings(&gluing_m), rank: gl_rank }),
        glued_h0: 2 * h0 - gl_rank as u64,
        twisted_splitting: tw,
        twisted_h0_sum: 2 * th0,
        twisted_gluing: Some(GluingData { matrix: strings(&tw_m), rank: tw_rank }),
        twisted_glued_h0: twisted_glued,
        twisted_vanishes: twisted_glued == 0,
        split_model: None,
        splitting_certified: plus.passed && minus.passed && constants_ok,
    })
}

/// Plücker coordinates of the vertex of a corank-2 fiber.
pub fn vertex_plucker(fiber: &FanoFiber) -> Option<[Scalar; 6]> {
    fiber.planes.as_ref().map(|p| plucker(&p.w0[0], &p.w0[1]))
}
