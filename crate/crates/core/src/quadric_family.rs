//! Families of quadric surfaces `q(v) = vᵀ A(y) v` over an affine base chart.
//!
//! The rank-4 bundle and the twisting line bundle are trivialized, so a family
//! is a symmetric 4×4 matrix of polynomials in the base coordinates. Point
//! analyses compute the corank, the kernel `K_y`, the map
//! `κ_y : T_yY → S²K_y^∨`, and the smoothness and node criteria built on it.
//!
//! `κ_y` is written in the monomial basis `u_i u_j` (`i ≤ j`) of `S²K_y^∨`,
//! where `u_i` is the coordinate dual to the `i`-th kernel vector: the row for
//! `∂/∂y_a` holds the coefficients of `u ↦ uᵀ (∂_a A)(y) u`, so diagonal
//! entries are `β_ii` and off-diagonal ones `2 β_ij` with `β = Kᵀ (∂_a A) K`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Field, MultiPoly, PolyMatrix, PolyRing, Ring, Scalar, ScalarMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricFamily {
    label: String,
    ring: Ring,
    matrix: PolyMatrix,
}

/// Field entry of a family file: `"Q"`, `"Fp:7"` or `{"Fp": 7}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Name(s) => Field::parse(s),
            FieldSpec::Prime { fp } => Field::prime(*fp),
        }
    }

    pub fn from_field(f: &Field) -> FieldSpec {
        match f {
            Field::Prime(p) => FieldSpec::Prime { fp: *p },
            other => FieldSpec::Name(other.to_string()),
        }
    }
}

/// On-disk family description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyFile {
    pub label: String,
    pub base_dim: usize,
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// Answer of a criterion that only applies at some points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    True,
    False,
    NotApplicable,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAnalysis {
    pub point: Vec<Scalar>,
    pub corank: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub kappa: Option<ScalarMatrix>,
    pub q_smooth_here: Tri,
    pub m_smooth_here: Tri,
    pub odp_here: Tri,
}

/// Which base points to analyse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    Explicit(Vec<Vec<Scalar>>),
    /// Every point with coordinates in `0..n` (as field elements).
    Grid { n: u64 },
    /// `count` uniform points of `F_p^n`; a family over `Q` is reduced mod `prime` first.
    Random { seed: u64, count: usize, prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: Vec<String>,
    pub corank: usize,
    pub kernel: Vec<Vec<String>>,
    pub kappa: Option<Vec<Vec<String>>>,
    pub kappa_rank: Option<usize>,
    pub q_smooth: Tri,
    pub m_smooth: Tri,
    pub odp: Tri,
    pub discriminant_value: String,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub label: String,
    pub field: String,
    pub sample_field: String,
    pub discriminant: String,
    pub corank2_generators: Vec<String>,
    pub corank_counts: [usize; 5],
    pub points: Vec<PointRecord>,
}

pub fn symmetric_pairs(r: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..r {
        for j in i..r {
            v.push((i, j));
        }
    }
    v
}

/// Parse a point `"1, -2, 1/3"` in the given field.
pub fn parse_point(s: &str, field: &Field) -> Result<Vec<Scalar>> {
    let r0 = PolyRing::new(field.clone(), vec![]);
    s.split(',')
        .map(|c| {
            let p = parse_poly(c.trim(), &r0)?;
            Ok(p.constant_value().expect("no variables"))
        })
        .collect()
}

/// Parse `"x,y,z;x,y,z;..."`.
pub fn parse_points(s: &str, field: &Field) -> Result<Vec<Vec<Scalar>>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(|t| parse_point(t, field)).collect()
}

/// Resultant of `a0 x² + a1 xy + a2 y²` and `b0 x² + b1 xy + b2 y²`.
pub fn binary_quadratic_resultant(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = a[0].field();
    let z = f.zero();
    let m = ScalarMatrix::from_rows(
        &f,
        vec![
            vec![a[0].clone(), a[1].clone(), a[2].clone(), z.clone()],
            vec![z.clone(), a[0].clone(), a[1].clone(), a[2].clone()],
            vec![b[0].clone(), b[1].clone(), b[2].clone(), z.clone()],
            vec![z.clone(), b[0].clone(), b[1].clone(), b[2].clone()],
        ],
    );
    m.det().expect("square")
}

impl QuadricFamily {
    pub fn new(label: impl Into<String>, ring: Ring, matrix: PolyMatrix) -> Result<QuadricFamily> {
        if ring.nvars() == 0 {
            return Err(Error::Validation("base_dim must be at least 1".into()));
        }
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::Validation(format!("matrix must be 4x4, got {}x{}", matrix.rows(), matrix.cols())));
        }
        let bad = matrix.asymmetric_entries();
        if !bad.is_empty() {
            let desc: Vec<String> = bad
                .iter()
                .map(|&(i, j)| {
                    format!(
                        "entries ({},{})=`{}` and ({},{})=`{}` differ",
                        i + 1,
                        j + 1,
                        matrix.get(i, j),
                        j + 1,
                        i + 1,
                        matrix.get(j, i)
                    )
                })
                .collect();
            return Err(Error::Validation(format!("matrix is not symmetric: {}", desc.join("; "))));
        }
        if matrix.is_zero() {
            return Err(Error::Validation("matrix is identically zero".into()));
        }
        if ring.field().characteristic() == 2 {
            return Err(Error::Char2Unsupported);
        }
        Ok(QuadricFamily { label: label.into(), ring, matrix })
    }

    /// Build from entry strings in the named variables.
    pub fn from_strings(label: &str, field: Field, vars: &[&str], entries: &[[&str; 4]; 4]) -> Result<QuadricFamily> {
        let ring = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect());
        let rows = entries
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, &ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QuadricFamily::new(label, ring.clone(), PolyMatrix::from_rows(&ring, rows))
    }

    pub fn from_file(file: &FamilyFile) -> Result<QuadricFamily> {
        QuadricFamily::from_file_with_source(file, None)
    }

    fn from_file_with_source(file: &FamilyFile, src: Option<&str>) -> Result<QuadricFamily> {
        let field = file.field.to_field()?;
        if file.variables.len() != file.base_dim {
            return Err(Error::Validation(format!(
                "base_dim is {} but {} variables are declared",
                file.base_dim,
                file.variables.len()
            )));
        }
        if file.matrix.len() != 4 || file.matrix.iter().any(|r| r.len() != 4) {
            return Err(Error::Validation("matrix must be a 4x4 array of strings".into()));
        }
        let ring = PolyRing::new(field, file.variables.clone());
        let mut rows = Vec::new();
        for (i, row) in file.matrix.iter().enumerate() {
            let mut out = Vec::new();
            for (j, s) in row.iter().enumerate() {
                let p = parse_poly(s, &ring).map_err(|e| {
                    let line = src.and_then(|t| line_of_entry(t, s)).map(|l| format!("line {l}, ")).unwrap_or_default();
                    Error::Parse(format!("{line}matrix entry ({},{}): {}", i + 1, j + 1, strip_code(&e)))
                })?;
                out.push(p);
            }
            rows.push(out);
        }
        QuadricFamily::new(file.label.clone(), ring.clone(), PolyMatrix::from_rows(&ring, rows))
    }

    pub fn from_json(src: &str) -> Result<QuadricFamily> {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let file: FamilyFile = serde_json::from_value(v).map_err(|e| Error::Parse(format!("family file: {e}")))?;
        QuadricFamily::from_file_with_source(&file, Some(src))
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            label: self.label.clone(),
            base_dim: self.base_dim(),
            field: FieldSpec::from_field(self.field()),
            variables: self.ring.vars().to_vec(),
            matrix: self.matrix.to_string_rows(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base_dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// The same family with coefficients mapped into another field.
    pub fn over_field(&self, field: &Field) -> Result<QuadricFamily> {
        let ring = self.ring.with_field(field.clone());
        let m = self.matrix.change_field(&ring)?;
        QuadricFamily::new(self.label.clone(), ring, m)
    }

    fn check_point(&self, pt: &[Scalar]) -> Result<()> {
        if pt.len() != self.base_dim() {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates, base has dimension {}", pt.len(), self.base_dim())));
        }
        if let Some(x) = pt.iter().find(|x| x.field() != *self.field()) {
            return Err(Error::DimensionMismatch(format!("coordinate {x} is not in {}", self.field())));
        }
        Ok(())
    }

    pub fn matrix_at(&self, pt: &[Scalar]) -> Result<ScalarMatrix> {
        self.check_point(pt)?;
        Ok(self.matrix.eval(pt))
    }

    pub fn corank_at(&self, pt: &[Scalar]) -> Result<(usize, Vec<Vec<Scalar>>)> {
        let a = self.matrix_at(pt)?;
        let k = a.kernel_basis();
        Ok((k.len(), k))
    }

    pub fn discriminant(&self) -> MultiPoly {
        self.matrix.det().expect("4x4")
    }

    /// Distinct `(5-r)`-minors (row set ≤ column set); their common zeros are the corank ≥ r locus.
    pub fn corank_locus_generators(&self, r: usize) -> Result<Vec<MultiPoly>> {
        if !(1..=4).contains(&r) {
            return Err(Error::Validation(format!("corank must be in 1..=4, got {r}")));
        }
        if r == 1 {
            return Ok(vec![self.discriminant()]);
        }
        Ok(self.matrix.symmetric_minors(5 - r))
    }

    pub fn kappa_at(&self, pt: &[Scalar]) -> Result<ScalarMatrix> {
        let (r, k) = self.corank_at(pt)?;
        if r == 0 {
            return Err(Error::KappaUndefined);
        }
        Ok(self.kappa_with_kernel(pt, &k))
    }

    /// `κ` in the basis induced by an arbitrary (caller-chosen) basis of `K_y`.
    pub fn kappa_with_kernel(&self, pt: &[Scalar], kernel: &[Vec<Scalar>]) -> ScalarMatrix {
        let f = self.field().clone();
        let r = kernel.len();
        let pairs = symmetric_pairs(r);
        let kmat = ScalarMatrix::from_columns(&f, 4, kernel);
        let kt = kmat.transpose();
        let mut out = ScalarMatrix::zeros(&f, self.base_dim(), pairs.len());
        let two = f.from_i64(2);
        for a in 0..self.base_dim() {
            let da = self.matrix.partial(a).eval(pt);
            let beta = kt.mul(&da).and_then(|m| m.mul(&kmat)).expect("shapes");
            for (c, &(i, j)) in pairs.iter().enumerate() {
                let v = if i == j { beta.get(i, i).clone() } else { beta.get(i, j) * &two };
                out.set(a, c, v);
            }
        }
        out
    }

    pub fn q_smooth_at(&self, pt: &[Scalar]) -> Result<bool> {
        let (r, k) = self.corank_at(pt)?;
        match r {
            0 => Ok(true),
            1 => Ok(!self.kappa_with_kernel(pt, &k).is_zero()),
            2 => {
                let kappa = self.kappa_with_kernel(pt, &k);
                let (rr, piv) = kappa.rref();
                match piv.len() {
                    3 => Ok(true),
                    2 => Ok(!binary_quadratic_resultant(rr.row(0), rr.row(1)).is_zero()),
                    _ => Ok(false),
                }
            }
            r => Err(Error::Corank3Unsupported(r)),
        }
    }

    pub fn m_smooth_at(&self, pt: &[Scalar]) -> Result<bool> {
        let (r, k) = self.corank_at(pt)?;
        match r {
            0 | 1 => self.q_smooth_at(pt),
            2 => Ok(self.q_smooth_at(pt)? && self.kappa_with_kernel(pt, &k).rank() == 3),
            r => Err(Error::Corank3Unsupported(r)),
        }
    }

    pub fn hessian_of_discriminant(&self, pt: &[Scalar]) -> ScalarMatrix {
        let d = self.discriminant();
        let n = self.base_dim();
        let mut h = ScalarMatrix::zeros(self.field(), n, n);
        for i in 0..n {
            let di = d.partial(i);
            for j in 0..n {
                h.set(i, j, di.partial(j).eval(pt));
            }
        }
        h
    }

    /// Node test for the discriminant surface at a corank-2 point of a 3-dimensional base.
    pub fn odp_test(&self, pt: &[Scalar]) -> Result<bool> {
        if self.base_dim() != 3 {
            return Err(Error::WrongBaseDim { expected: 3, found: self.base_dim() });
        }
        let (r, _) = self.corank_at(pt)?;
        if r != 2 {
            return Err(Error::WrongCorank { expected: 2, found: r });
        }
        let d = self.discriminant();
        if !d.eval(pt).is_zero() || (0..3).any(|i| !d.partial(i).eval(pt).is_zero()) {
            return Err(Error::NotSingularOnD1);
        }
        Ok(self.hessian_of_discriminant(pt).rank() == 3)
    }

    pub fn analyze(&self, pt: &[Scalar]) -> Result<PointAnalysis> {
        let (r, kernel) = self.corank_at(pt)?;
        if r >= 3 {
            return Err(Error::Corank3Unsupported(r));
        }
        let kappa = (r > 0).then(|| self.kappa_with_kernel(pt, &kernel));
        let odp = if r == 2 && self.base_dim() == 3 { Tri::from(self.odp_test(pt)?) } else { Tri::NotApplicable };
        Ok(PointAnalysis {
            point: pt.to_vec(),
            corank: r,
            kernel,
            kappa,
            q_smooth_here: Tri::from(self.q_smooth_at(pt)?),
            m_smooth_here: Tri::from(self.m_smooth_at(pt)?),
            odp_here: odp,
        })
    }

    fn record(&self, pt: &[Scalar]) -> PointRecord {
        let strs = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let disc = self.discriminant().eval(pt).to_string();
        match self.analyze(pt) {
            Ok(a) => PointRecord {
                point: strs(pt),
                corank: a.corank,
                kernel: a.kernel.iter().map(|v| strs(v)).collect(),
                kappa_rank: a.kappa.as_ref().map(ScalarMatrix::rank),
                kappa: a.kappa.map(|k| k.to_rows().iter().map(|r| strs(r)).collect()),
                q_smooth: a.q_smooth_here,
                m_smooth: a.m_smooth_here,
                odp: a.odp_here,
                discriminant_value: disc,
                error: None,
            },
            Err(e) => PointRecord {
                point: strs(pt),
                corank: self.corank_at(pt).map(|c| c.0).unwrap_or(0),
                kernel: vec![],
                kappa: None,
                kappa_rank: None,
                q_smooth: Tri::NotApplicable,
                m_smooth: Tri::NotApplicable,
                odp: Tri::NotApplicable,
                discriminant_value: disc,
                error: Some(e.code().to_string()),
            },
        }
    }

    /// Sample points for a sampling request, together with the family they should be analysed in.
    pub fn sample_points(&self, sample: &SampleSpec) -> Result<(QuadricFamily, Vec<Vec<Scalar>>)> {
        let n = self.base_dim();
        match sample {
            SampleSpec::Explicit(pts) => {
                for p in pts {
                    self.check_point(p)?;
                }
                Ok((self.clone(), pts.clone()))
            }
            SampleSpec::Grid { n: g } => {
                let f = self.field();
                let total = (*g as u128).checked_pow(n as u32).filter(|&t| t <= 1_000_000).ok_or_else(|| Error::Validation("grid too large".into()))?;
                let mut pts = Vec::with_capacity(total as usize);
                let mut idx = vec![0u64; n];
                for _ in 0..total {
                    pts.push(idx.iter().map(|&v| f.from_i64(v as i64)).collect());
                    for k in (0..n).rev() {
                        idx[k] += 1;
                        if idx[k] < *g {
                            break;
                        }
                        idx[k] = 0;
                    }
                }
                Ok((self.clone(), pts))
            }
            SampleSpec::Random { seed, count, prime } => {
                let fam = match self.field() {
                    Field::Prime(_) => self.clone(),
                    _ => self.over_field(&Field::prime(*prime)?)?,
                };
                let p = fam.field().characteristic();
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let f = fam.field().clone();
                let pts = (0..*count).map(|_| (0..n).map(|_| f.from_i64(rng.gen_range(0..p) as i64)).collect()).collect();
                Ok((fam, pts))
            }
        }
    }

    pub fn stratify(&self, sample: &SampleSpec) -> Result<StratificationReport> {
        let (fam, pts) = self.sample_points(sample)?;
        let records: Vec<PointRecord> = pts.par_iter().map(|p| fam.record(p)).collect();
        let mut counts = [0usize; 5];
        for r in &records {
            counts[r.corank] += 1;
        }
        Ok(StratificationReport {
            label: self.label.clone(),
            field: self.field().to_string(),
            sample_field: fam.field().to_string(),
            discriminant: self.discriminant().to_string(),
            corank2_generators: self.corank_locus_generators(2)?.iter().map(ToString::to_string).collect(),
            corank_counts: counts,
            points: records,
        })
    }
}

fn strip_code(e: &Error) -> String {
    match e {
        Error::Parse(m) => m.clone(),
        other => other.to_string(),
    }
}

fn line_of_entry(src: &str, entry: &str) -> Option<usize> {
    let needle = serde_json::to_string(entry).ok()?;
    let start = src.find("\"matrix\"")?;
    let off = src[start..].find(&needle)? + start;
    Some(src[..off].matches('\n').count() + 1)
}

/// Random element of the field: uniform over `F_p`, integers in `[-3, 3]` over `Q`.
pub fn random_scalar(rng: &mut impl Rng, field: &Field) -> Scalar {
    match field.characteristic() {
        0 => field.from_i64(rng.gen_range(-3..=3)),
        p => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Seeded random symmetric family with entries of degree at most `degree`.
pub fn random_family(seed: u64, degree: u32, field: &Field, base_dim: usize) -> Result<QuadricFamily> {
    if field.characteristic() == 2 {
        return Err(Error::Char2Unsupported);
    }
    let ring = PolyRing::with_indexed_vars(field.clone(), "y", base_dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_up_to(base_dim, degree);
    loop {
        let mut m = PolyMatrix::zeros(&ring, 4, 4);
        for i in 0..4 {
            for j in i..4 {
                let mut p = MultiPoly::zero(&ring);
                for e in &monos {
                    let c = random_scalar(&mut rng, field);
                    p = &p + &MultiPoly::monomial(&ring, crate::exactalg::Monomial(e.clone()), c);
                }
                m.set(i, j, p.clone());
                m.set(j, i, p);
            }
        }
        if !m.is_zero() {
            return QuadricFamily::new(format!("random seed={seed} degree={degree}"), ring, m);
        }
    }
}

/// Exponent vectors of total degree ≤ d in n variables, in grlex order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    go(0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| crate::exactalg::Monomial(a.clone()).cmp(&crate::exactalg::Monomial(b.clone())));
    out
}

/// Random invertible 4×4 matrix over `F_p`.
pub fn random_invertible(rng: &mut impl Rng, field: &Field, n: usize) -> ScalarMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| random_scalar(rng, field)).collect()).collect();
        let m = ScalarMatrix::from_rows(field, rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// `Pᵀ diag(d) P` with exactly `corank` zero diagonal entries and random units elsewhere.
pub fn random_symmetric_of_corank(rng: &mut impl Rng, field: &Field, corank: usize) -> ScalarMatrix {
    let p = random_invertible(rng, field, 4);
    let d: Vec<Scalar> = (0..4)
        .map(|i| {
            if i < 4 - corank {
                loop {
                    let x = random_scalar(rng, field);
                    if !x.is_zero() {
                        break x;
                    }
                }
            } else {
                field.zero()
            }
        })
        .collect();
    let dm = ScalarMatrix::diagonal(field, &d);
    p.transpose().mul(&dm).and_then(|m| m.mul(&p)).expect("4x4")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> QuadricFamily {
        QuadricFamily::from_strings(
            "running",
            Field::Rational,
            &["y1", "y2", "y3"],
            &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
        )
        .unwrap()
    }

    fn pt(f: &Field, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    fn e(f: &Field, i: usize) -> Vec<Scalar> {
        (0..4).map(|j| f.from_i64((i == j) as i64)).collect()
    }

    #[test]
    fn running_family_coranks() {
        let fam = running();
        let q = Field::Rational;
        assert_eq!(fam.corank_at(&pt(&q, &[1, 0, 1])).unwrap().0, 0);
        assert_eq!(fam.corank_at(&pt(&q, &[1, 0, 0])).unwrap(), (1, vec![e(&q, 3)]));
        assert_eq!(fam.corank_at(&pt(&q, &[0, 0, 0])).unwrap(), (2, vec![e(&q, 2), e(&q, 3)]));
    }

    #[test]
    fn discriminants() {
        assert_eq!(running().discriminant().to_string(), "y1*y3 - y2^2");
        let split = QuadricFamily::from_strings(
            "split",
            Field::Rational,
            &["y1", "y2", "y3"],
            &[["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
        )
        .unwrap();
        assert_eq!(split.discriminant().to_string(), "-1/4*y1*y3 + 1/4*y2^2");
        let c = QuadricFamily::from_strings("c", Field::Rational, &["y1"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]).unwrap();
        assert_eq!(c.discriminant().to_string(), "1");
        assert!(c.corank_locus_generators(2).unwrap().iter().any(|m| m.constant_value().is_some_and(|v| v.is_one())));
    }

    #[test]
    fn corank_two_minors_vanish_only_at_origin() {
        let fam = running();
        let g = fam.corank_locus_generators(2).unwrap();
        assert_eq!(g.len(), 10);
        let strs: Vec<String> = g.iter().map(ToString::to_string).collect();
        for v in ["y1", "y2", "y3"] {
            assert!(strs.iter().any(|s| s == v), "{v} missing from {strs:?}");
        }
    }

    #[test]
    fn kappa_examples() {
        let fam = running();
        let q = Field::Rational;
        let k = fam.kappa_at(&pt(&q, &[0, 0, 0])).unwrap();
        assert_eq!(k, ScalarMatrix::from_i64(&q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
        assert_eq!(fam.kappa_at(&pt(&q, &[1, 0, 1])), Err(Error::KappaUndefined));
        let cube = QuadricFamily::from_strings("c", q.clone(), &["y1"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "y1^3"]]).unwrap();
        assert!(cube.kappa_at(&pt(&q, &[0])).unwrap().is_zero());
        let lin = QuadricFamily::from_strings("l", q.clone(), &["y1"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "y1"]]).unwrap();
        assert_eq!(lin.kappa_at(&pt(&q, &[0])).unwrap(), ScalarMatrix::from_i64(&q, &[&[1]]));
    }

    #[test]
    fn smoothness_and_odp() {
        let fam = running();
        let q = Field::Rational;
        let o = pt(&q, &[0, 0, 0]);
        assert!(fam.q_smooth_at(&o).unwrap());
        assert!(fam.m_smooth_at(&o).unwrap());
        assert!(fam.odp_test(&o).unwrap());
        assert_eq!(fam.hessian_of_discriminant(&o), ScalarMatrix::from_i64(&q, &[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]]));
        let sq = QuadricFamily::from_strings("s", q.clone(), &["y1"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "y1^2"]]).unwrap();
        assert!(!sq.q_smooth_at(&pt(&q, &[0])).unwrap());
        let diag = QuadricFamily::from_strings("d", q.clone(), &["y1", "y2", "y3"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "0"], ["0", "0", "0", "y1"]]).unwrap();
        assert!(!diag.m_smooth_at(&o).unwrap());
        let cusp = QuadricFamily::from_strings("k", q.clone(), &["y1", "y2", "y3"], &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "y1", "0"], ["0", "0", "0", "y1^2"]]).unwrap();
        assert!(!cusp.odp_test(&o).unwrap());
        assert_eq!(fam.odp_test(&pt(&q, &[1, 0, 0])), Err(Error::WrongCorank { expected: 2, found: 1 }));
    }

    #[test]
    fn corank_one_points_are_q_smooth() {
        let fam = running();
        let q = Field::Rational;
        for p in [[1, 0, 0], [0, 0, 1], [1, 1, 1], [4, 2, 1], [1, -1, 1]] {
            let p = pt(&q, &p);
            assert_eq!(fam.corank_at(&p).unwrap().0, 1);
            assert!(fam.q_smooth_at(&p).unwrap());
        }
    }

    #[test]
    fn stratify_examples() {
        let fam = running();
        let q = Field::Rational;
        let r = fam.stratify(&SampleSpec::Explicit(vec![pt(&q, &[0, 0, 0]), pt(&q, &[1, 0, 0]), pt(&q, &[1, 1, 1])])).unwrap();
        assert_eq!(r.points.iter().map(|p| p.corank).collect::<Vec<_>>(), vec![2, 1, 1]);
        let r = fam.stratify(&SampleSpec::Explicit(vec![pt(&q, &[0, 0, 0]), pt(&q, &[1, 0, 0]), pt(&q, &[1, 0, 1])])).unwrap();
        assert_eq!(r.points.iter().map(|p| p.corank).collect::<Vec<_>>(), vec![2, 1, 0]);
        let f5 = Field::prime(5).unwrap();
        let split = QuadricFamily::from_strings(
            "split",
            f5,
            &["y1", "y2", "y3"],
            &[["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"], ["0", "0", "y1", "y2"], ["0", "0", "y2", "y3"]],
        )
        .unwrap();
        let g = split.stratify(&SampleSpec::Grid { n: 5 }).unwrap();
        assert_eq!(g.points.len(), 125);
        assert_eq!(g.corank_counts[2], 1);
        assert_eq!(g.points[0].point, vec!["0", "0", "0"]);
        assert_eq!(g.points[0].corank, 2);
    }

    #[test]
    fn nonsymmetric_input_names_entries() {
        let err = QuadricFamily::from_strings("bad", Field::Rational, &["y1"], &[["1", "y1", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]).unwrap_err();
        match err {
            Error::Validation(m) => assert!(m.contains("(1,2)=`y1`") && m.contains("(2,1)=`0`"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let fam = running();
        let s = fam.to_json();
        assert_eq!(QuadricFamily::from_json(&s).unwrap(), fam);
        let bad = s.replace("\"y2\",\n      \"y3\"", "\"y2\",\n      \"y3 +\"");
        let e = QuadricFamily::from_json(&bad).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("line") && m.contains("(4,4)")), "{e:?}");
    }

    #[test]
    fn kappa_basis_change() {
        // permuting the kernel basis permutes u1^2 <-> u2^2 and fixes u1 u2
        let fam = running();
        let q = Field::Rational;
        let o = pt(&q, &[0, 0, 0]);
        let (_, k) = fam.corank_at(&o).unwrap();
        let swapped = vec![k[1].clone(), k[0].clone()];
        let a = fam.kappa_with_kernel(&o, &k);
        let b = fam.kappa_with_kernel(&o, &swapped);
        let perm = ScalarMatrix::from_i64(&q, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(a.mul(&perm).unwrap(), b);
    }
}
