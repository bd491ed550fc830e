//! Clifford algebra of a quadratic form with polynomial coefficients.
//!
//! Convention: `e_i e_j + e_j e_i = 2 A_ij`, hence `e_i² = A_ii`. Words are
//! normal-ordered to increasing index by adjacent swaps. The even part `B0`
//! has basis `1, e12, e13, e14, e23, e24, e34, e1234` and the odd part `B1`
//! has basis `e1, e2, e3, e4, e123, e124, e134, e234`.
//!
//! Coefficients live in a [`Ring`]: the chart ring of a family, the ring of
//! entries `a_ij` of a generic symmetric matrix, or a ring with no variables
//! after specialization at a field point.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Field, MultiPoly, PolyMatrix, PolyRing, Ring, Scalar, ScalarMatrix};
use crate::quadric_family::QuadricFamily;

/// Bitmasks of the even basis (`e1` is bit 0).
pub const EVEN_BASIS: [u8; 8] = [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111];
pub const ODD_BASIS: [u8; 8] = [0b0001, 0b0010, 0b0100, 0b1000, 0b0111, 0b1011, 0b1101, 0b1110];
pub const EVEN_NAMES: [&str; 8] = ["1", "e12", "e13", "e14", "e23", "e24", "e34", "e1234"];
pub const ODD_NAMES: [&str; 8] = ["e1", "e2", "e3", "e4", "e123", "e124", "e134", "e234"];
pub const CONVENTION: &str = "e_i e_j + e_j e_i = 2 A_ij; e_i^2 = A_ii";

type Elem = Vec<MultiPoly>;

fn zero_elem(ring: &Ring, n: usize) -> Elem {
    vec![MultiPoly::zero(ring); n]
}

/// Which triangle of `A` supplies the anticommutator constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Triangle {
    Lower,
    Upper,
}

/// The 16-dimensional Clifford algebra.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    ring: Ring,
    a: PolyMatrix,
    /// `table[s][t][u]`: coefficient of `e_u` in `e_s e_t`.
    table: Vec<Vec<Elem>>,
}

impl CliffordAlgebra {
    pub fn new(a: &PolyMatrix) -> Result<CliffordAlgebra> {
        check_form(a)?;
        Ok(CliffordAlgebra::with_triangle(a, Triangle::Lower))
    }

    fn with_triangle(a: &PolyMatrix, tri: Triangle) -> CliffordAlgebra {
        let ring = a.ring().clone();
        let contraction = |i: usize, j: usize| -> MultiPoly {
            let (hi, lo) = if i > j { (i, j) } else { (j, i) };
            match tri {
                Triangle::Lower => a.get(hi, lo).clone(),
                Triangle::Upper => a.get(lo, hi).clone(),
            }
        };
        let mut memo: HashMap<(usize, u8), Elem> = HashMap::new();
        let mut table = vec![vec![zero_elem(&ring, 16); 16]; 16];
        for s in 0..16u8 {
            for t in 0..16u8 {
                let mut v = zero_elem(&ring, 16);
                v[t as usize] = MultiPoly::one(&ring);
                for g in (0..4).rev().filter(|g| s & (1 << g) != 0) {
                    let mut next = zero_elem(&ring, 16);
                    for (m, c) in v.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let gl = gen_left(g, m as u8, &ring, &contraction, &mut memo);
                        for (u, d) in gl.iter().enumerate() {
                            if !d.is_zero() {
                                next[u] = &next[u] + &(c * d);
                            }
                        }
                    }
                    v = next;
                }
                table[s as usize][t as usize] = v;
            }
        }
        CliffordAlgebra { ring, a: a.clone(), table }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn form(&self) -> &PolyMatrix {
        &self.a
    }

    /// Coefficients of `e_s e_t` over the 16 masks.
    pub fn basis_product(&self, s: u8, t: u8) -> &[MultiPoly] {
        &self.table[s as usize][t as usize]
    }

    pub fn mul(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Elem {
        let mut out = zero_elem(&self.ring, 16);
        for (s, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (u, c) in self.table[s][t].iter().enumerate() {
                    if !c.is_zero() {
                        out[u] = &out[u] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut v = zero_elem(&self.ring, 16);
        v[1 << i] = MultiPoly::one(&self.ring);
        v
    }
}

/// `e_g · e_mask`, normal-ordered.
fn gen_left(g: usize, mask: u8, ring: &Ring, ctr: &impl Fn(usize, usize) -> MultiPoly, memo: &mut HashMap<(usize, u8), Elem>) -> Elem {
    if let Some(v) = memo.get(&(g, mask)) {
        return v.clone();
    }
    let mut out = zero_elem(ring, 16);
    if mask == 0 {
        out[1 << g] = MultiPoly::one(ring);
    } else {
        let s1 = mask.trailing_zeros() as usize;
        if g < s1 {
            out[(mask | (1 << g)) as usize] = MultiPoly::one(ring);
        } else if g == s1 {
            out[(mask ^ (1 << g)) as usize] = ctr(g, g);
        } else {
            let rest = mask ^ (1 << s1);
            let inner = gen_left(g, rest, ring, ctr, memo);
            for (t, c) in inner.iter().enumerate() {
                if !c.is_zero() {
                    let u = t | (1 << s1);
                    out[u] = &out[u] - c;
                }
            }
            let two = MultiPoly::from_i64(ring, 2);
            out[rest as usize] = &out[rest as usize] + &(&two * &ctr(g, s1));
        }
    }
    memo.insert((g, mask), out.clone());
    out
}

fn check_form(a: &PolyMatrix) -> Result<()> {
    if a.ring().field().characteristic() == 2 {
        return Err(Error::Char2Unsupported);
    }
    if a.rows() != 4 || a.cols() != 4 {
        return Err(Error::DimensionMismatch(format!("form must be 4x4, got {}x{}", a.rows(), a.cols())));
    }
    if !a.is_symmetric() {
        return Err(Error::Validation("form matrix is not symmetric".into()));
    }
    Ok(())
}

/// The even subalgebra `B0` with its 8×8 structure constants.
#[derive(Clone, Debug)]
pub struct EvenCliffordAlgebra {
    ring: Ring,
    a: PolyMatrix,
    /// `table[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    table: Vec<Vec<Elem>>,
}

/// `B1` as a `B0`-bimodule together with the product `B1 × B1 → B0`.
#[derive(Clone, Debug)]
pub struct OddCliffordModule {
    ring: Ring,
    /// `left[i][j]`: `b_i · m_j` in the odd basis.
    pub left: Vec<Vec<Elem>>,
    /// `right[j][i]`: `m_j · b_i` in the odd basis.
    pub right: Vec<Vec<Elem>>,
    /// `pairing[j][k]`: `m_j m_k` in the even basis.
    pub pairing: Vec<Vec<Elem>>,
}

fn restrict(full: &[MultiPoly], basis: &[u8; 8], ring: &Ring) -> Result<Elem> {
    let mut out = zero_elem(ring, 8);
    for (m, c) in full.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match basis.iter().position(|&b| b as usize == m) {
            Some(k) => out[k] = c.clone(),
            None => return Err(Error::Validation(format!("product left its graded piece (mask {m:04b})"))),
        }
    }
    Ok(out)
}

pub fn build_clifford_pair(a: &PolyMatrix) -> Result<(EvenCliffordAlgebra, OddCliffordModule)> {
    let full = CliffordAlgebra::new(a)?;
    let even = EvenCliffordAlgebra::from_full(&full)?;
    if let Some(w) = even.associativity_witness() {
        return Err(Error::Validation(format!("associativity fails on basis triple {w:?}")));
    }
    Ok((even, OddCliffordModule::from_full(&full)?))
}

/// Build `B0`, verifying associativity on every basis triple.
pub fn build_even_clifford(a: &PolyMatrix) -> Result<EvenCliffordAlgebra> {
    Ok(build_clifford_pair(a)?.0)
}

/// `B0` built from an input whose symmetry was broken on purpose: products
/// `b_i b_j` with `i ≤ j` contract through the lower triangle and the others
/// through the upper one, so associativity is not checked on construction.
pub fn build_even_clifford_asymmetric_hook(a: &PolyMatrix) -> Result<EvenCliffordAlgebra> {
    if a.ring().field().characteristic() == 2 {
        return Err(Error::Char2Unsupported);
    }
    let lower = EvenCliffordAlgebra::from_full(&CliffordAlgebra::with_triangle(a, Triangle::Lower))?;
    let upper = EvenCliffordAlgebra::from_full(&CliffordAlgebra::with_triangle(a, Triangle::Upper))?;
    let mut table = lower.table.clone();
    for (i, row) in table.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if i > j {
                *e = upper.table[i][j].clone();
            }
        }
    }
    Ok(EvenCliffordAlgebra { ring: lower.ring, a: a.clone(), table })
}

impl EvenCliffordAlgebra {
    fn from_full(full: &CliffordAlgebra) -> Result<EvenCliffordAlgebra> {
        let mut table = Vec::with_capacity(8);
        for &s in &EVEN_BASIS {
            let mut row = Vec::with_capacity(8);
            for &t in &EVEN_BASIS {
                row.push(restrict(full.basis_product(s, t), &EVEN_BASIS, &full.ring)?);
            }
            table.push(row);
        }
        Ok(EvenCliffordAlgebra { ring: full.ring.clone(), a: full.a.clone(), table })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn form(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &MultiPoly {
        &self.table[i][j][k]
    }

    pub fn basis_element(&self, i: usize) -> Elem {
        let mut v = zero_elem(&self.ring, 8);
        v[i] = MultiPoly::one(&self.ring);
        v
    }

    pub fn one(&self) -> Elem {
        self.basis_element(0)
    }

    pub fn scalar(&self, c: MultiPoly) -> Elem {
        let mut v = zero_elem(&self.ring, 8);
        v[0] = c;
        v
    }

    pub fn mul(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Elem {
        let mut out = zero_elem(&self.ring, 8);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// `b_i · b_j`.
    pub fn basis_mul(&self, i: usize, j: usize) -> &[MultiPoly] {
        &self.table[i][j]
    }

    pub fn is_unital(&self) -> bool {
        (0..8).all(|i| self.table[0][i] == self.basis_element(i) && self.table[i][0] == self.basis_element(i))
    }

    /// First basis triple `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        use rayon::prelude::*;
        (0..512usize)
            .into_par_iter()
            .find_first(|&n| {
                let (i, j, k) = (n / 64, (n / 8) % 8, n % 8);
                self.mul(&self.table[i][j], &self.basis_element(k)) != self.mul(&self.basis_element(i), &self.table[j][k])
            })
            .map(|n| (n / 64, (n / 8) % 8, n % 8))
    }

    /// Specialize the coefficients at a point of the base, giving an algebra over the residue field.
    pub fn specialize(&self, pt: &[Scalar]) -> EvenCliffordAlgebra {
        let r0 = PolyRing::new(self.ring.field().clone(), vec![]);
        let ev = |p: &MultiPoly| MultiPoly::constant(&r0, p.eval(pt));
        EvenCliffordAlgebra {
            a: self.a.map(ev, &r0),
            table: self.table.iter().map(|row| row.iter().map(|e| e.iter().map(ev).collect()).collect()).collect(),
            ring: r0,
        }
    }

    /// JSON tensor of structure constants with polynomial-string entries.
    pub fn to_json(&self) -> Value {
        let t: Vec<Vec<Vec<String>>> = self.table.iter().map(|r| r.iter().map(|e| e.iter().map(ToString::to_string).collect()).collect()).collect();
        json!({
            "convention": CONVENTION,
            "basis": EVEN_NAMES,
            "variables": self.ring.vars(),
            "field": self.ring.field().to_string(),
            "table": t,
        })
    }

    fn scalar_field_matrix(&self, f: impl Fn(usize, usize) -> Scalar, rows: usize, cols: usize) -> ScalarMatrix {
        let field = self.ring.field();
        let mut m = ScalarMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    fn require_point(&self) -> Result<()> {
        if self.ring.nvars() != 0 {
            return Err(Error::Validation("operation needs an algebra specialized at a point".into()));
        }
        Ok(())
    }

    fn c(&self, p: &MultiPoly) -> Scalar {
        p.constant_value().expect("specialized algebra")
    }

    /// Matrix of left multiplication by `x` (columns are images of basis vectors).
    pub fn left_mult_matrix(&self, x: &[MultiPoly]) -> ScalarMatrix {
        let cols: Vec<Elem> = (0..8).map(|j| self.mul(x, &self.basis_element(j))).collect();
        self.scalar_field_matrix(|i, j| self.c(&cols[j][i]), 8, 8)
    }

    /// Gram matrix of `(x, y) ↦ Tr(L_{xy})` at a point.
    pub fn trace_form(&self) -> Result<ScalarMatrix> {
        self.require_point()?;
        let traces: Vec<Scalar> = (0..8)
            .map(|k| {
                let l = self.left_mult_matrix(&self.basis_element(k));
                (0..8).fold(self.ring.field().zero(), |acc, i| acc + l.get(i, i))
            })
            .collect();
        Ok(self.scalar_field_matrix(
            |i, j| {
                let p = &self.table[i][j];
                (0..8).fold(self.ring.field().zero(), |acc, k| acc + self.c(&p[k]) * &traces[k])
            },
            8,
            8,
        ))
    }

    /// Basis of the center of the specialized algebra.
    pub fn center_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        self.require_point()?;
        // rows: coordinates of x b_j - b_j x for each j, as a function of x
        let mut m = ScalarMatrix::zeros(self.ring.field(), 64, 8);
        for j in 0..8 {
            for i in 0..8 {
                for k in 0..8 {
                    let v = self.c(&self.table[i][j][k]) - self.c(&self.table[j][i][k]);
                    m.set(j * 8 + k, i, v);
                }
            }
        }
        Ok(m.kernel_basis())
    }

    pub fn from_scalars(&self, v: &[Scalar]) -> Elem {
        v.iter().map(|x| MultiPoly::constant(&self.ring, x.clone())).collect()
    }

    pub fn to_scalars(&self, x: &[MultiPoly]) -> Vec<Scalar> {
        x.iter().map(|p| self.c(p)).collect()
    }
}

impl OddCliffordModule {
    fn from_full(full: &CliffordAlgebra) -> Result<OddCliffordModule> {
        let ring = &full.ring;
        let mut left = vec![Vec::new(); 8];
        let mut right = vec![Vec::new(); 8];
        let mut pairing = vec![Vec::new(); 8];
        for i in 0..8 {
            for j in 0..8 {
                left[i].push(restrict(full.basis_product(EVEN_BASIS[i], ODD_BASIS[j]), &ODD_BASIS, ring)?);
                right[i].push(restrict(full.basis_product(ODD_BASIS[i], EVEN_BASIS[j]), &ODD_BASIS, ring)?);
                pairing[i].push(restrict(full.basis_product(ODD_BASIS[i], ODD_BASIS[j]), &EVEN_BASIS, ring)?);
            }
        }
        Ok(OddCliffordModule { ring: ring.clone(), left, right, pairing })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn act(table: &[Vec<Elem>], coeffs_outer: &[MultiPoly], coeffs_inner: &[MultiPoly], outer_first: bool, ring: &Ring) -> Elem {
        let mut out = zero_elem(ring, 8);
        for (a, x) in coeffs_outer.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in coeffs_inner.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                let e = if outer_first { &table[a][b] } else { &table[b][a] };
                for (k, c) in e.iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// `b · m` for `b ∈ B0`, `m ∈ B1`.
    pub fn left_act(&self, b: &[MultiPoly], m: &[MultiPoly]) -> Elem {
        OddCliffordModule::act(&self.left, b, m, true, &self.ring)
    }

    /// `m · b`.
    pub fn right_act(&self, m: &[MultiPoly], b: &[MultiPoly]) -> Elem {
        OddCliffordModule::act(&self.right, m, b, true, &self.ring)
    }

    /// `m ∘ m'` in `B0`.
    pub fn pair(&self, m: &[MultiPoly], m2: &[MultiPoly]) -> Elem {
        OddCliffordModule::act(&self.pairing, m, m2, true, &self.ring)
    }

    fn unit(&self, i: usize) -> Elem {
        let mut v = zero_elem(&self.ring, 8);
        v[i] = MultiPoly::one(&self.ring);
        v
    }

    /// First triple `(i, j, k)` with `(b_i m_j) b_k ≠ b_i (m_j b_k)`.
    pub fn bimodule_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let lhs = self.right_act(&self.left[i][j], &self.unit(k));
                    let rhs = self.left_act(&self.unit(i), &self.right[j][k]);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First triple `(j, i, k)` with `(m_j b_i) ∘ m_k ≠ m_j ∘ (b_i m_k)`.
    pub fn balanced_witness(&self) -> Option<(usize, usize, usize)> {
        for j in 0..8 {
            for i in 0..8 {
                for k in 0..8 {
                    let lhs = self.pair(&self.right[j][i], &self.unit(k));
                    let rhs = self.pair(&self.unit(j), &self.left[i][k]);
                    if lhs != rhs {
                        return Some((j, i, k));
                    }
                }
            }
        }
        None
    }

    pub fn specialize(&self, pt: &[Scalar]) -> OddCliffordModule {
        let r0 = PolyRing::new(self.ring.field().clone(), vec![]);
        let ev = |t: &Vec<Vec<Elem>>| -> Vec<Vec<Elem>> {
            t.iter().map(|row| row.iter().map(|e| e.iter().map(|p| MultiPoly::constant(&r0, p.eval(pt))).collect()).collect()).collect()
        };
        OddCliffordModule { left: ev(&self.left), right: ev(&self.right), pairing: ev(&self.pairing), ring: r0 }
    }

    fn relation_rows(&self) -> Vec<Vec<MultiPoly>> {
        // relation (j, i, k): (m_j b_i) ⊗ m_k − m_j ⊗ (b_i m_k); coordinate (l, k') ↦ 8 l + k'
        let mut rows = Vec::with_capacity(512);
        for j in 0..8 {
            for i in 0..8 {
                for k in 0..8 {
                    let mut v = zero_elem(&self.ring, 64);
                    for (l, c) in self.right[j][i].iter().enumerate() {
                        if !c.is_zero() {
                            v[8 * l + k] = &v[8 * l + k] + c;
                        }
                    }
                    for (l, c) in self.left[i][k].iter().enumerate() {
                        if !c.is_zero() {
                            v[8 * j + l] = &v[8 * j + l] - c;
                        }
                    }
                    rows.push(v);
                }
            }
        }
        rows
    }

    fn multiplication_columns(&self) -> Vec<Elem> {
        (0..64).map(|n| self.pairing[n / 8][n % 8].clone()).collect()
    }
}

/// Outcome of the periodicity check `B1 ⊗_{B0} B1 ≅ B0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub relation_rank: usize,
    pub balanced_dim: usize,
    pub multiplication_rank: usize,
    /// `dim End_{B0}(B1)` for the left module structure.
    pub hom_dim: Option<usize>,
    /// Multiplication kills every balancing relation identically over the base ring.
    pub relations_annihilated: bool,
    /// Point used to bound ranks from below when working over the base ring.
    pub witness_point: Option<Vec<String>>,
    pub holds: bool,
}

fn const_matrix(rows: &[Vec<MultiPoly>], field: &Field) -> ScalarMatrix {
    ScalarMatrix::from_rows(field, rows.iter().map(|r| r.iter().map(|p| p.constant_value().expect("specialized")).collect()).collect())
}

fn filtered_relation_matrix(odd: &OddCliffordModule) -> ScalarMatrix {
    let field = odd.ring.field().clone();
    let mut rows: Vec<Vec<MultiPoly>> = odd.relation_rows().into_iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect();
    rows.sort_by_key(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    rows.dedup();
    if rows.is_empty() {
        return ScalarMatrix::zeros(&field, 0, 64);
    }
    const_matrix(&rows, &field)
}

fn multiplication_matrix(odd: &OddCliffordModule) -> ScalarMatrix {
    let field = odd.ring.field().clone();
    let cols = odd.multiplication_columns();
    let mut m = ScalarMatrix::zeros(&field, 8, 64);
    for (n, c) in cols.iter().enumerate() {
        for k in 0..8 {
            m.set(k, n, c[k].constant_value().expect("specialized"));
        }
    }
    m
}

/// `dim End_{B0}(B1)` for left multiplication, from 64 unknowns.
pub fn left_endomorphism_dim(odd: &OddCliffordModule) -> usize {
    let field = odd.ring.field().clone();
    // X m_j = Σ_a X[a][j] m_a; condition X(b_i m_j) = b_i X(m_j) for all i, j
    let cv = |p: &MultiPoly| p.constant_value().expect("specialized");
    let mut rows = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            for out in 0..8 {
                let mut row = vec![field.zero(); 64];
                // X(b_i m_j)_out = Σ_l L[i][j][l] X[out][l]
                for (l, c) in odd.left[i][j].iter().enumerate() {
                    row[out * 8 + l] = &row[out * 8 + l] + &cv(c);
                }
                // (b_i X m_j)_out = Σ_a X[a][j] L[i][a][out]
                for a in 0..8 {
                    let c = cv(&odd.left[i][a][out]);
                    row[a * 8 + j] = &row[a * 8 + j] - &c;
                }
                rows.push(row);
            }
        }
    }
    64 - ScalarMatrix::from_rows(&field, rows).rank()
}

/// Periodicity at a field point; points of the discriminant are rejected.
pub fn verify_periodicity(alg: &EvenCliffordAlgebra, odd: &OddCliffordModule) -> Result<PeriodicityReport> {
    alg.require_point()?;
    let det = alg.form().det()?.constant_value().expect("specialized");
    if det.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let rel = filtered_relation_matrix(odd);
    let mu = multiplication_matrix(odd);
    let rr = rel.rank();
    let mr = mu.rank();
    let annihilated = rel.rows() == 0 || mu.mul(&rel.transpose())?.is_zero();
    let hom = left_endomorphism_dim(odd);
    let balanced = 64 - rr;
    Ok(PeriodicityReport {
        relation_rank: rr,
        balanced_dim: balanced,
        multiplication_rank: mr,
        hom_dim: Some(hom),
        relations_annihilated: annihilated,
        witness_point: None,
        holds: annihilated && balanced == 8 && mr == 8 && hom == 8,
    })
}

/// Periodicity over the fraction field of the base ring.
///
/// The multiplication map kills all relations identically, so over `K(y)` the
/// relation rank is at most `64 − rank μ ≤ 56`; ranks only drop under
/// specialization, so a point where `rank μ = 8` and the relation rank is 56
/// pins both ranks over `K(y)`.
pub fn verify_periodicity_generic(odd: &OddCliffordModule, candidates: &[Vec<Scalar>]) -> Result<PeriodicityReport> {
    let rows = odd.relation_rows();
    let cols = odd.multiplication_columns();
    let mut annihilated = true;
    'outer: for r in &rows {
        for k in 0..8 {
            let mut acc = MultiPoly::zero(&odd.ring);
            for (n, c) in r.iter().enumerate() {
                if !c.is_zero() && !cols[n][k].is_zero() {
                    acc = &acc + &(c * &cols[n][k]);
                }
            }
            if !acc.is_zero() {
                annihilated = false;
                break 'outer;
            }
        }
    }
    let mut best: Option<(usize, usize, &Vec<Scalar>)> = None;
    for pt in candidates {
        let s = odd.specialize(pt);
        let rr = filtered_relation_matrix(&s).rank();
        let mr = multiplication_matrix(&s).rank();
        if best.is_none_or(|(br, bm, _)| (rr, mr) > (br, bm)) {
            best = Some((rr, mr, pt));
        }
        if rr == 56 && mr == 8 {
            break;
        }
    }
    let (rr, mr, pt) = best.ok_or_else(|| Error::NoSolution("no specialization point supplied".into()))?;
    let holds = annihilated && rr == 56 && mr == 8;
    Ok(PeriodicityReport {
        relation_rank: rr,
        balanced_dim: 64 - rr,
        multiplication_rank: mr,
        hom_dim: None,
        relations_annihilated: annihilated,
        witness_point: Some(pt.iter().map(ToString::to_string).collect()),
        holds,
    })
}

/// Center `{1, z}` of `B0` with `z² = unit · det A`.
#[derive(Clone, Debug)]
pub struct CenterData {
    pub z: Elem,
    pub c: MultiPoly,
    pub unit: i64,
}

impl CenterData {
    pub fn z_strings(&self) -> Vec<String> {
        self.z.iter().map(ToString::to_string).collect()
    }
}

/// `z = e1234 − a34 e12 + a24 e13 − a23 e14 − a14 e23 + a13 e24 − a12 e34 + (a12 a34 − a13 a24 + a14 a23)`.
pub fn center_element(alg: &EvenCliffordAlgebra) -> Elem {
    let a = alg.form();
    let b = |i: usize, j: usize| a.get(i, j).clone();
    vec![
        &(&(&b(0, 1) * &b(2, 3)) - &(&b(0, 2) * &b(1, 3))) + &(&b(0, 3) * &b(1, 2)),
        -&b(2, 3),
        b(1, 3),
        -&b(1, 2),
        -&b(0, 3),
        b(0, 2),
        -&b(0, 1),
        MultiPoly::one(alg.ring()),
    ]
}

pub fn center(alg: &EvenCliffordAlgebra) -> Result<CenterData> {
    let z = center_element(alg);
    for i in 0..8 {
        let bi = alg.basis_element(i);
        if alg.mul(&z, &bi) != alg.mul(&bi, &z) {
            return Err(Error::Validation(format!("z does not commute with {}", EVEN_NAMES[i])));
        }
    }
    let z2 = alg.mul(&z, &z);
    if z2[1..].iter().any(|p| !p.is_zero()) {
        return Err(Error::Validation("z^2 is not a scalar".into()));
    }
    let c = z2[0].clone();
    let det = alg.form().det()?;
    let unit = [1i64, -1, 4, -4, 16, -16]
        .into_iter()
        .find(|&u| c == det.scale(&alg.ring().field().from_i64(u)))
        .ok_or_else(|| Error::Validation(format!("z^2 = {c} is not a unit multiple of det A = {det}")))?;
    Ok(CenterData { z, c, unit })
}

/// Shape of the center fiber `k[z]/(z² − c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterFiber {
    /// `c` a nonzero square: two points.
    Split,
    /// `c` a non-square: one point with residue field `k(√c)`.
    NonSplit,
    /// `c = 0`: the node.
    DualNumbers,
}

pub fn center_fiber(c: &Scalar) -> CenterFiber {
    if c.is_zero() {
        CenterFiber::DualNumbers
    } else if c.field().is_square(c) {
        CenterFiber::Split
    } else {
        CenterFiber::NonSplit
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureTag {
    pub corank: usize,
    pub radical_dim: usize,
    pub semisimple_dim: usize,
    pub center_dim: usize,
    pub center_fiber: CenterFiber,
    pub z_squared: String,
    /// Dimensions of the blocks `e B0` for the central idempotents `(1 ± z)/2` when the center splits.
    pub block_dims: Option<[usize; 2]>,
    /// Each block is central simple (center of dimension 1, nondegenerate trace form).
    pub blocks_central_simple: Option<bool>,
}

/// Jacobson radical of `B0 ⊗ k(pt)` and the induced structure.
pub fn semisimple_type_at(fam: &QuadricFamily, pt: &[Scalar]) -> Result<StructureTag> {
    let (corank, _) = fam.corank_at(pt)?;
    if corank >= 3 {
        return Err(Error::Corank3Unsupported(corank));
    }
    let r0 = PolyRing::new(fam.field().clone(), vec![]);
    let a = PolyMatrix::from_scalar(&r0, &fam.matrix_at(pt)?);
    semisimple_type_of(&build_even_clifford(&a)?, corank)
}

pub fn semisimple_type_of(alg: &EvenCliffordAlgebra, corank: usize) -> Result<StructureTag> {
    let field = alg.ring().field().clone();
    let rad = radical_basis(alg)?;
    let center = alg.center_basis()?;
    let cd = center_element(alg);
    let c = alg.mul(&cd, &cd)[0].constant_value().expect("specialized");
    let fiber = center_fiber(&c);
    let (block_dims, simple) = if fiber == CenterFiber::Split {
        let s = field.sqrt(&c).expect("square");
        let half = field.from_i64(2).inv();
        // (1 ± z/s)/2 with z/s squaring to 1
        let zn: Vec<Scalar> = alg.to_scalars(&cd).iter().map(|x| x * &s.inv()).collect();
        let mut dims = [0usize; 2];
        let mut simple = true;
        for (slot, sign) in [(0usize, 1i64), (1, -1)] {
            let e: Vec<Scalar> = (0..8)
                .map(|k| {
                    let one = if k == 0 { field.one() } else { field.zero() };
                    (one + &zn[k] * &field.from_i64(sign)) * &half
                })
                .collect();
            let ee = alg.from_scalars(&e);
            if alg.mul(&ee, &ee) != ee {
                return Err(Error::Validation("central idempotent check failed".into()));
            }
            let l = alg.left_mult_matrix(&ee);
            dims[slot] = l.rank();
            simple &= block_is_central_simple(alg, &l.column_space_basis())?;
        }
        (Some(dims), Some(simple))
    } else {
        (None, None)
    };
    Ok(StructureTag {
        corank,
        radical_dim: rad.len(),
        semisimple_dim: 8 - rad.len(),
        center_dim: center.len(),
        center_fiber: fiber,
        z_squared: c.to_string(),
        block_dims,
        blocks_central_simple: simple,
    })
}

/// Kernel of the trace form, checked to be a nilpotent two-sided ideal.
pub fn radical_basis(alg: &EvenCliffordAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let n = alg.trace_form()?.kernel_basis();
    if n.is_empty() {
        return Ok(n);
    }
    let field = alg.ring().field().clone();
    let span = ScalarMatrix::from_columns(&field, 8, &n);
    let in_span = |v: &[Scalar]| span.hstack(&ScalarMatrix::from_columns(&field, 8, &[v.to_vec()])).rank() == n.len();
    for x in &n {
        let xe = alg.from_scalars(x);
        for i in 0..8 {
            let b = alg.basis_element(i);
            if !in_span(&alg.to_scalars(&alg.mul(&b, &xe))) || !in_span(&alg.to_scalars(&alg.mul(&xe, &b))) {
                return Err(Error::Validation("trace-form kernel is not an ideal".into()));
            }
        }
    }
    // N^k spans shrink to zero for a nilpotent ideal
    let mut power: Vec<Vec<Scalar>> = n.clone();
    for _ in 0..8 {
        if power.is_empty() {
            return Ok(n);
        }
        let mut prods = Vec::new();
        for x in &power {
            for y in &n {
                prods.push(alg.to_scalars(&alg.mul(&alg.from_scalars(x), &alg.from_scalars(y))));
            }
        }
        power = ScalarMatrix::from_columns(&field, 8, &prods).column_space_basis();
    }
    if power.is_empty() {
        Ok(n)
    } else {
        Err(Error::Validation("trace-form kernel is not nilpotent".into()))
    }
}

/// A block `eB0` (given by a basis) is central simple: its center is spanned by `e`
/// and its own trace form is nondegenerate.
fn block_is_central_simple(alg: &EvenCliffordAlgebra, basis: &[Vec<Scalar>]) -> Result<bool> {
    let field = alg.ring().field().clone();
    let d = basis.len();
    let bm = ScalarMatrix::from_columns(&field, 8, basis);
    let coords = |v: Vec<Scalar>| bm.solve(&v).expect("product stays in block");
    let prod = |i: usize, j: usize| coords(alg.to_scalars(&alg.mul(&alg.from_scalars(&basis[i]), &alg.from_scalars(&basis[j]))));
    let table: Vec<Vec<Vec<Scalar>>> = (0..d).map(|i| (0..d).map(|j| prod(i, j)).collect()).collect();
    let mut comm = ScalarMatrix::zeros(&field, d * d, d);
    for j in 0..d {
        for i in 0..d {
            for k in 0..d {
                comm.set(j * d + k, i, &table[i][j][k] - &table[j][i][k]);
            }
        }
    }
    let center_dim = comm.kernel_basis().len();
    let traces: Vec<Scalar> = (0..d).map(|k| (0..d).fold(field.zero(), |acc, i| acc + &table[k][i][i])).collect();
    let mut tf = ScalarMatrix::zeros(&field, d, d);
    for i in 0..d {
        for j in 0..d {
            tf.set(i, j, (0..d).fold(field.zero(), |acc, k| acc + &table[i][j][k] * &traces[k]));
        }
    }
    Ok(center_dim == 1 && tf.rank() == d)
}

/// Position of `B_k` in the 2-periodic sequence: `B_k = B_{k mod 2} ⊗ L^{power}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistIndex {
    pub odd: bool,
    pub l_power: i64,
}

/// `B_{-2m} = B0 ⊗ L^m` and `B_{1-2m} = B1 ⊗ L^m`.
pub fn twist_index(k: i64) -> TwistIndex {
    if k.rem_euclid(2) == 0 {
        TwistIndex { odd: false, l_power: -k / 2 }
    } else {
        TwistIndex { odd: true, l_power: (1 - k) / 2 }
    }
}

/// `B_k ⊗ B_l ≅ B_{k+l}` on twist data.
pub fn tensor_twist(a: TwistIndex, b: TwistIndex) -> TwistIndex {
    // B1 ⊗ B1 = B2 = B0 ⊗ L^{-1}
    let extra = if a.odd && b.odd { -1 } else { 0 };
    TwistIndex { odd: a.odd ^ b.odd, l_power: a.l_power + b.l_power + extra }
}

/// Ring `F[a11, a12, .., a44]` and the generic symmetric matrix over it.
pub fn generic_symmetric(field: &Field) -> (Ring, PolyMatrix) {
    let mut names = Vec::new();
    for i in 1..=4 {
        for j in i..=4 {
            names.push(format!("a{i}{j}"));
        }
    }
    let ring = PolyRing::new(field.clone(), names);
    let mut m = PolyMatrix::zeros(&ring, 4, 4);
    let mut k = 0;
    for i in 0..4 {
        for j in i..4 {
            let v = MultiPoly::var(&ring, k);
            m.set(i, j, v.clone());
            m.set(j, i, v);
            k += 1;
        }
    }
    (ring, m)
}

/// Diagonal matrix with entries in a fresh ring `F[a, b, c, d]`.
pub fn generic_diagonal(field: &Field) -> (Ring, PolyMatrix) {
    let ring = PolyRing::new(field.clone(), ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect());
    let mut m = PolyMatrix::zeros(&ring, 4, 4);
    for i in 0..4 {
        m.set(i, i, MultiPoly::var(&ring, i));
    }
    (ring, m)
}

/// Constant form over a ring without variables.
pub fn point_form(a: &ScalarMatrix) -> PolyMatrix {
    let r0 = PolyRing::new(a.field().clone(), vec![]);
    PolyMatrix::from_scalar(&r0, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(field: &Field, d: [i64; 4]) -> PolyMatrix {
        point_form(&ScalarMatrix::diagonal(field, &d.map(|x| field.from_i64(x))))
    }

    #[test]
    fn e12_squares_to_minus_one() {
        let alg = build_even_clifford(&diag(&Field::Rational, [1, 1, 1, 1])).unwrap();
        let p = alg.basis_mul(1, 1);
        assert_eq!(p[0].constant_value().unwrap(), Field::Rational.from_i64(-1));
        assert!(p[1..].iter().all(MultiPoly::is_zero));
        assert!(alg.is_unital());
    }

    #[test]
    fn kernel_vectors_square_to_zero() {
        let alg = build_even_clifford(&diag(&Field::Rational, [1, 1, 0, 0])).unwrap();
        assert!(alg.basis_mul(6, 6).iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn diagonal_center_is_top_element() {
        let (_, a) = generic_diagonal(&Field::Rational);
        let alg = build_even_clifford(&a).unwrap();
        let c = center(&alg).unwrap();
        assert_eq!(c.unit, 1);
        assert_eq!(c.z_strings(), vec!["0", "0", "0", "0", "0", "0", "0", "1"]);
        assert_eq!(c.c.to_string(), "a*b*c*d");
    }

    #[test]
    fn center_fibers() {
        let q = Field::Rational;
        let z = |d: [i64; 4]| {
            let alg = build_even_clifford(&diag(&q, d)).unwrap();
            center_fiber(&center(&alg).unwrap().c.constant_value().unwrap())
        };
        assert_eq!(z([1, 1, 0, 0]), CenterFiber::DualNumbers);
        assert_eq!(z([1, 1, 1, 1]), CenterFiber::Split);
        assert_eq!(z([1, 1, 1, -1]), CenterFiber::NonSplit);
    }

    #[test]
    fn twists_are_two_periodic() {
        for k in -6i64..6 {
            for l in -6i64..6 {
                assert_eq!(tensor_twist(twist_index(k), twist_index(l)), twist_index(k + l), "{k} {l}");
            }
        }
        assert_eq!(twist_index(-2), TwistIndex { odd: false, l_power: 1 });
        assert_eq!(twist_index(1), TwistIndex { odd: true, l_power: 0 });
    }
}
