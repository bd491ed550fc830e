//! Dense matrices over a field and over a polynomial ring.
//!
//! Rank and determinant use Bareiss fraction-free elimination (over `Q` on
//! row-integerized copies, so every intermediate is an integer minor).
//! Reduced row echelon form and kernels use Gauss–Jordan with the pivot rule
//! "first nonzero entry of the column at or below the current row", which makes
//! kernel bases deterministic. Prime fields take a machine-word path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::poly::{MultiPoly, Ring};
use crate::exactalg::scalar::{Field, Fp, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> ScalarMatrix {
        ScalarMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> ScalarMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        ScalarMatrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, len: usize, cols: &[Vec<Scalar>]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(field: &Field, d: &[Scalar]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ScalarMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ScalarMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = ScalarMatrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if let Field::Prime(p) = self.field {
            return rref_mod_p(&self.to_u64(), self.rows, self.cols, p).1.len();
        }
        self.bareiss().1.len()
    }

    /// Fraction-free echelon form: `(echelon matrix, pivot columns, determinant sign)`.
    pub fn bareiss(&self) -> (ScalarMatrix, Vec<usize>, bool) {
        match self.field {
            Field::Rational => self.bareiss_integer(),
            _ => self.bareiss_generic(),
        }
    }

    fn bareiss_generic(&self) -> (ScalarMatrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut prev = self.field.one();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if pr != r {
                m.swap_rows(pr, r);
                negated = !negated;
            }
            let piv = m.get(r, c).clone();
            for i in r + 1..self.rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = (&piv * m.get(i, j) - &lead * m.get(r, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, c, self.field.zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (m, pivots, negated)
    }

    /// Bareiss on integer rows; the returned echelon form is rescaled back into `Q`.
    fn bareiss_integer(&self) -> (ScalarMatrix, Vec<usize>, bool) {
        let (m, scale, pivots, negated) = self.bareiss_integer_core();
        let mut out = ScalarMatrix::zeros(&self.field, self.rows, self.cols);
        for (i, row) in m.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, Scalar::Rat(BigRational::new(v, scale[i].clone())));
            }
        }
        (out, pivots, negated)
    }

    /// Integer rows (each row scaled by the lcm of its denominators), the scales, pivots and sign.
    fn bareiss_integer_core(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>, Vec<usize>, bool) {
        let mut scale = Vec::with_capacity(self.rows);
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.as_rational().expect("rational matrix").denom()));
                scale.push(l.clone());
                row.iter()
                    .map(|x| {
                        let q = x.as_rational().unwrap();
                        q.numer() * (&l / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else { continue };
            if pr != r {
                m.swap(pr, r);
                scale.swap(pr, r);
                negated = !negated;
            }
            let (top, bottom) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = pivot_row[c].clone();
            for row in bottom.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let mut v = &piv * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v -= &lead * &pivot_row[j];
                    }
                    if !prev.is_one() {
                        v /= &prev;
                    }
                    row[j] = v;
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (m, scale, pivots, negated)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        if let Field::Rational = self.field {
            let (m, scale, piv, neg) = self.bareiss_integer_core();
            if piv.len() < n {
                return Ok(self.field.zero());
            }
            let total = scale.iter().fold(BigInt::one(), |acc, s| acc * s);
            let d = BigRational::new(m[n - 1][n - 1].clone(), total);
            return Ok(Scalar::Rat(if neg { -d } else { d }));
        }
        let (e, piv, neg) = self.bareiss_generic();
        if piv.len() < n {
            return Ok(self.field.zero());
        }
        let d = e.get(n - 1, n - 1).clone();
        Ok(if neg { -d } else { d })
    }

    /// Gauss–Jordan reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        if let Field::Prime(p) = self.field {
            let (d, piv) = rref_mod_p(&self.to_u64(), self.rows, self.cols, p);
            let data = d.into_iter().map(|v| Scalar::Mod(Fp::new(v as i128, p))).collect();
            return (ScalarMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }, piv);
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(pr, r);
            let inv = m.get(r, c).inv();
            for j in c..self.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let b = m.get(r, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) - &(&f * b);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of `{v : m v = 0}`, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            out.push(v);
        }
        out
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space_basis(&self) -> Vec<Vec<Scalar>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&j| self.column(j)).collect()
    }

    /// Solve `m x = b` if solvable.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&ScalarMatrix::from_columns(&self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&ScalarMatrix::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    fn to_u64(&self) -> Vec<u64> {
        self.data.iter().map(|x| x.as_fp().expect("prime-field matrix").value()).collect()
    }

    /// Entrywise change of field (reduction mod p or embedding).
    pub fn change_field(&self, target: &Field) -> Result<ScalarMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| match x {
                Scalar::Rat(r) => target.from_rational(r),
                other => Ok(target.embed(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScalarMatrix { field: target.clone(), rows: self.rows, cols: self.cols, data })
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn rref_mod_p(input: &[u64], rows: usize, cols: usize, p: u64) -> (Vec<u64>, Vec<usize>) {
    let mut m = input.to_vec();
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let mut acc = 1u64;
        let mut b = a;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else { continue };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let iv = inv(m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = mulm(m[r * cols + j], iv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let b = m[r * cols + j];
                if b != 0 {
                    m[i * cols + j] = (m[i * cols + j] + p - mulm(f, b)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Matrix with polynomial entries in a shared ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![MultiPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<MultiPoly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_scalar(ring: &Ring, m: &ScalarMatrix) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|x| MultiPoly::constant(ring, ring.field().embed(x))).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    /// Pairs `(i, j)` with `i < j` and `a_ij != a_ji`.
    pub fn asymmetric_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if !self.is_square() {
            return out;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.asymmetric_entries().is_empty()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly, ring: &Ring) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn eval(&self, point: &[Scalar]) -> ScalarMatrix {
        ScalarMatrix {
            field: self.ring.field().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.eval(point)).collect(),
        }
    }

    pub fn partial(&self, var: usize) -> PolyMatrix {
        self.map(|p| p.partial(var), &self.ring)
    }

    pub fn change_field(&self, target: &Ring) -> Result<PolyMatrix> {
        let data = self.data.iter().map(|p| p.change_field(target)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(self.det_rec(&(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>()))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        match rows.len() {
            0 => MultiPoly::one(&self.ring),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => &(self.get(rows[0], cols[0]) * self.get(rows[1], cols[1])) - &(self.get(rows[0], cols[1]) * self.get(rows[1], cols[0])),
            _ => {
                let mut acc = MultiPoly::zero(&self.ring);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let t = a * &self.det_rec(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
        }
    }

    /// All `k x k` minors, rows and columns as increasing index sets in lexicographic order.
    pub fn minors(&self, k: usize) -> Vec<MultiPoly> {
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut out = Vec::new();
        for r in &rs {
            for c in &cs {
                out.push(self.det_rec(r, c));
            }
        }
        out
    }

    /// Minors with row set `I <= J` column set; for symmetric matrices these are all distinct ones.
    pub fn symmetric_minors(&self, k: usize) -> Vec<MultiPoly> {
        let s = subsets(self.rows, k);
        let mut out = Vec::new();
        for (a, r) in s.iter().enumerate() {
            for c in &s[a..] {
                out.push(self.det_rec(r, c));
            }
        }
        out
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
