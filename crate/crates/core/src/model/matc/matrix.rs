use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Upper bound on the number of entries of any payload.
pub const MAX_ENTRIES: usize = 1 << 16;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major complex matrix. A morphism `A → B` is stored as a
/// `dim B × dim A` matrix, so diagrammatic composition `f ; g` is the
/// product `g · f`.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

fn guard(rows: usize, cols: usize) -> Result<usize> {
    let n = rows
        .checked_mul(cols)
        .ok_or(Error::TooLarge(usize::MAX))?;
    if n > MAX_ENTRIES {
        return Err(Error::TooLarge(n));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::ShapeMismatch(format!(
            "matrix dimensions must be positive, got {rows}×{cols}"
        )));
    }
    Ok(n)
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let n = guard(rows, cols)?;
        Ok(DenseMatrix {
            rows,
            cols,
            entries: vec![ZERO; n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        let n = guard(rows, cols)?;
        if entries.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{rows}×{cols} matrix needs {n} entries, got {}",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidValue("matrix entries must be finite".into()));
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from real-valued rows; handy in tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            entries.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::from_vec(r, c, entries)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn scalar(z: C64) -> Self {
        DenseMatrix {
            rows: 1,
            cols: 1,
            entries: vec![z],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.entries[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor indexes the major block.
    pub fn kron(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        let rows = self
            .rows
            .checked_mul(rhs.rows)
            .ok_or(Error::TooLarge(usize::MAX))?;
        let cols = self
            .cols
            .checked_mul(rhs.cols)
            .ok_or(Error::TooLarge(usize::MAX))?;
        let mut out = DenseMatrix::zeros(rows, cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..rhs.rows {
                    let base = (i * rhs.rows + k) * cols + j * rhs.cols;
                    for l in 0..rhs.cols {
                        out.entries[base + l] = a * rhs[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].conj());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)]);
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn conj(&self) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_shape(rhs)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_shape(rhs)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, rhs: &DenseMatrix) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> Result<f64> {
        self.same_shape(rhs)?;
        Ok(self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Result<C64> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `max |H - H†|`, or an error for non-square input.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("Hermitian check on non-square matrix".into()));
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(dev)
    }

    /// True when every entry is 0 or 1 and each row and column holds exactly one 1.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_hits = vec![0usize; n];
        for i in 0..n {
            let mut hits = 0;
            for j in 0..n {
                let z = self[(i, j)];
                if z == ONE {
                    hits += 1;
                    col_hits[j] += 1;
                } else if z != ZERO {
                    return false;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        if self.is_permutation() {
            return Ok(self.transpose());
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n)?;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap_or(col);
            if a[(pivot, col)].norm() < 1e-300 {
                return Err(Error::InvalidValue("matrix is singular".into()));
            }
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a[(i, col)];
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (aj, ij) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= factor * aj;
                    inv[(i, j)] -= factor * ij;
                }
            }
        }
        Ok(inv)
    }

    /// Traces out the leading factor of a `(u·b)×(u·b)` operator.
    pub fn partial_trace_first(&self, u: usize, b: usize) -> Result<DenseMatrix> {
        if self.rows != u * b || self.cols != u * b {
            return Err(Error::ShapeMismatch(format!(
                "partial trace of {}×{} over factors {u}·{b}",
                self.rows, self.cols
            )));
        }
        let mut out = DenseMatrix::zeros(b, b)?;
        for i in 0..u {
            for r in 0..b {
                for c in 0..b {
                    out[(r, c)] += self[(i * b + r, i * b + c)];
                }
            }
        }
        Ok(out)
    }

    /// Rows `start..start+len` as a new matrix.
    pub fn row_block(&self, start: usize, len: usize) -> Result<DenseMatrix> {
        if start + len > self.rows {
            return Err(Error::ShapeMismatch("row block out of range".into()));
        }
        DenseMatrix::from_vec(
            len,
            self.cols,
            self.entries[start * self.cols..(start + len) * self.cols].to_vec(),
        )
    }

    /// Stacks equally wide blocks on top of each other.
    pub fn vstack(blocks: &[DenseMatrix]) -> Result<DenseMatrix> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::ShapeMismatch("vstack of no blocks".into()))?;
        let cols = first.cols;
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::ShapeMismatch("vstack of blocks with unequal widths".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().copied()).collect();
        DenseMatrix::from_vec(rows, cols, entries)
    }
}

/// The permutation `P_{a,b}` with `P (x ⊗ y) = y ⊗ x` for `x ∈ ℂᵃ, y ∈ ℂᵇ`.
pub fn commutation_perm(a: usize, b: usize) -> Result<DenseMatrix> {
    let n = a.checked_mul(b).ok_or(Error::TooLarge(usize::MAX))?;
    let mut p = DenseMatrix::zeros(n, n)?;
    for i in 0..a {
        for j in 0..b {
            p[(j * a + i, i * b + j)] = ONE;
        }
    }
    Ok(p)
}

/// `η : 1 → a·a`, the column `Σᵢ eᵢ ⊗ eᵢ`.
pub fn bell_unit(a: usize) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::zeros(a * a, 1)?;
    for i in 0..a {
        m[(i * a + i, 0)] = ONE;
    }
    Ok(m)
}

/// `ε : a·a → 1`, the transpose of [`bell_unit`].
pub fn bell_counit(a: usize) -> Result<DenseMatrix> {
    Ok(bell_unit(a)?.transpose())
}

pub fn mat_kron(f: &DenseMatrix, g: &DenseMatrix) -> Result<DenseMatrix> {
    f.kron(g)
}

pub fn mat_dagger(f: &DenseMatrix) -> DenseMatrix {
    f.dagger()
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent 4-loop Kronecker oracle.
    fn kron_oracle(x: &DenseMatrix, y: &DenseMatrix) -> Vec<Vec<C64>> {
        let mut out = vec![vec![ZERO; x.cols() * y.cols()]; x.rows() * y.rows()];
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                for k in 0..y.rows() {
                    for l in 0..y.cols() {
                        out[i * y.rows() + k][j * y.cols() + l] = x[(i, j)] * y[(k, l)];
                    }
                }
            }
        }
        out
    }

    #[test]
    fn kron_identities() {
        let i6 = DenseMatrix::identity(2).unwrap().kron(&DenseMatrix::identity(3).unwrap()).unwrap();
        assert_eq!(i6, DenseMatrix::identity(6).unwrap());
    }

    #[test]
    fn kron_scalar_scaling() {
        let x = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let got = DenseMatrix::scalar(c(2.0, 0.0)).kron(&x).unwrap();
        let want = DenseMatrix::from_real_rows(&[&[0.0, 2.0], &[2.0, 0.0]]).unwrap();
        assert_eq!(got, want);
        // unit factor on the right
        assert_eq!(x.kron(&DenseMatrix::scalar(ONE)).unwrap(), x);
    }

    #[test]
    fn kron_matches_loop_oracle() {
        let x = DenseMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.5, -1.0)], vec![c(-3.0, 0.0), c(0.0, 1.0)]])
            .unwrap();
        let y = DenseMatrix::from_rows(&[vec![c(0.0, 1.0), c(2.0, 0.0)], vec![c(1.0, 1.0), c(-1.0, 0.5)]])
            .unwrap();
        let got = x.kron(&y).unwrap();
        let want = kron_oracle(&x, &y);
        for (i, row) in want.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                assert_eq!(got[(i, j)], *z);
            }
        }
    }

    #[test]
    fn dagger_is_conjugate_transpose() {
        let m = DenseMatrix::from_rows(&[vec![c(0.0, 1.0), ZERO], vec![ZERO, ONE]]).unwrap();
        let want = DenseMatrix::from_rows(&[vec![c(0.0, -1.0), ZERO], vec![ZERO, ONE]]).unwrap();
        assert_eq!(m.dagger(), want);
        assert_eq!(m.dagger().dagger(), m);
        assert_eq!(DenseMatrix::scalar(c(1.0, 2.0)).dagger(), DenseMatrix::scalar(c(1.0, -2.0)));
        assert_eq!(DenseMatrix::identity(3).unwrap().dagger(), DenseMatrix::identity(3).unwrap());
    }

    #[test]
    fn commutation_perm_cases() {
        assert_eq!(commutation_perm(1, 4).unwrap(), DenseMatrix::identity(4).unwrap());
        let swap = DenseMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(commutation_perm(2, 2).unwrap(), swap);
        let p = commutation_perm(2, 3).unwrap();
        let q = commutation_perm(3, 2).unwrap();
        assert_eq!(q.matmul(&p).unwrap(), DenseMatrix::identity(6).unwrap());
    }

    #[test]
    fn commutation_perm_basis_oracle() {
        // P_{a,b} (e_i ⊗ e_j) = e_j ⊗ e_i, checked on every basis vector.
        let (a, b) = (2, 3);
        let p = commutation_perm(a, b).unwrap();
        for i in 0..a {
            for j in 0..b {
                let mut x = DenseMatrix::zeros(a, 1).unwrap();
                x[(i, 0)] = ONE;
                let mut y = DenseMatrix::zeros(b, 1).unwrap();
                y[(j, 0)] = ONE;
                let lhs = p.matmul(&x.kron(&y).unwrap()).unwrap();
                let rhs = y.kron(&x).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bell_vectors() {
        assert_eq!(bell_unit(1).unwrap(), DenseMatrix::scalar(ONE));
        assert_eq!(bell_counit(1).unwrap(), DenseMatrix::scalar(ONE));
        let eta = bell_unit(2).unwrap();
        let want = DenseMatrix::from_real_rows(&[&[1.0], &[0.0], &[0.0], &[1.0]]).unwrap();
        assert_eq!(eta, want);
    }

    #[test]
    fn inverse_round_trip() {
        let m = DenseMatrix::from_rows(&[vec![c(2.0, 1.0), c(0.5, 0.0)], vec![c(-1.0, 0.0), c(0.0, 3.0)]])
            .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.matmul(&inv).unwrap();
        assert!(prod.max_abs_diff(&DenseMatrix::identity(2).unwrap()).unwrap() < 1e-14);
        let singular = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(DenseMatrix::zeros(257, 256), Err(Error::TooLarge(_))));
        assert!(DenseMatrix::zeros(256, 256).is_ok());
        assert!(DenseMatrix::zeros(0, 3).is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_u = DenseMatrix::from_real_rows(&[&[0.25, 0.0], &[0.0, 0.75]]).unwrap();
        let rho_b = DenseMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.0, 0.5)], vec![c(0.0, -0.5), c(0.5, 0.0)]])
            .unwrap();
        let joint = rho_u.kron(&rho_b).unwrap();
        let reduced = joint.partial_trace_first(2, 2).unwrap();
        assert!(reduced.max_abs_diff(&rho_b).unwrap() < 1e-15);
    }
}
