//! Minimal dense linear algebra for small matrices.
//!
//! Everything here is sized for matrices of order n <= 16: straightforward
//! O(n^3) products, a one-sided Jacobi SVD and a column-pivoted Householder
//! QR as two independent routes to numerical rank.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("tolerance must satisfy 0 < eps < 1, got {0}")]
    BadTolerance(f64),
}

/// Relative tolerance used by rank decisions and Hadamard checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self, LinalgError> {
        if eps > 0.0 && eps < 1.0 {
            Ok(Self { eps })
        } else {
            Err(LinalgError::BadTolerance(eps))
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: 1e-9 }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if entries.len() != n_rows * n_cols {
            return Err(LinalgError::EntryCount {
                rows: n_rows,
                cols: n_cols,
                got: entries.len(),
            });
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            entries: vec![Complex64::new(0.0, 0.0); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(LinalgError::EntryCount {
                    rows: n_rows,
                    cols: n_cols,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n_rows, n_cols, entries)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Standard matrix product `self * other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n_cols != other.n_rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: other.n_rows,
                right_cols: other.n_cols,
            });
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for r in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(r, k)];
                for c in 0..other.n_cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Frobenius distance `||A - B||_F`; zero iff entrywise equal.
    pub fn frobenius_dist(&self, other: &Self) -> Result<f64, LinalgError> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: other.n_rows,
                right_cols: other.n_cols,
            });
        }
        let sum: f64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok(sum.sqrt())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.n_cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.n_cols + c]
    }
}

/// Dense real matrix, row-major. Carrier for the defect tangent system.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn new(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if data.len() != n_rows * n_cols {
            return Err(LinalgError::EntryCount {
                rows: n_rows,
                cols: n_cols,
                got: data.len(),
            });
        }
        Ok(Self { n_rows, n_cols, data })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Singular values in decreasing order, via one-sided Jacobi.
    pub fn singular_values(&self) -> Vec<f64> {
        self.jacobi_svd().0
    }

    /// Number of singular values exceeding `tol.eps()` times the largest one.
    pub fn numerical_rank(&self, tol: Tolerance) -> usize {
        let sigma = self.singular_values();
        rank_from_singular_values(&sigma, tol)
    }

    /// Rank estimate from a column-pivoted Householder QR; independent
    /// cross-check for [`RealMatrix::numerical_rank`].
    pub fn rank_col_pivot_qr(&self, tol: Tolerance) -> usize {
        let m = self.n_rows;
        let n = self.n_cols;
        let mut a = self.data.clone();
        let at = |a: &[f64], r: usize, c: usize| a[r * n + c];
        let mut piv: Vec<usize> = (0..n).collect();
        let mut col_norms: Vec<f64> = (0..n)
            .map(|c| (0..m).map(|r| at(&a, r, c).powi(2)).sum::<f64>())
            .collect();
        let steps = m.min(n);
        let mut diag = Vec::with_capacity(steps);
        for k in 0..steps {
            // pivot on the column of largest remaining norm
            let (jmax, _) = col_norms
                .iter()
                .enumerate()
                .skip(k)
                .fold((k, -1.0), |acc, (j, &v)| if v > acc.1 { (j, v) } else { acc });
            if jmax != k {
                for r in 0..m {
                    a.swap(r * n + k, r * n + jmax);
                }
                col_norms.swap(k, jmax);
                piv.swap(k, jmax);
            }
            // Householder vector for column k below row k
            let alpha: f64 = (k..m).map(|r| at(&a, r, k).powi(2)).sum::<f64>().sqrt();
            if alpha == 0.0 {
                diag.push(0.0);
                continue;
            }
            let beta = if at(&a, k, k) >= 0.0 { -alpha } else { alpha };
            let mut v: Vec<f64> = (k..m).map(|r| at(&a, r, k)).collect();
            v[0] -= beta;
            let vnorm2: f64 = v.iter().map(|x| x * x).sum();
            if vnorm2 > 0.0 {
                for c in k..n {
                    let dot: f64 = (k..m).map(|r| v[r - k] * at(&a, r, c)).sum();
                    let f = 2.0 * dot / vnorm2;
                    for r in k..m {
                        a[r * n + c] -= f * v[r - k];
                    }
                }
            }
            a[k * n + k] = beta;
            diag.push(beta.abs());
            for (c, norm) in col_norms.iter_mut().enumerate().skip(k + 1) {
                *norm = (k + 1..m).map(|r| at(&a, r, c).powi(2)).sum::<f64>();
            }
        }
        let largest = diag.iter().cloned().fold(0.0f64, f64::max);
        if largest == 0.0 {
            return 0;
        }
        diag.iter().filter(|&&d| d > tol.eps() * largest).count()
    }

    /// Orthonormal basis of the kernel: right singular vectors whose singular
    /// value falls at or below `tol.eps()` times the largest one.
    pub fn kernel_basis(&self, tol: Tolerance) -> Vec<Vec<f64>> {
        let (sigma, v) = self.jacobi_svd();
        let cutoff = sigma.first().map_or(0.0, |&s| s * tol.eps());
        let n = self.n_cols;
        let mut basis = Vec::new();
        for (j, &s) in sigma.iter().enumerate() {
            if s <= cutoff {
                basis.push((0..n).map(|r| v[r * n + j]).collect());
            }
        }
        basis
    }

    /// One-sided Jacobi: returns singular values (decreasing) and the
    /// orthogonal matrix `V` (n_cols x n_cols, row-major) with `A V = U diag(sigma)`.
    fn jacobi_svd(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.n_rows;
        let n = self.n_cols;
        let mut w = self.data.clone(); // m x n, columns get orthogonalized
        let mut v = vec![0.0; n * n];
        for k in 0..n {
            v[k * n + k] = 1.0;
        }
        let col_dot = |w: &[f64], p: usize, q: usize| (0..m).map(|r| w[r * n + p] * w[r * n + q]).sum::<f64>();
        let eps = 1e-15;
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let app = col_dot(&w, p, p);
                    let aqq = col_dot(&w, q, q);
                    let apq = col_dot(&w, p, q);
                    if apq.abs() <= eps * (app * aqq).sqrt() || apq == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let zeta = (aqq - app) / (2.0 * apq);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let cs = 1.0 / (1.0 + t * t).sqrt();
                    let sn = cs * t;
                    for r in 0..m {
                        let wp = w[r * n + p];
                        let wq = w[r * n + q];
                        w[r * n + p] = cs * wp - sn * wq;
                        w[r * n + q] = sn * wp + cs * wq;
                    }
                    for r in 0..n {
                        let vp = v[r * n + p];
                        let vq = v[r * n + q];
                        v[r * n + p] = cs * vp - sn * vq;
                        v[r * n + q] = sn * vp + cs * vq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sigma: Vec<(f64, usize)> = (0..n)
            .map(|j| ((0..m).map(|r| w[r * n + j].powi(2)).sum::<f64>().sqrt(), j))
            .collect();
        sigma.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let order: Vec<usize> = sigma.iter().map(|&(_, j)| j).collect();
        let mut v_sorted = vec![0.0; n * n];
        for (new_j, &old_j) in order.iter().enumerate() {
            for r in 0..n {
                v_sorted[r * n + new_j] = v[r * n + old_j];
            }
        }
        (sigma.into_iter().map(|(s, _)| s).collect(), v_sorted)
    }

    /// `A v` for a kernel-residual check.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n_cols);
        (0..self.n_rows)
            .map(|r| (0..self.n_cols).map(|c| self.data[r * self.n_cols + c] * v[c]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.n_cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.n_cols + c]
    }
}

pub fn rank_from_singular_values(sigma: &[f64], tol: Tolerance) -> usize {
    let largest = sigma.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol.eps() * largest).count()
}
