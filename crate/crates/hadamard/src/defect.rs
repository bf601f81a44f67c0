//! Defect of a Hadamard matrix: the dimension of first-order
//! Hadamard-preserving deformations modulo trivial row/column enphasings,
//! and the derived span-condition / isolation verdict.

use crate::catalog::{check, CatalogError, UnimodularMatrix};
use crate::linalg::{rank_from_singular_values, RealMatrix, Tolerance};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DefectError {
    #[error("input fails the Hadamard check: unimodularity {unimodularity_residual}, unitarity {unitarity_residual}")]
    NotHadamard {
        unimodularity_residual: f64,
        unitarity_residual: f64,
    },
    #[error("rank estimates disagree: singular values give {svd_rank}, pivoted QR gives {qr_rank}; tighten the tolerance")]
    RankAmbiguous { svd_rank: usize, qr_rank: usize },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Tangent-system dimensions and the resulting defect.
#[derive(Debug, Clone, Copy)]
pub struct DefectReport {
    pub n: usize,
    /// n(n-1) real equations.
    pub system_rows: usize,
    /// n^2 real unknowns.
    pub system_cols: usize,
    pub nullity: usize,
    /// nullity minus the 2n-1 trivial enphasing directions.
    pub defect: i64,
    pub satisfies_span_condition: bool,
    pub tol_used: Tolerance,
}

/// Real linear system for first-order preservation of row orthogonality
/// under H_jk -> H_jk e^{i R_jk}: for each pair i < j,
/// sum_k H_ik conj(H_jk) (R_ik - R_jk) = 0, split into real and imaginary
/// parts. Rows ordered by (i, j) lexicographic, columns by row-major R index.
pub fn assemble_defect_system(
    h: &UnimodularMatrix,
    tol: Tolerance,
) -> Result<RealMatrix, DefectError> {
    let report = check(h.inner(), tol)?;
    if !report.is_hadamard {
        return Err(DefectError::NotHadamard {
            unimodularity_residual: report.unimodularity_residual,
            unitarity_residual: report.unitarity_residual,
        });
    }
    let n = h.order();
    let mut system = RealMatrix::zeros(n * (n - 1), n * n);
    let mut row = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = h[(i, k)] * h[(j, k)].conj();
                system[(row, i * n + k)] += c.re;
                system[(row, j * n + k)] -= c.re;
                system[(row + 1, i * n + k)] += c.im;
                system[(row + 1, j * n + k)] -= c.im;
            }
            row += 2;
        }
    }
    Ok(system)
}

/// Defect via the numerical nullity of the tangent system. The singular-value
/// rank and the pivoted-QR rank must agree, otherwise the input straddles the
/// tolerance and the call refuses to guess.
pub fn defect(h: &UnimodularMatrix, tol: Tolerance) -> Result<DefectReport, DefectError> {
    let system = assemble_defect_system(h, tol)?;
    let svd_rank = rank_from_singular_values(&system.singular_values(), tol);
    let qr_rank = system.rank_col_pivot_qr(tol);
    if svd_rank != qr_rank {
        return Err(DefectError::RankAmbiguous { svd_rank, qr_rank });
    }
    let n = h.order();
    let nullity = n * n - svd_rank;
    let defect = nullity as i64 - (2 * n as i64 - 1);
    Ok(DefectReport {
        n,
        system_rows: system.n_rows(),
        system_cols: system.n_cols(),
        nullity,
        defect,
        satisfies_span_condition: defect == 0,
        tol_used: tol,
    })
}

/// Zero defect certifies isolation; a false answer is inconclusive.
pub fn is_isolated_sufficient(h: &UnimodularMatrix, tol: Tolerance) -> Result<bool, DefectError> {
    Ok(defect(h, tol)?.satisfies_span_condition)
}
