//! Generators for the named order-6 Hadamard matrices, the one-parameter
//! self-adjoint family, dephasing, and the Hadamard predicate.

use crate::linalg::{ComplexMatrix, LinalgError, Tolerance};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};
use thiserror::Error;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const M_ONE: Complex64 = Complex64::new(-1.0, 0.0);

/// Floating-point slack for the domain boundary. The two endpoints of the
/// parameter domain satisfy r = 0 exactly, but evaluating r there in doubles
/// lands a few ulps on either side; within this band the square root term is
/// snapped to the double-root value.
const BOUNDARY_EPS: f64 = 1e-13;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("theta = {theta} is outside the family domain; unconstrained |x| = {x_modulus}")]
    DomainError { theta: f64, x_modulus: f64 },
    #[error("Butson index {0} out of range 1..=4")]
    IndexError(usize),
    #[error("matrix entry deviates from unit modulus by {max_dev}, beyond tolerance {eps}")]
    NotUnimodular { max_dev: f64, eps: f64 },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("the entries of {0} are not published; only its scalar parameters are known")]
    Unavailable(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Square matrix whose entries all lie on the unit circle (within the
/// asserted tolerance). The universal currency of this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularMatrix {
    inner: ComplexMatrix,
    asserted_tol: Tolerance,
}

impl UnimodularMatrix {
    pub fn new(inner: ComplexMatrix, asserted_tol: Tolerance) -> Result<Self, CatalogError> {
        if !inner.is_square() {
            return Err(CatalogError::NonSquare {
                rows: inner.n_rows(),
                cols: inner.n_cols(),
            });
        }
        let max_dev = inner
            .entries()
            .iter()
            .map(|e| (e.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        if max_dev > asserted_tol.eps() {
            return Err(CatalogError::NotUnimodular {
                max_dev,
                eps: asserted_tol.eps(),
            });
        }
        Ok(Self { inner, asserted_tol })
    }

    pub fn order(&self) -> usize {
        self.inner.n_rows()
    }

    pub fn inner(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.inner
    }

    pub fn asserted_tol(&self) -> Tolerance {
        self.asserted_tol
    }
}

impl std::ops::Index<(usize, usize)> for UnimodularMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

/// A point of the one-parameter family: theta plus the derived entries.
#[derive(Debug, Clone, Copy)]
pub struct FamilyPoint {
    pub theta: f64,
    pub y: Complex64,
    pub delta: Complex64,
    pub x: Complex64,
    pub t: Complex64,
    pub z: Complex64,
    pub r: f64,
}

/// Result of testing a matrix against the Hadamard definition.
#[derive(Debug, Clone, Copy)]
pub struct HadamardCheckReport {
    /// max over entries of | |h| - 1 |
    pub unimodularity_residual: f64,
    /// Frobenius norm of H H* - n I
    pub unitarity_residual: f64,
    pub is_hadamard: bool,
    pub is_self_adjoint: bool,
    pub is_dephased: bool,
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut w = theta.rem_euclid(two_pi);
    if w > PI {
        w -= two_pi;
    }
    w
}

/// e^{2 pi i t}, exact at quarter turns so fourth-root matrices survive a
/// round trip through the turns encoding bit-for-bit.
pub fn unit_phase_from_turns(turns: f64) -> Complex64 {
    let mut u = turns - turns.floor();
    if u >= 1.0 {
        // floor leaves 1.0 behind for tiny negative inputs
        u = 0.0;
    }
    if u == 0.0 {
        return ONE;
    }
    if u == 0.25 {
        return Complex64::new(0.0, 1.0);
    }
    if u == 0.5 {
        return M_ONE;
    }
    if u == 0.75 {
        return Complex64::new(0.0, -1.0);
    }
    let v = if u > 0.5 { u - 1.0 } else { u };
    let angle = 2.0 * PI * v;
    Complex64::new(angle.cos(), angle.sin())
}

/// True iff cos(2 theta) + 2 cos(theta) <= 0, i.e. theta lies in one of the
/// two closed intervals of the family domain (after wrapping into (-pi, pi]).
pub fn theta_domain_contains(theta: f64) -> bool {
    theta.is_finite() && family_r(theta) <= BOUNDARY_EPS
}

fn family_r(theta: f64) -> f64 {
    (2.0 * theta).cos() + 2.0 * theta.cos()
}

/// Lower end of the positive domain interval: arccos((-1 + sqrt(3))/2).
pub fn theta_domain_boundary() -> f64 {
    ((-1.0 + 3.0f64.sqrt()) / 2.0).acos()
}

fn family_point_branch(theta: f64, radical_sign: f64) -> FamilyPoint {
    let y = Complex64::from_polar(1.0, theta);
    let y2 = y * y;
    let r = family_r(theta);
    // The radicand 1 + 2y + 2y^3 + y^4 collapses to 2 r y^2 on the unit
    // circle; evaluating it in that form avoids the catastrophic
    // cancellation the raw polynomial suffers near the r = 0 boundary.
    let r_eff = if r.abs() <= BOUNDARY_EPS { 0.0 } else { r };
    let radicand = y2 * (2.0 * r_eff);
    let w = radicand.sqrt() * SQRT_2;
    let numerator = ONE + y * 2.0 + y2 + w * radical_sign;
    let den_x = ONE + y * 2.0 - y2;
    let den_t = -ONE + y * 2.0 + y2;
    FamilyPoint {
        theta,
        y,
        delta: radicand * 2.0,
        x: numerator / den_x,
        t: numerator / den_t,
        z: den_x / (y * den_t),
        r,
    }
}

/// Family parameters for the principal branch; errors outside the domain.
pub fn family_point(theta: f64) -> Result<FamilyPoint, CatalogError> {
    if !theta_domain_contains(theta) {
        let p = family_point_branch(theta, -1.0);
        return Err(CatalogError::DomainError {
            theta,
            x_modulus: p.x.norm(),
        });
    }
    Ok(family_point_branch(theta, -1.0))
}

/// Same but taking the opposite sign in front of the square root.
pub fn family_point_prime(theta: f64) -> Result<FamilyPoint, CatalogError> {
    if !theta_domain_contains(theta) {
        let p = family_point_branch(theta, 1.0);
        return Err(CatalogError::DomainError {
            theta,
            x_modulus: p.x.norm(),
        });
    }
    Ok(family_point_branch(theta, 1.0))
}

/// Unconstrained evaluation, domain check skipped. The returned x and t leave
/// the unit circle when r > 0; useful for diagnostics and tests only.
pub fn family_point_unconstrained(theta: f64) -> FamilyPoint {
    family_point_branch(theta, -1.0)
}

fn family_template(p: &FamilyPoint) -> UnimodularMatrix {
    let (x, y, z, t) = (p.x, p.y, p.z, p.t);
    let rows = vec![
        vec![ONE, ONE, ONE, ONE, ONE, ONE],
        vec![ONE, M_ONE, x.conj(), -y, -x.conj(), y],
        vec![ONE, x, M_ONE, t, -t, -x],
        vec![ONE, -y.conj(), t.conj(), M_ONE, y.conj(), -t.conj()],
        vec![ONE, -x, -t.conj(), y, ONE, z.conj()],
        vec![ONE, y.conj(), -x.conj(), -t, z, ONE],
    ];
    let m = ComplexMatrix::from_rows(&rows).expect("fixed 6x6 shape");
    UnimodularMatrix::new(m, Tolerance::default()).expect("family entries are unimodular in-domain")
}

/// The self-adjoint dephased Hadamard matrix H(theta).
pub fn h_theta(theta: f64) -> Result<UnimodularMatrix, CatalogError> {
    Ok(family_template(&family_point(theta)?))
}

/// The second family branch H'(theta); equivalent to H(theta) via
/// [`crate::equivalence::branch_swap_witness`].
pub fn h_theta_prime(theta: f64) -> Result<UnimodularMatrix, CatalogError> {
    Ok(family_template(&family_point_prime(theta)?))
}

/// The complex number d building the cyclic-6-roots matrix.
pub fn c6_parameter() -> Complex64 {
    let s3 = 3.0f64.sqrt();
    Complex64::new((1.0 - s3) / 2.0, (s3 / 2.0).sqrt())
}

/// Family angle whose member is permutation-conjugate to the cyclic-6-roots
/// matrix: wrap(2 Arg(d)).
pub fn theta_for_c6() -> f64 {
    wrap_angle(2.0 * c6_parameter().arg())
}

/// The Bjorck-Froberg cyclic-6-roots Hadamard matrix.
pub fn c6_cyclic() -> UnimodularMatrix {
    let d = c6_parameter();
    let d2 = d * d;
    let d3 = d2 * d;
    let rows = vec![
        vec![ONE, ONE, ONE, ONE, ONE, ONE],
        vec![ONE, M_ONE, -d, -d2, d2, d],
        vec![ONE, -d.conj(), ONE, d2, -d3, d2],
        vec![ONE, -d2.conj(), d2.conj(), M_ONE, d2, -d2],
        vec![ONE, d2.conj(), -d3.conj(), d2.conj(), ONE, -d],
        vec![ONE, d.conj(), d2.conj(), -d2.conj(), -d.conj(), M_ONE],
    ];
    let m = ComplexMatrix::from_rows(&rows).expect("fixed 6x6 shape");
    UnimodularMatrix::new(m, Tolerance::default()).expect("|d| = 1")
}

// Fourth-root matrices as quarter-turn exponents (i^k).
const BUTSON_TURNS: [[[u8; 6]; 6]; 4] = [
    [
        [0, 0, 0, 0, 0, 0],
        [0, 2, 3, 0, 1, 2],
        [0, 1, 2, 1, 3, 3],
        [0, 0, 3, 2, 2, 1],
        [0, 3, 1, 2, 0, 2],
        [0, 2, 1, 3, 2, 0],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [0, 2, 1, 0, 3, 2],
        [0, 3, 2, 3, 1, 1],
        [0, 0, 1, 2, 2, 3],
        [0, 1, 3, 2, 0, 2],
        [0, 2, 3, 1, 2, 0],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [0, 2, 3, 3, 1, 1],
        [0, 1, 2, 0, 3, 2],
        [0, 1, 0, 2, 2, 3],
        [0, 3, 1, 2, 0, 2],
        [0, 3, 2, 1, 2, 0],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [0, 2, 1, 1, 3, 3],
        [0, 3, 2, 0, 1, 2],
        [0, 3, 0, 2, 2, 1],
        [0, 1, 3, 2, 0, 2],
        [0, 1, 2, 3, 2, 0],
    ],
];

/// The k-th fourth-root self-adjoint matrix, k in 1..=4.
pub fn butson_h(k: usize) -> Result<UnimodularMatrix, CatalogError> {
    if !(1..=4).contains(&k) {
        return Err(CatalogError::IndexError(k));
    }
    let grid = &BUTSON_TURNS[k - 1];
    let rows: Vec<Vec<Complex64>> = grid
        .iter()
        .map(|row| row.iter().map(|&e| unit_phase_from_turns(f64::from(e) * 0.25)).collect())
        .collect();
    let m = ComplexMatrix::from_rows(&rows).expect("fixed 6x6 shape");
    Ok(UnimodularMatrix::new(m, Tolerance::default()).expect("fourth roots of unity"))
}

/// Fourier matrix of order n: entries omega^{jk}, omega = e^{2 pi i / n}.
pub fn fourier(n: usize) -> UnimodularMatrix {
    assert!(n >= 1, "fourier order must be positive");
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = unit_phase_from_turns(((j * k) % n) as f64 / n as f64);
        }
    }
    UnimodularMatrix::new(m, Tolerance::default()).expect("roots of unity")
}

/// Kronecker product; Hadamard x Hadamard is Hadamard.
pub fn tensor(a: &UnimodularMatrix, b: &UnimodularMatrix) -> UnimodularMatrix {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    m[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    UnimodularMatrix::new(m, Tolerance::default()).expect("products of unit-modulus entries")
}

/// Normal form: scale rows and columns so the first row and column become
/// exactly 1. A hermitian input stays hermitian (its diagonal is multiplied
/// by h_{11}, which matches flipping the overall sign first when h_{11} = -1).
pub fn dephase(h: &UnimodularMatrix) -> UnimodularMatrix {
    let n = h.order();
    let h11 = h[(0, 0)];
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            if k == 0 || l == 0 {
                m[(k, l)] = ONE;
            } else {
                m[(k, l)] = h[(k, l)] * h[(k, 0)].conj() * h[(0, l)].conj() * h11;
            }
        }
    }
    UnimodularMatrix::new(m, h.asserted_tol()).expect("unit moduli preserved")
}

/// Test a square matrix against the Hadamard definition at tolerance `tol`.
pub fn check(h: &ComplexMatrix, tol: Tolerance) -> Result<HadamardCheckReport, CatalogError> {
    if !h.is_square() {
        return Err(CatalogError::NonSquare {
            rows: h.n_rows(),
            cols: h.n_cols(),
        });
    }
    let n = h.n_rows();
    let unimodularity_residual = h
        .entries()
        .iter()
        .map(|e| (e.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let adjoint = h.conj_transpose();
    let product = h.mat_mul(&adjoint).expect("square");
    let mut scaled_id = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        scaled_id[(k, k)] = Complex64::new(n as f64, 0.0);
    }
    let unitarity_residual = product.frobenius_dist(&scaled_id).expect("same shape");
    let budget = tol.eps() * n as f64;
    let hermitian_residual = h.frobenius_dist(&adjoint).expect("same shape");
    let dephased_residual = (0..n)
        .flat_map(|k| [(0, k), (k, 0)])
        .map(|idx| (h[idx] - ONE).norm())
        .fold(0.0, f64::max);
    Ok(HadamardCheckReport {
        unimodularity_residual,
        unitarity_residual,
        is_hadamard: unimodularity_residual <= budget && unitarity_residual <= budget,
        is_self_adjoint: hermitian_residual <= budget,
        is_dephased: dephased_residual <= budget,
    })
}

/// Placeholder for the order-9 circulant example: its entries were never
/// published, only the parameter y = (1 - i sqrt(15))/4.
pub fn h9() -> Result<UnimodularMatrix, CatalogError> {
    Err(CatalogError::Unavailable("H9"))
}

/// Placeholder, order 9, fixed-diagonal search example (parameter e^{2 pi i/10}).
pub fn bn9() -> Result<UnimodularMatrix, CatalogError> {
    Err(CatalogError::Unavailable("BN9"))
}

/// Placeholder, order 10, all-ones-diagonal example (parameter (-1 + i sqrt(15))/4).
pub fn bn10() -> Result<UnimodularMatrix, CatalogError> {
    Err(CatalogError::Unavailable("BN10"))
}

/// Placeholder, order 11 (parameter 3/4 - i sqrt(7)/4).
pub fn n11() -> Result<UnimodularMatrix, CatalogError> {
    Err(CatalogError::Unavailable("N11"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::test_phase;

    fn unit(seed: u64, k: u64) -> Complex64 {
        Complex64::from_polar(1.0, test_phase(seed, k))
    }

    #[test]
    fn domain_predicate() {
        assert!(theta_domain_contains(PI));
        assert!(!theta_domain_contains(0.0));
        let boundary = theta_domain_boundary();
        assert!(theta_domain_contains(boundary));
        assert!(theta_domain_contains(-boundary));
        assert!(family_r(boundary).abs() <= 1e-12);
        // 2p^2 + 2p - 1 = 0 at p = (-1+sqrt(3))/2
        let p = (-1.0 + 3.0f64.sqrt()) / 2.0;
        assert!((2.0 * p * p + 2.0 * p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn family_point_pinned_values() {
        let p = family_point(PI / 2.0).unwrap();
        assert!((p.x - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((p.y - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((p.z - M_ONE).norm() < 1e-14);
        assert!((p.t - ONE).norm() < 1e-14);
        // the quarter-circle member lands on fourth roots of unity
        for e in h_theta(PI / 2.0).unwrap().inner().entries() {
            let nearest = [
                ONE,
                M_ONE,
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ]
            .iter()
            .map(|r| (e - r).norm())
            .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-14);
        }

        let p = family_point(PI).unwrap();
        assert!((p.x - Complex64::new(0.0, 1.0)).norm() < 1e-13);
        assert!((p.y - M_ONE).norm() < 1e-14);
        assert!((p.z - M_ONE).norm() < 1e-13);
        assert!((p.t - Complex64::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn theta_zero_rejected_with_contracted_x() {
        let err = family_point(0.0).unwrap_err();
        match err {
            CatalogError::DomainError { x_modulus, .. } => {
                // (4 - sqrt(12)) / 2 = 2 - sqrt(3)
                assert!((x_modulus - (2.0 - 3.0f64.sqrt())).abs() < 1e-12);
            }
            other => panic!("expected DomainError, got {other:?}"),
        }
        assert!(h_theta(0.0).is_err());
    }

    #[test]
    fn family_matrices_pass_checks_on_grid() {
        let tol = Tolerance::default();
        let boundary = theta_domain_boundary();
        for k in 0..60 {
            let theta = boundary + (PI - boundary) * k as f64 / 59.0;
            for h in [h_theta(theta).unwrap(), h_theta_prime(theta).unwrap()] {
                let report = check(h.inner(), tol).unwrap();
                assert!(report.is_hadamard, "theta={theta}");
                assert!(report.is_self_adjoint);
                assert!(report.is_dephased);
                assert!(report.unitarity_residual < 1e-10);
                let herm = h.inner().frobenius_dist(&h.inner().conj_transpose()).unwrap();
                assert!(herm < 1e-12);
            }
        }
    }

    #[test]
    fn family_point_invariants_on_grid() {
        let boundary = theta_domain_boundary();
        for k in 0..200 {
            let theta = -PI + (PI - boundary) * k as f64 / 199.0;
            let p = family_point(theta).unwrap();
            assert!((p.y.norm() - 1.0).abs() < 1e-15);
            assert!(p.r <= BOUNDARY_EPS);
            for v in [p.x, p.t, p.z] {
                assert!((v.norm() - 1.0).abs() < 1e-10);
            }
            // defining relation for z
            let lhs = p.z * p.y * (-ONE + p.y * 2.0 + p.y * p.y);
            let rhs = ONE + p.y * 2.0 - p.y * p.y;
            assert!((lhs - rhs).norm() < 1e-10);
            // quadratic for x
            let y2 = p.y * p.y;
            let q = (y2 - p.y * 2.0 - ONE) * p.x * p.x + (y2 + p.y * 2.0 + ONE) * p.x * 2.0
                - (y2 + p.y * 2.0 - ONE);
            assert!(q.norm() < 1e-9);
        }
    }

    #[test]
    fn branches_differ_generically_but_merge_at_boundary() {
        let a = h_theta(2.0).unwrap();
        let b = h_theta_prime(2.0).unwrap();
        assert!(a.inner().frobenius_dist(b.inner()).unwrap() > 1e-3);
        let boundary = theta_domain_boundary();
        let a = h_theta(boundary).unwrap();
        let b = h_theta_prime(boundary).unwrap();
        assert!(a.inner().frobenius_dist(b.inner()).unwrap() < 1e-12);
    }

    #[test]
    fn unconstrained_branch_leaves_circle_for_positive_r() {
        for k in 0..100 {
            let theta = -1.15 + 2.30 * k as f64 / 99.0;
            let p = family_point_unconstrained(theta);
            assert!(p.r > 0.0);
            assert!((p.x.norm() - 1.0).abs() > 1e-3, "theta={theta}");
        }
    }

    #[test]
    fn denominators_bounded_away_from_zero_on_circle() {
        let mut min_mod = f64::INFINITY;
        for k in 0..20_000 {
            let y = Complex64::from_polar(1.0, -PI + 2.0 * PI * k as f64 / 20_000.0);
            let y2 = y * y;
            for d in [ONE + y * 2.0 - y2, -ONE + y * 2.0 + y2, y2 - y * 2.0 - ONE] {
                min_mod = min_mod.min(d.norm());
            }
        }
        assert!(min_mod > 0.4, "min denominator modulus {min_mod}");
    }

    #[test]
    fn c6_is_hadamard_with_expected_diagonal() {
        let d = c6_parameter();
        assert!((d.norm() - 1.0).abs() < 1e-15);
        let m = c6_cyclic();
        let report = check(m.inner(), Tolerance::default()).unwrap();
        assert!(report.is_hadamard);
        assert!(report.unitarity_residual < 1e-12);
        let expected = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        for (k, &sign) in expected.iter().enumerate() {
            assert!((m[(k, k)] - Complex64::new(sign, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn butson_matrices() {
        let h3 = butson_h(3).unwrap();
        let row2: Vec<Complex64> = (0..6).map(|c| h3[(1, c)]).collect();
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(row2, vec![ONE, M_ONE, -i, -i, i, i]);
        for k in 1..=4 {
            let h = butson_h(k).unwrap();
            let report = check(h.inner(), Tolerance::default()).unwrap();
            assert!(report.is_hadamard && report.is_self_adjoint && report.is_dephased);
            for e in h.inner().entries() {
                assert!((e.re.abs() == 1.0 && e.im == 0.0) || (e.re == 0.0 && e.im.abs() == 1.0));
            }
        }
        assert!(matches!(butson_h(0), Err(CatalogError::IndexError(0))));
        assert!(matches!(butson_h(5), Err(CatalogError::IndexError(5))));
    }

    #[test]
    fn fourier_basics() {
        assert_eq!(fourier(1).inner().entries(), &[ONE]);
        let f2 = fourier(2);
        assert_eq!(f2.inner().entries(), &[ONE, ONE, ONE, M_ONE]);
        let f6 = fourier(6);
        let report = check(f6.inner(), Tolerance::default()).unwrap();
        assert!(report.is_hadamard);
        // F6 F6* = 6 I to high accuracy
        let prod = f6.inner().mat_mul(&f6.inner().conj_transpose()).unwrap();
        let mut six_id = ComplexMatrix::zeros(6, 6);
        for k in 0..6 {
            six_id[(k, k)] = Complex64::new(6.0, 0.0);
        }
        assert!(prod.frobenius_dist(&six_id).unwrap() < 1e-12);
    }

    #[test]
    fn tensor_products() {
        let t = tensor(&fourier(2), &fourier(3));
        let report = check(t.inner(), Tolerance::default()).unwrap();
        assert!(report.is_hadamard);
        assert_eq!(t.order(), 6);
        let trivial = UnimodularMatrix::new(ComplexMatrix::identity(1), Tolerance::default()).unwrap();
        let same = tensor(&fourier(5), &trivial);
        assert!(same.inner().frobenius_dist(fourier(5).inner()).unwrap() == 0.0);
        for e in t.inner().entries() {
            assert!((e.norm() - 1.0).abs() < 2e-16);
        }
    }

    #[test]
    fn dephase_fixes_enphased_fourier() {
        let f6 = fourier(6);
        assert!(dephase(&f6).inner().frobenius_dist(f6.inner()).unwrap() == 0.0);
        // random unimodular diagonals with first entry 1
        let n = 6;
        let mut m = ComplexMatrix::zeros(n, n);
        let dl: Vec<Complex64> = (0..n).map(|k| if k == 0 { ONE } else { unit(5, k as u64) }).collect();
        let dr: Vec<Complex64> = (0..n).map(|k| if k == 0 { ONE } else { unit(6, k as u64) }).collect();
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = dl[r] * f6[(r, c)] * dr[c];
            }
        }
        let enphased = UnimodularMatrix::new(m, Tolerance::default()).unwrap();
        let back = dephase(&enphased);
        assert!(back.inner().frobenius_dist(f6.inner()).unwrap() < 1e-14);
    }

    #[test]
    fn dephase_preserves_hermitian_and_handles_negative_corner() {
        let h = h_theta(2.2).unwrap();
        // conjugation by a unimodular diagonal keeps hermitian, breaks dephasing
        let n = 6;
        let d: Vec<Complex64> = (0..n).map(|k| unit(9, k as u64)).collect();
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = d[r] * h[(r, c)] * d[c].conj();
            }
        }
        let conj = UnimodularMatrix::new(m, Tolerance::default()).unwrap();
        let deph = dephase(&conj);
        let herm = deph.inner().frobenius_dist(&deph.inner().conj_transpose()).unwrap();
        assert!(herm < 1e-14);
        // hermitian with h_{11} = -1: global sign flip folds away
        let neg = UnimodularMatrix::new(h.inner().scale(M_ONE), Tolerance::default()).unwrap();
        let deph = dephase(&neg);
        assert!(deph.inner().frobenius_dist(h.inner()).unwrap() < 1e-14);
    }

    #[test]
    fn check_flags_broken_unimodularity() {
        let f6 = fourier(6);
        let mut m = f6.inner().clone();
        m[(2, 3)] *= 0.9;
        let report = check(&m, Tolerance::default()).unwrap();
        assert!(!report.is_hadamard);
        assert!((report.unimodularity_residual - 0.1).abs() < 1e-12);
        let report = check(h_theta(1.5).unwrap().inner(), Tolerance::default()).unwrap();
        assert!(report.is_hadamard && report.is_self_adjoint && report.is_dephased);
    }

    #[test]
    fn unavailable_stubs() {
        for f in [h9, bn9, bn10, n11] {
            assert!(matches!(f(), Err(CatalogError::Unavailable(_))));
        }
    }

    #[test]
    fn quarter_turns_are_exact() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(unit_phase_from_turns(0.0), ONE);
        assert_eq!(unit_phase_from_turns(0.25), i);
        assert_eq!(unit_phase_from_turns(0.5), M_ONE);
        assert_eq!(unit_phase_from_turns(0.75), -i);
        assert_eq!(unit_phase_from_turns(-0.25), -i);
        assert_eq!(unit_phase_from_turns(1.25), i);
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    // Three identities of unit-modulus numbers that the order-6
    // classification rests on, checked on randomly constructed samples.

    #[test]
    fn three_unit_vectors_summing_to_zero_are_cube_root_spread() {
        let eps1 = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let eps2 = eps1.conj();
        for trial in 0..1000 {
            let z = unit(21, trial);
            let (x, y) = if trial % 2 == 0 { (z * eps1, z * eps2) } else { (z * eps2, z * eps1) };
            assert!((x + y + z).norm() < 1e-14);
            let (a, b) = (x / z, y / z);
            let direct = (a - eps1).norm() + (b - eps2).norm();
            let swapped = (a - eps2).norm() + (b - eps1).norm();
            assert!(direct.min(swapped) < 1e-12);
        }
    }

    #[test]
    fn four_unit_vectors_summing_to_zero_pair_up() {
        for trial in 0..1000 {
            let u = unit(22, 2 * trial);
            let v = unit(23, 2 * trial + 1);
            let mut quad = [u, -u, v, -v];
            // deterministic shuffle
            for k in (1..4usize).rev() {
                let j = (test_phase(24, trial * 4 + k as u64).to_bits() % (k as u64 + 1)) as usize;
                quad.swap(k, j);
            }
            let [x, y, z, t] = quad;
            assert!((x + y + z + t).norm() < 1e-14);
            let m = (x + y).norm().min((x + z).norm()).min((x + t).norm());
            assert!(m < 1e-12);
        }
    }

    #[test]
    fn triple_product_of_unit_sums_is_real() {
        for trial in 0..1000 {
            let u = unit(31, trial);
            let v = unit(32, trial);
            let s = unit(33, trial);
            let t = unit(34, trial);
            let value = (u + v) * (s.conj() + t.conj()) * (u.conj() * s + v.conj() * t);
            assert!(value.im.abs() < 1e-12, "Im = {}", value.im);
        }
    }
}
