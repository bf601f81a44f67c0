//! Hadamard equivalence: certificates H2 = P1 D1 H1 D2 P2, a
//! permutation/phase-invariant fingerprint, exhaustive search for small
//! orders, and classification of order-6 self-adjoint matrices onto the
//! one-parameter family.

use crate::catalog::{
    self, dephase, h_theta, theta_domain_contains, UnimodularMatrix,
};
use crate::linalg::{ComplexMatrix, Tolerance};
use num_complex::Complex64;
use thiserror::Error;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Quantization grid for fingerprint values. Coarser than the verification
/// tolerance so roundoff never splits a true match.
const FINGERPRINT_GRID: f64 = 1e-7;

/// Grid for the row-multiset prefilter inside the brute-force scan.
const SIGNATURE_GRID: f64 = 1e-6;

/// Largest order accepted by the factorial-time search.
const BRUTE_FORCE_MAX_ORDER: usize = 8;

#[derive(Debug, Error)]
pub enum EquivError {
    #[error("certificate order {cert} does not match matrix order {matrix}")]
    DimensionMismatch { cert: usize, matrix: usize },
    #[error("order {0} exceeds the brute-force limit of {BRUTE_FORCE_MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("matrix is not hermitian: residual {residual}")]
    NotHermitian { residual: f64 },
    #[error("classification applies to order 6 only, got {0}")]
    NotOrderSix(usize),
    #[error("{0} is not a permutation of 0..{1}")]
    BadPermutation(String, usize),
    #[error("diagonal entry {index} has modulus {modulus}, expected 1")]
    NotUnimodularDiagonal { index: usize, modulus: f64 },
}

/// Witness for H2 = P1 D1 H1 D2 P2.
///
/// `p1[i]` is the source row placed at result row `i`; `p2[j]` the source
/// column placed at result column `j`; `d1`/`d2` are indexed by source row
/// and column respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceCertificate {
    p1: Vec<usize>,
    d1: Vec<Complex64>,
    d2: Vec<Complex64>,
    p2: Vec<usize>,
}

fn validate_permutation(p: &[usize], label: &str) -> Result<(), EquivError> {
    let n = p.len();
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return Err(EquivError::BadPermutation(format!("{label}={p:?}"), n));
        }
        seen[v] = true;
    }
    Ok(())
}

impl EquivalenceCertificate {
    pub fn new(
        p1: Vec<usize>,
        d1: Vec<Complex64>,
        d2: Vec<Complex64>,
        p2: Vec<usize>,
    ) -> Result<Self, EquivError> {
        let n = p1.len();
        if d1.len() != n || d2.len() != n || p2.len() != n {
            return Err(EquivError::DimensionMismatch { cert: n, matrix: d1.len() });
        }
        validate_permutation(&p1, "p1")?;
        validate_permutation(&p2, "p2")?;
        for (index, d) in d1.iter().chain(d2.iter()).enumerate() {
            let modulus = d.norm();
            if (modulus - 1.0).abs() > 1e-12 {
                return Err(EquivError::NotUnimodularDiagonal { index: index % n, modulus });
            }
        }
        Ok(Self { p1, d1, d2, p2 })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            p1: (0..n).collect(),
            d1: vec![ONE; n],
            d2: vec![ONE; n],
            p2: (0..n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.p1.len()
    }

    pub fn p1(&self) -> &[usize] {
        &self.p1
    }

    pub fn d1(&self) -> &[Complex64] {
        &self.d1
    }

    pub fn d2(&self) -> &[Complex64] {
        &self.d2
    }

    pub fn p2(&self) -> &[usize] {
        &self.p2
    }

    /// Certificate of the inverse map: if `self` sends H1 to H2, the result
    /// sends H2 to H1.
    pub fn invert(&self) -> Self {
        let n = self.order();
        let mut p1 = vec![0; n];
        let mut p2 = vec![0; n];
        let mut d1 = vec![ONE; n];
        let mut d2 = vec![ONE; n];
        for i in 0..n {
            p1[self.p1[i]] = i;
            p2[self.p2[i]] = i;
        }
        for k in 0..n {
            d1[k] = self.d1[self.p1[k]].conj();
            d2[k] = self.d2[self.p2[k]].conj();
        }
        Self { p1, d1, d2, p2 }
    }

    /// Certificate of `outer` applied after `inner`.
    pub fn compose(outer: &Self, inner: &Self) -> Self {
        let n = inner.order();
        let mut inv_p1 = vec![0; n];
        let mut inv_p2 = vec![0; n];
        for i in 0..n {
            inv_p1[inner.p1[i]] = i;
            inv_p2[inner.p2[i]] = i;
        }
        let p1 = (0..n).map(|i| inner.p1[outer.p1[i]]).collect();
        let p2 = (0..n).map(|j| inner.p2[outer.p2[j]]).collect();
        let d1 = (0..n).map(|k| inner.d1[k] * outer.d1[inv_p1[k]]).collect();
        let d2 = (0..n).map(|k| inner.d2[k] * outer.d2[inv_p2[k]]).collect();
        Self { p1, d1, d2, p2 }
    }

    /// Rebalance the shared phase between d1 and d2 so d1[0] = 1.
    fn normalize_global_phase(mut self) -> Self {
        let c = self.d1[0].conj();
        for d in &mut self.d1 {
            *d *= c;
        }
        let cinv = c.conj();
        for d in &mut self.d2 {
            *d *= cinv;
        }
        self
    }
}

/// Compute P1 D1 H D2 P2.
pub fn apply_certificate(
    cert: &EquivalenceCertificate,
    h: &UnimodularMatrix,
) -> Result<UnimodularMatrix, EquivError> {
    let n = h.order();
    if cert.order() != n {
        return Err(EquivError::DimensionMismatch { cert: cert.order(), matrix: n });
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let r = cert.p1[i];
        for j in 0..n {
            let c = cert.p2[j];
            out[(i, j)] = cert.d1[r] * h[(r, c)] * cert.d2[c];
        }
    }
    Ok(UnimodularMatrix::new(out, h.asserted_tol()).expect("unit moduli preserved"))
}

/// True iff `apply_certificate(cert, h1)` lands on `h2` within tol.eps * n.
pub fn verify_certificate(
    cert: &EquivalenceCertificate,
    h1: &UnimodularMatrix,
    h2: &UnimodularMatrix,
    tol: Tolerance,
) -> Result<bool, EquivError> {
    if h1.order() != h2.order() {
        return Err(EquivError::DimensionMismatch { cert: h1.order(), matrix: h2.order() });
    }
    let mapped = apply_certificate(cert, h1)?;
    let dist = mapped
        .inner()
        .frobenius_dist(h2.inner())
        .expect("orders already checked");
    Ok(dist <= tol.eps() * h1.order() as f64)
}

/// Sorted multiset of quadruple products h_ij h_kl conj(h_il) conj(h_kj)
/// over i<k, j<l, quantized on a fixed grid. Each value is stored up to
/// complex conjugation (imaginary part by absolute value) so that row and
/// column reorderings, which conjugate individual products, only permute
/// the multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    n: usize,
    values: Vec<(i64, i64)>,
}

impl Fingerprint {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Quantized (re, |im|) pairs; multiply by the grid to recover values.
    pub fn values(&self) -> &[(i64, i64)] {
        &self.values
    }

    pub fn grid() -> f64 {
        FINGERPRINT_GRID
    }
}

fn quantize(v: Complex64, grid: f64) -> (i64, i64) {
    ((v.re / grid).round() as i64, (v.im / grid).round() as i64)
}

fn quantize_canonical(v: Complex64, grid: f64) -> (i64, i64) {
    let (re, im) = quantize(v, grid);
    (re, im.abs())
}

/// Equivalence-invariant fingerprint of a unimodular matrix.
pub fn fingerprint(h: &UnimodularMatrix) -> Fingerprint {
    let n = h.order();
    let mut values = Vec::with_capacity(n * n * (n - 1) * (n - 1) / 4);
    for i in 0..n {
        for k in (i + 1)..n {
            for j in 0..n {
                for l in (j + 1)..n {
                    let v = h[(i, j)] * h[(k, l)] * h[(i, l)].conj() * h[(k, j)].conj();
                    values.push(quantize_canonical(v, FINGERPRINT_GRID));
                }
            }
        }
    }
    values.sort_unstable();
    Fingerprint { n, values }
}

/// Lexicographic next permutation; false once the last one was produced.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Table of all dephasings of row/column-pinned copies of `h`:
/// entry (r0, c0, r, c) is h_rc conj(h_r,c0) conj(h_r0,c) h_r0,c0, i.e. the
/// (r, c) entry after dephasing with (r0, c0) moved to the corner.
struct NormalizedTable {
    n: usize,
    data: Vec<Complex64>,
}

impl NormalizedTable {
    fn build(h: &UnimodularMatrix) -> Self {
        let n = h.order();
        let mut data = vec![ONE; n * n * n * n];
        for r0 in 0..n {
            for c0 in 0..n {
                let corner = h[(r0, c0)];
                for r in 0..n {
                    let left = h[(r, c0)].conj() * corner;
                    for c in 0..n {
                        data[((r0 * n + c0) * n + r) * n + c] =
                            h[(r, c)] * left * h[(r0, c)].conj();
                    }
                }
            }
        }
        Self { n, data }
    }

    #[inline]
    fn at(&self, r0: usize, c0: usize, r: usize, c: usize) -> Complex64 {
        self.data[((r0 * self.n + c0) * self.n + r) * self.n + c]
    }

    /// Hash of the sorted entry multiset of row `r` under pinning (r0, c0).
    fn row_signature(&self, r0: usize, c0: usize, r: usize) -> u64 {
        let mut qs: Vec<(i64, i64)> = (0..self.n)
            .map(|c| quantize(self.at(r0, c0, r, c), SIGNATURE_GRID))
            .collect();
        qs.sort_unstable();
        hash_pairs(&qs)
    }
}

fn hash_pairs(pairs: &[(i64, i64)]) -> u64 {
    let mut acc: u64 = 0xcbf29ce484222325;
    for &(a, b) in pairs {
        for v in [a as u64, b as u64] {
            acc ^= v;
            acc = acc.wrapping_mul(0x100000001b3);
        }
    }
    acc
}

fn signature_of_row(m: &UnimodularMatrix, r: usize) -> u64 {
    let n = m.order();
    let mut qs: Vec<(i64, i64)> = (0..n).map(|c| quantize(m[(r, c)], SIGNATURE_GRID)).collect();
    qs.sort_unstable();
    hash_pairs(&qs)
}

/// Certificate sending `h` to `dephase(sigma h tau)`.
fn dephasing_certificate(
    h: &UnimodularMatrix,
    sigma: &[usize],
    tau: &[usize],
) -> EquivalenceCertificate {
    let n = h.order();
    let corner = h[(sigma[0], tau[0])];
    let mut d1 = vec![ONE; n];
    let mut d2 = vec![ONE; n];
    let p1 = sigma.to_vec();
    let p2 = tau.to_vec();
    for &r in sigma.iter() {
        d1[r] = h[(r, tau[0])].conj() * corner;
    }
    for &c in tau.iter() {
        d2[c] = h[(sigma[0], c)].conj();
    }
    EquivalenceCertificate { p1, d1, d2, p2 }
}

/// Exhaustive equivalence decision for orders up to 8. Returns the witness
/// for the lexicographically smallest matching (row, column) permutation
/// pair, or None when the matrices are inequivalent.
pub fn brute_force_equivalent(
    h1: &UnimodularMatrix,
    h2: &UnimodularMatrix,
    tol: Tolerance,
) -> Result<Option<EquivalenceCertificate>, EquivError> {
    let n = h1.order();
    if n != h2.order() {
        return Ok(None);
    }
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(EquivError::OrderTooLarge(n));
    }
    if fingerprint(h1) != fingerprint(h2) {
        return Ok(None);
    }
    let b = dephase(h2);
    let bsig: Vec<u64> = (0..n).map(|r| signature_of_row(&b, r)).collect();
    let table = NormalizedTable::build(h1);
    let mut rowsig = vec![0u64; n * n * n];
    for r0 in 0..n {
        for c0 in 0..n {
            for r in 0..n {
                rowsig[(r0 * n + c0) * n + r] = table.row_signature(r0, c0, r);
            }
        }
    }
    let entry_budget = tol.eps() * n as f64;

    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let r0 = sigma[0];
        'tau0: for c0 in 0..n {
            for i in 0..n {
                if rowsig[(r0 * n + c0) * n + sigma[i]] != bsig[i] {
                    continue 'tau0;
                }
            }
            // columns other than c0, in lexicographic order
            let mut rest: Vec<usize> = (0..n).filter(|&c| c != c0).collect();
            loop {
                let mut ok = true;
                'check: for i in 1..n {
                    let r = sigma[i];
                    for (jm1, &c) in rest.iter().enumerate() {
                        let diff = table.at(r0, c0, r, c) - b[(i, jm1 + 1)];
                        if diff.norm() > entry_budget {
                            ok = false;
                            break 'check;
                        }
                    }
                }
                if ok {
                    let mut tau = Vec::with_capacity(n);
                    tau.push(c0);
                    tau.extend_from_slice(&rest);
                    let to_dephased = dephasing_certificate(h1, &sigma, &tau);
                    let from_b = dephasing_certificate(h2, &identity_perm(n), &identity_perm(n));
                    // h1 -> dephase(sigma h1 tau) = dephase(h2), then undo h2's dephasing
                    let cert = EquivalenceCertificate::compose(&from_b.invert(), &to_dephased)
                        .normalize_global_phase();
                    return Ok(Some(cert));
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(None)
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Recover theta and a witness mapping the family member H(theta) onto `h`.
///
/// The input must be an order-6 hermitian Hadamard matrix. Permutation
/// embeddings are scanned in lexicographic order and the first match wins,
/// so a matrix that already sits in template form reports its own theta.
/// (The family parameter is not unique per equivalence class: conjugating
/// the template permutes the roles of its entries, so H(theta) also matches
/// at pi - Arg(x(theta)) and at -theta. Any returned theta is backed by its
/// certificate.)
pub fn fit_theta(
    h: &UnimodularMatrix,
    tol: Tolerance,
) -> Result<Option<(f64, EquivalenceCertificate)>, EquivError> {
    let n = h.order();
    if n != 6 {
        return Err(EquivError::NotOrderSix(n));
    }
    let herm = h
        .inner()
        .frobenius_dist(&h.inner().conj_transpose())
        .expect("square");
    if herm > tol.eps() * n as f64 {
        return Err(EquivError::NotHermitian { residual: herm });
    }
    let table = NormalizedTable::build(h);
    let entry_budget = tol.eps();
    let template_diag = [1.0, -1.0, -1.0, -1.0, 1.0, 1.0];

    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let r0 = sigma[0];
        for c0 in 0..n {
            let mut tau_rest: Vec<usize> = (0..n).filter(|&c| c != c0).collect();
            loop {
                let tau_at = |j: usize| if j == 0 { c0 } else { tau_rest[j - 1] };
                // diagonal of the dephased candidate must match the template
                let mut diag_ok = true;
                for (i, want) in template_diag.iter().enumerate().skip(1) {
                    let v = table.at(r0, c0, sigma[i], tau_at(i));
                    if (v - Complex64::new(*want, 0.0)).norm() > entry_budget {
                        diag_ok = false;
                        break;
                    }
                }
                if diag_ok {
                    let y = table.at(r0, c0, sigma[1], tau_at(5));
                    let theta = y.arg();
                    if theta_domain_contains(theta) {
                        if let Ok(template) = h_theta(theta) {
                            let mut all = true;
                            'cmp: for i in 1..n {
                                for j in 1..n {
                                    let diff =
                                        table.at(r0, c0, sigma[i], tau_at(j)) - template[(i, j)];
                                    if diff.norm() > entry_budget {
                                        all = false;
                                        break 'cmp;
                                    }
                                }
                            }
                            if all {
                                let tau: Vec<usize> = (0..n).map(tau_at).collect();
                                // dephase(sigma h tau) equals the template;
                                // invert that map to send H(theta) onto h
                                let to_template = dephasing_certificate(h, &sigma, &tau);
                                let cert = to_template.invert().normalize_global_phase();
                                return Ok(Some((theta, cert)));
                            }
                        }
                    }
                }
                if !next_permutation(&mut tau_rest) {
                    break;
                }
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(None)
}

/// Witness conjugating the family member at [`catalog::theta_for_c6`] onto
/// the cyclic-6-roots matrix: a pure permutation, no phases.
pub fn c6_conjugation_witness() -> EquivalenceCertificate {
    let p = vec![0, 1, 4, 3, 5, 2];
    EquivalenceCertificate {
        p1: p.clone(),
        d1: vec![ONE; 6],
        d2: vec![ONE; 6],
        p2: p,
    }
}

/// Witness sending H(theta) to H'(theta): swaps the two square-root
/// branches of the family at the same parameter.
pub fn branch_swap_witness(theta: f64) -> Result<EquivalenceCertificate, catalog::CatalogError> {
    let p = catalog::family_point(theta)?;
    let (x, y) = (p.x, p.y);
    let d1 = vec![ONE, -ONE, x.conj(), -y, -x.conj(), y];
    let d2 = vec![-ONE, ONE, -x, y.conj(), x, -y.conj()];
    let perm = vec![1, 5, 4, 0, 3, 2];
    Ok(EquivalenceCertificate {
        p1: perm.clone(),
        d1,
        d2,
        p2: perm,
    })
}

/// Witness sending the third fourth-root matrix onto the plus-branch family
/// member at theta = pi/2 (left diagonal only).
pub fn butson_to_family_witness() -> EquivalenceCertificate {
    let i = Complex64::new(0.0, 1.0);
    EquivalenceCertificate {
        p1: vec![0, 1, 2, 4, 5, 3],
        d1: vec![ONE, i, -ONE, ONE, -i, -ONE],
        d2: vec![ONE; 6],
        p2: vec![2, 5, 3, 1, 4, 0],
    }
}
