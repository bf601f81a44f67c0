//! Exact-arithmetic oracle for the defect computation, usable whenever the
//! matrix entries are 12th roots of unity. Entirely independent of the
//! production rank path: the tangent system is re-assembled over the field
//! Q(sqrt 3) with big-rational coefficients and row-reduced exactly.

#![allow(dead_code)]

use hadamard::linalg::ComplexMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Element a + b*sqrt(3) with rational a, b.
#[derive(Clone, Debug, PartialEq)]
pub struct Q3 {
    a: BigRational,
    b: BigRational,
}

impl Q3 {
    fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    /// (a2 + b2*sqrt(3)) / 2 from integer numerators.
    fn from_halves(a2: i64, b2: i64) -> Self {
        let half = |v: i64| BigRational::new(BigInt::from(v), BigInt::from(2));
        Self::new(half(a2), half(b2))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone())
    }

    fn sub(&self, other: &Self) -> Self {
        Self::new(&self.a - &other.a, &self.b - &other.b)
    }

    fn mul(&self, other: &Self) -> Self {
        // (a + b s)(c + d s) = ac + 3bd + (ad + bc) s, with s^2 = 3
        let three = BigRational::from(BigInt::from(3));
        Self::new(
            &self.a * &other.a + &three * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
        )
    }

    fn inv(&self) -> Self {
        // 1/(a + b s) = (a - b s)/(a^2 - 3 b^2); the norm vanishes only at 0
        let three = BigRational::from(BigInt::from(3));
        let norm = &self.a * &self.a - &three * &self.b * &self.b;
        assert!(!norm.is_zero(), "inverting zero in Q(sqrt 3)");
        Self::new(&self.a / &norm, -(&self.b / &norm))
    }

    fn approx(&self) -> f64 {
        let to_f = |r: &BigRational| {
            let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            num / den
        };
        to_f(&self.a) + 3.0f64.sqrt() * to_f(&self.b)
    }
}

/// cos(pi k / 6) as (a2, b2) with value (a2 + b2 sqrt(3))/2.
const COS_HALVES: [(i64, i64); 12] = [
    (2, 0),
    (0, 1),
    (1, 0),
    (0, 0),
    (-1, 0),
    (0, -1),
    (-2, 0),
    (0, -1),
    (-1, 0),
    (0, 0),
    (1, 0),
    (0, 1),
];

fn cos_twelfth(k: u8) -> Q3 {
    let (a2, b2) = COS_HALVES[(k % 12) as usize];
    Q3::from_halves(a2, b2)
}

fn sin_twelfth(k: u8) -> Q3 {
    // sin(pi k/6) = cos(pi (k-3)/6)
    cos_twelfth((k + 9) % 12)
}

/// Recognize every entry of `m` as a 12th root of unity; None when some
/// entry is off the grid.
pub fn twelfth_root_exponents(m: &ComplexMatrix) -> Option<Vec<Vec<u8>>> {
    let n = m.n_rows();
    let mut grid = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let e = m[(r, c)];
            let mut found = None;
            for k in 0u8..12 {
                let re = cos_twelfth(k).approx();
                let im = sin_twelfth(k).approx();
                if (e.re - re).abs() < 1e-9 && (e.im - im).abs() < 1e-9 {
                    found = Some(k);
                    break;
                }
            }
            row.push(found?);
        }
        grid.push(row);
    }
    Some(grid)
}

/// Rank, nullity and defect of the first-order row-orthogonality system,
/// computed exactly from 12th-root exponents.
pub fn exact_defect(exponents: &[Vec<u8>]) -> (usize, usize, i64) {
    let n = exponents.len();
    let cols = n * n;
    let mut rows: Vec<Vec<Q3>> = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in (i + 1)..n {
            let mut re_row = vec![Q3::zero(); cols];
            let mut im_row = vec![Q3::zero(); cols];
            for k in 0..n {
                // H_ik conj(H_jk) = zeta_12^(e_ik - e_jk)
                let e = ((12 + exponents[i][k] as i16 - exponents[j][k] as i16) % 12) as u8;
                let re = cos_twelfth(e);
                let im = sin_twelfth(e);
                re_row[i * n + k] = re.clone();
                re_row[j * n + k] = re.neg();
                im_row[i * n + k] = im.clone();
                im_row[j * n + k] = im.neg();
            }
            rows.push(re_row);
            rows.push(im_row);
        }
    }
    let rank = row_reduce_rank(&mut rows, cols);
    let nullity = cols - rank;
    (rank, nullity, nullity as i64 - (2 * n as i64 - 1))
}

#[allow(clippy::needless_range_loop)] // two rows of `rows` are indexed at once
fn row_reduce_rank(rows: &mut [Vec<Q3>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        for c in col..cols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let delta = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
