//! Brute-force equivalence decisions across a small census: the four
//! fourth-root matrices and the family member at pi/2 all collapse into one
//! class, while the Fourier matrix and the cyclic-6-roots matrix stay
//! apart. Fingerprints do the cheap separation, the factorial search the
//! hard confirmations.
//!
//!     cargo run --release --example equivalence_census

use hadamard::catalog::{butson_h, c6_cyclic, fourier, h_theta};
use hadamard::equivalence::{brute_force_equivalent, fingerprint, verify_certificate};
use hadamard::linalg::Tolerance;
use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

fn main() {
    let tol = Tolerance::default();
    let mut census = Vec::new();
    for k in 1..=4 {
        census.push((format!("H{k}"), butson_h(k).unwrap()));
    }
    census.push(("H(pi/2)".to_string(), h_theta(FRAC_PI_2).unwrap()));
    census.push(("F6".to_string(), fourier(6)));
    census.push(("C6".to_string(), c6_cyclic()));

    for i in 0..census.len() {
        for j in (i + 1)..census.len() {
            let (na, a) = &census[i];
            let (nb, b) = &census[j];
            let t0 = Instant::now();
            let result = brute_force_equivalent(a, b, tol).unwrap();
            let dt = t0.elapsed();
            match result {
                Some(cert) => {
                    assert!(verify_certificate(&cert, a, b, tol).unwrap());
                    println!("{na:8} ~ {nb:8}  certificate found in {dt:?}");
                }
                None => println!("{na:8} x {nb:8}  inequivalent ({dt:?})"),
            }
        }
    }

    println!();
    let fp_f6 = fingerprint(&fourier(6));
    let fp_c6 = fingerprint(&c6_cyclic());
    println!(
        "fingerprints: F6 vs C6 {}",
        if fp_f6 == fp_c6 { "collide" } else { "differ" }
    );
}
