//! Classification in action: hand fit_theta various order-6 self-adjoint
//! Hadamard matrices and watch it recover a family parameter plus an
//! explicit certificate each time.
//!
//! The family parameter is not unique per equivalence class: the same class
//! meets the family at +-theta and at wrap(pi - Arg(x(theta))). The scan
//! returns the first embedding it finds, so exact template inputs report
//! their own theta.
//!
//!     cargo run --release --example fit_theta_demo

use hadamard::catalog::{butson_h, c6_cyclic, h_theta, h_theta_prime, theta_for_c6};
use hadamard::equivalence::{fit_theta, verify_certificate};
use hadamard::linalg::Tolerance;
use std::f64::consts::FRAC_PI_2;

fn main() {
    let tol = Tolerance::default();
    let inputs = [
        ("H(2.2) itself".to_string(), h_theta(2.2).unwrap()),
        ("H'(2.2), other branch".to_string(), h_theta_prime(2.2).unwrap()),
        ("H(pi/2)".to_string(), h_theta(FRAC_PI_2).unwrap()),
        ("fourth-root H2".to_string(), butson_h(2).unwrap()),
        (
            format!("cyclic-6-roots (conjugate of H({:.4}))", theta_for_c6()),
            c6_cyclic(),
        ),
    ];

    for (name, h) in inputs {
        match fit_theta(&h, tol).expect("hermitian order-6 input") {
            Some((theta, cert)) => {
                let ok = verify_certificate(&cert, &h_theta(theta).unwrap(), &h, tol).unwrap();
                println!("{name:42} -> theta = {theta:+.6} (certificate verifies: {ok})");
            }
            None => println!("{name:42} -> no family match"),
        }
    }
}
