//! Defect survey across the catalog: the tangent-space dimension counting
//! that separates rigid (isolated) Hadamard matrices from ones that may sit
//! inside continuous families.
//!
//!     cargo run --example defect_survey

use hadamard::catalog::{c6_cyclic, fourier, h_theta, tensor, theta_for_c6};
use hadamard::defect::{defect, is_isolated_sufficient};
use hadamard::linalg::Tolerance;

fn main() {
    let tol = Tolerance::default();
    let mut entries = vec![
        ("F2".to_string(), fourier(2)),
        ("F3".to_string(), fourier(3)),
        ("F5".to_string(), fourier(5)),
        ("F6".to_string(), fourier(6)),
        ("F2 x F3".to_string(), tensor(&fourier(2), &fourier(3))),
        ("C6".to_string(), c6_cyclic()),
    ];
    for theta in [1.5, 2.0, theta_for_c6()] {
        entries.push((format!("H({theta:.4})"), h_theta(theta).unwrap()));
    }

    println!("{:10} {:>5} {:>8} {:>8} {:>7} isolated?", "matrix", "n", "rows", "nullity", "defect");
    for (name, h) in entries {
        let report = defect(&h, tol).expect("catalog matrices are clean");
        let isolated = if is_isolated_sufficient(&h, tol).unwrap() {
            "yes (span condition)"
        } else {
            "inconclusive"
        };
        println!(
            "{name:10} {:>5} {:>8} {:>8} {:>7} {isolated}",
            report.n, report.system_rows, report.nullity, report.defect
        );
    }

    println!();
    println!("the family members all report defect >= 1: the family itself");
    println!("is a first-order deformation direction through each of them.");
}
