//! Replays the three recorded equivalence witnesses and prints the
//! residual of each: the pure-permutation conjugation onto the
//! cyclic-6-roots matrix, the branch swap H(theta) -> H'(theta), and the
//! fourth-root certificate into the family at theta = pi/2.
//!
//!     cargo run --example certificate_replays

use hadamard::catalog::{butson_h, c6_cyclic, h_theta, h_theta_prime, theta_for_c6};
use hadamard::equivalence::{
    apply_certificate, branch_swap_witness, butson_to_family_witness, c6_conjugation_witness,
    EquivalenceCertificate,
};
use std::f64::consts::FRAC_PI_2;

fn main() {
    let theta0 = theta_for_c6();
    let mapped = apply_certificate(&c6_conjugation_witness(), &h_theta(theta0).unwrap()).unwrap();
    println!(
        "P H({theta0:.6}) P^-1 vs cyclic-6-roots: residual {:.2e}",
        mapped.inner().frobenius_dist(c6_cyclic().inner()).unwrap()
    );

    for theta in [2.0, 2.5, 3.0] {
        let cert = branch_swap_witness(theta).unwrap();
        let mapped = apply_certificate(&cert, &h_theta(theta).unwrap()).unwrap();
        let residual = mapped
            .inner()
            .frobenius_dist(h_theta_prime(theta).unwrap().inner())
            .unwrap();
        println!("P1 D1 H({theta}) D2 P2 vs H'({theta}): residual {residual:.2e}");
    }

    let cert = butson_to_family_witness();
    let mapped = apply_certificate(&cert, &butson_h(3).unwrap()).unwrap();
    let residual = mapped
        .inner()
        .frobenius_dist(h_theta_prime(FRAC_PI_2).unwrap().inner())
        .unwrap();
    println!("P1 D H3 P2 vs H'(pi/2): residual {residual:.2e}");

    // compose with the inverted branch swap to land on H(pi/2) itself
    let swap = branch_swap_witness(FRAC_PI_2).unwrap();
    let to_minus = EquivalenceCertificate::compose(&swap.invert(), &cert);
    let mapped = apply_certificate(&to_minus, &butson_h(3).unwrap()).unwrap();
    let residual = mapped
        .inner()
        .frobenius_dist(h_theta(FRAC_PI_2).unwrap().inner())
        .unwrap();
    println!("composed witness, H3 onto H(pi/2): residual {residual:.2e}");
}
