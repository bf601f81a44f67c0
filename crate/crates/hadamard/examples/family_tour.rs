//! Tour of the one-parameter family of self-adjoint order-6 Hadamard
//! matrices: its domain, the derived entries, and the checks they pass.
//!
//!     cargo run --example family_tour

use hadamard::catalog::{
    check, family_point, family_point_unconstrained, h_theta, h_theta_prime,
    theta_domain_boundary, theta_domain_contains,
};
use hadamard::linalg::Tolerance;
use std::f64::consts::PI;

fn main() {
    let b = theta_domain_boundary();
    println!("domain: [-pi, -{b:.6}] U [{b:.6}, pi]\n");

    for theta in [b, 1.5, 2.0, PI / 2.0, 2.8, PI, -2.2] {
        let p = family_point(theta).expect("in domain");
        let h = h_theta(theta).expect("in domain");
        let report = check(h.inner(), Tolerance::default()).expect("square");
        println!(
            "theta = {theta:+.6}: x = {:+.4}{:+.4}i  t = {:+.4}{:+.4}i  z = {:+.4}{:+.4}i",
            p.x.re, p.x.im, p.t.re, p.t.im, p.z.re, p.z.im
        );
        println!(
            "  unitarity residual {:.2e}, hadamard = {}, self-adjoint = {}, dephased = {}",
            report.unitarity_residual, report.is_hadamard, report.is_self_adjoint,
            report.is_dephased
        );
    }

    println!("\noutside the domain the construction breaks down:");
    for theta in [0.0, 0.8] {
        assert!(!theta_domain_contains(theta));
        let p = family_point_unconstrained(theta);
        println!("  theta = {theta}: |x| = {:.6} (off the unit circle)", p.x.norm());
    }

    // the second square-root branch gives a different matrix over the same
    // domain; the two merge where the radicand vanishes
    let a = h_theta(2.0).unwrap();
    let bprime = h_theta_prime(2.0).unwrap();
    println!(
        "\nbranch distance at theta = 2.0: {:.4}",
        a.inner().frobenius_dist(bprime.inner()).unwrap()
    );
    let a = h_theta(b).unwrap();
    let bprime = h_theta_prime(b).unwrap();
    println!(
        "branch distance at the boundary: {:.2e}",
        a.inner().frobenius_dist(bprime.inner()).unwrap()
    );
}
