//! Multistart search for order-6 self-adjoint Hadamard matrices with the
//! diagonal pinned to (1,-1,-1,-1,1,1), followed by classification of every
//! converged point onto the one-parameter family.
//!
//!     cargo run --release --example search_demo

use hadamard::linalg::Tolerance;
use hadamard::search::{classify_outcomes, minimize, OutcomeClass, SearchProblem};

fn main() {
    let mut problem = SearchProblem::new(6);
    problem.hermitian = true;
    problem.diag_pattern = Some(vec![1, -1, -1, -1, 1, 1]);
    problem.dephased = true;
    problem.restarts = 12;
    problem.seed = 42;

    let outcomes = minimize(&problem).expect("valid problem");
    let classes = classify_outcomes(&problem, &outcomes, Tolerance::new(1e-6).unwrap())
        .expect("valid problem");

    println!("restart  converged  iters  f_final      theta");
    for (o, c) in outcomes.iter().zip(&classes) {
        let theta = match c {
            OutcomeClass::Classified { theta, .. } => format!("{theta:+.6}"),
            OutcomeClass::Unclassified(reason) => format!("{reason:?}"),
        };
        println!(
            "{:>7}  {:>9}  {:>5}  {:>10.3e}  {theta}",
            o.restart_index, o.converged, o.iters, o.f_final
        );
    }

    let hits = classes
        .iter()
        .filter(|c| matches!(c, OutcomeClass::Classified { .. }))
        .count();
    println!("\n{hits}/{} restarts landed on family members", outcomes.len());
}
