//! Statistical evidence that five diagonal patterns admit no self-adjoint
//! dephased Hadamard matrix of order 6: the unitarity penalty never falls
//! anywhere near zero, no matter where descent starts. Only the pattern
//! (1,-1,-1,-1,1,1) supports solutions.
//!
//!     cargo run --release --example excluded_diagonals

use hadamard::search::{minimize, SearchProblem};

fn main() {
    let patterns: [[i8; 6]; 6] = [
        [1, 1, 1, 1, 1, 1],
        [1, -1, 1, 1, 1, 1],
        [1, -1, -1, 1, 1, 1],
        [1, -1, -1, -1, 1, 1], // the one admitting solutions
        [1, -1, -1, -1, -1, 1],
        [1, -1, -1, -1, -1, -1],
    ];

    println!("{:24} {:>10} {:>12}", "diagonal", "converged", "min f");
    for diag in patterns {
        let mut problem = SearchProblem::new(6);
        problem.hermitian = true;
        problem.diag_pattern = Some(diag.to_vec());
        problem.dephased = true;
        problem.restarts = 20;
        problem.seed = 42;
        let outcomes = minimize(&problem).expect("valid problem");
        let converged = outcomes.iter().filter(|o| o.converged).count();
        let min_f = outcomes.iter().map(|o| o.f_final).fold(f64::INFINITY, f64::min);
        println!("{:24} {:>7}/20 {:>12.3e}", format!("{diag:?}"), converged, min_f);
    }
}
