//! The matrix file format: rectangular entries with full double precision,
//! the turns encoding for root-of-unity matrices, and certificate files.
//!
//!     cargo run --example matrix_files

use hadamard::catalog::{butson_h, check, h_theta};
use hadamard::equivalence::branch_swap_witness;
use hadamard::io::{
    certificate_from_json, certificate_to_json, entry_to_turns, matrix_from_json, matrix_to_json,
    turns_to_json, MatrixMetadata,
};
use hadamard::linalg::Tolerance;

fn main() {
    // family member at full precision
    let h = h_theta(2.2).unwrap();
    let meta = MatrixMetadata {
        name: Some("h-theta".into()),
        theta: Some(2.2),
        source: Some("matrix_files example".into()),
    };
    let text = matrix_to_json(h.inner(), Some(&meta)).unwrap();
    println!("--- rectangular encoding (first lines) ---");
    for line in text.lines().take(9) {
        println!("{line}");
    }
    let (back, _) = matrix_from_json(&text).unwrap();
    println!("round trip bit-exact: {}", back.entries() == h.inner().entries());

    // fourth-root matrices keep exact entries through the turns encoding
    let b = butson_h(1).unwrap();
    let grid: Vec<Vec<f64>> = (0..6)
        .map(|r| (0..6).map(|c| entry_to_turns(b[(r, c)])).collect())
        .collect();
    let text = turns_to_json(&grid, None).unwrap();
    let (back, _) = matrix_from_json(&text).unwrap();
    println!("turns round trip bit-exact: {}", back.entries() == b.inner().entries());
    let report = check(&back, Tolerance::default()).unwrap();
    println!("decoded matrix unitarity residual: {:.2e}", report.unitarity_residual);

    // certificates serialize with diagonals as phases in turns
    let cert = branch_swap_witness(2.2).unwrap();
    let text = certificate_to_json(&cert).unwrap();
    println!("\n--- certificate file ---\n{text}");
    let back = certificate_from_json(&text).unwrap();
    println!("permutations survive: {}", back.p1() == cert.p1() && back.p2() == cert.p2());
}
