//! Command-line front end. All subcommand logic lives here so the binary
//! stays a one-liner and tests can drive the interface in-process.
//!
//! Exit codes: 0 success / predicate holds, 1 malformed input, 2 domain
//! violations or failed predicates, 3 numerical ambiguity.

use crate::catalog::{
    butson_h, c6_cyclic, check, h_theta, h_theta_prime, tensor, theta_domain_boundary,
    wrap_angle, CatalogError, UnimodularMatrix,
};
use crate::defect::{defect, DefectError};
use crate::equivalence::{
    brute_force_equivalent, fingerprint, fit_theta, verify_certificate, EquivError,
};
use crate::io::{self, IoError, MatrixMetadata};
use crate::linalg::{ComplexMatrix, Tolerance};
use crate::search::{classify_outcomes, minimize, OutcomeClass, SearchError, SearchProblem};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "hadamard", version, about = "Complex Hadamard matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a catalog matrix and write it as a matrix file.
    Gen {
        #[command(subcommand)]
        target: GenTarget,
        /// Output file; stdout when omitted.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a matrix file against the Hadamard definition.
    Verify {
        file: PathBuf,
        #[arg(long, env = "HADAMARD_TOL")]
        tol: Option<f64>,
    },
    /// Defect and span-condition verdict of a Hadamard matrix.
    Defect {
        file: PathBuf,
        #[arg(long, env = "HADAMARD_TOL")]
        tol: Option<f64>,
    },
    /// Decide equivalence of two matrices, or verify a certificate.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Exhaustive search over permutation pairs (orders up to 8).
        #[arg(long)]
        brute_force: bool,
        /// Verify this certificate file instead of searching.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, env = "HADAMARD_TOL")]
        tol: Option<f64>,
    },
    /// Fit an order-6 self-adjoint Hadamard matrix to the one-parameter family.
    FitTheta {
        file: PathBuf,
        #[arg(long, env = "HADAMARD_TOL")]
        tol: Option<f64>,
    },
    /// Multistart penalty-minimization search for Hadamard matrices.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hermitian: bool,
        /// Fixed diagonal signs, e.g. 1,-1,-1,-1,1,1 (requires --hermitian).
        #[arg(long, allow_hyphen_values = true)]
        diag: Option<String>,
        #[arg(long)]
        dephased: bool,
        #[arg(long)]
        restarts: usize,
        #[arg(long, env = "HADAMARD_SEED")]
        seed: u64,
        /// Directory receiving one matrix file per converged restart.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "HADAMARD_TOL")]
        tol: Option<f64>,
    },
    /// Print the sorted fingerprint multiset of a matrix file.
    Fingerprint { file: PathBuf },
}

#[derive(Subcommand)]
enum GenTarget {
    /// Fourier matrix of order N.
    Fourier { n: usize },
    /// Kronecker product of two matrix files.
    Tensor { a: PathBuf, b: PathBuf },
    /// Family member H(theta), theta in radians (wrapped into (-pi, pi]).
    #[command(allow_negative_numbers = true)]
    HTheta { theta: f64 },
    /// Second-branch family member H'(theta).
    #[command(allow_negative_numbers = true)]
    HThetaPrime { theta: f64 },
    /// The cyclic-6-roots matrix.
    C6,
    /// Fourth-root matrix number K, K in 1..=4.
    Butson { k: usize },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Linalg(_) => Failure::new(1, e.to_string()),
            _ => Failure::new(2, e.to_string()),
        }
    }
}

impl From<DefectError> for Failure {
    fn from(e: DefectError) -> Self {
        match e {
            DefectError::RankAmbiguous { .. } => Failure::new(3, e.to_string()),
            _ => Failure::new(2, e.to_string()),
        }
    }
}

impl From<EquivError> for Failure {
    fn from(e: EquivError) -> Self {
        match e {
            EquivError::BadPermutation(..) | EquivError::NotUnimodularDiagonal { .. } => {
                Failure::new(1, e.to_string())
            }
            _ => Failure::new(2, e.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        Failure::new(2, e.to_string())
    }
}

type CliResult = Result<i32, Failure>;

fn parse_tol(tol: Option<f64>) -> Result<Tolerance, Failure> {
    match tol {
        None => Ok(Tolerance::default()),
        Some(t) => Tolerance::new(t).map_err(|e| Failure::new(1, e.to_string())),
    }
}

fn load_matrix(path: &Path) -> Result<(ComplexMatrix, Option<MatrixMetadata>), Failure> {
    Ok(io::read_matrix_file(path)?)
}

fn load_unimodular(path: &Path, tol: Tolerance) -> Result<UnimodularMatrix, Failure> {
    let (m, _) = load_matrix(path)?;
    Ok(UnimodularMatrix::new(m, tol)?)
}

fn emit(out: &mut dyn Write, target: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::new(1, e.to_string())),
        None => {
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn family_domain_message(theta: f64) -> String {
    let b = theta_domain_boundary();
    format!(
        "theta = {theta} is outside the family domain; valid intervals: [-pi, -{b}] U [{b}, pi]"
    )
}

fn run_gen(target: GenTarget, out_path: Option<PathBuf>, out: &mut dyn Write) -> CliResult {
    let (text, _) = match target {
        GenTarget::Fourier { n } => {
            if n == 0 {
                return Err(Failure::new(2, "fourier order must be positive"));
            }
            let turns: Vec<Vec<f64>> = (0..n)
                .map(|j| (0..n).map(|k| ((j * k) % n) as f64 / n as f64).collect())
                .collect();
            let meta = MatrixMetadata {
                name: Some(format!("fourier-{n}")),
                theta: None,
                source: Some("hadamard gen fourier".into()),
            };
            (io::turns_to_json(&turns, Some(&meta))?, n)
        }
        GenTarget::Tensor { a, b } => {
            let tol = Tolerance::default();
            let ma = load_unimodular(&a, tol)?;
            let mb = load_unimodular(&b, tol)?;
            let t = tensor(&ma, &mb);
            let meta = MatrixMetadata {
                name: Some(format!("tensor-{}x{}", ma.order(), mb.order())),
                theta: None,
                source: Some("hadamard gen tensor".into()),
            };
            (io::matrix_to_json(t.inner(), Some(&meta))?, t.order())
        }
        GenTarget::HTheta { theta } => {
            let theta = wrap_angle(theta);
            let h = h_theta(theta)
                .map_err(|_| Failure::new(2, family_domain_message(theta)))?;
            let meta = MatrixMetadata {
                name: Some("h-theta".into()),
                theta: Some(theta),
                source: Some("hadamard gen h-theta".into()),
            };
            (io::matrix_to_json(h.inner(), Some(&meta))?, 6)
        }
        GenTarget::HThetaPrime { theta } => {
            let theta = wrap_angle(theta);
            let h = h_theta_prime(theta)
                .map_err(|_| Failure::new(2, family_domain_message(theta)))?;
            let meta = MatrixMetadata {
                name: Some("h-theta-prime".into()),
                theta: Some(theta),
                source: Some("hadamard gen h-theta-prime".into()),
            };
            (io::matrix_to_json(h.inner(), Some(&meta))?, 6)
        }
        GenTarget::C6 => {
            let m = c6_cyclic();
            let meta = MatrixMetadata {
                name: Some("c6-cyclic".into()),
                theta: None,
                source: Some("hadamard gen c6".into()),
            };
            (io::matrix_to_json(m.inner(), Some(&meta))?, 6)
        }
        GenTarget::Butson { k } => {
            let h = butson_h(k)?;
            let turns: Vec<Vec<f64>> = (0..6)
                .map(|r| (0..6).map(|c| io::entry_to_turns(h[(r, c)])).collect())
                .collect();
            let meta = MatrixMetadata {
                name: Some(format!("butson-{k}")),
                theta: None,
                source: Some("hadamard gen butson".into()),
            };
            (io::turns_to_json(&turns, Some(&meta))?, 6)
        }
    };
    emit(out, &out_path, &text)?;
    Ok(0)
}

fn run_verify(file: &Path, tol: Option<f64>, out: &mut dyn Write) -> CliResult {
    let tol = parse_tol(tol)?;
    let (m, _) = load_matrix(file)?;
    let report = check(&m, tol)?;
    let _ = writeln!(out, "unimodularity_residual={}", report.unimodularity_residual);
    let _ = writeln!(out, "unitarity_residual={}", report.unitarity_residual);
    let _ = writeln!(out, "is_hadamard={}", report.is_hadamard);
    let _ = writeln!(out, "is_self_adjoint={}", report.is_self_adjoint);
    let _ = writeln!(out, "is_dephased={}", report.is_dephased);
    Ok(if report.is_hadamard { 0 } else { 2 })
}

fn run_defect(file: &Path, tol: Option<f64>, out: &mut dyn Write) -> CliResult {
    let tol = parse_tol(tol)?;
    let h = load_unimodular(file, tol)?;
    let report = defect(&h, tol)?;
    let _ = writeln!(out, "n={}", report.n);
    let _ = writeln!(out, "system_rows={}", report.system_rows);
    let _ = writeln!(out, "system_cols={}", report.system_cols);
    let _ = writeln!(out, "nullity={}", report.nullity);
    let _ = writeln!(out, "defect={}", report.defect);
    let _ = writeln!(out, "satisfies_span_condition={}", report.satisfies_span_condition);
    let _ = writeln!(out, "tol={}", report.tol_used.eps());
    Ok(0)
}

fn run_equiv(
    a: &Path,
    b: &Path,
    brute_force: bool,
    cert: Option<PathBuf>,
    tol: Option<f64>,
    out: &mut dyn Write,
) -> CliResult {
    let tol = parse_tol(tol)?;
    if brute_force == cert.is_some() {
        return Err(Failure::new(1, "pass exactly one of --brute-force or --cert"));
    }
    let ha = load_unimodular(a, tol)?;
    let hb = load_unimodular(b, tol)?;
    if let Some(cert_path) = cert {
        let cert = io::read_certificate_file(&cert_path)?;
        if verify_certificate(&cert, &ha, &hb, tol)? {
            let _ = out.write_all(io::certificate_to_json(&cert)?.as_bytes());
            Ok(0)
        } else {
            Err(Failure::new(2, "certificate does not map A onto B at this tolerance"))
        }
    } else {
        match brute_force_equivalent(&ha, &hb, tol)? {
            Some(cert) => {
                let _ = out.write_all(io::certificate_to_json(&cert)?.as_bytes());
                Ok(0)
            }
            None => Err(Failure::new(2, "matrices are not equivalent")),
        }
    }
}

fn run_fit_theta(file: &Path, tol: Option<f64>, out: &mut dyn Write) -> CliResult {
    let tol = parse_tol(tol)?;
    let h = load_unimodular(file, tol)?;
    match fit_theta(&h, tol)? {
        Some((theta, cert)) => {
            let _ = writeln!(out, "theta={theta}");
            let _ = out.write_all(io::certificate_to_json(&cert)?.as_bytes());
            Ok(0)
        }
        None => Err(Failure::new(
            2,
            "matrix does not match any family member at this tolerance",
        )),
    }
}

fn parse_diag(text: &str, n: usize) -> Result<Vec<i8>, Failure> {
    let values: Result<Vec<i8>, _> = text.split(',').map(|s| s.trim().parse::<i8>()).collect();
    let values = values.map_err(|e| Failure::new(1, format!("bad --diag value: {e}")))?;
    if values.len() != n || values.iter().any(|&v| v != 1 && v != -1) {
        return Err(Failure::new(
            1,
            format!("--diag needs {n} comma-separated entries of 1 or -1"),
        ));
    }
    Ok(values)
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    n: usize,
    hermitian: bool,
    diag: Option<String>,
    dephased: bool,
    restarts: usize,
    seed: u64,
    out_dir: Option<PathBuf>,
    tol: Option<f64>,
    out: &mut dyn Write,
) -> CliResult {
    let classify_tol = match tol {
        Some(t) => Tolerance::new(t).map_err(|e| Failure::new(1, e.to_string()))?,
        None => Tolerance::new(1e-6).expect("valid"),
    };
    let mut problem = SearchProblem::new(n);
    problem.hermitian = hermitian;
    problem.diag_pattern = diag.map(|d| parse_diag(&d, n)).transpose()?;
    problem.dephased = dephased;
    problem.restarts = restarts;
    problem.seed = seed;
    problem.validate()?;
    let outcomes = minimize(&problem)?;
    let classes = if n == 6 && hermitian {
        classify_outcomes(&problem, &outcomes, classify_tol)?
    } else {
        outcomes
            .iter()
            .map(|_| OutcomeClass::Unclassified(crate::search::ClassifyFailure::WrongOrder))
            .collect()
    };
    if let Some(dir) = &out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::new(1, e.to_string()))?;
    }
    let template = crate::search::PhaseParametrization::for_problem(&problem)?;
    for (outcome, class) in outcomes.iter().zip(&classes) {
        let theta_text = match class {
            OutcomeClass::Classified { theta, .. } => format!("{theta}"),
            OutcomeClass::Unclassified(_) => "unclassified".to_string(),
        };
        let _ = writeln!(
            out,
            "restart={} converged={} f={} theta={}",
            outcome.restart_index, outcome.converged, outcome.f_final, theta_text
        );
        if outcome.converged {
            if let Some(dir) = &out_dir {
                let mut param = template.clone();
                param.free_phases.copy_from_slice(&outcome.params);
                crate::search::polish(
                    &mut param,
                    &problem.step_controls,
                    crate::search::polish_target(&problem),
                    10,
                );
                let h = param.matrix();
                let meta = MatrixMetadata {
                    name: Some(format!("search-restart-{}", outcome.restart_index)),
                    theta: match class {
                        OutcomeClass::Classified { theta, .. } => Some(*theta),
                        OutcomeClass::Unclassified(_) => None,
                    },
                    source: Some(format!(
                        "hadamard search n={} seed={} restart={}",
                        n, seed, outcome.restart_index
                    )),
                };
                let path = dir.join(format!("restart-{:03}.json", outcome.restart_index));
                io::write_matrix_file(&path, h.inner(), Some(&meta))?;
            }
        }
    }
    Ok(0)
}

fn run_fingerprint(file: &Path, out: &mut dyn Write) -> CliResult {
    let tol = Tolerance::default();
    let h = load_unimodular(file, tol)?;
    let fp = fingerprint(&h);
    let grid = crate::equivalence::Fingerprint::grid();
    for &(re_q, im_q) in fp.values() {
        let _ = writeln!(out, "{} {}", re_q as f64 * grid, im_q as f64 * grid);
    }
    Ok(0)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Gen { target, out: out_path } => run_gen(target, out_path, out),
        Command::Verify { file, tol } => run_verify(&file, tol, out),
        Command::Defect { file, tol } => run_defect(&file, tol, out),
        Command::Equiv { a, b, brute_force, cert, tol } => {
            run_equiv(&a, &b, brute_force, cert, tol, out)
        }
        Command::FitTheta { file, tol } => run_fit_theta(&file, tol, out),
        Command::Search {
            n,
            hermitian,
            diag,
            dephased,
            restarts,
            seed,
            out: out_dir,
            tol,
        } => run_search(n, hermitian, diag, dephased, restarts, seed, out_dir, tol, out),
        Command::Fingerprint { file } => run_fingerprint(&file, out),
    }
}

/// Parse argv (including the program name) and execute; returns the exit code.
pub fn run<I>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
