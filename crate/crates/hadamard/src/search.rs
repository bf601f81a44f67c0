//! Numerical discovery of Hadamard matrices: minimize the unitarity penalty
//! f(H) = ||H H* - nI||_F^2 over unit-modulus matrices written in phase
//! coordinates, under optional hermitian / fixed-diagonal / dephased
//! constraints. Restarts are seeded by a counter-based generator so runs
//! reproduce exactly.

use crate::catalog::UnimodularMatrix;
use crate::equivalence::{self, EquivalenceCertificate, EquivError};
use crate::linalg::{ComplexMatrix, Tolerance};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("diag_pattern requires the hermitian constraint")]
    DiagWithoutHermitian,
    #[error("diag_pattern must hold {expected} entries of +1/-1, got {got:?}")]
    BadDiagPattern { expected: usize, got: Vec<i8> },
    #[error("f_success ({f_success}) must be below f_fail_floor ({f_fail_floor})")]
    ThresholdOrder { f_success: f64, f_fail_floor: f64 },
    #[error("order {0} not supported; expected 2..=12")]
    UnsupportedOrder(usize),
}

/// Backtracking line-search knobs.
#[derive(Debug, Clone, Copy)]
pub struct StepControls {
    /// Armijo sufficient-decrease constant.
    pub armijo_c: f64,
    /// Step shrink factor on rejection.
    pub shrink: f64,
    pub initial_step: f64,
    /// Accepted steps grow by this factor as the next trial step.
    pub growth: f64,
    /// Below this trial step the restart is declared stalled.
    pub min_step: f64,
}

impl Default for StepControls {
    fn default() -> Self {
        Self {
            armijo_c: 1e-4,
            shrink: 0.5,
            initial_step: 1.0,
            growth: 4.0,
            min_step: 1e-18,
        }
    }
}

/// Parameters of one multistart search run.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub n: usize,
    pub hermitian: bool,
    /// Fixed diagonal signs; requires `hermitian`. With `hermitian` set and
    /// no pattern given, the diagonal is pinned to all +1.
    pub diag_pattern: Option<Vec<i8>>,
    pub dephased: bool,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub f_success: f64,
    pub f_fail_floor: f64,
    pub step_controls: StepControls,
}

impl SearchProblem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            hermitian: false,
            diag_pattern: None,
            dephased: true,
            restarts: 1,
            seed: 0,
            max_iters: 5000,
            f_success: 1e-16,
            f_fail_floor: 1e-12,
            step_controls: StepControls::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if !(2..=12).contains(&self.n) {
            return Err(SearchError::UnsupportedOrder(self.n));
        }
        if let Some(diag) = &self.diag_pattern {
            if !self.hermitian {
                return Err(SearchError::DiagWithoutHermitian);
            }
            if diag.len() != self.n || diag.iter().any(|&s| s != 1 && s != -1) {
                return Err(SearchError::BadDiagPattern {
                    expected: self.n,
                    got: diag.clone(),
                });
            }
        }
        if self.f_success >= self.f_fail_floor {
            return Err(SearchError::ThresholdOrder {
                f_success: self.f_success,
                f_fail_floor: self.f_fail_floor,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Fixed(f64),
    Free { index: usize, sign: f64 },
}

/// Phase coordinates for the constrained matrix: every entry is e^{i phase},
/// so unimodularity holds by construction and f reduces to the unitarity
/// residual alone.
#[derive(Debug, Clone)]
pub struct PhaseParametrization {
    n: usize,
    slots: Vec<Slot>,
    free_count: usize,
    pub free_phases: Vec<f64>,
}

impl PhaseParametrization {
    pub fn for_problem(problem: &SearchProblem) -> Result<Self, SearchError> {
        problem.validate()?;
        let n = problem.n;
        let mut slots = vec![Slot::Fixed(0.0); n * n];
        let mut free_count = 0;
        for k in 0..n {
            for l in 0..n {
                let idx = k * n + l;
                if problem.dephased && (k == 0 || l == 0) {
                    slots[idx] = Slot::Fixed(0.0);
                } else if k == l {
                    if problem.hermitian {
                        let sign = problem
                            .diag_pattern
                            .as_ref()
                            .map_or(1, |d| d[k]);
                        slots[idx] = Slot::Fixed(if sign > 0 { 0.0 } else { PI });
                    } else {
                        slots[idx] = Slot::Free { index: free_count, sign: 1.0 };
                        free_count += 1;
                    }
                } else if problem.hermitian {
                    if k < l {
                        slots[idx] = Slot::Free { index: free_count, sign: 1.0 };
                        free_count += 1;
                    }
                    // mirror entries are filled below once indices exist
                } else {
                    slots[idx] = Slot::Free { index: free_count, sign: 1.0 };
                    free_count += 1;
                }
            }
        }
        if problem.hermitian {
            for k in 0..n {
                for l in 0..k {
                    if let Slot::Free { index, .. } = slots[l * n + k] {
                        slots[k * n + l] = Slot::Free { index, sign: -1.0 };
                    }
                }
            }
        }
        Ok(Self {
            n,
            slots,
            free_count,
            free_phases: vec![0.0; free_count],
        })
    }

    pub fn free_count(&self) -> usize {
        self.free_count
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn phase_at(&self, k: usize, l: usize) -> f64 {
        match self.slots[k * self.n + l] {
            Slot::Fixed(p) => p,
            Slot::Free { index, sign } => sign * self.free_phases[index],
        }
    }

    /// Read free phases off an existing matrix (warm start).
    pub fn set_from_matrix(&mut self, h: &UnimodularMatrix) {
        assert_eq!(h.order(), self.n);
        for k in 0..self.n {
            for l in 0..self.n {
                if let Slot::Free { index, sign } = self.slots[k * self.n + l] {
                    if sign > 0.0 {
                        self.free_phases[index] = h[(k, l)].arg();
                    }
                }
            }
        }
    }

    pub fn matrix(&self) -> UnimodularMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                m[(k, l)] = Complex64::from_polar(1.0, self.phase_at(k, l));
            }
        }
        UnimodularMatrix::new(m, Tolerance::default()).expect("phases give unit modulus")
    }

    /// f = ||H H* - n I||_F^2.
    pub fn objective(&self) -> f64 {
        let n = self.n;
        let h = self.matrix();
        let mut f = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut w = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    w += h[(i, k)] * h[(j, k)].conj();
                }
                if i == j {
                    w -= n as f64;
                }
                f += w.norm_sqr();
            }
        }
        f
    }

    /// Analytic gradient of [`Self::objective`] in the free phases:
    /// d f / d phi_ab = 4 Im(conj(H_ab) G_ab) with G = (H H* - nI) H, folded
    /// through shared hermitian parameters by the chain rule.
    pub fn gradient(&self) -> Vec<f64> {
        let n = self.n;
        let h = self.matrix();
        let mut w = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += h[(i, k)] * h[(j, k)].conj();
                }
                if i == j {
                    acc -= n as f64;
                }
                w[(i, j)] = acc;
            }
        }
        let g = w.mat_mul(h.inner()).expect("square");
        let mut grad = vec![0.0; self.free_count];
        for a in 0..n {
            for b in 0..n {
                if let Slot::Free { index, sign } = self.slots[a * n + b] {
                    let full = 4.0 * (h[(a, b)].conj() * g[(a, b)]).im;
                    grad[index] += sign * full;
                }
            }
        }
        grad
    }
}

/// Result of a single restart.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub restart_index: usize,
    pub params: Vec<f64>,
    pub f_final: f64,
    pub iters: usize,
    pub converged: bool,
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Counter-based draw in (-pi, pi], keyed by (seed, restart, parameter).
/// Pure function of the key, so parallel and serial schedules agree.
pub fn restart_phase(seed: u64, restart: u64, index: u64) -> f64 {
    let key = mix64(
        mix64(seed ^ 0x9e3779b97f4a7c15)
            ^ restart.wrapping_mul(0xd1b54a32d192ed03)
            ^ index.wrapping_mul(0x8cb92ba72f3d8dd7),
    );
    let u = (key >> 11) as f64 / (1u64 << 53) as f64; // [0, 1)
    PI * (1.0 - 2.0 * u)
}

#[cfg(test)]
pub(crate) fn test_phase(seed: u64, k: u64) -> f64 {
    restart_phase(seed, u64::MAX, k)
}

fn descend(
    param: &mut PhaseParametrization,
    controls: &StepControls,
    f_success: f64,
    max_iters: usize,
) -> (f64, usize) {
    let mut f = param.objective();
    let mut step = controls.initial_step;
    let mut iters = 0;
    while iters < max_iters && f > f_success {
        let grad = param.gradient();
        let gn2: f64 = grad.iter().map(|g| g * g).sum();
        if gn2 < 1e-30 {
            break; // stationary; converged only if f is already tiny
        }
        let base = param.free_phases.clone();
        let mut t = step;
        let mut accepted = false;
        while t >= controls.min_step {
            for (p, (b, g)) in param
                .free_phases
                .iter_mut()
                .zip(base.iter().zip(grad.iter()))
            {
                *p = b - t * g;
            }
            let f_trial = param.objective();
            if f_trial <= f - controls.armijo_c * t * gn2 {
                f = f_trial;
                accepted = true;
                break;
            }
            t *= controls.shrink;
        }
        if !accepted {
            param.free_phases.copy_from_slice(&base);
            break; // step collapse
        }
        step = (t * controls.growth).min(1e3);
        iters += 1;
    }
    (f, iters)
}

/// A few extra descent steps at a tightened target; returns the final f.
/// Converged search outcomes sit at f ~ 1e-16, which leaves entry errors
/// near 1e-8; polishing pushes them to machine scale.
pub fn polish(
    param: &mut PhaseParametrization,
    controls: &StepControls,
    f_target: f64,
    max_iters: usize,
) -> f64 {
    descend(param, controls, f_target, max_iters).0
}

/// Polishing target derived from a problem's success threshold.
pub fn polish_target(problem: &SearchProblem) -> f64 {
    (problem.f_success * 1e-12).max(1e-30)
}

/// Run the multistart gradient descent. One outcome per restart, ordered by
/// restart index; deterministic for a fixed problem.
pub fn minimize(problem: &SearchProblem) -> Result<Vec<SearchOutcome>, SearchError> {
    let template = PhaseParametrization::for_problem(problem)?;
    let mut outcomes = Vec::with_capacity(problem.restarts);
    for restart in 0..problem.restarts {
        let mut param = template.clone();
        for (i, p) in param.free_phases.iter_mut().enumerate() {
            *p = restart_phase(problem.seed, restart as u64, i as u64);
        }
        let (f_final, iters) = descend(
            &mut param,
            &problem.step_controls,
            problem.f_success,
            problem.max_iters,
        );
        outcomes.push(SearchOutcome {
            restart_index: restart,
            params: param.free_phases,
            f_final,
            iters,
            converged: f_final < problem.f_success,
        });
    }
    Ok(outcomes)
}

/// Why an outcome could not be classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyFailure {
    NotConverged,
    WrongOrder,
    NotHermitian,
    NoFamilyMatch,
}

/// Classification of one outcome against the one-parameter family.
#[derive(Debug, Clone)]
pub enum OutcomeClass {
    Classified {
        theta: f64,
        certificate: EquivalenceCertificate,
    },
    Unclassified(ClassifyFailure),
}

/// Rebuild each converged outcome, polish it with a few extra descent steps
/// at a tightened target, and fit it to the family.
pub fn classify_outcomes(
    problem: &SearchProblem,
    outcomes: &[SearchOutcome],
    tol: Tolerance,
) -> Result<Vec<OutcomeClass>, SearchError> {
    let template = PhaseParametrization::for_problem(problem)?;
    let mut classes = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        if !outcome.converged {
            classes.push(OutcomeClass::Unclassified(ClassifyFailure::NotConverged));
            continue;
        }
        if problem.n != 6 || outcome.params.len() != template.free_count() {
            classes.push(OutcomeClass::Unclassified(ClassifyFailure::WrongOrder));
            continue;
        }
        let mut param = template.clone();
        param.free_phases.copy_from_slice(&outcome.params);
        polish(&mut param, &problem.step_controls, polish_target(problem), 10);
        let h = param.matrix();
        match equivalence::fit_theta(&h, tol) {
            Ok(Some((theta, certificate))) => {
                classes.push(OutcomeClass::Classified { theta, certificate });
            }
            Ok(None) => classes.push(OutcomeClass::Unclassified(ClassifyFailure::NoFamilyMatch)),
            Err(EquivError::NotHermitian { .. }) => {
                classes.push(OutcomeClass::Unclassified(ClassifyFailure::NotHermitian));
            }
            Err(EquivError::NotOrderSix(_)) => {
                classes.push(OutcomeClass::Unclassified(ClassifyFailure::WrongOrder));
            }
            Err(_) => classes.push(OutcomeClass::Unclassified(ClassifyFailure::NoFamilyMatch)),
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::h_theta;

    fn hermitian_problem(diag: [i8; 6]) -> SearchProblem {
        let mut p = SearchProblem::new(6);
        p.hermitian = true;
        p.diag_pattern = Some(diag.to_vec());
        p.dephased = true;
        p
    }

    #[test]
    fn free_parameter_counts() {
        let mut p = SearchProblem::new(6);
        p.dephased = true;
        let par = PhaseParametrization::for_problem(&p).unwrap();
        assert_eq!(par.free_count(), 25); // (n-1)^2

        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let par = PhaseParametrization::for_problem(&p).unwrap();
        assert_eq!(par.free_count(), 10); // (n-1)(n-2)/2
    }

    #[test]
    fn problem_validation() {
        let mut p = SearchProblem::new(6);
        p.diag_pattern = Some(vec![1; 6]);
        assert!(matches!(p.validate(), Err(SearchError::DiagWithoutHermitian)));
        let mut p = hermitian_problem([1; 6]);
        p.f_success = 1e-10;
        assert!(matches!(p.validate(), Err(SearchError::ThresholdOrder { .. })));
        let mut p = hermitian_problem([1; 6]);
        p.diag_pattern = Some(vec![1, 2, 1, 1, 1, 1]);
        assert!(matches!(p.validate(), Err(SearchError::BadDiagPattern { .. })));
        assert!(matches!(
            SearchProblem::new(20).validate(),
            Err(SearchError::UnsupportedOrder(20))
        ));
    }

    #[test]
    fn objective_at_family_point_and_all_ones() {
        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let mut par = PhaseParametrization::for_problem(&p).unwrap();
        par.set_from_matrix(&h_theta(2.0).unwrap());
        assert!(par.objective() < 1e-20, "f = {}", par.objective());

        let mut p2 = SearchProblem::new(6);
        p2.dephased = true;
        let par = PhaseParametrization::for_problem(&p2).unwrap();
        // all phases zero: the all-ones matrix
        assert!((par.objective() - 1080.0).abs() < 1e-9);
        // symmetric saddle: gradient vanishes exactly
        let g = par.gradient();
        assert!(g.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn objective_grows_quadratically_near_minimum() {
        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let mut par = PhaseParametrization::for_problem(&p).unwrap();
        par.set_from_matrix(&h_theta(2.0).unwrap());
        let probe = |eps: f64, par: &PhaseParametrization| {
            let mut shifted = par.clone();
            shifted.free_phases[3] += eps;
            shifted.objective()
        };
        let f1 = probe(1e-4, &par);
        let f2 = probe(2e-4, &par);
        assert!(f1 > 0.0 && (f2 / f1 - 4.0).abs() < 0.5, "ratio {}", f2 / f1);
        // and the gradient at the minimum is numerically zero
        let g = par.gradient();
        let gn: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(gn < 1e-10, "|g| = {gn}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let template = PhaseParametrization::for_problem(&p).unwrap();
        let mut max_err: f64 = 0.0;
        for trial in 0..20 {
            let mut par = template.clone();
            for (i, ph) in par.free_phases.iter_mut().enumerate() {
                *ph = restart_phase(7, trial, i as u64);
            }
            let h = 1e-6;
            for (i, &g) in par.gradient().iter().enumerate() {
                let mut plus = par.clone();
                plus.free_phases[i] += h;
                let mut minus = par.clone();
                minus.free_phases[i] -= h;
                let fd = (plus.objective() - minus.objective()) / (2.0 * h);
                max_err = max_err.max((fd - g).abs());
            }
        }
        assert!(max_err < 1e-5, "max gradient error {max_err}");
    }

    #[test]
    fn warm_start_converges_quickly() {
        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let mut par = PhaseParametrization::for_problem(&p).unwrap();
        par.set_from_matrix(&h_theta(1.5).unwrap());
        for (i, ph) in par.free_phases.iter_mut().enumerate() {
            *ph += 1e-2 * restart_phase(11, 0, i as u64) / PI;
        }
        let (f, iters) = descend(&mut par, &StepControls::default(), 1e-16, 200);
        assert!(f < 1e-16, "f = {f} after {iters} iterations");
        assert!(iters < 200);
    }

    #[test]
    fn multistart_finds_family_members_deterministically() {
        let mut p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        p.restarts = 5;
        p.seed = 1;
        let a = minimize(&p).unwrap();
        let b = minimize(&p).unwrap();
        assert!(a.iter().any(|o| o.converged));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.f_final.to_bits(), y.f_final.to_bits());
            assert_eq!(x.iters, y.iters);
        }
    }

    #[test]
    fn polished_outcomes_pass_the_hadamard_check() {
        let mut p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        p.restarts = 4;
        p.seed = 5;
        let outcomes = minimize(&p).unwrap();
        let template = PhaseParametrization::for_problem(&p).unwrap();
        let mut seen = 0;
        for o in outcomes.iter().filter(|o| o.converged) {
            let mut par = template.clone();
            par.free_phases.copy_from_slice(&o.params);
            polish(&mut par, &p.step_controls, polish_target(&p), 10);
            let report =
                crate::catalog::check(par.matrix().inner(), crate::linalg::Tolerance::default())
                    .unwrap();
            assert!(report.unitarity_residual < 1e-7);
            assert!(report.is_hadamard);
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn all_ones_diagonal_never_reaches_zero() {
        let mut p = hermitian_problem([1, 1, 1, 1, 1, 1]);
        p.restarts = 5;
        p.seed = 3;
        let outcomes = minimize(&p).unwrap();
        for o in outcomes {
            assert!(!o.converged);
            assert!(o.f_final > p.f_fail_floor, "f = {}", o.f_final);
        }
    }

    #[test]
    fn gauge_shift_leaves_penalty_unchanged() {
        // f depends on H only through H H*, so row/column enphasings are
        // exactly flat directions; check on raw unconstrained grids.
        let n = 6;
        let h = h_theta(2.4).unwrap();
        let penalty = |phases: &[f64]| {
            let mut m = ComplexMatrix::zeros(n, n);
            for k in 0..n {
                for l in 0..n {
                    m[(k, l)] = Complex64::from_polar(1.0, phases[k * n + l]);
                }
            }
            let w = m.mat_mul(&m.conj_transpose()).unwrap();
            let mut f = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let mut v = w[(i, j)];
                    if i == j {
                        v -= n as f64;
                    }
                    f += v.norm_sqr();
                }
            }
            f
        };
        let mut phases = vec![0.0; n * n];
        for k in 0..n {
            for l in 0..n {
                phases[k * n + l] = h[(k, l)].arg();
            }
        }
        let base = penalty(&phases);
        let row_shift: Vec<f64> = (0..n).map(|k| restart_phase(17, 0, k as u64)).collect();
        let col_shift: Vec<f64> = (0..n).map(|k| restart_phase(18, 0, k as u64)).collect();
        let mut shifted = phases.clone();
        for k in 0..n {
            for l in 0..n {
                shifted[k * n + l] += row_shift[k] + col_shift[l];
            }
        }
        assert!((penalty(&shifted) - base).abs() < 1e-12);
    }

    #[test]
    fn classify_identity_and_injected_failures() {
        let p = hermitian_problem([1, -1, -1, -1, 1, 1]);
        let mut par = PhaseParametrization::for_problem(&p).unwrap();
        par.set_from_matrix(&h_theta(2.2).unwrap());
        let exact = SearchOutcome {
            restart_index: 0,
            params: par.free_phases.clone(),
            f_final: par.objective(),
            iters: 0,
            converged: true,
        };
        let stalled = SearchOutcome {
            restart_index: 1,
            params: par.free_phases.clone(),
            f_final: 1.0,
            iters: 0,
            converged: false,
        };
        let classes =
            classify_outcomes(&p, &[exact.clone(), stalled], Tolerance::new(1e-6).unwrap()).unwrap();
        match &classes[0] {
            OutcomeClass::Classified { theta, .. } => {
                assert!((theta - 2.2).abs() < 1e-6, "theta = {theta}");
            }
            other => panic!("expected classification, got {other:?}"),
        }
        assert!(matches!(
            classes[1],
            OutcomeClass::Unclassified(ClassifyFailure::NotConverged)
        ));

        // a non-hermitian run feeds matrices fit_theta must refuse
        let mut p2 = SearchProblem::new(6);
        p2.dephased = true;
        let mut par2 = PhaseParametrization::for_problem(&p2).unwrap();
        for (i, ph) in par2.free_phases.iter_mut().enumerate() {
            *ph = restart_phase(23, 0, i as u64);
        }
        let fake = SearchOutcome {
            restart_index: 0,
            params: par2.free_phases.clone(),
            f_final: 0.0,
            iters: 0,
            converged: true,
        };
        let classes = classify_outcomes(&p2, &[fake], Tolerance::new(1e-6).unwrap()).unwrap();
        assert!(matches!(
            classes[0],
            OutcomeClass::Unclassified(ClassifyFailure::NotHermitian)
        ));
    }
}
