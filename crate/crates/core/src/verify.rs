//! Self-contained verification suites behind the `verify` subcommand.
//!
//! Each suite checks one independently derivable fact: the measurement
//! oracle against the analytic classical correlation, the adaptive
//! quadrature against an elementary antiderivative, the mutual-information
//! identity, positivity of evolved states, and the dense measurement path
//! against the closed-form landscape.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::geometry::SubstrateContext;
use crate::kernel;
use crate::oracle::{classical_info_at, classical_info_closed_form, densify, maximize_classical, MeasurementBasis};
use crate::quad;
use crate::trajectory::Trajectory;
use crate::xstate::XState;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub(crate) fn sample_state(rng: &mut impl Rng) -> XState {
    let p: f64 = rng.random_range(0.0..=1.0);
    let b: f64 = rng.random_range(0.0..=p);
    let c: f64 = rng.random_range(0.0..=(1.0 - p));
    XState::new(p, b, c).expect("sampled parameters satisfy the invariants")
}

// int_0^l F(x) dx = 1/2 - e^{-2l} (l^3/12 + 3 l^2/8 + 11 l/16 + 1/2), so
// the full time integral of the rate is (4 pi tau / l) times that value.
fn gamma_integral_closed_form(l: f64, tau: f64) -> f64 {
    let q = ((l / 12.0 + 0.375) * l + 11.0 / 16.0) * l + 0.5;
    4.0 * std::f64::consts::PI * tau / l * (0.5 - (-2.0 * l).exp() * q)
}

fn oracle_equivalence(cfg: &RunConfig) -> Result<SuiteResult> {
    let n = cfg.oracle.verify_states;
    let grid = cfg.oracle.grid();
    let states: Vec<XState> = {
        let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
        (0..n).map(|_| sample_state(&mut rng)).collect()
    };
    let worst = states
        .par_iter()
        .map(|state| {
            let rho = densify(state);
            let (value, _) = maximize_classical(&rho, grid, cfg.oracle.refine_tol)?;
            Ok((value - state.classical_correlation()).abs())
        })
        .try_reduce(|| 0.0_f64, |a, b| Ok(a.max(b)))?;
    Ok(SuiteResult {
        name: "oracle_equivalence",
        passed: worst < 1e-6,
        detail: format!("worst |C_oracle - C_analytic| = {worst:.3e} over {n} states"),
    })
}

fn quadrature_oracle() -> Result<SuiteResult> {
    let mut worst = 0.0_f64;
    for l in [5.0, 10.0, 20.0] {
        for tau in [0.01, 0.05] {
            let numeric = quad::integrate_with_breakpoints(
                &|t| kernel::gamma_point(t, l, tau).expect("valid rate arguments"),
                0.0,
                l + 40.0,
                &[l],
                1e-12,
            )?;
            worst = worst.max((numeric - gamma_integral_closed_form(l, tau)).abs());
        }
    }
    Ok(SuiteResult {
        name: "quadrature_oracle",
        passed: worst < 1e-8,
        detail: format!("worst |numeric - closed form| = {worst:.3e}"),
    })
}

fn identity_suite(cfg: &RunConfig, inject_fault: bool) -> SuiteResult {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let fault = if inject_fault { 1e-9 } else { 0.0 };
    let mut worst = 0.0_f64;
    for _ in 0..cfg.oracle.identity_states {
        let s = sample_state(&mut rng);
        let gap = (s.mutual_information() + fault
            - (s.classical_correlation() + s.quantum_discord()))
        .abs();
        worst = worst.max(gap);
    }
    SuiteResult {
        name: "mutual_information_identity",
        passed: worst <= 1e-12,
        detail: format!("worst |I - (C + D)| = {worst:.3e} over {} states", cfg.oracle.identity_states),
    }
}

fn positivity_suite(cfg: &RunConfig) -> Result<SuiteResult> {
    let geom = cfg.geometry.build()?;
    let grid = cfg.time_grid()?;
    let taus = if cfg.dynamics.tau_list.is_empty() {
        vec![cfg.dynamics.tau]
    } else {
        cfg.dynamics.tau_list.clone()
    };
    let mut min_eigenvalue = f64::INFINITY;
    let mut worst_trace = 0.0_f64;
    for &tau in &taus {
        let ctx = SubstrateContext::new(tau)?;
        let traj = Trajectory::simulate(&geom, &ctx, cfg.dynamics.p, &grid)?;
        for state in traj.states() {
            let ev = state.eigenvalues();
            min_eigenvalue = min_eigenvalue.min(ev.into_iter().fold(f64::INFINITY, f64::min));
            worst_trace = worst_trace.max((ev.iter().sum::<f64>() - 1.0).abs());
        }
    }
    Ok(SuiteResult {
        name: "positivity",
        passed: min_eigenvalue >= -1e-12 && worst_trace <= 1e-12,
        detail: format!(
            "min eigenvalue = {min_eigenvalue:.3e}, worst |trace - 1| = {worst_trace:.3e} over {} temperatures",
            taus.len()
        ),
    })
}

fn closed_form_suite(cfg: &RunConfig) -> SuiteResult {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let mut worst = 0.0_f64;
    for _ in 0..cfg.oracle.closed_form_pairs {
        let state = sample_state(&mut rng);
        let theta: f64 = rng.random_range(0.0..=std::f64::consts::PI);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let dense = classical_info_at(&densify(&state), &MeasurementBasis::new(theta, phi));
        let closed = classical_info_closed_form(&state, theta, phi);
        worst = worst.max((dense - closed).abs());
    }
    SuiteResult {
        name: "closed_form_equivalence",
        passed: worst <= 1e-10,
        detail: format!(
            "worst |dense - closed form| = {worst:.3e} over {} pairs",
            cfg.oracle.closed_form_pairs
        ),
    }
}

/// Run every suite. `inject_fault` perturbs the identity suite so the
/// failure path of the harness can be exercised deliberately.
pub fn run_all(cfg: &RunConfig, inject_fault: bool) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        oracle_equivalence(cfg)?,
        quadrature_oracle()?,
        identity_suite(cfg, inject_fault),
        positivity_suite(cfg)?,
        closed_form_suite(cfg),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> RunConfig {
        let mut cfg = RunConfig::default();
        cfg.oracle.verify_states = 25;
        cfg.oracle.identity_states = 500;
        cfg.oracle.closed_form_pairs = 200;
        cfg.oracle.n_theta = 61;
        cfg.oracle.n_phi = 121;
        cfg.dynamics.points = 400;
        cfg.dynamics.t_max = 120.0;
        cfg.dynamics.tau_list = vec![0.01, 0.05];
        cfg
    }

    #[test]
    fn all_suites_pass_on_a_reduced_run() {
        let results = run_all(&quick_config(), false).unwrap();
        assert_eq!(results.len(), 5);
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn injected_fault_fails_the_identity_suite() {
        let results = run_all(&quick_config(), true).unwrap();
        let identity = results.iter().find(|r| r.name == "mutual_information_identity").unwrap();
        assert!(!identity.passed);
    }

    #[test]
    fn fixed_seed_reproduces_the_details() {
        let cfg = quick_config();
        let a = run_all(&cfg, false).unwrap();
        let b = run_all(&cfg, false).unwrap();
        assert_eq!(a, b);
    }
}
