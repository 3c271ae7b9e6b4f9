//! Pointer-basis classification and the temperature analysis of regimes.
//!
//! The maximizing measurement basis is sigma_z whenever `|a| > b + c` and
//! sigma_x otherwise, so the sign of `|a| - (b + c)` partitions a trajectory
//! into intervals with a fixed preferred basis. On sigma_z intervals the
//! classical correlation is constant, which makes those intervals
//! (metastable) pointer-state regimes; crossings of the sign function are
//! the sudden transitions between them.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::geometry::{QubitGeometry, SubstrateContext};
use crate::kernel;
use crate::trajectory::Trajectory;
use crate::xstate::XState;
use crate::{Error, Result};

/// Margins within this band of zero are classified as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Crossing times are refined by bisection to this resolution.
pub const CROSSING_TOL: f64 = 1e-6;

/// A sigma_z interval shorter than this fraction of the grid span is not
/// reported as a plateau (suppresses single-sample ridge grazing).
pub const PLATEAU_MIN_FRACTION: f64 = 0.01;

/// Within a plateau the classical correlation must be constant to this
/// tolerance, in bits.
pub const PLATEAU_FLATNESS_TOL: f64 = 1e-9;

/// Entropy maxima with less prominence than this (in bits) are treated as
/// round-off ripple on a stationary tail and dropped.
pub const ENTROPY_PROMINENCE_TOL: f64 = 1e-9;

/// Bisection resolution of the crossover temperature.
pub const CROSSOVER_TOL: f64 = 1e-5;

/// Largest admissible growth of the unit-temperature exponents over the
/// trailing half of `[0, t_stationary]`.
pub const STATIONARY_TOL: f64 = 1e-6;

/// The preferred measurement basis implied by the state parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    SigmaZ,
    SigmaX,
    Degenerate,
}

impl BasisLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisLabel::SigmaZ => "Z",
            BasisLabel::SigmaX => "X",
            BasisLabel::Degenerate => "DEG",
        }
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sigma_z iff `|a| - (b + c) > DEGENERACY_TOL`, sigma_x iff below the
/// negative band, degenerate within it.
pub fn classify_basis(state: &XState) -> BasisLabel {
    let margin = state.a().abs() - (state.b() + state.c());
    if margin > DEGENERACY_TOL {
        BasisLabel::SigmaZ
    } else if margin < -DEGENERACY_TOL {
        BasisLabel::SigmaX
    } else {
        BasisLabel::Degenerate
    }
}

/// Summary of the pointer-basis structure of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    /// Times where `|a| - (b + c)` changes sign, strictly increasing.
    pub crossings: Vec<f64>,
    /// Sigma_z intervals longer than the plateau threshold, as `(start, end)`.
    pub plateaus: Vec<(f64, f64)>,
    /// Plateaus later replaced by a sigma_x interval.
    pub metastable_count: usize,
    /// Basis label at the final grid time.
    pub asymptotic_basis: BasisLabel,
    /// Times of local maxima of the joint entropy.
    pub entropy_maxima: Vec<f64>,
}

fn refine_crossing(traj: &Trajectory, a_abs: f64, mut lo: f64, mut hi: f64) -> f64 {
    let margin = |t: f64| {
        let (b, c) = traj.coherences_at(t);
        a_abs - (b + c)
    };
    let mut m_lo = margin(lo);
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        let m_mid = margin(mid);
        if (m_mid >= 0.0) == (m_lo >= 0.0) {
            lo = mid;
            m_lo = m_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn parabolic_vertex(t: [f64; 3], s: [f64; 3]) -> f64 {
    let d10 = t[1] - t[0];
    let d21 = t[2] - t[1];
    let num = (s[0] - s[1]) * d21 * d21 - (s[2] - s[1]) * d10 * d10;
    let den = (s[0] - s[1]) * d21 + (s[2] - s[1]) * d10;
    if den.abs() < 1e-300 {
        return t[1];
    }
    (t[1] + 0.5 * num / den).clamp(t[0], t[2])
}

fn entropy_maxima(times: &[f64], entropies: &[f64]) -> Vec<f64> {
    let n = entropies.len();
    let mut maxima = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        if entropies[i + 1] > entropies[i] {
            // ascending into a candidate peak; skip over a flat top
            let start = i + 1;
            let mut end = start;
            while end + 1 < n && entropies[end + 1] == entropies[end] {
                end += 1;
            }
            if end + 1 < n && entropies[end + 1] < entropies[end] {
                let peak = entropies[start];
                // prominence: walk out to the first higher sample (or the
                // boundary) on each side, tracking the minimum passed
                let mut left_min = peak;
                let mut k = start;
                while k > 0 && entropies[k - 1] <= peak {
                    k -= 1;
                    left_min = left_min.min(entropies[k]);
                }
                let mut right_min = peak;
                let mut k = end;
                while k + 1 < n && entropies[k + 1] <= peak {
                    k += 1;
                    right_min = right_min.min(entropies[k]);
                }
                if peak - left_min.max(right_min) > ENTROPY_PROMINENCE_TOL {
                    let refined = if start == end && start + 1 < n {
                        parabolic_vertex(
                            [times[start - 1], times[start], times[start + 1]],
                            [entropies[start - 1], entropies[start], entropies[start + 1]],
                        )
                    } else {
                        0.5 * (times[start] + times[end])
                    };
                    maxima.push(refined);
                }
            }
            i = end;
        } else {
            i += 1;
        }
    }
    maxima
}

/// Scan a trajectory for sudden transitions, pointer plateaus, and entropy
/// maxima.
///
/// Crossings are located between samples of opposite margin sign and
/// refined by bisection on the sign function (with `b`, `c` linearly
/// interpolated between samples). Two crossings in adjacent sample
/// intervals are rejected as an under-resolved trajectory.
pub fn scan_regimes(traj: &Trajectory) -> Result<RegimeReport> {
    if traj.len() < 2 {
        return Err(Error::InvalidInput("regime scan needs at least two samples".into()));
    }
    let times = traj.times();
    let states = traj.states();
    let a_abs = states[0].a().abs();
    let margins: Vec<f64> = states.iter().map(|s| a_abs - (s.b() + s.c())).collect();

    // sign flips between consecutive non-zero margins, as sample-index pairs
    let mut flip_intervals: Vec<(usize, usize)> = Vec::new();
    let mut prev: Option<(usize, f64)> = None;
    for (i, &m) in margins.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        if let Some((j, pm)) = prev {
            if (m > 0.0) != (pm > 0.0) {
                flip_intervals.push((j, i));
            }
        }
        prev = Some((i, m));
    }
    for pair in flip_intervals.windows(2) {
        if pair[1].0 <= pair[0].1 {
            // the sign flips back within one sample of flipping
            return Err(Error::TrajectoryTooCoarse { t: times[pair[0].1] });
        }
    }
    let crossings: Vec<f64> = flip_intervals
        .iter()
        .map(|&(j, i)| refine_crossing(traj, a_abs, times[j], times[i]))
        .collect();

    // segment boundaries: grid start, crossings, grid end
    let t_start = times[0];
    let t_end = *times.last().unwrap();
    let span = t_end - t_start;
    let mut bounds = Vec::with_capacity(crossings.len() + 2);
    bounds.push(t_start);
    bounds.extend_from_slice(&crossings);
    bounds.push(t_end);

    let points = traj.points();
    let mut plateaus = Vec::new();
    let mut metastable_count = 0;
    for (seg_idx, pair) in bounds.windows(2).enumerate() {
        let (lo, hi) = (pair[0], pair[1]);
        // classify by the samples strictly inside the segment
        let first = times.partition_point(|&t| t < lo + CROSSING_TOL);
        let last = times.partition_point(|&t| t <= hi - CROSSING_TOL);
        if first >= last {
            continue;
        }
        let mid_state = &states[(first + last) / 2];
        if classify_basis(mid_state) != BasisLabel::SigmaZ {
            continue;
        }
        let classical: Vec<f64> = points[first..last].iter().map(|p| p.classical).collect();
        let spread = classical.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - classical.iter().copied().fold(f64::INFINITY, f64::min);
        if spread > PLATEAU_FLATNESS_TOL {
            return Err(Error::InvalidState(format!(
                "classical correlation varies by {spread:e} inside a sigma_z interval \
                 [{lo}, {hi}]; labeling is inconsistent"
            )));
        }
        if hi - lo > PLATEAU_MIN_FRACTION * span {
            plateaus.push((lo, hi));
            if seg_idx + 2 < bounds.len() {
                // a later segment exists and alternation makes it sigma_x
                metastable_count += 1;
            }
        }
    }

    Ok(RegimeReport {
        crossings,
        plateaus,
        metastable_count,
        asymptotic_basis: classify_basis(states.last().unwrap()),
        entropy_maxima: entropy_maxima(times, &traj.entropies()),
    })
}

/// Order-of-magnitude temperature of the pointer transition,
/// `-ln|2p - 1| / (16 pi)`, from the stationary-value estimate
/// `b(inf) + c(inf) ~ e^{-16 pi tau}`.
pub fn pointer_temperature_estimate(p: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
    }
    let imbalance = (2.0 * p - 1.0).abs();
    if imbalance == 0.0 {
        return Err(Error::NoAbruptTransition);
    }
    Ok(-imbalance.ln() / (16.0 * PI))
}

/// Temperature where the asymptotic condition `|a| = b(inf) + c(inf)` holds,
/// by bisection over `bracket` to `CROSSOVER_TOL`. Below the returned value
/// the asymptotic basis is sigma_x, above it sigma_z.
///
/// The exponents are integrated once at unit temperature and scaled (they
/// are exactly linear in `tau`), after checking they are stationary over
/// the trailing half of `[0, t_stationary]`.
pub fn crossover_temperature(
    geom: &QubitGeometry,
    p: f64,
    t_stationary: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
    }
    if !(t_stationary > 0.0) || !t_stationary.is_finite() {
        return Err(Error::InvalidInput(format!(
            "t_stationary must be positive and finite, got {t_stationary}"
        )));
    }
    let (lo0, hi0) = bracket;
    if !lo0.is_finite() || !hi0.is_finite() || lo0 < 0.0 || hi0 <= lo0 {
        return Err(Error::InvalidInput(format!(
            "crossover bracket [{lo0}, {hi0}] must be finite, non-negative and ordered"
        )));
    }

    let grid = [0.0, 0.5 * t_stationary, t_stationary];
    let exponents = kernel::exponents_on_grid(geom, 1.0, &grid)?;
    let (eb, ec) = (exponents.e_b(), exponents.e_c());
    let increment = (eb[2] - eb[1]).abs().max((ec[2] - ec[1]).abs());
    if increment > STATIONARY_TOL {
        return Err(Error::NotStationary { t: t_stationary, increment });
    }
    let (eb_inf, ec_inf) = (eb[2], ec[2]);

    let a_abs = (2.0 * p - 1.0).abs();
    let margin =
        |tau: f64| a_abs - (p * (-tau * eb_inf).exp() + (1.0 - p) * (-tau * ec_inf).exp());

    let (mut lo, mut hi) = (lo0, hi0);
    let mut m_lo = margin(lo);
    let m_hi = margin(hi);
    if m_lo == 0.0 {
        return Ok(lo);
    }
    if m_hi == 0.0 {
        return Ok(hi);
    }
    if (m_lo > 0.0) == (m_hi > 0.0) {
        return Err(Error::NoBracket { lo: lo0, hi: hi0 });
    }
    while hi - lo > CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        let m_mid = margin(mid);
        if (m_mid > 0.0) == (m_lo > 0.0) {
            lo = mid;
            m_lo = m_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Independent trajectories and regime reports for every temperature in
/// `taus`, computed in parallel and returned sorted by temperature.
/// Per-temperature failures are recorded inline; the sweep continues.
pub fn temperature_sweep(
    geom: &QubitGeometry,
    p: f64,
    taus: &[f64],
    t_grid: &[f64],
) -> Vec<(f64, Result<RegimeReport>)> {
    let mut sorted = taus.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .into_par_iter()
        .map(|tau| {
            let report = SubstrateContext::new(tau)
                .and_then(|ctx| Trajectory::simulate(geom, &ctx, p, t_grid))
                .and_then(|traj| scan_regimes(&traj));
            (tau, report)
        })
        .collect()
}
