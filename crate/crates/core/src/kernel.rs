//! Closed-form phonon dephasing rates and their accumulated time integrals.
//!
//! The inter-donor rate for two sites a distance `l` apart is
//!
//! ```text
//! gamma(t; l) = (2 pi / l) tau [ F(|l - t|) - F(l + t) ],
//! F(x) = (x^3/6 + x^2/2 + 5x/8 + 5/16) e^{-2x},
//! ```
//!
//! in reduced units (sound speed 1, lengths in Bohr radii). `F` is positive
//! and strictly decreasing, so `gamma >= 0`, but the signed combinations
//! entering a coherence's decay rate can go negative while a phonon
//! wavefront crosses another donor pair, which is what revives `b(t)` and
//! `c(t)` and makes the evolution non-Markovian.

use std::f64::consts::PI;

use crate::geometry::QubitGeometry;
use crate::quad;
use crate::{Error, Result};

/// Distances below this use the analytic `l -> 0` limit of the rate; the
/// `1/l` prefactor is removable.
pub const ZERO_DISTANCE_CUTOFF: f64 = 1e-8;

/// Absolute quadrature tolerance per integration panel.
pub const PANEL_TOL: f64 = 1e-10;

/// The fixed cubic entering the inter-donor rate, and its damped form.
pub struct KernelPolynomial;

impl KernelPolynomial {
    /// `P(x) = x^3/6 + x^2/2 + 5x/8 + 5/16`.
    pub fn cubic(x: f64) -> f64 {
        ((x / 6.0 + 0.5) * x + 0.625) * x + 0.3125
    }

    /// `F(x) = P(x) e^{-2x}`, positive and strictly decreasing for `x >= 0`.
    pub fn damped(x: f64) -> f64 {
        Self::cubic(x) * (-2.0 * x).exp()
    }
}

/// Electron localization label within a qubit, `m = -1/2` or `+1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Minus,
    Plus,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Minus, Spin::Plus];

    pub fn value(self) -> f64 {
        match self {
            Spin::Minus => -0.5,
            Spin::Plus => 0.5,
        }
    }
}

fn gamma_raw(t: f64, l: f64, tau: f64) -> f64 {
    if l < ZERO_DISTANCE_CUTOFF {
        // Limit of (2 pi / l) tau [F(|l - t|) - F(l + t)] as l -> 0, i.e.
        // -4 pi tau F'(t) with F'(t) = -(t^3/3 + t^2/2 + t/4) e^{-2t}.
        4.0 * PI * tau * ((t / 3.0 + 0.5) * t + 0.25) * t * (-2.0 * t).exp()
    } else {
        (2.0 * PI / l)
            * tau
            * (KernelPolynomial::damped((l - t).abs()) - KernelPolynomial::damped(l + t))
    }
}

/// Inter-donor dephasing rate `gamma(t; l)` at temperature ratio `tau`.
///
/// Vanishes identically at `t = 0` and decays like `e^{-2|l - t|}` once the
/// wavefront has passed.
pub fn gamma_point(t: f64, l: f64, tau: f64) -> Result<f64> {
    for (name, v) in [("t", t), ("l", l), ("tau", tau)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "{name} must be finite and non-negative, got {v}"
            )));
        }
    }
    Ok(gamma_raw(t, l, tau))
}

fn gamma_interqubit_raw(t: f64, b: usize, b_prime: usize, geom: &QubitGeometry, tau: f64) -> f64 {
    let mut total = 0.0;
    for m in Spin::BOTH {
        for s in Spin::BOTH {
            let l = (geom.site(b, m) - geom.site(b_prime, s)).norm();
            total += 4.0 * m.value() * s.value() * gamma_raw(t, l, tau);
        }
    }
    total
}

/// Inter-qubit decorrelation rate `gamma_{b,b'}(t)`: the signed four-term
/// sum over the donor-pair distances of qubits `b` and `b'`. For `b = b'`
/// it reduces to `2 gamma(t; 0) - 2 gamma(t; |d_b|)`.
pub fn gamma_interqubit(
    t: f64,
    b: usize,
    b_prime: usize,
    geom: &QubitGeometry,
    tau: f64,
) -> Result<f64> {
    if !(1..=2).contains(&b) || !(1..=2).contains(&b_prime) {
        return Err(Error::InvalidInput(format!(
            "qubit indices must be 1 or 2, got ({b}, {b_prime})"
        )));
    }
    for (name, v) in [("t", t), ("tau", tau)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "{name} must be finite and non-negative, got {v}"
            )));
        }
    }
    Ok(gamma_interqubit_raw(t, b, b_prime, geom, tau))
}

/// Dephasing rate of the bipartite coherence `|{m}><{s}|`:
/// `sum_{b,b'} (m_b - s_b)(m_{b'} - s_{b'}) gamma_{b,b'}(t)`.
///
/// Exactly zero whenever `{m} = {s}`, so populations are conserved.
pub fn big_gamma(
    t: f64,
    m: (Spin, Spin),
    s: (Spin, Spin),
    geom: &QubitGeometry,
    tau: f64,
) -> f64 {
    debug_assert!(t >= 0.0 && tau >= 0.0);
    let weights = [m.0.value() - s.0.value(), m.1.value() - s.1.value()];
    let mut total = 0.0;
    for (i, &wi) in weights.iter().enumerate() {
        if wi == 0.0 {
            continue;
        }
        for (j, &wj) in weights.iter().enumerate() {
            if wj == 0.0 {
                continue;
            }
            total += wi * wj * gamma_interqubit_raw(t, i + 1, j + 1, geom, tau);
        }
    }
    total
}

/// Label pattern of the outer coherence `b(t)` (between `{+,+}` and `{-,-}`).
pub const OUTER_COHERENCE: ((Spin, Spin), (Spin, Spin)) =
    ((Spin::Plus, Spin::Plus), (Spin::Minus, Spin::Minus));

/// Label pattern of the inner coherence `c(t)` (between `{+,-}` and `{-,+}`).
pub const INNER_COHERENCE: ((Spin, Spin), (Spin, Spin)) =
    ((Spin::Plus, Spin::Minus), (Spin::Minus, Spin::Plus));

/// Accumulated dephasing exponents of the two X-state coherences on a grid:
/// `b(t) = p e^{-E_b(t)}`, `c(t) = (1 - p) e^{-E_c(t)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceExponents {
    times: Vec<f64>,
    e_b: Vec<f64>,
    e_c: Vec<f64>,
}

impl DecoherenceExponents {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn e_b(&self) -> &[f64] {
        &self.e_b
    }

    pub fn e_c(&self) -> &[f64] {
        &self.e_c
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Integrate both coherence decay rates over `t_grid`, accumulating
/// incrementally panel by panel. Every donor-pair distance lying inside a
/// panel is forced as a quadrature breakpoint because the integrand has a
/// derivative kink where the wavefront radius `t'` equals a pair distance.
pub fn exponents_on_grid(
    geom: &QubitGeometry,
    tau: f64,
    t_grid: &[f64],
) -> Result<DecoherenceExponents> {
    if !tau.is_finite() || tau < 0.0 {
        return Err(Error::InvalidInput(format!("tau must be finite and non-negative, got {tau}")));
    }
    if t_grid.is_empty() || t_grid[0] != 0.0 {
        return Err(Error::InvalidInput("time grid must start at t = 0".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidInput("time grid must be finite and strictly ascending".into()));
    }

    let breaks = geom.distance_set();
    let rate_b = |t: f64| big_gamma(t, OUTER_COHERENCE.0, OUTER_COHERENCE.1, geom, tau);
    let rate_c = |t: f64| big_gamma(t, INNER_COHERENCE.0, INNER_COHERENCE.1, geom, tau);

    let n = t_grid.len();
    let mut e_b = Vec::with_capacity(n);
    let mut e_c = Vec::with_capacity(n);
    e_b.push(0.0);
    e_c.push(0.0);
    for w in t_grid.windows(2) {
        let db = quad::integrate_with_breakpoints(&rate_b, w[0], w[1], breaks.values(), PANEL_TOL)?;
        let dc = quad::integrate_with_breakpoints(&rate_c, w[0], w[1], breaks.values(), PANEL_TOL)?;
        e_b.push(e_b.last().unwrap() + db);
        e_c.push(e_c.last().unwrap() + dc);
    }
    Ok(DecoherenceExponents { times: t_grid.to_vec(), e_b, e_c })
}

/// Coherence trajectories for mixing parameter `p`.
pub fn coherences(p: f64, exponents: &DecoherenceExponents) -> Result<Vec<(f64, f64)>> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("mixing parameter p must lie in [0, 1], got {p}")));
    }
    Ok(exponents
        .e_b
        .iter()
        .zip(&exponents.e_c)
        .map(|(&eb, &ec)| (p * (-eb).exp(), (1.0 - p) * (-ec).exp()))
        .collect())
}
