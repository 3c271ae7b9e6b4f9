//! Time evolution of the X state over a sampled grid.

use crate::geometry::{QubitGeometry, SubstrateContext};
use crate::kernel;
use crate::xstate::{CorrelationPoint, XState};
use crate::{Error, Result};

/// Uniform grid of `n_points` times from 0 to `t_max` inclusive.
pub fn time_grid(t_max: f64, n_points: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidInput(format!("t_max must be positive and finite, got {t_max}")));
    }
    if n_points < 2 {
        return Err(Error::InvalidInput(format!("time grid needs at least 2 points, got {n_points}")));
    }
    let step = t_max / (n_points - 1) as f64;
    Ok((0..n_points).map(|i| if i + 1 == n_points { t_max } else { i as f64 * step }).collect())
}

/// A sampled evolution of the X state: one state per grid time, same `p`
/// throughout (populations are conserved by pure dephasing).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<XState>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<XState>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::InvalidInput(
                "trajectory needs equally many times and states, at least one".into(),
            ));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("trajectory times must be strictly ascending".into()));
        }
        Ok(Self { times, states })
    }

    /// Evolve the initial Bell mixture of weight `p` at temperature
    /// `ctx.tau()` over `t_grid`.
    pub fn simulate(
        geom: &QubitGeometry,
        ctx: &SubstrateContext,
        p: f64,
        t_grid: &[f64],
    ) -> Result<Self> {
        let exponents = kernel::exponents_on_grid(geom, ctx.tau(), t_grid)?;
        let states = kernel::coherences(p, &exponents)?
            .into_iter()
            .map(|(b, c)| XState::new(p, b, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(t_grid.to_vec(), states)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[XState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn p(&self) -> f64 {
        self.states[0].p()
    }

    /// Correlation measures at every sample.
    pub fn points(&self) -> Vec<CorrelationPoint> {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, s)| s.correlation_point(t))
            .collect()
    }

    /// Joint entropy at every sample, in bits.
    pub fn entropies(&self) -> Vec<f64> {
        self.states.iter().map(XState::joint_entropy).collect()
    }

    /// Linear interpolation of `(b, c)` between samples; clamps outside the
    /// sampled range.
    pub fn coherences_at(&self, t: f64) -> (f64, f64) {
        let n = self.times.len();
        if t <= self.times[0] {
            let s = &self.states[0];
            return (s.b(), s.c());
        }
        if t >= self.times[n - 1] {
            let s = &self.states[n - 1];
            return (s.b(), s.c());
        }
        let idx = self.times.partition_point(|&x| x <= t);
        let (t0, t1) = (self.times[idx - 1], self.times[idx]);
        let (s0, s1) = (&self.states[idx - 1], &self.states[idx]);
        let frac = (t - t0) / (t1 - t0);
        (
            s0.b() + frac * (s1.b() - s0.b()),
            s0.c() + frac * (s1.c() - s0.c()),
        )
    }
}
