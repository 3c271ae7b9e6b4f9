//! Run configuration: one TOML document with nested sections.
//!
//! Every key has a default, so the empty document is a valid configuration;
//! unknown keys are rejected with the parser's location diagnostics.
//! Command-line flags override file values.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::geometry::{QubitGeometry, Vec3};
use crate::oracle::{OracleGrid, MIN_PHI_POINTS, MIN_THETA_POINTS};
use crate::trajectory::time_grid;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Seed for the randomized verification suites.
    pub seed: u64,
    pub geometry: GeometryConfig,
    pub dynamics: DynamicsConfig,
    pub oracle: OracleConfig,
    pub output: OutputConfig,
}

/// Donor layout, all vectors in Bohr radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub r1: [f64; 3],
    pub r2: [f64; 3],
    pub d1: [f64; 3],
    pub d2: [f64; 3],
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let geom = QubitGeometry::default();
        Self {
            r1: geom.r1().into(),
            r2: geom.r2().into(),
            d1: geom.d1().into(),
            d2: geom.d2().into(),
        }
    }
}

impl GeometryConfig {
    pub fn build(&self) -> Result<QubitGeometry> {
        QubitGeometry::new(
            Vec3::from(self.r1),
            Vec3::from(self.r2),
            Vec3::from(self.d1),
            Vec3::from(self.d2),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsConfig {
    /// Weight of the outer Bell state in the initial mixture.
    pub p: f64,
    /// Temperature ratio for the single-trajectory commands.
    pub tau: f64,
    /// Temperature ratios for `sweep`.
    pub tau_list: Vec<f64>,
    /// End of the time grid, in reduced units.
    pub t_max: f64,
    /// Number of grid points including both ends.
    pub points: usize,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        Self {
            p: 0.8,
            tau: 0.035,
            tau_list: vec![0.01, 0.035, 0.05],
            t_max: 400.0,
            points: 4000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    /// Bloch-sphere scan resolution of the measurement oracle.
    pub n_theta: usize,
    pub n_phi: usize,
    /// Refinement stops once a round improves the maximum by less than this.
    pub refine_tol: f64,
    /// Random states in the oracle-equivalence verification suite.
    pub verify_states: usize,
    /// Random states in the mutual-information identity suite.
    pub identity_states: usize,
    /// Random (state, basis) pairs in the closed-form equivalence suite.
    pub closed_form_pairs: usize,
    /// Evaluation time treated as stationary by the crossover bisection.
    pub t_stationary: f64,
    /// Bisection bracket for the crossover temperature.
    pub crossover_bracket: [f64; 2],
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_theta: 181,
            n_phi: 361,
            refine_tol: 1e-9,
            verify_states: 1000,
            identity_states: 10_000,
            closed_form_pairs: 2000,
            t_stationary: 400.0,
            crossover_bracket: [1e-4, 2.0],
        }
    }
}

impl OracleConfig {
    pub fn grid(&self) -> OracleGrid {
        OracleGrid { n_theta: self.n_theta, n_phi: self.n_phi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// Delimiter-separated series rows.
    Csv,
    /// Structured text: series rows plus the regime report.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: OutputFormat,
    /// Output file; standard output when absent.
    pub out: Option<PathBuf>,
    /// Also write a plotting script next to the data file.
    pub emit_plot: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { format: OutputFormat::Csv, out: None, emit_plot: false }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("config {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Re-validate every module-level precondition, so commands can assume
    /// a clean configuration.
    pub fn validate(&self) -> Result<()> {
        self.geometry.build()?;
        let d = &self.dynamics;
        if !d.p.is_finite() || !(0.0..=1.0).contains(&d.p) {
            return Err(Error::InvalidInput(format!("dynamics.p must lie in [0, 1], got {}", d.p)));
        }
        if !d.tau.is_finite() || d.tau < 0.0 {
            return Err(Error::InvalidInput(format!(
                "dynamics.tau must be non-negative, got {}",
                d.tau
            )));
        }
        for tau in &d.tau_list {
            if !tau.is_finite() || *tau < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "dynamics.tau_list entries must be non-negative, got {tau}"
                )));
            }
        }
        if !(d.t_max > 0.0) || !d.t_max.is_finite() {
            return Err(Error::InvalidInput(format!(
                "dynamics.t_max must be positive, got {}",
                d.t_max
            )));
        }
        if d.points < 2 {
            return Err(Error::InvalidInput(format!(
                "dynamics.points must be at least 2, got {}",
                d.points
            )));
        }
        let o = &self.oracle;
        if o.n_theta < MIN_THETA_POINTS || o.n_phi < MIN_PHI_POINTS {
            return Err(Error::InvalidInput(format!(
                "oracle grid must be at least {MIN_THETA_POINTS}x{MIN_PHI_POINTS}, got {}x{}",
                o.n_theta, o.n_phi
            )));
        }
        if !(o.refine_tol > 0.0) {
            return Err(Error::InvalidInput("oracle.refine_tol must be positive".into()));
        }
        if o.verify_states == 0 || o.identity_states == 0 || o.closed_form_pairs == 0 {
            return Err(Error::InvalidInput("verification suite sizes must be positive".into()));
        }
        if !(o.t_stationary > 0.0) || !o.t_stationary.is_finite() {
            return Err(Error::InvalidInput("oracle.t_stationary must be positive".into()));
        }
        let [lo, hi] = o.crossover_bracket;
        if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi <= lo {
            return Err(Error::InvalidInput(format!(
                "oracle.crossover_bracket [{lo}, {hi}] must be ordered and non-negative"
            )));
        }
        Ok(())
    }

    pub fn time_grid(&self) -> Result<Vec<f64>> {
        time_grid(self.dynamics.t_max, self.dynamics.points)
    }
}
