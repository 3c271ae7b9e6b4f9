//! Dephasing dynamics of two donor-based charge qubits coupled to substrate
//! acoustic phonons.
//!
//! Each qubit is a pair of donor sites sharing one electron; off-resonant
//! phonon scattering dephases the pair without changing populations, so an
//! initial mixture of the two even-parity Bell states stays in X form with
//! coherences `b(t)` and `c(t)`. This crate evaluates the closed-form
//! inter-donor rate and its time integrals ([`kernel`]), the analytic
//! correlation measures of the X family ([`xstate`]), a brute-force
//! measurement oracle over the Bloch sphere ([`oracle`]), and the
//! pointer-basis regime analysis ([`regime`]), all in reduced units (lengths
//! in Bohr radii, time in `a_B / s`, temperature as the dimensionless ratio
//! `tau`).

pub mod cli;
pub mod config;
pub mod geometry;
pub mod kernel;
pub mod oracle;
pub mod output;
pub mod quad;
pub mod regime;
pub mod trajectory;
pub mod verify;
pub mod xstate;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("quadrature did not converge on panel [{lo}, {hi}] (error estimate {estimate:e})")]
    Quadrature { lo: f64, hi: f64, estimate: f64 },
    #[error("no sign change over the bracket [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("no abrupt transition: p = 1/2 has no finite pointer temperature")]
    NoAbruptTransition,
    #[error("trajectory too coarse near t = {t}: adjacent sign changes, densify the grid")]
    TrajectoryTooCoarse { t: f64 },
    #[error("exponents not stationary at t = {t}: increment {increment:e} over the trailing half")]
    NotStationary { t: f64, increment: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub use geometry::{DonorDistanceSet, QubitGeometry, SubstrateContext, Vec3};
pub use kernel::{DecoherenceExponents, KernelPolynomial, Spin};
pub use oracle::{DenseTwoQubitState, MeasurementBasis, OracleGrid};
pub use regime::{BasisLabel, RegimeReport};
pub use trajectory::Trajectory;
pub use xstate::{CorrelationPoint, XState};
