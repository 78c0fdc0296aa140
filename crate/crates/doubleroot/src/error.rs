//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("singular configuration: {detail} (separation {separation:.3e})")]
    SingularConfiguration {
        detail: String,
        separation: f64,
        /// Zero labels of the offending pair, 1-based; label 1 is the double zero.
        pair: (usize, usize),
    },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:.3e})")]
    RootFindingFailed { residual: f64, iterations: u32 },

    #[error(
        "ambiguous double-root cluster: closest pair separations {sep_best:.3e} and {sep_next:.3e} \
         are within a factor of 2 and no hint was given"
    )]
    AmbiguousDoubleRoot { sep_best: f64, sep_next: f64 },

    #[error("second derivative requested for a frozen coefficient law")]
    FrozenLaw,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error(
        "initial data inconsistent with the t = 0 branch structure: {detail} (distance {distance:.3e})"
    )]
    InconsistentStart { detail: String, distance: f64 },

    #[error(
        "branch tracking ambiguity at t = {t}: constraint roots {root_a} and {root_b} collide \
         (separation {separation:.3e})"
    )]
    TrackingAmbiguity {
        t: f64,
        root_a: Complex64,
        root_b: Complex64,
        separation: f64,
    },

    #[error("time-step refinement limit reached at t = {t} without resolving branch ambiguity")]
    RefinementLimit { t: f64 },

    #[error("collision of zeros near t = {t}: labels {pair:?} at separation {separation:.3e}")]
    Collision {
        t: f64,
        pair: (usize, usize),
        separation: f64,
    },

    #[error("integrator exceeded {max_steps} steps at t = {t}")]
    MaxStepsExceeded { t: f64, max_steps: usize },

    #[error("comparison requires identical time grids: {0}")]
    GridMismatch(String),

    #[error("trajectory covers [0, {covered}] but [0, {required}] is needed")]
    TrajectoryTooShort { covered: f64, required: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 4 collision/singularity, 3 other numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::InvalidModel(_)
            | Error::InvalidState(_)
            | Error::InvalidGrid(_)
            | Error::GridMismatch(_) => 2,
            Error::Collision { .. }
            | Error::SingularConfiguration { .. }
            | Error::TrackingAmbiguity { .. } => 4,
            _ => 3,
        }
    }
}
