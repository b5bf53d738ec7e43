use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-positive density: {0}")]
    NonPositiveDensity(f64),

    #[error("non-positive pressure: {0}")]
    NonPositivePressure(f64),

    #[error("normal vector is not unit length (|n| = {norm})")]
    NonUnitNormal { norm: f64 },

    #[error("adiabatic coefficient {0} outside (1, 3)")]
    GammaOutOfRange(f64),

    #[error("mean flow has nonzero normal velocity {0} at the wall")]
    NonzeroMeanNormalVelocity(f64),

    #[error("normal Mach number {ma_n} at or below the vacuum limit {limit}")]
    VacuumLimitExceeded { ma_n: f64, limit: f64 },

    #[error("Riemann problem generates vacuum (pressure positivity {positivity} <= 0)")]
    VacuumGenerated { positivity: f64 },

    #[error("exact Riemann solver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("states do not form a mirror pair: {0}")]
    NotAMirrorPair(String),

    #[error("invalid state at element {element}, node {node}: {reason}")]
    InvalidState {
        element: usize,
        node: usize,
        reason: String,
    },

    #[error("blow-up at t = {time}: element {element}, node {node}: {reason}")]
    BlowUp {
        time: f64,
        element: usize,
        node: usize,
        reason: String,
    },

    #[error("config error in {path}: {message}")]
    ConfigParse { path: String, message: String },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
