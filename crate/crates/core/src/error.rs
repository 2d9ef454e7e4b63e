//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, QcError>;

#[derive(Debug, Error)]
pub enum QcError {
    #[error("grid spec mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid grid size {n}: n must be even and >= 8")]
    InvalidGridSize { n: usize },

    #[error("sampled field is not finite at flat index {index} (value {value})")]
    NonFinite { index: usize, value: f64 },

    #[error("incompatible right-hand side: |mean| = {mean:.3e} exceeds 1e-10")]
    Compatibility { mean: f64 },

    #[error("exponential overflow guard: 4*max(u) = {four_max_u:.3e} > 700")]
    Overflow { four_max_u: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line search failed after {attempts} halvings (energy {energy:.6e}, directional slope {slope:.3e})")]
    LineSearch {
        attempts: usize,
        energy: f64,
        slope: f64,
    },

    #[error("{what} did not converge within {iterations} iterations (residual {residual:.3e})")]
    NonConvergence {
        what: String,
        iterations: usize,
        residual: f64,
    },

    #[error("cutoff support under-resolved: radius {radius:.4e} spans {cells:.2} grid cells (need >= {min_cells})")]
    UnresolvedSupport {
        radius: f64,
        cells: f64,
        min_cells: f64,
    },

    #[error("endpoint not below the minimizer: E(v) = {endpoint:.6e} >= E(u_min) = {minimum:.6e}")]
    EndpointNotBelow { endpoint: f64, minimum: f64 },

    #[error("saddle candidate collapsed onto the minimizer branch: distance {distance:.3e} <= rho/2 = {half_rho:.3e}")]
    CollapsedToMinimizer { distance: f64, half_rho: f64 },

    #[error("snapshot format error: {0}")]
    Snapshot(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("configuration invalid:\n{}", .0.join("\n"))]
    Config(Vec<String>),
}
