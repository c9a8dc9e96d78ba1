//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("time must be strictly positive, got {0}")]
    NonPositiveTime(f64),

    #[error("derivative order {got} exceeds supported limit {limit}")]
    UnsupportedOrder { got: u32, limit: u32 },

    #[error("grid shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unsupported norm parameter: {0}")]
    NormParameter(String),

    #[error("mean vorticity {mean:.3e} exceeds tolerance {tol:.3e}; Biot-Savart on the torus needs zero mean")]
    NonzeroMean { mean: f64, tol: f64 },

    #[error("quadrature accuracy {achieved:.3e} worse than requested {requested:.3e}")]
    Accuracy { achieved: f64, requested: f64 },

    #[error("CFL violation at t={t:.6}: dt={dt:.3e} but advective bound is {bound:.3e}; suggested dt={suggested:.3e}")]
    Cfl {
        t: f64,
        dt: f64,
        bound: f64,
        suggested: f64,
    },

    #[error("initial data construction failed: {0}")]
    InitialData(String),

    #[error("far-field floor violated at t={t:.6}: |omega| on the box edge is {edge:.3e} > {floor:.3e}")]
    Truncation { t: f64, edge: f64, floor: f64 },

    #[error("missing dependency: {0}")]
    Dependency(String),

    #[error("time integration failed to converge: {0}")]
    Integration(String),

    #[error("tail power {0} is not integrable; check coefficient index sets")]
    NonIntegrableTail(f64),

    #[error("rate fit failed: {0}")]
    Fit(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed file {path}: {reason}")]
    Format { path: String, reason: String },
}
