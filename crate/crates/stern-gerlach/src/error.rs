use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("config field `{field}` must be strictly positive, got {value:e}")]
    NonPositiveConfig { field: &'static str, value: f64 },

    #[error("config file {path}: {message}")]
    ConfigFile { path: String, message: String },

    #[error("time {t:e} s is outside the in-field interval [0, {delta_t:e}] s")]
    TimeOutOfField { t: f64, delta_t: f64 },

    #[error("time must be non-negative, got {0:e} s")]
    NegativeTime(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid invalid: {0}")]
    InvalidGrid(String),

    #[error(
        "grid [{z_min:e}, {z_max:e}] m does not cover both packet centers within ±{required:e} m"
    )]
    GridTooSmall {
        z_min: f64,
        z_max: f64,
        required: f64,
    },

    #[error("grids or times do not match: {0}")]
    GridMismatch(String),

    #[error("boundary mass {mass:e} exceeds {limit:e}; enlarge the grid or shorten the run")]
    BoundaryMass { mass: f64, limit: f64 },

    #[error("both spinor components vanish at (x={x:e}, z={z:e}); velocity undefined")]
    VanishingSpinor { x: f64, z: f64 },

    #[error("non-finite trajectory state at t={t:e} s")]
    NonFiniteState { t: f64 },

    #[error("velocity bound violated at t={t:e} s: |{v:e}| > {bound:e} m/s")]
    VelocityBound { v: f64, bound: f64, t: f64 },

    #[error("atom {index} failed: {source}")]
    AtomFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
