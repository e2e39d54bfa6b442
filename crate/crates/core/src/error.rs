use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid system shape: {0}")]
    InvalidShape(String),

    #[error("contour variable |zhat| = {0} is outside (0, 1)")]
    DegenerateZ(f64),

    #[error("Newton refinement failed for {side} root branch {branch}")]
    NonConvergence { side: &'static str, branch: usize },

    #[error("flat pairing failed: {0}")]
    PairingFailure(String),

    #[error("ring size L = {size} exceeds the supported maximum {max}")]
    ScaleExceeded { size: usize, max: usize },

    #[error("quadrature did not settle: |dP| = {delta:e} after {nodes} nodes")]
    QuadratureDivergence { delta: f64, nodes: usize },

    #[error(
        "phase of the prefactor jumped by {jump} between adjacent nodes; increase the node count"
    )]
    BranchDiscontinuity { jump: f64 },

    #[error("node truncation unstable: |d det| = {delta:e} at m = {m}")]
    TruncationUnstable { delta: f64, m: usize },

    #[error(
        "oracle state space exceeded {max} states before the Poisson tail fell below tolerance"
    )]
    TruncationOverflow { max: usize },

    #[error("{what} series did not converge within {terms} terms")]
    SeriesStall { what: &'static str, terms: usize },

    #[error("polylogarithm argument {0} lies on the branch cut [1, inf)")]
    BranchCut(f64),

    #[error("fractional power base has non-positive real part ({0})")]
    BranchViolation(String),

    #[error("initial condition does not fit the ring: {0}")]
    ShapeMismatch(String),

    #[error("scaling parameters give negative time t = {0}")]
    NegativeTime(f64),

    #[error("grids differ at row {row}: {a} vs {b}")]
    GridMismatch { row: usize, a: f64, b: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
