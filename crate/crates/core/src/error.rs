use thiserror::Error;

/// Errors raised by the spectral model and the numerical engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("atom {index}: value must be finite and nonnegative, got {value}")]
    InvalidAtomValue { index: usize, value: f64 },
    #[error("atom {index}: weight must be finite and positive, got {weight}")]
    InvalidAtomWeight { index: usize, weight: f64 },
    #[error("breakpoints must be finite and strictly increasing (and positive on the half-line)")]
    InvalidBreakpoints,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("step function must be nonincreasing")]
    NotNonincreasing,
    #[error("step function must be nonnegative")]
    Negative,
    #[error("{name} out of domain: {value}")]
    Domain { name: &'static str, value: f64 },
    #[error("weight function is not quasiconcave near t = {at}")]
    NotQuasiconcave { at: f64 },
    #[error("weight function does not vanish at the origin")]
    NotVanishingAtZero,
    #[error("divergent integral: {0}")]
    Divergent(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("matrix of shape {rows}x{cols} needs {expected} entries, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("singular value iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("adaptive quadrature did not reach tolerance on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },
    #[error("cannot parse {0:?}")]
    Parse(alloc::string::String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
