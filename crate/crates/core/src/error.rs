use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree ell = {0} is not supported (need 1 <= ell <= {max})", max = crate::MAX_ELL)]
    InvalidDegree(usize),

    #[error("coefficient file: {0}")]
    Schema(String),

    #[error("expected {expected} coefficients for the declared degree, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("a_0 must be real, imaginary part is {0:e}")]
    ImaginaryMonopole(f64),

    #[error("all coefficients vanish")]
    ZeroPolynomial,

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("root residual {residual:e} exceeds tolerance {tol:e}")]
    RootResidual { residual: f64, tol: f64 },

    #[error("antipodal pairing residual {residual:e} rad exceeds tolerance {tol:e} rad")]
    PairingResidual { residual: f64, tol: f64 },

    #[error("odd number of roots ({0}) cannot be paired")]
    OddRootCount(usize),

    #[error("degenerate evaluation points: {0}")]
    DegeneratePoints(String),

    #[error("{0} evaluation points requested, supported range is 1..=4")]
    PointCount(usize),

    #[error("hafnian has imaginary part {imag:e} against real part {real:e}")]
    NonRealHafnian { real: f64, imag: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("histogram degree {found} does not match multipole set degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{failures} of {attempted} realizations failed the root pipeline")]
    FailureRate { failures: u64, attempted: u64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
