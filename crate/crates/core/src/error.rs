use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The stereographic denominator vanished (state at or next to the south pole).
    #[error("pole singularity: stereographic denominator {denominator:.3e} is below the pole threshold")]
    PoleSingularity { denominator: f64 },

    #[error("not a physical state: |M| = {norm} exceeds 1")]
    NotAState { norm: f64 },

    #[error("density matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("density matrix is not pure: max|rho^2 - rho| = {defect:.3e}")]
    NotPure { defect: f64 },

    #[error("wavefunction is not normalized: |psi| = {norm}")]
    NotNormalized { norm: f64 },

    #[error("time {t} lies outside the tabulated range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("operation is not defined for a {0} pulse")]
    UnsupportedPulse(&'static str),

    #[error("unknown solution family `{0}` (expected `precession` or `linear_x`)")]
    UnknownFamily(String),

    #[error("integration unstable: invariant drift {drift:.3e} exceeds {limit:.1e}")]
    StepTooLarge { drift: f64, limit: f64 },

    #[error("|z| = {modulus} exceeds the series domain radius {radius}")]
    DomainTooLarge { modulus: f64, radius: f64 },

    #[error("Bessel series for J_{order} did not converge within {max_terms} terms")]
    SeriesNotConverged { order: i32, max_terms: usize },

    #[error("J0 zero index {k} is outside the supported range 1..={max}")]
    ZeroOutOfRange { k: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
