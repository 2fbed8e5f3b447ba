use thiserror::Error;

/// Errors across the kernel, special-function, grid and solver layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("blade mask {mask:#x} out of range for dimension {n}")]
    BladeOutOfRange { mask: u32, n: u32 },

    #[error("gamma pole at non-positive integer z = {0}")]
    GammaPole(f64),

    #[error("series term {k} hits a gamma pole in the numerator")]
    GammaPoleAtTerm { k: usize },

    #[error("series did not converge within {terms} terms (term growth at k = {k})")]
    NonConvergence { terms: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error(
        "alpha = {alpha} outside the admissible window: need 2m <= alpha < 2m+2 with m >= 1 \
         (alpha >= 2); pass the relaxed gate to allow m = 0"
    )]
    AlphaWindow { alpha: f64 },

    #[error(
        "theta = {theta} outside |theta| <= min{{alpha-2m, 2m+2-alpha}} = {limit} for alpha = {alpha}"
    )]
    ThetaWindow { alpha: f64, theta: f64, limit: f64 },

    #[error("contour abscissa c = {c} outside the strip ({lo}, {hi})")]
    ContourStrip { c: f64, lo: f64, hi: f64 },

    #[error("contour spec invalid: {0}")]
    ContourSpec(String),

    #[error("quadrature refused: Re(tau) must be strictly positive for the radial path")]
    OscillatoryRefused,

    #[error("requested tolerance {tol:.2e} unreachable (estimated error {est:.2e})")]
    ToleranceUnreachable { tol: f64, est: f64 },

    #[error("field is in {found} space, expected {expected}")]
    SpaceMismatch { expected: &'static str, found: &'static str },

    #[error("grid spec invalid: {0}")]
    GridSpec(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
