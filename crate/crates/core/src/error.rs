use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument is outside the domain its operation accepts.
    #[error("`{name}` = {value} is out of range: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("sample set is empty")]
    EmptySamples,

    #[error("non-finite coordinate in sample row {row}")]
    NonFinite { row: usize },

    #[error("probe grid is empty")]
    EmptyGrid,

    #[error("reference CDF rejected: {0}")]
    Reference(String),

    #[error("quadrature over [{a}, {b}] stopped at depth limit with error estimate {error:e} (estimate {estimate})")]
    Convergence { a: f64, b: f64, estimate: f64, error: f64 },

    /// The erfc closed form only holds for equal and opposite bit-line levels.
    #[error("closed form needs v_low == v_high, got v_low = {v_low}, v_high = {v_high}")]
    Asymmetric { v_low: f64, v_high: f64 },

    #[error("sweep value {value} on axis `{axis}`: {source}")]
    Sweep {
        axis: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain { name, value, expected }
    }
}
