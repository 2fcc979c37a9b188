use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("intensity must be finite and > 0, got {0}")]
    InvalidIntensity(f64),

    #[error("intensity {lambda} exceeds the configured maximum {max}")]
    IntensityTooLarge { lambda: f64, max: f64 },

    #[error("Renyi order must be finite and > 0, got {0}")]
    InvalidOrder(f64),

    #[error("tolerance must be finite and > 0, got {0}")]
    InvalidTolerance(f64),

    /// The geometric tail bound needs the pmf ratio past `n` to be below one.
    #[error("geometric tail bound is invalid at n = {n} for lambda = {lambda} (requires n + 2 > lambda)")]
    TailBoundInvalid { lambda: f64, n: u64 },

    #[error("no truncation index below the cap of {cap} terms reaches the requested tolerance")]
    TruncationCap { cap: u64 },

    #[error("value overflowed binary64 range while evaluating {0}")]
    Overflow(&'static str),

    #[error("{what} requires {requirement}, got {got}")]
    OutOfDomain {
        what: &'static str,
        requirement: &'static str,
        got: f64,
    },

    #[error("sequences differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sequences must be nonempty")]
    EmptySequence,

    #[error("first sequence does not majorize the second")]
    NotMajorized,

    #[error("value {value} lies outside the function domain [{lo}, {hi}]")]
    OutsideDomain { value: f64, lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::TruncationCap { .. } | Error::Overflow(_))
    }
}
