use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library can report. Arithmetic itself never fails silently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not a unit: lowest nonzero coefficient {coefficient} at q^{exponent}")]
    NotAUnit { exponent: i64, coefficient: BigInt },
    #[error("series has no nonzero coefficient below q^{prec}")]
    ZeroSeries { prec: i64 },
    #[error("exponent {exponent} outside known window [{min_exp}, {prec})")]
    OutOfRange {
        exponent: i64,
        min_exp: i64,
        prec: i64,
    },
    #[error(
        "insufficient precision: need coefficients through q^{needed}, have below q^{available}"
    )]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("dissection needs nonnegative support, series starts at q^{min_exp}")]
    NegativeSupport { min_exp: i64 },
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("division is not exact at q^{exponent}")]
    InexactDivision { exponent: i64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
