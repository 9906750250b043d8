use thiserror::Error;

pub type Result<T> = std::result::Result<T, WgError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WgError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("operation requires the hatted domain [n] u [n^], got {0}")]
    NotHatted(String),

    #[error("weight mismatch: |{left}| = {left_weight} but |{right}| = {right_weight}")]
    WeightMismatch {
        left: String,
        left_weight: usize,
        right: String,
        right_weight: usize,
    },

    #[error("{what} = {value} exceeds the supported bound {max}")]
    BoundExceeded {
        what: &'static str,
        value: i64,
        max: i64,
    },

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("pole at N = {0}")]
    Pole(String),

    #[error("truncation order {order} is below the leading exponent {leading}")]
    OrderBelowLeading { order: i64, leading: i64 },

    #[error("singular Gram matrix at N = {0}")]
    SingularMatrix(i64),

    #[error("Euler characteristic {0} is odd; orientable maps have even characteristic")]
    OddCharacteristic(i64),

    #[error("non-integral census for complement type {complement}: {count} records over z = {z}")]
    NonIntegerCensus {
        complement: String,
        count: u64,
        z: u64,
    },

    #[error("non-integral count: {0}")]
    NonIntegerCount(String),

    #[error("invalid indexed product: {0}")]
    InvalidProduct(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}
