use thiserror::Error;

/// Errors raised by the counting, spectral and Frobenius machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid recurrence parameters ({a},{b},{c}): {reason}")]
    InvalidParams {
        a: u32,
        b: u32,
        c: u32,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A backward step would leave the integers.
    #[error("no integer pre-image at index {index}: {numerator} is not divisible by {divisor}")]
    Divisibility {
        index: i64,
        numerator: String,
        divisor: u32,
    },

    #[error("cubic x^3-{a}x^2-{b}x-{c} has discriminant {discriminant} >= 0 (more than one real root)")]
    MultipleRealRoots {
        a: u32,
        b: u32,
        c: u32,
        discriminant: String,
    },

    #[error("table {table} row {row}: field {field} computed {computed:.6}, printed {printed}")]
    RowMismatch {
        table: u8,
        row: usize,
        field: &'static str,
        computed: f64,
        printed: f64,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("generators {0:?} share a common divisor")]
    NotCoprime(Vec<u64>),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("null sequence of length {length} violates its pattern: {reason}")]
    PatternViolation { length: usize, reason: String },

    #[error("parameters ({a},{b},{c}) are not affable")]
    NotAffable { a: u32, b: u32, c: u32 },

    /// An enclosure could not decide a comparison at the maximum working precision.
    #[error("could not certify: {0}")]
    Uncertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
