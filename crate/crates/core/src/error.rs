use crate::scheme::Half;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Requested a code length the scheme does not list.
    #[error("unsupported length {n} for this scheme")]
    UnsupportedLength { n: usize },

    /// Syntax or semantic problem in a scheme document, with the line it
    /// came from.
    #[error("scheme document line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A variable occurs in the composed sequence for `n` but has no
    /// init/update rule there.
    #[error("variable {variable} has no rule for length {n}")]
    MissingRule { variable: String, n: usize },

    /// Update magnitudes must fit four integer bits and one fractional bit.
    #[error("update magnitude {magnitude} for {variable} at length {n} exceeds 15.5")]
    UpdateOverflow {
        variable: String,
        n: usize,
        magnitude: f64,
    },

    /// Update values move low-half variables down and high-half variables up.
    #[error("update {value} for {variable} has the wrong sign for the {half} half")]
    UpdateSign {
        variable: String,
        half: Half,
        value: f64,
    },

    /// Five-bit variable codes allow at most 32 names per half.
    #[error("{half} half declares more than 32 variables")]
    TooManyVariables { half: Half },

    /// Composing for `n` needs a sentinel substitution at `index`, but the
    /// entry there is not bold-marked.
    #[error("no bold marker at index {index} where length {n} ends its {half} half")]
    MissingBoldMarker { half: Half, n: usize, index: usize },

    /// Structural problem in a scheme that does not fit a more specific
    /// variant.
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    /// Hardware register files hold eight-bit init values.
    #[error("init value {value} for {variable} at length {n} does not fit in 8 bits")]
    InitOverflow {
        variable: String,
        n: usize,
        value: i64,
    },

    /// Stepping an engine past its last cycle.
    #[error("engine counter ran past the end of the sequence")]
    CounterOverflow,

    #[error("k = {k} is out of range for length {n}")]
    InvalidK { k: usize, n: usize },

    #[error("input length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("erasure probability {eps} is outside [0, 1]")]
    InvalidErasureProb { eps: f64 },

    #[error("code rate {rate} is outside (0, 1]")]
    InvalidRate { rate: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
