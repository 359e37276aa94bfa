use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field of order {q}^{n} exceeds the cap of {cap} elements")]
    FieldTooLarge { q: u32, n: usize, cap: u64 },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial is not irreducible over F_{q}")]
    NotIrreducible { q: u32 },

    #[error("polynomial is irreducible but its root has order {order}, not {expected}")]
    NotPrimitive { order: u64, expected: u64 },

    #[error("no built-in primitive polynomial for q={q}, n={n}")]
    NoDefaultPolynomial { q: u32, n: usize },

    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },

    #[error("symbol {symbol} is not in F_{q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },

    #[error("position {pos} out of range [0, {len})")]
    PositionOutOfRange { pos: u64, len: u64 },

    #[error("subspaces or codes live in different spaces ({0})")]
    SpaceMismatch(String),

    #[error("{what} count {count} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, count: String, cap: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("words {first} and {second} are at distance {distance}, below the declared {declared}")]
    DistanceViolation { first: usize, second: usize, distance: u64, declared: u64 },

    #[error("duplicate codeword at index {0}")]
    DuplicateWord(usize),

    #[error("index {index} out of range for a code of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("not a codeword: {0}")]
    NotACodeword(String),

    #[error("correlation {found} exceeds lambda {lambda} (words {first}, {second}, relative shift {shift})")]
    CorrelationExceeded { first: usize, second: usize, shift: usize, found: usize, lambda: usize },

    #[error("malformed input at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format { line, msg: msg.into() }
    }
}
