use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid clique cover: {0}")]
    InvalidCover(#[from] CoverError),

    #[error("malformed structure code: {0}")]
    MalformedCode(#[from] CodeError),

    #[error("size limit exceeded: {what} = {value} (maximum {max})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("unsupported range r = {r}: closed forms require r < 1/2")]
    UnsupportedRange { r: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// Violations of the maximal-clique interval conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover has no intervals")]
    Empty,
    #[error("first interval must start at 1, found {0}")]
    FirstStart(usize),
    #[error("last interval must end at n = {n}, found {found}")]
    LastEnd { n: usize, found: usize },
    #[error("interval starts not strictly increasing at interval {0}")]
    StartsNotIncreasing(usize),
    #[error("interval ends not strictly increasing at interval {0}")]
    EndsNotIncreasing(usize),
    #[error("gap between interval {0} and interval {next}: start exceeds previous end + 1", next = .0 + 1)]
    Gap(usize),
    #[error("interval {index} = [{a}:{b}] lies outside [1:{n}]")]
    OutOfRange {
        index: usize,
        a: usize,
        b: usize,
        n: usize,
    },
}

/// Violations detected while decoding or parsing a structure code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("strings have different lengths ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("code length must be at least 1")]
    Empty,
    #[error("popcount mismatch: a has {a} ones, b has {b}")]
    PopcountMismatch { a: usize, b: usize },
    #[error("first bit of a is not set")]
    FirstLeftUnset,
    #[error("last bit of b is not set")]
    LastRightUnset,
    #[error("endpoints violate the interval conditions: {0}")]
    Cover(#[from] CoverError),
    #[error("invalid character {0:?} in bit string")]
    BadChar(char),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("truncated input: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after payload")]
    TrailingBytes(usize),
    #[error("unused trailing bits are not zero")]
    NonzeroPadding,
}
