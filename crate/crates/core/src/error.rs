use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("text is empty")]
    EmptyText,
    #[error("text must end with a unique sentinel smaller than every other symbol")]
    InvalidSentinel,
    #[error("sequence contains reserved byte {0:#04x}")]
    ReservedByte(u8),
    #[error("range [{lo}, {hi}] is invalid for length {len}")]
    InvalidRange { lo: usize, hi: usize, len: usize },
    #[error("position {pos} is out of range for length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("run {0} is the first run of its symbol and has no threshold")]
    UndefinedThreshold(usize),
    #[error("unknown encoding `{0}`")]
    UnknownEncoding(String),
    #[error("unknown LCE backend `{0}`")]
    UnknownBackend(String),
    #[error("unknown threshold storage `{0}`")]
    UnknownStorage(String),
    #[error("unknown tie-break rule `{0}`")]
    UnknownTieBreak(String),
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("index and suffix structures were built from different texts")]
    MismatchedInputs,
    #[error("skipped LCE at pattern index {index} is unsound: stored bound gives {skipped}, query gives {actual}")]
    UnsoundSkip {
        index: usize,
        skipped: usize,
        actual: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad magic: not an index file")]
    BadMagic,
    #[error("unsupported index version {0}")]
    UnsupportedVersion(u32),
    #[error("unsupported encoding tag {0}")]
    UnsupportedEncoding(u8),
    #[error("unsupported LCE backend tag {0}")]
    UnsupportedBackend(u8),
    #[error("unsupported threshold storage tag {0}")]
    UnsupportedStorage(u8),
    #[error("checksum mismatch in {0} section")]
    ChecksumMismatch(&'static str),
    #[error("index file is truncated")]
    Truncated,
    #[error("malformed index: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
