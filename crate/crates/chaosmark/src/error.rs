use std::path::PathBuf;

/// Unified error type for the library.
///
/// Variants are grouped by how the CLI maps them to exit codes: format and
/// I/O problems are data errors, capacity and precondition failures are
/// reported separately so callers can distinguish "bad file" from "valid
/// file that does not fit".
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {detail} at byte offset {offset}")]
    Malformed {
        path: PathBuf,
        offset: usize,
        detail: String,
    },

    #[error("{path}: unsupported maxval {maxval} (only 255 is supported)")]
    MaxvalUnsupported { path: PathBuf, maxval: u32 },

    #[error("{path}: truncated payload at byte offset {offset}: expected {expected} more bytes, found {found}")]
    Truncated {
        path: PathBuf,
        offset: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("invalid bit-plane layout: msc mask {msc:#04x} and lsc mask {lsc:#04x} overlap")]
    LayoutOverlap { msc: u8, lsc: u8 },

    #[error("watermark needs {needed} LSC positions but the carrier provides only {available} (N = {needed}, M = {available})")]
    Capacity { needed: usize, available: usize },

    #[error("probe exhausted: all {m} LSC positions already used")]
    ProbeExhausted { m: usize },

    #[error("dimension mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    DimensionMismatch {
        left_w: u32,
        left_h: u32,
        right_w: u32,
        right_h: u32,
    },

    #[error("bit stream length {got} does not match expected {expected}")]
    StreamLength { expected: usize, got: usize },

    #[error("strategy provides {got} elements but {needed} are required")]
    StrategyTooShort { needed: usize, got: usize },

    #[error("authenticated mode requires an MSC stream")]
    MissingMsc,

    #[error("negate-mode extraction requires the original carrier image")]
    MissingOriginal,

    #[error("invalid attack parameter: {0}")]
    InvalidAttack(String),

    #[error("{path}: {detail} (line {line})")]
    Config {
        path: PathBuf,
        line: usize,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by inputs that are well-formed but violate a
    /// capacity, range, or precondition constraint, as opposed to unreadable
    /// data.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. }
                | Error::ProbeExhausted { .. }
                | Error::StrategyTooShort { .. }
                | Error::InvalidAttack(_)
                | Error::InvalidKey(_)
                | Error::LayoutOverlap { .. }
                | Error::DimensionMismatch { .. }
        )
    }
}
