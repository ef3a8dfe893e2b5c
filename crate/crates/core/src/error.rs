use std::path::PathBuf;

use crate::poly::BinaryPoly;
use crate::sbox::BijectivityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element {value:#x} is outside GF(2^{degree})")]
    OutOfRange { value: u32, degree: u32 },

    #[error("zero has no multiplicative inverse")]
    NoInverse,

    #[error("{0}")]
    Domain(String),

    #[error("reduction polynomial {0} is reducible over GF(2)")]
    Reducible(BinaryPoly),

    #[error("generator x does not span the field defined by {0}")]
    NotPrimitive(BinaryPoly),

    #[error("degenerate transformation: ad + bc = 0 under {poly}")]
    Degenerate { poly: BinaryPoly },

    #[error("table is not a bijection: {0}")]
    NotBijective(BijectivityReport),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("selector {selector} at position {position} is out of range for {count} S-boxes")]
    SelectorOutOfRange {
        selector: u8,
        position: usize,
        count: usize,
    },

    #[error("non-finite Lorenz state at integration step {step}")]
    NonFinite { step: usize },

    #[error("trajectory too short: need {needed} samples per coordinate, have {available}")]
    InsufficientTrajectory { needed: usize, available: usize },

    #[error("format error: {0}")]
    Format(String),

    #[error("image parse error at byte {offset}: {message}")]
    ImageParse { offset: usize, message: String },

    #[error("{}:{line}: {message}", path.display())]
    KeyFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "E_RANGE",
            Error::NoInverse => "E_NO_INVERSE",
            Error::Domain(_) => "E_DOMAIN",
            Error::Reducible(_) => "E_REDUCIBLE",
            Error::NotPrimitive(_) => "E_NOT_PRIMITIVE",
            Error::Degenerate { .. } => "E_DEGENERATE",
            Error::NotBijective(_) => "E_NOT_BIJECTIVE",
            Error::LengthMismatch { .. } => "E_LENGTH",
            Error::SelectorOutOfRange { .. } => "E_SELECTOR",
            Error::NonFinite { .. } => "E_NON_FINITE",
            Error::InsufficientTrajectory { .. } => "E_TRAJECTORY",
            Error::Format(_) => "E_FORMAT",
            Error::ImageParse { .. } => "E_IMAGE",
            Error::KeyFile { .. } => "E_KEY",
            Error::Io(_) => "E_IO",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
