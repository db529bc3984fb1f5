use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not invertible: constant term is zero")]
    NotInvertible,
    #[error("exp requires positive order")]
    ExpRequiresPositiveOrder,
    #[error("nonzero constant term")]
    NonzeroConstantTerm,
    #[error("insufficient truncation: need order {needed}, series has {available}")]
    InsufficientTruncation { needed: usize, available: usize },
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("empty coefficient list")]
    EmptySeries,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
