use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported root system type {series}{rank}")]
    InvalidType { series: char, rank: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight has {got} coordinates, expected {expected}")]
    WrongRank { expected: usize, got: usize },
    #[error("dimension {needed} exceeds the configured cap {cap}")]
    DimensionCap { needed: u128, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("character is not a nonnegative combination of irreducibles (at {0})")]
    NotModuleCharacter(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::DimensionCap { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
