//! Error type shared by every module.

use std::fmt;

/// Why a table failed group validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAGroupReason {
    NoIdentity,
    MissingInverse,
    NonAssociative,
    NonLatinSquare,
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NoIdentity => "no-identity",
            Self::MissingInverse => "missing-inverse",
            Self::NonAssociative => "non-associative",
            Self::NonLatinSquare => "non-latin-square",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(NotAGroupReason),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not a direct product of nonabelian simple groups")]
    NotSemisimpleProduct,
    #[error("cap exceeded: {what} needs {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("cochain is not product respecting")]
    NotProductRespecting,
    #[error("actions of the two extension data differ")]
    ActionMismatch,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid extension data: {0}")]
    InvalidExtensionData(String),
    #[error("prime {0} is even")]
    EvenPrime(u64),
    #[error("subgroup is not central")]
    NotCentral,
    #[error("outer action is nontrivial")]
    OuterActionNontrivial,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("strategy {strategy} inapplicable: {reason}")]
    StrategyInapplicable { strategy: &'static str, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Returns `CapExceeded` when `size > cap`.
pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
