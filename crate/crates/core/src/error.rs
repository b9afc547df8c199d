use thiserror::Error;

pub type Result<T> = std::result::Result<T, SegreError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegreError {
    /// Parameters outside the mathematical domain (`g < 2`, `r < 2`, bad `k`, ...).
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// Parameters inside the domain but beyond the supported input guard.
    #[error("input outside supported range: {0}")]
    OutOfGuard(String),

    /// `s` fails the congruence `s ≡ kd (mod r)` or lies outside `0 < s ≤ s_max`.
    #[error("invalid s = {s} for (g={g}, r={r}, d={d}, k={k}): {reason}")]
    InvalidS {
        g: i64,
        r: i64,
        d: i64,
        k: i64,
        s: i64,
        reason: String,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Exhaustive search requested on a domain too large to enumerate.
    #[error("search domain too large: {0}")]
    DomainTooLarge(String),
}

impl SegreError {
    pub fn is_overflow(&self) -> bool {
        matches!(self, SegreError::Overflow(_))
    }
}

/// Checked arithmetic shorthands that turn `None` into [`SegreError::Overflow`].
pub(crate) mod checked {
    use super::{Result, SegreError};

    #[inline]
    pub fn add(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
        a.checked_add(b).ok_or(SegreError::Overflow(ctx))
    }

    #[inline]
    pub fn sub(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
        a.checked_sub(b).ok_or(SegreError::Overflow(ctx))
    }

    #[inline]
    pub fn mul(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
        a.checked_mul(b).ok_or(SegreError::Overflow(ctx))
    }
}
