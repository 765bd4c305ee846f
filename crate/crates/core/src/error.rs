use std::borrow::Cow;
use std::fmt;

/// Message carried by every [`FailureKind::LoopBreakerMissing`] failure.
pub const LOOP_BREAKER_MESSAGE: &str = "Recursive structure with no loop breaker.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureKind {
    /// The budget fell through the floor: some recursive type has no cheap way out.
    LoopBreakerMissing,
    /// A choice was requested from an empty list or an empty range.
    EmptyChoice,
    /// A weighted choice had a negative weight, or only zero weights.
    BadWeights,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::LoopBreakerMissing => "loop breaker missing",
            FailureKind::EmptyChoice => "empty choice",
            FailureKind::BadWeights => "bad weights",
        })
    }
}

/// Why a generation run did not produce a value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{detail}")]
pub struct GenFailure {
    kind: FailureKind,
    detail: Cow<'static, str>,
}

impl GenFailure {
    pub fn new(kind: FailureKind, detail: impl Into<Cow<'static, str>>) -> Self {
        GenFailure {
            kind,
            detail: detail.into(),
        }
    }

    pub fn loop_breaker_missing() -> Self {
        Self::new(FailureKind::LoopBreakerMissing, LOOP_BREAKER_MESSAGE)
    }

    pub fn empty_choice(detail: impl Into<Cow<'static, str>>) -> Self {
        Self::new(FailureKind::EmptyChoice, detail)
    }

    pub fn bad_weights(detail: impl Into<Cow<'static, str>>) -> Self {
        Self::new(FailureKind::BadWeights, detail)
    }

    pub fn kind(&self) -> FailureKind {
        self.kind
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }
}
