use thiserror::Error;

use crate::ranking::SessionId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("duplicate session id `{0}`")]
    DuplicateSessionId(SessionId),

    #[error("no active sessions")]
    NoSessions,

    /// More sessions than the link can carry at minimum quality.
    #[error(
        "over capacity: {sessions} sessions x {beta_min_kbps} kbps exceeds {capacity_kbps} kbps"
    )]
    OverCapacity {
        sessions: usize,
        beta_min_kbps: f64,
        capacity_kbps: f64,
    },

    #[error("rank {rank} out of range for {sessions} sessions")]
    RankOutOfRange { rank: usize, sessions: usize },

    #[error("operation requires a popularity allocation")]
    SchemeMismatch,

    #[error("allocation does not match the ranked sessions")]
    AllocationMismatch,

    #[error("bandwidth {beta_kbps} kbps outside [{min_kbps}, {max_kbps}]")]
    BandwidthOutOfRange {
        beta_kbps: f64,
        min_kbps: f64,
        max_kbps: f64,
    },

    #[error("invalid scenario: {0}")]
    InvalidSpec(String),

    #[error("malformed trace at event {index}: {reason}")]
    MalformedTrace { index: usize, reason: String },
}
