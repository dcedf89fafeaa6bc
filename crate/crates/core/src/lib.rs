//! Popularity-based bandwidth allocation for scalable video broadcast
//! sessions that share one wireless link.
//!
//! Sessions are ranked by audience size. When the link cannot carry every
//! session at full quality, popular sessions get more bandwidth (up to a
//! ceiling) and unpopular ones fall back towards a guaranteed floor. The
//! equal-share scheme is provided as the baseline for comparison.
//!
//! Module map:
//! - [`config`]: link capacity and per-session limits
//! - [`ranking`]: session snapshots and popularity ranking
//! - [`allocation`]: equal-share and popularity allocation, capacity bounds
//! - [`metrics`]: user satisfaction and quality-shift accounting
//! - [`svc`]: base/enhancement layer plans
//! - [`scenario`]: seeded viewer-population synthesis
//! - [`sim`]: session-count sweeps and event replay

pub mod allocation;
pub mod config;
pub mod error;
pub mod metrics;
pub mod ranking;
pub mod scenario;
pub mod sim;
pub mod svc;

pub use allocation::{
    allocation_delta, capacity_limits, equal_share_allocate, equal_share_allocation,
    popularity_allocate, Allocation, AllocationIntermediates, CapacityBounds, Scheme,
    SessionAllocation,
};
pub use config::SystemConfig;
pub use error::{Error, Result};
pub use metrics::{
    equal_share_satisfaction, quality_shift, satisfaction_report, QualityShiftReport,
    SatisfactionReport,
};
pub use ranking::{rank_sessions, RankedEntry, RankedSessions, SessionId, SessionSnapshot};
pub use scenario::{generate, ScenarioKind, ScenarioSpec};
pub use sim::{
    replay, sweep, EventKind, EventTrace, Execution, ReplayStep, StepOutcome, SweepRecord,
    SweepSpec, TraceEvent,
};
pub use svc::{plan_layers, LayerPlan};
