//! Experiment drivers: session-count sweeps and event-trace replay.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::allocation::{equal_share_allocate, popularity_allocate, Allocation, Scheme};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::metrics::{quality_shift, satisfaction_report};
use crate::ranking::{rank_sessions, SessionId, SessionSnapshot};
use crate::scenario::{derive_seed, generate, ScenarioKind, ScenarioSpec};
use crate::svc::{plan_layers, LayerPlan};

/// Users in the system for the default sweeps.
pub const DEFAULT_TOTAL_USERS: u64 = 200;
pub const DEFAULT_TRIALS: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub kind: ScenarioKind,
    pub m_from: usize,
    pub m_to: usize,
    pub trials: u32,
    pub seed: u64,
    pub total_users: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

/// One `(M, trial)` sample with both schemes run on the same population.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub m: usize,
    pub trial: u32,
    pub avg_satisfaction_proposed: f64,
    pub avg_satisfaction_equal: f64,
    pub users_improved: u64,
    pub users_degraded: u64,
    pub users_unchanged: u64,
    pub beta_rank1_kbps: f64,
    pub beta_rank_m_kbps: f64,
    pub beta_equal_kbps: f64,
}

fn run_trial(config: &SystemConfig, spec: &SweepSpec, m: usize, trial: u32) -> Result<SweepRecord> {
    let snapshots = generate(&ScenarioSpec {
        kind: spec.kind,
        total_users: spec.total_users,
        session_count: m,
        seed: derive_seed(spec.seed, trial as u64, m as u64),
    })?;
    let ranked = rank_sessions(&snapshots)?;
    let alloc = popularity_allocate(config, &ranked)?;
    let report = satisfaction_report(config, &alloc, &ranked)?;
    let shift = quality_shift(config, &alloc, &ranked)?;
    Ok(SweepRecord {
        m,
        trial,
        avg_satisfaction_proposed: report.average,
        avg_satisfaction_equal: report.baseline_equal_share,
        users_improved: shift.users_improved,
        users_degraded: shift.users_degraded,
        users_unchanged: shift.users_unchanged,
        beta_rank1_kbps: alloc.per_session[0].beta_kbps,
        beta_rank_m_kbps: alloc.per_session[m - 1].beta_kbps,
        beta_equal_kbps: equal_share_allocate(config, m)?,
    })
}

/// Runs every `(M, trial)` pair in the range. Records come back ordered by
/// `M` then trial no matter how they were executed.
pub fn sweep(config: &SystemConfig, spec: &SweepSpec, exec: Execution) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    if spec.m_from == 0 || spec.m_from > spec.m_to {
        return Err(Error::InvalidSpec(format!(
            "session range {}..={} must be non-empty and start at 1 or above",
            spec.m_from, spec.m_to
        )));
    }
    if spec.trials == 0 {
        return Err(Error::InvalidSpec("trials must be positive".into()));
    }
    config.check_admissible(spec.m_to)?;

    let jobs: Vec<(usize, u32)> = (spec.m_from..=spec.m_to)
        .flat_map(|m| (0..spec.trials).map(move |t| (m, t)))
        .collect();
    match exec {
        Execution::Sequential => jobs
            .iter()
            .map(|&(m, t)| run_trial(config, spec, m, t))
            .collect(),
        Execution::Parallel => jobs
            .par_iter()
            .map(|&(m, t)| run_trial(config, spec, m, t))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Start,
    End,
    Join,
    Leave,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Start => "start",
            EventKind::End => "end",
            EventKind::Join => "join",
            EventKind::Leave => "leave",
        }
    }
}

impl std::str::FromStr for EventKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "start" => Ok(EventKind::Start),
            "end" => Ok(EventKind::End),
            "join" => Ok(EventKind::Join),
            "leave" => Ok(EventKind::Leave),
            other => Err(format!("unknown event `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEvent {
    /// Seconds; bookkeeping only.
    pub timestamp: f64,
    pub kind: EventKind,
    pub session_id: SessionId,
}

impl TraceEvent {
    pub fn new(timestamp: f64, kind: EventKind, session_id: impl Into<SessionId>) -> Self {
        Self {
            timestamp,
            kind,
            session_id: session_id.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EventTrace {
    pub events: Vec<TraceEvent>,
}

impl EventTrace {
    pub fn new(events: Vec<TraceEvent>) -> Self {
        Self { events }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Applied,
    /// Admission refused; state unchanged.
    Rejected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayStep {
    pub index: usize,
    pub event: TraceEvent,
    pub outcome: StepOutcome,
    /// Allocation for the sessions active after the event (may be empty).
    pub allocation: Allocation,
    /// One plan per entry of `allocation.per_session`, same order.
    pub layers: Vec<LayerPlan>,
}

/// Live sessions and their audiences while replaying a trace.
///
/// A session whose start was refused stays refused until it starts again
/// successfully; joins, leaves and ends aimed at it are refused too.
#[derive(Debug, Clone, Default)]
pub struct ReplayState {
    active: BTreeMap<SessionId, u64>,
    refused: HashSet<SessionId>,
}

impl ReplayState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn active_sessions(&self) -> usize {
        self.active.len()
    }

    pub fn snapshots(&self) -> Vec<SessionSnapshot> {
        self.active
            .iter()
            .map(|(id, &v)| SessionSnapshot {
                session_id: id.clone(),
                viewers: v,
            })
            .collect()
    }

    pub fn apply(
        &mut self,
        config: &SystemConfig,
        index: usize,
        ev: &TraceEvent,
    ) -> Result<StepOutcome> {
        let malformed = |reason: String| Error::MalformedTrace { index, reason };
        let id = &ev.session_id;
        match ev.kind {
            EventKind::Start => {
                if self.active.contains_key(id) {
                    return Err(malformed(format!("session `{id}` already active")));
                }
                if !config.admits(self.active.len() + 1) {
                    self.refused.insert(id.clone());
                    return Ok(StepOutcome::Rejected);
                }
                self.refused.remove(id);
                self.active.insert(id.clone(), 0);
            }
            EventKind::End | EventKind::Join | EventKind::Leave
                if !self.active.contains_key(id) =>
            {
                if self.refused.contains(id) {
                    return Ok(StepOutcome::Rejected);
                }
                return Err(malformed(format!(
                    "{} for session `{id}` which is not active",
                    ev.kind.as_str()
                )));
            }
            EventKind::End => {
                self.active.remove(id);
            }
            EventKind::Join => {
                *self.active.get_mut(id).expect("checked active") += 1;
            }
            EventKind::Leave => {
                let viewers = self.active.get_mut(id).expect("checked active");
                if *viewers == 0 {
                    return Err(malformed(format!(
                        "leave for session `{id}` with no viewers"
                    )));
                }
                *viewers -= 1;
            }
        }
        Ok(StepOutcome::Applied)
    }

    /// Popularity allocation and layer plans for the current sessions.
    pub fn allocate(&self, config: &SystemConfig) -> Result<(Allocation, Vec<LayerPlan>)> {
        allocate_snapshot(config, &self.snapshots())
    }
}

/// Ranks, allocates and plans layers for a snapshot; empty input gives an
/// empty allocation.
pub fn allocate_snapshot(
    config: &SystemConfig,
    snapshots: &[SessionSnapshot],
) -> Result<(Allocation, Vec<LayerPlan>)> {
    if snapshots.is_empty() {
        let empty = Allocation {
            per_session: Vec::new(),
            scheme: Scheme::Popularity,
            intermediates: None,
            last_rank_clamped: false,
        };
        return Ok((empty, Vec::new()));
    }
    let ranked = rank_sessions(snapshots)?;
    let alloc = popularity_allocate(config, &ranked)?;
    let layers = alloc
        .betas()
        .map(|b| plan_layers(b, config))
        .collect::<Result<Vec<_>>>()?;
    Ok((alloc, layers))
}

/// Replays a trace, recomputing the allocation after every event.
pub fn replay(config: &SystemConfig, trace: &EventTrace) -> Result<Vec<ReplayStep>> {
    config.validate()?;
    let mut prev_ts = 0.0_f64;
    for (index, ev) in trace.events.iter().enumerate() {
        if !ev.timestamp.is_finite() || ev.timestamp < 0.0 {
            return Err(Error::MalformedTrace {
                index,
                reason: format!("bad timestamp {}", ev.timestamp),
            });
        }
        if ev.timestamp < prev_ts {
            return Err(Error::MalformedTrace {
                index,
                reason: "timestamps must be non-decreasing".into(),
            });
        }
        prev_ts = ev.timestamp;
    }

    let mut state = ReplayState::new();
    let mut steps = Vec::with_capacity(trace.events.len());
    for (index, ev) in trace.events.iter().enumerate() {
        let outcome = state.apply(config, index, ev)?;
        let (allocation, layers) = state.allocate(config)?;
        steps.push(ReplayStep {
            index,
            event: ev.clone(),
            outcome,
            allocation,
            layers,
        });
    }
    Ok(steps)
}
