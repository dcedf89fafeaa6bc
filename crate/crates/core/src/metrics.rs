//! User satisfaction and per-user comparison against the equal-share baseline.
//!
//! Satisfaction is linear in bandwidth: a session at `beta_max` scores 1 and
//! a session at `beta` scores `beta / beta_max`.

use crate::allocation::{equal_share_allocate, Allocation};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::ranking::{RankedSessions, SessionId};

#[derive(Debug, Clone, PartialEq)]
pub struct SessionSatisfaction {
    pub rank: usize,
    pub session_id: SessionId,
    pub viewers: u64,
    pub s_level: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SatisfactionReport {
    pub per_session: Vec<SessionSatisfaction>,
    /// Viewer-weighted mean over all sessions.
    pub average: f64,
    /// Satisfaction every user gets under the equal-share scheme.
    pub baseline_equal_share: f64,
    /// No viewers at all; `average` was set to the baseline.
    pub empty_population: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QualityShiftReport {
    pub users_improved: u64,
    pub users_degraded: u64,
    pub users_unchanged: u64,
}

impl QualityShiftReport {
    pub fn total(&self) -> u64 {
        self.users_improved + self.users_degraded + self.users_unchanged
    }
}

/// `1` when every session fits at full quality, else `C / (beta_max * M)`.
pub fn equal_share_satisfaction(config: &SystemConfig, sessions: usize) -> Result<f64> {
    config.check_admissible(sessions)?;
    if config.all_full_quality(sessions) {
        Ok(1.0)
    } else {
        Ok(config.capacity_kbps / (config.beta_max_kbps * sessions as f64))
    }
}

fn check_matches(alloc: &Allocation, ranked: &RankedSessions) -> Result<()> {
    let same = alloc.session_count() == ranked.session_count()
        && alloc
            .per_session
            .iter()
            .zip(ranked.entries())
            .all(|(a, r)| {
                a.rank == r.rank && a.session_id == r.session_id && a.viewers == r.viewers
            });
    if same {
        Ok(())
    } else {
        Err(Error::AllocationMismatch)
    }
}

pub fn satisfaction_report(
    config: &SystemConfig,
    alloc: &Allocation,
    ranked: &RankedSessions,
) -> Result<SatisfactionReport> {
    check_matches(alloc, ranked)?;
    let m_total = ranked.session_count();
    let baseline = equal_share_satisfaction(config, m_total)?;
    let full = config.all_full_quality(m_total);

    let per_session: Vec<SessionSatisfaction> = alloc
        .per_session
        .iter()
        .map(|s| SessionSatisfaction {
            rank: s.rank,
            session_id: s.session_id.clone(),
            viewers: s.viewers,
            s_level: if full {
                1.0
            } else {
                s.beta_kbps / config.beta_max_kbps
            },
        })
        .collect();

    let k = ranked.total_viewers();
    let (average, empty_population) = if full {
        (1.0, k == 0)
    } else if k == 0 {
        (baseline, true)
    } else {
        let weighted: f64 = per_session
            .iter()
            .map(|s| s.s_level * s.viewers as f64)
            .sum();
        (weighted / k as f64, false)
    };

    Ok(SatisfactionReport {
        per_session,
        average,
        baseline_equal_share: baseline,
        empty_population,
    })
}

fn round_nano(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

/// Classifies every viewer by whether the allocation beats the equal share.
///
/// Both bandwidths are rounded to 1e-9 kbps before comparing.
pub fn quality_shift(
    config: &SystemConfig,
    alloc: &Allocation,
    ranked: &RankedSessions,
) -> Result<QualityShiftReport> {
    check_matches(alloc, ranked)?;
    let equal = round_nano(equal_share_allocate(config, ranked.session_count())?);
    let mut report = QualityShiftReport::default();
    for s in &alloc.per_session {
        let beta = round_nano(s.beta_kbps);
        let bucket = if beta > equal {
            &mut report.users_improved
        } else if beta < equal {
            &mut report.users_degraded
        } else {
            &mut report.users_unchanged
        };
        *bucket += s.viewers;
    }
    Ok(report)
}
