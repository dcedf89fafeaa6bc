//! Bandwidth allocation across ranked broadcast sessions.
//!
//! Two schemes are provided. The equal-share baseline gives every session
//! `min(beta_max, C / M)`. The popularity scheme hands each session the floor
//! `beta_min` plus a slice of the spare capacity proportional to its viewer
//! count; a session whose slice would take it past `beta_max` is capped and
//! the overflow is spread evenly over the lower-ranked sessions.

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::ranking::{RankedSessions, SessionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    EqualShare,
    Popularity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionAllocation {
    pub rank: usize,
    pub session_id: SessionId,
    pub viewers: u64,
    pub beta_kbps: f64,
}

/// Working values of the popularity recursion, kept for auditing.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationIntermediates {
    /// Spare bandwidth per viewer: `(M/K)(C/M - beta_min)`.
    pub a: f64,
    pub beta_diff_kbps: f64,
    /// Per-rank overflow handed to each lower-ranked session. Last entry is 0.
    pub x_terms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub per_session: Vec<SessionAllocation>,
    pub scheme: Scheme,
    /// Only set when the proportional recursion actually ran.
    pub intermediates: Option<AllocationIntermediates>,
    /// Rounding pushed the last rank over its cap and it was clamped.
    pub last_rank_clamped: bool,
}

impl Allocation {
    pub fn session_count(&self) -> usize {
        self.per_session.len()
    }

    pub fn betas(&self) -> impl Iterator<Item = f64> + '_ {
        self.per_session.iter().map(|s| s.beta_kbps)
    }

    pub fn total_kbps(&self) -> f64 {
        self.betas().sum()
    }

    /// Bandwidth at 1-based `rank`.
    pub fn beta_at(&self, rank: usize) -> Option<f64> {
        rank.checked_sub(1)
            .and_then(|i| self.per_session.get(i))
            .map(|s| s.beta_kbps)
    }

    pub fn beta_for(&self, id: &SessionId) -> Option<f64> {
        self.per_session
            .iter()
            .find(|s| &s.session_id == id)
            .map(|s| s.beta_kbps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityBounds {
    /// Sessions that fit at full quality.
    pub n_hq: u64,
    /// Sessions that fit at the floor; the admission ceiling.
    pub n_lq: u64,
}

/// Per-session bandwidth under the equal-share scheme.
pub fn equal_share_allocate(config: &SystemConfig, sessions: usize) -> Result<f64> {
    config.check_admissible(sessions)?;
    if config.all_full_quality(sessions) {
        Ok(config.beta_max_kbps)
    } else {
        Ok(config.capacity_kbps / sessions as f64)
    }
}

/// Equal-share allocation laid out per ranked session.
pub fn equal_share_allocation(
    config: &SystemConfig,
    ranked: &RankedSessions,
) -> Result<Allocation> {
    let beta = equal_share_allocate(config, ranked.session_count())?;
    Ok(Allocation {
        per_session: layout(ranked, |_| beta),
        scheme: Scheme::EqualShare,
        intermediates: None,
        last_rank_clamped: false,
    })
}

fn layout(ranked: &RankedSessions, mut beta: impl FnMut(usize) -> f64) -> Vec<SessionAllocation> {
    ranked
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| SessionAllocation {
            rank: e.rank,
            session_id: e.session_id.clone(),
            viewers: e.viewers,
            beta_kbps: beta(i),
        })
        .collect()
}

/// Popularity-based allocation over sessions already in rank order.
///
/// With nobody watching (`K = 0`) every session is treated as equally
/// popular and gets `min(beta_max, C/M)`.
pub fn popularity_allocate(config: &SystemConfig, ranked: &RankedSessions) -> Result<Allocation> {
    let m_total = ranked.session_count();
    config.check_admissible(m_total)?;

    if config.all_full_quality(m_total) {
        return Ok(Allocation {
            per_session: layout(ranked, |_| config.beta_max_kbps),
            scheme: Scheme::Popularity,
            intermediates: None,
            last_rank_clamped: false,
        });
    }

    let k = ranked.total_viewers();
    if k == 0 {
        let share = config.capacity_kbps / m_total as f64;
        return Ok(Allocation {
            per_session: layout(ranked, |_| share),
            scheme: Scheme::Popularity,
            intermediates: None,
            last_rank_clamped: false,
        });
    }

    let (bmin, bmax) = (config.beta_min_kbps, config.beta_max_kbps);
    let beta_diff = config.beta_diff_kbps();
    // (M/K)(C/M - beta_min) rearranged to a single division.
    let a = ((config.capacity_kbps - m_total as f64 * bmin) / k as f64).max(0.0);

    let mut betas = Vec::with_capacity(m_total);
    let mut x_terms = Vec::with_capacity(m_total);
    let mut carried = 0.0_f64;
    let mut last_rank_clamped = false;
    for (idx, viewers) in ranked.viewer_counts().enumerate() {
        let rank = idx + 1;
        let share = a * viewers as f64 + carried;
        let x = if share >= beta_diff {
            betas.push(bmax);
            if rank == m_total {
                // Unreachable in exact arithmetic; only rounding gets here.
                last_rank_clamped = true;
                0.0
            } else {
                (share - beta_diff) / (m_total - rank) as f64
            }
        } else {
            betas.push((bmin + share).min(bmax));
            0.0
        };
        x_terms.push(x);
        carried += x;
    }

    Ok(Allocation {
        per_session: layout(ranked, |i| betas[i]),
        scheme: Scheme::Popularity,
        intermediates: Some(AllocationIntermediates {
            a,
            beta_diff_kbps: beta_diff,
            x_terms,
        }),
        last_rank_clamped,
    })
}

/// `N_HQ = floor(C / beta_max)` and `N_LQ = floor(C / beta_min)`.
pub fn capacity_limits(config: &SystemConfig) -> CapacityBounds {
    CapacityBounds {
        n_hq: floor_div(config.capacity_kbps, config.beta_max_kbps),
        n_lq: floor_div(config.capacity_kbps, config.beta_min_kbps),
    }
}

const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

fn as_exact_int(v: f64) -> Option<u64> {
    (v.fract() == 0.0 && (0.0..EXACT_INT_LIMIT).contains(&v)).then_some(v as u64)
}

fn floor_div(num: f64, den: f64) -> u64 {
    if let (Some(n), Some(d)) = (as_exact_int(num), as_exact_int(den)) {
        if let Some(q) = n.checked_div(d) {
            return q;
        }
    }
    // Quotient can round up across an integer boundary; step back if so.
    let mut q = (num / den).floor();
    while q > 0.0 && q * den > num {
        q -= 1.0;
    }
    while (q + 1.0) * den <= num {
        q += 1.0;
    }
    q as u64
}

/// `beta_m - beta_{m+1}` for a popularity allocation, `1 <= m < M`.
pub fn allocation_delta(alloc: &Allocation, rank: usize) -> Result<f64> {
    if alloc.scheme != Scheme::Popularity {
        return Err(Error::SchemeMismatch);
    }
    let sessions = alloc.session_count();
    if rank == 0 || rank >= sessions {
        return Err(Error::RankOutOfRange { rank, sessions });
    }
    let hi = alloc.per_session[rank - 1].beta_kbps;
    let lo = alloc.per_session[rank].beta_kbps;
    Ok(hi - lo)
}
