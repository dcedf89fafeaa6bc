//! Session snapshots and popularity ranking.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Opaque session identifier. Ordered lexicographically for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SessionId(pub String);

impl SessionId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SessionId {
    fn from(s: &str) -> Self {
        SessionId(s.to_owned())
    }
}

impl From<String> for SessionId {
    fn from(s: String) -> Self {
        SessionId(s)
    }
}

/// One session and its current audience.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionSnapshot {
    pub session_id: SessionId,
    pub viewers: u64,
}

impl SessionSnapshot {
    pub fn new(session_id: impl Into<SessionId>, viewers: u64) -> Self {
        Self {
            session_id: session_id.into(),
            viewers,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedEntry {
    /// 1-based; rank 1 is the most watched session.
    pub rank: usize,
    pub session_id: SessionId,
    pub viewers: u64,
}

/// Sessions in descending order of audience.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankedSessions {
    entries: Vec<RankedEntry>,
    total_viewers: u64,
}

impl RankedSessions {
    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    /// `K`, the audience summed over all sessions.
    pub fn total_viewers(&self) -> u64 {
        self.total_viewers
    }

    /// `M`, the number of active sessions.
    pub fn session_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn viewer_counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.viewers)
    }
}

/// Ranks sessions by descending viewer count, breaking ties by ascending id.
pub fn rank_sessions(snapshots: &[SessionSnapshot]) -> Result<RankedSessions> {
    let mut seen = HashSet::with_capacity(snapshots.len());
    for s in snapshots {
        if !seen.insert(&s.session_id) {
            return Err(Error::DuplicateSessionId(s.session_id.clone()));
        }
    }

    let mut sorted: Vec<&SessionSnapshot> = snapshots.iter().collect();
    sorted.sort_by(|a, b| {
        b.viewers
            .cmp(&a.viewers)
            .then_with(|| a.session_id.cmp(&b.session_id))
    });

    let entries: Vec<RankedEntry> = sorted
        .into_iter()
        .enumerate()
        .map(|(i, s)| RankedEntry {
            rank: i + 1,
            session_id: s.session_id.clone(),
            viewers: s.viewers,
        })
        .collect();
    let total_viewers = entries.iter().map(|e| e.viewers).sum();
    Ok(RankedSessions {
        entries,
        total_viewers,
    })
}
