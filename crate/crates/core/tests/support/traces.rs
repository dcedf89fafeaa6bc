//! Random well-formed event traces for replay tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use popalloc::{EventKind, EventTrace, TraceEvent};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct GeneratedTrace {
    pub trace: EventTrace,
    /// Audience per live session once every event has been applied.
    pub final_viewers: BTreeMap<String, u64>,
    /// Indices of start events that must be refused.
    pub refused_starts: Vec<usize>,
}

/// Builds a lifecycle-consistent trace. `ceiling` is the admission limit the
/// generator expects the replayer to enforce; it tracks which starts will be
/// refused so later events never reference an unknown session.
pub fn random_trace(seed: u64, len: usize, ceiling: usize) -> GeneratedTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut active: BTreeMap<String, u64> = BTreeMap::new();
    let mut refused: Vec<String> = Vec::new();
    let mut next_id = 0usize;
    let mut t = 0.0;
    let mut events = Vec::with_capacity(len);
    let mut refused_starts = Vec::new();
    while events.len() < len {
        if rng.gen_bool(0.3) {
            t += rng.gen_range(0.0..2.0);
        }
        let roll = rng.gen_range(0..100);
        let ids: Vec<String> = active.keys().cloned().collect();
        let ev = if roll < 25 || ids.is_empty() {
            let id = format!("v{next_id:03}");
            next_id += 1;
            if active.len() >= ceiling {
                refused.push(id.clone());
                refused_starts.push(events.len());
            } else {
                active.insert(id.clone(), 0);
            }
            TraceEvent::new(t, EventKind::Start, id)
        } else if roll < 30 && !refused.is_empty() {
            let id = refused.choose(&mut rng).unwrap().clone();
            let kind = *[EventKind::Join, EventKind::Leave, EventKind::End]
                .choose(&mut rng)
                .unwrap();
            TraceEvent::new(t, kind, id)
        } else if roll < 35 {
            let id = ids.choose(&mut rng).unwrap().clone();
            active.remove(&id);
            TraceEvent::new(t, EventKind::End, id)
        } else if roll < 80 {
            let id = ids.choose(&mut rng).unwrap().clone();
            *active.get_mut(&id).unwrap() += 1;
            TraceEvent::new(t, EventKind::Join, id)
        } else {
            let watched: Vec<&String> = active
                .iter()
                .filter(|(_, v)| **v > 0)
                .map(|(k, _)| k)
                .collect();
            let Some(id) = watched.choose(&mut rng).map(|s| (*s).clone()) else {
                continue;
            };
            *active.get_mut(&id).unwrap() -= 1;
            TraceEvent::new(t, EventKind::Leave, id)
        };
        events.push(ev);
    }
    GeneratedTrace {
        trace: EventTrace::new(events),
        final_viewers: active,
        refused_starts,
    }
}
