//! CSV writers. Every numeric column has a fixed number of decimals so the
//! output is byte-stable.

use std::collections::BTreeMap;
use std::io::{self, Write};

use popalloc::sim::ReplayStep;
use popalloc::{
    Allocation, LayerPlan, QualityShiftReport, SatisfactionReport, StepOutcome, SweepRecord,
};

use crate::format::{kbps, level};

pub const ALLOCATION_HEADER: &str = "rank,session_id,viewers,beta_kbps,beta_equal_kbps,s_level,layers_base_kbps,layers_count,layers_residual_kbps";
pub const SWEEP_HEADER: &str = "M,trial,avg_sat_proposed,avg_sat_equal,users_improved,users_degraded,users_unchanged,beta_rank1_kbps,beta_rankM_kbps,beta_equal_kbps";
pub const AGGREGATE_HEADER: &str = "M,avg_sat_proposed,avg_sat_equal,users_improved,users_degraded,users_unchanged,beta_rank1_kbps,beta_rankM_kbps,beta_equal_kbps";
pub const REPLAY_HEADER: &str = "step,timestamp,event,session_id,outcome,rank,active_session_id,viewers,beta_kbps,layers_base_kbps,layers_count,layers_residual_kbps";

pub fn write_allocation(
    out: &mut dyn Write,
    alloc: &Allocation,
    beta_equal: f64,
    layers: &[LayerPlan],
    report: &SatisfactionReport,
    shift: &QualityShiftReport,
) -> io::Result<()> {
    writeln!(out, "{ALLOCATION_HEADER}")?;
    for ((s, plan), sat) in alloc
        .per_session
        .iter()
        .zip(layers)
        .zip(&report.per_session)
    {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            s.rank,
            s.session_id,
            s.viewers,
            kbps(s.beta_kbps),
            kbps(beta_equal),
            level(sat.s_level),
            kbps(plan.base_kbps),
            plan.enhancement_count,
            kbps(plan.residual_kbps),
        )?;
    }
    let total: u64 = alloc.per_session.iter().map(|s| s.viewers).sum();
    writeln!(out)?;
    writeln!(out, "metric,value")?;
    writeln!(out, "sessions,{}", alloc.session_count())?;
    writeln!(out, "total_viewers,{total}")?;
    writeln!(out, "avg_sat_proposed,{}", level(report.average))?;
    writeln!(out, "avg_sat_equal,{}", level(report.baseline_equal_share))?;
    writeln!(out, "users_improved,{}", shift.users_improved)?;
    writeln!(out, "users_degraded,{}", shift.users_degraded)?;
    writeln!(out, "users_unchanged,{}", shift.users_unchanged)?;
    writeln!(
        out,
        "empty_population,{}",
        u8::from(report.empty_population)
    )?;
    Ok(())
}

pub fn write_sweep(out: &mut dyn Write, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.m,
            r.trial,
            level(r.avg_satisfaction_proposed),
            level(r.avg_satisfaction_equal),
            r.users_improved,
            r.users_degraded,
            r.users_unchanged,
            kbps(r.beta_rank1_kbps),
            kbps(r.beta_rank_m_kbps),
            kbps(r.beta_equal_kbps),
        )?;
    }
    Ok(())
}

/// Means over trials for one session count.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub m: usize,
    pub avg_sat_proposed: f64,
    pub avg_sat_equal: f64,
    pub users_improved: f64,
    pub users_degraded: f64,
    pub users_unchanged: f64,
    pub beta_rank1_kbps: f64,
    pub beta_rank_m_kbps: f64,
    pub beta_equal_kbps: f64,
}

pub fn aggregate(records: &[SweepRecord]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<usize, Vec<&SweepRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.m).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(m, rs)| {
            let n = rs.len() as f64;
            let mean = |f: &dyn Fn(&SweepRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
            AggregateRow {
                m,
                avg_sat_proposed: mean(&|r| r.avg_satisfaction_proposed),
                avg_sat_equal: mean(&|r| r.avg_satisfaction_equal),
                users_improved: mean(&|r| r.users_improved as f64),
                users_degraded: mean(&|r| r.users_degraded as f64),
                users_unchanged: mean(&|r| r.users_unchanged as f64),
                beta_rank1_kbps: mean(&|r| r.beta_rank1_kbps),
                beta_rank_m_kbps: mean(&|r| r.beta_rank_m_kbps),
                beta_equal_kbps: mean(&|r| r.beta_equal_kbps),
            }
        })
        .collect()
}

pub fn write_aggregate(out: &mut dyn Write, rows: &[AggregateRow]) -> io::Result<()> {
    writeln!(out, "{AGGREGATE_HEADER}")?;
    for r in rows {
        // user counts are means, so they carry three decimals like bandwidth
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.m,
            level(r.avg_sat_proposed),
            level(r.avg_sat_equal),
            kbps(r.users_improved),
            kbps(r.users_degraded),
            kbps(r.users_unchanged),
            kbps(r.beta_rank1_kbps),
            kbps(r.beta_rank_m_kbps),
            kbps(r.beta_equal_kbps),
        )?;
    }
    Ok(())
}

pub fn write_replay(out: &mut dyn Write, steps: &[ReplayStep]) -> io::Result<()> {
    writeln!(out, "{REPLAY_HEADER}")?;
    for step in steps {
        let outcome = match step.outcome {
            StepOutcome::Applied => "applied",
            StepOutcome::Rejected => "rejected",
        };
        let prefix = format!(
            "{},{},{},{},{}",
            step.index,
            kbps(step.event.timestamp),
            step.event.kind.as_str(),
            step.event.session_id,
            outcome
        );
        if step.allocation.per_session.is_empty() {
            writeln!(out, "{prefix},,,,,,,")?;
            continue;
        }
        for (s, plan) in step.allocation.per_session.iter().zip(&step.layers) {
            writeln!(
                out,
                "{prefix},{},{},{},{},{},{},{}",
                s.rank,
                s.session_id,
                s.viewers,
                kbps(s.beta_kbps),
                kbps(plan.base_kbps),
                plan.enhancement_count,
                kbps(plan.residual_kbps),
            )?;
        }
    }
    Ok(())
}
