//! Splits a session's bandwidth into a base layer and whole enhancement layers.
//!
//! Receivers cannot take part of a layer, so anything left over after the
//! last whole enhancement layer is reported as residual.

use crate::config::SystemConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerPlan {
    pub base_kbps: f64,
    pub enhancement_count: u32,
    pub enhancement_kbps: f64,
    /// Allocated but undecodable; always `< enhancement_kbps`.
    pub residual_kbps: f64,
}

impl LayerPlan {
    /// Bandwidth a receiver can actually use.
    pub fn decodable_kbps(&self) -> f64 {
        self.base_kbps + self.enhancement_count as f64 * self.enhancement_kbps
    }
}

pub fn plan_layers(beta_kbps: f64, config: &SystemConfig) -> Result<LayerPlan> {
    let (min, max) = (config.beta_min_kbps, config.beta_max_kbps);
    if !(min..=max).contains(&beta_kbps) {
        return Err(Error::BandwidthOutOfRange {
            beta_kbps,
            min_kbps: min,
            max_kbps: max,
        });
    }
    let g = config.layer_granularity_kbps;
    let headroom = beta_kbps - min;
    let mut count = (headroom / g).floor();
    // floor of a rounded quotient can be off by one either way
    if count * g > headroom {
        count -= 1.0;
    } else if (count + 1.0) * g <= headroom {
        count += 1.0;
    }
    let residual = (headroom - count * g).max(0.0);
    Ok(LayerPlan {
        base_kbps: min,
        enhancement_count: count as u32,
        enhancement_kbps: g,
        residual_kbps: residual,
    })
}
