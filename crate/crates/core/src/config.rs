//! System-wide bandwidth parameters.

use crate::error::{Error, Result};

/// Link capacity and the per-session bandwidth window, all in kbps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub capacity_kbps: f64,
    /// Bandwidth at which a session plays at full quality.
    pub beta_max_kbps: f64,
    /// Guaranteed floor; carries the base layer.
    pub beta_min_kbps: f64,
    /// Size of one enhancement layer.
    pub layer_granularity_kbps: f64,
}

impl Default for SystemConfig {
    /// 30 Mbps link, 2 Mbps ceiling, 0.6 Mbps floor, 100 kbps layers.
    fn default() -> Self {
        Self {
            capacity_kbps: 30_000.0,
            beta_max_kbps: 2_000.0,
            beta_min_kbps: 600.0,
            layer_granularity_kbps: 100.0,
        }
    }
}

impl SystemConfig {
    /// Builds a config and checks its invariants.
    pub fn new(
        capacity_kbps: f64,
        beta_max_kbps: f64,
        beta_min_kbps: f64,
        layer_granularity_kbps: f64,
    ) -> Result<Self> {
        let cfg = Self {
            capacity_kbps,
            beta_max_kbps,
            beta_min_kbps,
            layer_granularity_kbps,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("capacity_kbps", self.capacity_kbps),
            ("beta_max_kbps", self.beta_max_kbps),
            ("beta_min_kbps", self.beta_min_kbps),
            ("layer_granularity_kbps", self.layer_granularity_kbps),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite")));
            }
        }
        if self.capacity_kbps < 0.0 {
            return Err(Error::InvalidConfig("capacity_kbps must be >= 0".into()));
        }
        // beta_min divides the admission bound, so it cannot be zero.
        if self.beta_min_kbps <= 0.0 {
            return Err(Error::InvalidConfig("beta_min_kbps must be > 0".into()));
        }
        if self.layer_granularity_kbps <= 0.0 {
            return Err(Error::InvalidConfig(
                "layer_granularity_kbps must be > 0".into(),
            ));
        }
        if self.beta_min_kbps > self.beta_max_kbps {
            return Err(Error::InvalidConfig(
                "beta_min_kbps must not exceed beta_max_kbps".into(),
            ));
        }
        if self.beta_max_kbps > self.capacity_kbps {
            return Err(Error::InvalidConfig(
                "beta_max_kbps must not exceed capacity_kbps".into(),
            ));
        }
        Ok(())
    }

    /// `beta_diff`: the headroom above the floor that can be handed out.
    pub fn beta_diff_kbps(&self) -> f64 {
        self.beta_max_kbps - self.beta_min_kbps
    }

    /// True when `sessions` sessions all fit at full quality.
    pub fn all_full_quality(&self, sessions: usize) -> bool {
        self.beta_max_kbps * sessions as f64 <= self.capacity_kbps
    }

    /// True when `sessions` sessions all fit at the guaranteed floor.
    pub fn admits(&self, sessions: usize) -> bool {
        self.beta_min_kbps * sessions as f64 <= self.capacity_kbps
    }

    pub(crate) fn check_admissible(&self, sessions: usize) -> Result<()> {
        if sessions == 0 {
            return Err(Error::NoSessions);
        }
        if !self.admits(sessions) {
            return Err(Error::OverCapacity {
                sessions,
                beta_min_kbps: self.beta_min_kbps,
                capacity_kbps: self.capacity_kbps,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SystemConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_inverted_limits() {
        let err = SystemConfig::new(30_000.0, 500.0, 600.0, 100.0).unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
    }

    #[test]
    fn rejects_ceiling_above_capacity() {
        assert!(SystemConfig::new(1_000.0, 2_000.0, 600.0, 100.0).is_err());
    }

    #[test]
    fn rejects_zero_floor_and_non_finite() {
        assert!(SystemConfig::new(30_000.0, 2_000.0, 0.0, 100.0).is_err());
        assert!(SystemConfig::new(f64::NAN, 2_000.0, 600.0, 100.0).is_err());
        assert!(SystemConfig::new(30_000.0, 2_000.0, 600.0, f64::INFINITY).is_err());
        assert!(SystemConfig::new(30_000.0, 2_000.0, 600.0, 0.0).is_err());
    }

    #[test]
    fn equal_limits_allowed() {
        SystemConfig::new(2_000.0, 2_000.0, 2_000.0, 100.0).unwrap();
    }
}
