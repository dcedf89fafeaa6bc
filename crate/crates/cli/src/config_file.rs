//! Flat `key = value` run configuration.
//!
//! ```text
//! # comment
//! capacity_kbps = 30000
//! beta_max_kbps = 2000
//! beta_min_kbps = 600
//! layer_granularity_kbps = 100
//! seed = 42
//! trials = 100
//! ```

use popalloc::SystemConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FileConfig {
    pub system: SystemConfig,
    pub seed: u64,
    pub trials: u32,
}

impl Default for FileConfig {
    fn default() -> Self {
        Self {
            system: SystemConfig::default(),
            seed: 42,
            trials: popalloc::sim::DEFAULT_TRIALS,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, raw: &str, line: usize) -> Result<T, String> {
    raw.parse()
        .map_err(|_| format!("line {line}: bad value `{raw}` for `{key}`"))
}

/// Applies the settings in `text` on top of `base`.
pub fn parse(text: &str, mut base: FileConfig) -> Result<FileConfig, String> {
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {line_no}: expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "capacity_kbps" => base.system.capacity_kbps = parse_num(key, value, line_no)?,
            "beta_max_kbps" => base.system.beta_max_kbps = parse_num(key, value, line_no)?,
            "beta_min_kbps" => base.system.beta_min_kbps = parse_num(key, value, line_no)?,
            "layer_granularity_kbps" => {
                base.system.layer_granularity_kbps = parse_num(key, value, line_no)?
            }
            "seed" => base.seed = parse_num(key, value, line_no)?,
            "trials" => base.trials = parse_num(key, value, line_no)?,
            other => return Err(format!("line {line_no}: unknown key `{other}`")),
        }
    }
    Ok(base)
}
