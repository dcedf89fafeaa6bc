//! Seeded viewer populations for the two traffic scenarios.
//!
//! * `Scenario1`: each of `K` users picks one of `M` sessions uniformly.
//! * `Scenario2`: half the users (`floor(K/2)`) watch session `s001`; the
//!   rest pick uniformly among the other `M - 1` sessions.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit value. Sweeps derive
//! one seed per `(master seed, trial, M)` with [`derive_seed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ranking::SessionSnapshot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Scenario1,
    Scenario2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub total_users: u64,
    pub session_count: usize,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.total_users == 0 {
            return Err(Error::InvalidSpec("total_users must be positive".into()));
        }
        if self.session_count == 0 {
            return Err(Error::InvalidSpec("session_count must be positive".into()));
        }
        if self.kind == ScenarioKind::Scenario2 && self.session_count < 2 {
            return Err(Error::InvalidSpec(
                "scenario 2 needs at least two sessions".into(),
            ));
        }
        Ok(())
    }
}

/// Session ids are `s001`, `s002`, ... (wider once `M` exceeds 999).
pub fn session_id(index: usize, session_count: usize) -> String {
    let width = session_count.to_string().len().max(3);
    format!("s{:0width$}", index + 1)
}

pub fn generate(spec: &ScenarioSpec) -> Result<Vec<SessionSnapshot>> {
    spec.validate()?;
    let m = spec.session_count;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut counts = vec![0u64; m];
    match spec.kind {
        ScenarioKind::Scenario1 => {
            for _ in 0..spec.total_users {
                counts[rng.gen_range(0..m)] += 1;
            }
        }
        ScenarioKind::Scenario2 => {
            let pinned = spec.total_users / 2;
            counts[0] = pinned;
            for _ in 0..spec.total_users - pinned {
                counts[rng.gen_range(1..m)] += 1;
            }
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, v)| SessionSnapshot::new(session_id(i, m), v))
        .collect())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed: `splitmix64(splitmix64(splitmix64(master) ^ trial) ^ M)`.
pub fn derive_seed(master: u64, trial: u64, session_count: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ trial) ^ session_count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ScenarioKind, k: u64, m: usize, seed: u64) -> ScenarioSpec {
        ScenarioSpec {
            kind,
            total_users: k,
            session_count: m,
            seed,
        }
    }

    #[test]
    fn single_bin_gets_everyone() {
        let out = generate(&spec(ScenarioKind::Scenario1, 200, 1, 7)).unwrap();
        assert_eq!(out, vec![SessionSnapshot::new("s001", 200)]);
    }

    #[test]
    fn scenario2_pins_half() {
        for seed in 0..20 {
            let out = generate(&spec(ScenarioKind::Scenario2, 200, 30, seed)).unwrap();
            assert_eq!(out.len(), 30);
            assert_eq!(out[0].viewers, 100);
            assert_eq!(out.iter().map(|s| s.viewers).sum::<u64>(), 200);
        }
        let odd = generate(&spec(ScenarioKind::Scenario2, 201, 5, 1)).unwrap();
        assert_eq!(odd[0].viewers, 100);
        assert_eq!(odd.iter().map(|s| s.viewers).sum::<u64>(), 201);
    }

    #[test]
    fn deterministic_for_seed() {
        let s = spec(ScenarioKind::Scenario1, 200, 30, 42);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        let other = generate(&spec(ScenarioKind::Scenario1, 200, 30, 43)).unwrap();
        assert_ne!(generate(&s).unwrap(), other);
    }

    #[test]
    fn ids_are_padded() {
        let out = generate(&spec(ScenarioKind::Scenario1, 10, 12, 0)).unwrap();
        assert_eq!(out[0].session_id.as_str(), "s001");
        assert_eq!(out[11].session_id.as_str(), "s012");
        assert_eq!(session_id(0, 1500), "s0001");
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&spec(ScenarioKind::Scenario2, 200, 1, 0)).is_err());
        assert!(generate(&spec(ScenarioKind::Scenario1, 0, 3, 0)).is_err());
        assert!(generate(&spec(ScenarioKind::Scenario1, 10, 0, 0)).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(42, 0, 30);
        assert_ne!(a, derive_seed(42, 1, 30));
        assert_ne!(a, derive_seed(42, 0, 31));
        assert_ne!(a, derive_seed(43, 0, 30));
        assert_eq!(a, derive_seed(42, 0, 30));
    }
}
