//! Time-to-solution statistics and the modelled device clock.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::SampleSet;
use crate::error::TtsError;

pub const DEFAULT_CONFIDENCE: f64 = 0.99;

/// Fraction of samples whose energy is within `tol` of `optimal_energy`.
/// The set is expected to hold logical (unembedded) energies.
pub fn success_probability(ss: &SampleSet, optimal_energy: f64, tol: f64) -> f64 {
    if ss.total == 0 {
        return 0.0;
    }
    optimal_count(ss, optimal_energy, tol) as f64 / ss.total as f64
}

pub fn optimal_count(ss: &SampleSet, optimal_energy: f64, tol: f64) -> usize {
    ss.records
        .iter()
        .filter(|r| r.energy <= optimal_energy + tol)
        .map(|r| r.multiplicity)
        .sum()
}

/// Expected repetitions to observe an optimum with confidence `p` when a
/// single run succeeds with probability `s`: `log(1 - p) / log(1 - s)`,
/// clamped below at 1.
pub fn k_p(s: f64, p: f64) -> Result<f64, TtsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(TtsError::OutOfRange { name: "p", value: p });
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(TtsError::OutOfRange { name: "s", value: s });
    }
    if s == 0.0 {
        return Err(TtsError::Unsolved);
    }
    if s == 1.0 {
        return Ok(1.0);
    }
    Ok(((1.0 - p).ln() / (1.0 - s).ln()).max(1.0))
}

/// Per-instance device constants. `t_embed_override` replaces the measured
/// embedding time when set (the `zero` profile pins it to 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingModel {
    #[serde(with = "secs")]
    pub t_prog: Duration,
    #[serde(with = "secs")]
    pub t_sample: Duration,
    #[serde(with = "secs")]
    pub t_post: Duration,
    #[serde(with = "secs", default)]
    pub t_conv: Duration,
    #[serde(with = "secs", default)]
    pub t_pre: Duration,
    #[serde(with = "opt_secs", default)]
    pub t_embed_override: Option<Duration>,
}

impl TimingModel {
    /// 20 ms programming, 380.2 us per anneal/readout/delay cycle, 20 ms
    /// post-processing.
    pub fn dwave2x() -> Self {
        TimingModel {
            t_prog: Duration::from_millis(20),
            t_sample: Duration::from_nanos(380_200),
            t_post: Duration::from_millis(20),
            t_conv: Duration::ZERO,
            t_pre: Duration::ZERO,
            t_embed_override: None,
        }
    }

    pub fn zero() -> Self {
        TimingModel {
            t_prog: Duration::ZERO,
            t_sample: Duration::ZERO,
            t_post: Duration::ZERO,
            t_conv: Duration::ZERO,
            t_pre: Duration::ZERO,
            t_embed_override: Some(Duration::ZERO),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "dwave2x" => Some(Self::dwave2x()),
            "zero" => Some(Self::zero()),
            _ => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Embedding time to charge given the measured one.
    pub fn embed_time(&self, measured: Duration) -> Duration {
        self.t_embed_override.unwrap_or(measured)
    }
}

/// `t_prog + k * t_sample + t_post`, rounded to the nanosecond.
pub fn proc_time(k: f64, tm: &TimingModel) -> Duration {
    tm.t_prog + scale(tm.t_sample, k) + tm.t_post
}

fn scale(d: Duration, k: f64) -> Duration {
    Duration::from_nanos((d.as_nanos() as f64 * k).round() as u64)
}

pub(crate) mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod opt_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Option::<f64>::deserialize(d)?
            .map(|v| Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom))
            .transpose()
    }
}
