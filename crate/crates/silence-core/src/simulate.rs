//! Seeded Monte-Carlo harness for validating silence-interval designs.
//!
//! Ticks draw IID samples by inverse-cdf transform of a counter-based
//! uniform generator, so a report is a pure function of `(seed, inputs)`
//! and bitwise reproducible across platforms and shardings.

use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::interval::Interval;
use crate::{Error, Result};

/// Counter-based uniform generator: the value at index `i` is the
/// splitmix64 finalizer applied to `seed + (i+1)·golden`, mapped into
/// the open interval (0, 1). No state, so any tick can be evaluated
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    seed: u64,
}

impl CounterRng {
    const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in the open interval (0, 1) at counter `i`.
    pub fn uniform(&self, i: u64) -> f64 {
        let bits = Self::mix(self.seed.wrapping_add((i + 1).wrapping_mul(Self::GOLDEN)));
        ((bits >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Per-metric standard errors (sample standard deviation over √n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardErrors {
    pub rate: f64,
    pub mse: f64,
    pub mae: f64,
}

/// Outcome of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub n_ticks: u64,
    pub seed: u64,
    /// Fraction of ticks on which a sample was transmitted.
    pub empirical_rate: f64,
    /// Mean squared error per tick (zero on transmitted ticks).
    pub empirical_mse: f64,
    /// Mean absolute error per tick (zero on transmitted ticks).
    pub empirical_mae: f64,
    pub standard_errors: StandardErrors,
}

/// Draws `n_ticks` IID samples of `d`; a tick inside `silence` is left
/// unsampled and charged the error against `estimate`, a tick outside is
/// transmitted exactly and charged nothing.
pub fn simulate(
    d: &Density,
    silence: &Interval,
    estimate: f64,
    n_ticks: u64,
    seed: u64,
) -> Result<SimReport> {
    if n_ticks == 0 {
        return Err(Error::InvalidParameter("simulation needs at least one tick".into()));
    }
    let rng = CounterRng::new(seed);
    let mut sampled = 0.0_f64;
    let mut se_sum = 0.0_f64;
    let mut se_sq = 0.0_f64;
    let mut ae_sum = 0.0_f64;
    let mut ae_sq = 0.0_f64;
    for i in 0..n_ticks {
        let x = d.quantile(rng.uniform(i))?;
        if silence.contains(x) {
            let err = x - estimate;
            let se = err * err;
            let ae = err.abs();
            se_sum += se;
            se_sq += se * se;
            ae_sum += ae;
            ae_sq += ae * ae;
        } else {
            sampled += 1.0;
        }
    }
    let n = n_ticks as f64;
    let rate = sampled / n;
    let mse = se_sum / n;
    let mae = ae_sum / n;
    // Bernoulli indicators square to themselves, so the rate reuses the
    // same sum-of-squares formula as the error metrics.
    let sample_var = |sq: f64, mean: f64| -> f64 {
        if n_ticks < 2 {
            return 0.0;
        }
        ((sq - n * mean * mean) / (n - 1.0)).max(0.0)
    };
    let standard_errors = StandardErrors {
        rate: (sample_var(sampled, rate) / n).sqrt(),
        mse: (sample_var(se_sq, mse) / n).sqrt(),
        mae: (sample_var(ae_sq, mae) / n).sqrt(),
    };
    Ok(SimReport {
        n_ticks,
        seed,
        empirical_rate: rate,
        empirical_mse: mse,
        empirical_mae: mae,
        standard_errors,
    })
}
