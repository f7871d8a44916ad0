//! Gauss-inequality bounds on the rate–distortion trade-off of
//! symmetric silence intervals, and the exact curves they are plotted
//! against.
//!
//! For a unimodal density with mode `μ`, `τ² = (mean − μ)² + variance`
//! and silence interval `[μ - k, μ + k]`, the Gauss inequality bounds
//! the sampling rate `P[|X - μ| > k]` by `(4/9)(τ/k)²` for
//! `k ≥ 2τ/√3` and by `1 − k/(τ√3)` below it. The distortion bound
//! multiplies the same branch structure by `min{σ², k²/3}`, the
//! uniform-distribution cap on the conditional variance.

use crate::conditional::conditional_summary;
use crate::density::Density;
use crate::fmt::g15;
use crate::interval::Interval;
use crate::{Error, Result};

/// Branch point of the Gauss inequality, `k = BRANCH_FACTOR · τ`.
pub const BRANCH_FACTOR: f64 = 1.154_700_538_379_251_5; // 2/sqrt(3)

const INV_SQRT3: f64 = 0.577_350_269_189_625_7;

/// Which curve a rate–distortion point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveSource {
    GaussBound,
    ExactUniform,
    ExactGaussian,
    Periodic,
}

impl CurveSource {
    pub fn label(&self) -> &'static str {
        match self {
            CurveSource::GaussBound => "gauss-bound",
            CurveSource::ExactUniform => "exact-uniform",
            CurveSource::ExactGaussian => "exact-gaussian",
            CurveSource::Periodic => "periodic",
        }
    }
}

/// One point of a rate–distortion curve. `k` is the silence half-width;
/// the periodic curve has no half-width and carries `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateDistortionPoint {
    pub source: CurveSource,
    pub k: Option<f64>,
    /// Samples per tick, in [0, 1].
    pub rate: f64,
    /// Mean squared error per tick, in x²-units.
    pub distortion: f64,
}

/// `τ = sqrt((mean − mode)² + variance)`.
pub fn tau(d: &Density) -> f64 {
    let shift = d.mean() - d.mode();
    (shift * shift + d.variance()).sqrt()
}

/// Gauss upper bound on the sampling rate `P[|X - μ| > k]`, capped at 1.
pub fn gauss_rate_bound(k: f64, tau: f64) -> f64 {
    debug_assert!(k >= 0.0 && tau > 0.0);
    if k >= BRANCH_FACTOR * tau {
        (4.0 / 9.0) * (tau * tau) / (k * k)
    } else {
        (1.0 - INV_SQRT3 * k / tau).min(1.0)
    }
}

/// Branchwise product of the Gauss rate bound with the uniform cap
/// `min{σ², k²/3}` on the conditional variance.
pub fn gauss_distortion_bound(k: f64, tau: f64, sigma2: f64) -> f64 {
    debug_assert!(k >= 0.0 && tau > 0.0 && sigma2 > 0.0);
    gauss_rate_bound(k, tau) * sigma2.min(k * k / 3.0)
}

/// Exact rate and distortion of the silence interval `[μ-k, μ+k]` for a
/// symmetric unimodal density: `rate = 1 - mass`, `distortion = mass ·
/// cond_variance` (sampled ticks carry no error).
pub fn exact_silence_curve(d: &Density, source: CurveSource, ks: &[f64]) -> Result<Vec<RateDistortionPoint>> {
    let mode = d.mode();
    let support = d.support();
    let mut points = Vec::with_capacity(ks.len());
    for &k in ks {
        if k.is_nan() || k < 0.0 {
            return Err(Error::InvalidParameter(format!("half-width must be >= 0, got {k}")));
        }
        let interval = Interval::new((mode - k).max(support.lo()), (mode + k).min(support.hi()))?;
        let mass = d.mass(&interval);
        let distortion = if mass <= crate::conditional::MASS_FLOOR {
            0.0
        } else {
            mass * conditional_summary(d, &interval)?.cond_variance
        };
        points.push(RateDistortionPoint { source, k: Some(k), rate: 1.0 - mass, distortion });
    }
    Ok(points)
}

/// Periodic sampling of an IID per-tick process at rate `r`: sampled
/// ticks are exact, unsampled ticks carry the full variance, so the
/// distortion is `(1 - r)·σ²`.
pub fn periodic_curve(rates: &[f64], sigma2: f64) -> Vec<RateDistortionPoint> {
    rates
        .iter()
        .map(|&r| RateDistortionPoint {
            source: CurveSource::Periodic,
            k: None,
            rate: r,
            distortion: (1.0 - r) * sigma2,
        })
        .collect()
}

/// Evenly spaced half-width grid.
pub fn k_grid(k_min: f64, k_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(k_min >= 0.0 && k_max > k_min) || steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "bad k grid: [{k_min}, {k_max}] with {steps} steps"
        )));
    }
    Ok(crate::numeric::linspace(k_min, k_max, steps))
}

/// The four curves of the rate–distortion figure under the σ = τ = 1
/// normalization: the Gauss bound, exact uniform and Gaussian silence
/// curves over the half-width grid (with the branch point spliced in),
/// and periodic sampling over a matching rate grid.
pub fn fig6_sweep(ks: &[f64]) -> Result<Vec<RateDistortionPoint>> {
    let mut ks = ks.to_vec();
    if !ks.contains(&BRANCH_FACTOR) {
        ks.push(BRANCH_FACTOR);
    }
    ks.sort_by(f64::total_cmp);

    let mut points = Vec::new();
    for &k in &ks {
        points.push(RateDistortionPoint {
            source: CurveSource::GaussBound,
            k: Some(k),
            rate: gauss_rate_bound(k, 1.0),
            distortion: gauss_distortion_bound(k, 1.0, 1.0),
        });
    }
    let root3 = 3.0_f64.sqrt();
    let uniform = Density::uniform(-root3, root3)?;
    points.extend(exact_silence_curve(&uniform, CurveSource::ExactUniform, &ks)?);
    let gaussian = Density::gaussian(0.0, 1.0)?;
    points.extend(exact_silence_curve(&gaussian, CurveSource::ExactGaussian, &ks)?);
    let rates = crate::numeric::linspace(0.0, 1.0, ks.len());
    points.extend(periodic_curve(&rates, 1.0));
    Ok(points)
}

/// Worst ratio of exact Gaussian silence distortion to periodic
/// distortion `(1-r)σ²` over matched rates `r ∈ [rate_lo, rate_hi]`,
/// by linear interpolation of the Gaussian curve in rate.
pub fn matched_rate_ratio(ks: &[f64], rate_lo: f64, rate_hi: f64) -> Result<f64> {
    let gaussian = Density::gaussian(0.0, 1.0)?;
    let mut curve = exact_silence_curve(&gaussian, CurveSource::ExactGaussian, ks)?;
    curve.sort_by(|a, b| a.rate.total_cmp(&b.rate));
    let distortion_at = |r: f64| -> f64 {
        match curve.iter().position(|p| p.rate >= r) {
            Some(0) => curve[0].distortion,
            None => curve.last().expect("non-empty").distortion,
            Some(i) => {
                let (p0, p1) = (&curve[i - 1], &curve[i]);
                let w = (r - p0.rate) / (p1.rate - p0.rate);
                p0.distortion + w * (p1.distortion - p0.distortion)
            }
        }
    };
    let mut worst = f64::NEG_INFINITY;
    let mut probe = |r: f64| {
        let ratio = distortion_at(r) / ((1.0 - r) * 1.0);
        if ratio > worst {
            worst = ratio;
        }
    };
    probe(rate_lo);
    probe(rate_hi);
    for p in &curve {
        if p.rate > rate_lo && p.rate < rate_hi {
            probe(p.rate);
        }
    }
    Ok(worst)
}

/// CSV of a rate–distortion sweep: `source,k,rate,distortion`, grouped
/// by curve, ordered by the sweep variable.
pub fn fig6_to_csv(points: &[RateDistortionPoint]) -> String {
    let mut out = String::from("source,k,rate,distortion\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.source.label(),
            p.k.map(g15).unwrap_or_default(),
            g15(p.rate),
            g15(p.distortion),
        ));
    }
    out
}
