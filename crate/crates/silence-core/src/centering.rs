//! Centering of silence intervals: one step, the fixed-point iteration,
//! and an independent brute-force scan of the sliding family.
//!
//! A centering step replaces an interval by the smallest symmetric
//! interval around its best estimate that still carries the required
//! probability mass, clipped to the support (clipping only ever removes
//! null-mass overhang). For log-concave densities the iteration drives
//! the conditional distortion down to the global optimum; the
//! brute-force scan provides the independent check of that claim.

use serde::Serialize;

use crate::conditional::{
    conditional_summary, right_end_for_mass, sliding_family_scan, ConditionalSummary, MASS_FLOOR,
};
use crate::density::Density;
use crate::fmt::g15;
use crate::interval::{DistortionKind, Interval};
use crate::numeric;
use crate::{Error, Result};

/// Default endpoint-movement tolerance of the iteration, in x-units.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default iteration cap; convergence typically takes a handful of steps.
pub const DEFAULT_MAX_ITER: usize = 200;
/// Probability tolerance of the symmetric-radius bisection.
const RADIUS_PROB_TOL: f64 = 1e-12;
/// Grid entries within this distortion of the minimum count as the
/// optimal valley (flat-top densities admit an interval of optima).
const VALLEY_DISTORTION_TOL: f64 = 1e-10;

/// A silence interval together with its estimate-under-silence, mass and
/// conditional distortion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SilenceDesign {
    pub interval: Interval,
    /// Conditional mean (squared error) or conditional median (absolute
    /// error) of the interval.
    pub estimate: f64,
    pub mass: f64,
    pub distortion_kind: DistortionKind,
    /// Conditional variance (squared error, x²-units) or conditional
    /// mean absolute deviation (absolute error, x-units).
    pub cond_distortion: f64,
    /// Which centering iteration produced the design; 0 for a design
    /// evaluated in place.
    pub iterations: usize,
}

/// The designs visited by an iterated centering run.
///
/// `designs[0]` summarizes the (clipped) start interval; entry `i ≥ 1`
/// is the result of the i-th centering step. Between step results the
/// conditional distortion is non-increasing; the start-to-first-step
/// comparison additionally requires the start to satisfy the chance
/// constraint (mass ≥ η).
#[derive(Debug, Clone, PartialEq)]
pub struct CenteringTrace {
    pub designs: Vec<SilenceDesign>,
    pub converged: bool,
    /// Endpoint movement of the final step, in x-units.
    pub fixed_point_gap: f64,
}

impl CenteringTrace {
    pub fn final_design(&self) -> &SilenceDesign {
        self.designs.last().expect("trace holds at least the start")
    }

    /// Number of centering steps performed.
    pub fn steps(&self) -> usize {
        self.designs.len() - 1
    }
}

/// Result of the brute-force sliding-family scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOptimal {
    pub design: SilenceDesign,
    /// Width (in left-end units) of the set of grid entries whose
    /// distortion is within 1e-10 of the minimum; positive width means a
    /// flat valley of equally optimal intervals.
    pub valley_width: f64,
    /// Max minus min distortion across the scanned family.
    pub distortion_spread: f64,
}

fn distortion_of(summary: &ConditionalSummary, kind: DistortionKind) -> f64 {
    match kind {
        DistortionKind::SquaredError => summary.cond_variance,
        DistortionKind::AbsoluteError => summary.cond_mad,
    }
}

fn design_for(d: &Density, interval: Interval, kind: DistortionKind, iterations: usize) -> Result<SilenceDesign> {
    let mass = d.mass(&interval);
    if mass <= MASS_FLOOR {
        return Err(Error::NullMassInterval { lo: interval.lo(), hi: interval.hi(), mass });
    }
    // Only the metric of the requested kind is evaluated; nearly-flat
    // densities take thousands of steps and the spare integrals add up.
    let (lo, hi) = (interval.lo(), interval.hi());
    let (estimate, cond_distortion) = match kind {
        DistortionKind::SquaredError => {
            let mean = d.integrate_weighted(lo, hi, |x| x) / mass;
            let var = d.integrate_weighted(lo, hi, |x| (x - mean) * (x - mean)) / mass;
            (mean, var.max(0.0))
        }
        DistortionKind::AbsoluteError => {
            let half = d.cdf(lo) + 0.5 * mass;
            let median = d.quantile(half.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON))?;
            let mad = (d.integrate_weighted(lo, median, |x| median - x)
                + d.integrate_weighted(median, hi, |x| x - median))
                / mass;
            (median, mad.max(0.0))
        }
    };
    Ok(SilenceDesign { interval, estimate, mass, distortion_kind: kind, cond_distortion, iterations })
}

/// Estimate under silence: the minimizer of the conditional expected
/// distortion, i.e. the conditional mean for squared error and the
/// conditional median for absolute error.
pub fn best_estimate(d: &Density, interval: &Interval, kind: DistortionKind) -> Result<f64> {
    let mass = d.mass(interval);
    if mass <= MASS_FLOOR {
        return Err(Error::NullMassInterval { lo: interval.lo(), hi: interval.hi(), mass });
    }
    match kind {
        DistortionKind::SquaredError => {
            Ok(d.integrate_weighted(interval.lo(), interval.hi(), |x| x) / mass)
        }
        DistortionKind::AbsoluteError => {
            let half = d.cdf(interval.lo()) + 0.5 * mass;
            d.quantile(half.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON))
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::ProbabilityOutOfRange(eta));
    }
    if eta > 1.0 - MASS_FLOOR {
        return Err(Error::InfeasibleEta { eta, available: 1.0 - MASS_FLOOR });
    }
    Ok(())
}

/// Smallest radius `r` with `mass([center - r, center + r]) >= eta`;
/// bisection on the mass gap, which is monotone in `r`.
fn mass_radius(d: &Density, center: f64, eta: f64) -> f64 {
    let mass_at = |r: f64| d.cdf(center + r) - d.cdf(center - r);
    let t = d.truncated_support();
    let mut hi = (center - t.lo()).max(t.hi() - center).max(1e-12);
    // cdf is exact past the truncation point, so expanding is safe.
    while mass_at(hi) < eta {
        hi *= 2.0;
    }
    numeric::smallest_reaching(mass_at, eta, hi, RADIUS_PROB_TOL)
}

fn clip_to_support(d: &Density, lo: f64, hi: f64) -> Result<Interval> {
    let s = d.support();
    Interval::new(lo.max(s.lo()), hi.min(s.hi()))
}

fn step_from_estimate(d: &Density, estimate: f64, eta: f64, kind: DistortionKind, iterations: usize) -> Result<SilenceDesign> {
    let r = mass_radius(d, estimate, eta);
    let interval = clip_to_support(d, estimate - r, estimate + r)?;
    design_for(d, interval, kind, iterations)
}

/// One centering step: find the best estimate of `interval`, then the
/// smallest symmetric interval around it of mass at least `eta`, clipped
/// to the support.
pub fn centering_step(d: &Density, interval: &Interval, eta: f64, kind: DistortionKind) -> Result<SilenceDesign> {
    check_eta(eta)?;
    let estimate = best_estimate(d, interval, kind)?;
    step_from_estimate(d, estimate, eta, kind, 1)
}

/// Iterates the centering step from `start` until the endpoints move
/// less than `tol` (after null-mass clipping) or `max_iter` is reached.
/// Non-convergence is reported through the flag, not as an error.
pub fn iterate_centering(
    d: &Density,
    start: &Interval,
    eta: f64,
    kind: DistortionKind,
    tol: f64,
    max_iter: usize,
) -> Result<CenteringTrace> {
    check_eta(eta)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let clipped = clip_to_support(d, start.lo(), start.hi())?;
    let mut designs = vec![design_for(d, clipped, kind, 0)?];
    let mut converged = false;
    let mut gap = f64::INFINITY;
    for i in 1..=max_iter {
        let prev = designs.last().expect("non-empty");
        let next = step_from_estimate(d, prev.estimate, eta, kind, i)?;
        gap = (next.interval.lo() - prev.interval.lo())
            .abs()
            .max((next.interval.hi() - prev.interval.hi()).abs());
        designs.push(next);
        if gap < tol {
            converged = true;
            break;
        }
    }
    Ok(CenteringTrace { designs, converged, fixed_point_gap: gap })
}

/// Minimum-distortion member of the mass-`eta` sliding family: grid scan
/// refined by golden-section search between the neighbors of the grid
/// minimum. A flat valley (grid entries within 1e-10 of the minimum
/// spanning more than one cell) is reported through `valley_width`, and
/// the returned design sits at the valley center.
pub fn brute_force_optimal(d: &Density, eta: f64, kind: DistortionKind, grid: usize) -> Result<BruteForceOptimal> {
    if grid < 100 {
        return Err(Error::InvalidParameter(format!(
            "brute-force scan needs at least 100 grid points, got {grid}"
        )));
    }
    let entries = sliding_family_scan(d, eta, grid)?;
    let values: Vec<f64> = entries.iter().map(|e| distortion_of(&e.summary, kind)).collect();
    let lefts: Vec<f64> = entries.iter().map(|e| e.summary.interval.lo()).collect();
    let (i_min, &f_min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("scan is non-empty");
    let f_max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let valley: Vec<f64> = lefts
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v <= f_min + VALLEY_DISTORTION_TOL)
        .map(|(&a, _)| a)
        .collect();
    let valley_lo = valley.iter().cloned().fold(f64::INFINITY, f64::min);
    let valley_hi = valley.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let valley_width = valley_hi - valley_lo;
    let grid_step = (lefts[grid - 1] - lefts[0]) / (grid - 1) as f64;

    let eval = |a: f64| -> f64 {
        right_end_for_mass(d, a, eta)
            .and_then(|b| conditional_summary(d, &Interval::new(a, b)?))
            .map(|s| distortion_of(&s, kind))
            .unwrap_or(f64::INFINITY)
    };

    let best_a = if valley_width > 1.5 * grid_step {
        0.5 * (valley_lo + valley_hi)
    } else {
        let bracket_lo = lefts[i_min.saturating_sub(1)];
        let bracket_hi = lefts[(i_min + 1).min(grid - 1)];
        let x_tol = (1e-9 * (bracket_hi - bracket_lo).abs()).max(1e-13);
        let (a_refined, f_refined) = numeric::golden_min(eval, bracket_lo, bracket_hi, x_tol);
        if f_refined < f_min {
            a_refined
        } else {
            lefts[i_min]
        }
    };

    let b = right_end_for_mass(d, best_a, eta)?;
    let design = design_for(d, Interval::new(best_a, b)?, kind, 0)?;
    Ok(BruteForceOptimal {
        design,
        valley_width,
        distortion_spread: f_max - f_min,
    })
}

/// Probability mass of the symmetric difference of two intervals.
fn symmetric_difference_mass(d: &Density, a: &Interval, b: &Interval) -> f64 {
    if a.intersect(b).is_none() {
        return d.mass(a) + d.mass(b);
    }
    (d.cdf(a.lo()) - d.cdf(b.lo())).abs() + (d.cdf(a.hi()) - d.cdf(b.hi())).abs()
}

/// An interval is centered when one centering step at its own mass moves
/// it by no more than `tol` of probability (symmetric-difference mass).
pub fn is_centered(d: &Density, interval: &Interval, kind: DistortionKind, tol: f64) -> Result<bool> {
    let mass = d.mass(interval);
    if mass <= MASS_FLOOR {
        return Err(Error::NullMassInterval { lo: interval.lo(), hi: interval.hi(), mass });
    }
    let eta = mass.min(1.0 - MASS_FLOOR);
    let step = centering_step(d, interval, eta, kind)?;
    Ok(symmetric_difference_mass(d, interval, &step.interval) < tol)
}

/// CSV serialization of a trace, one row per design.
pub fn trace_to_csv(trace: &CenteringTrace) -> String {
    let mut out = String::from("iter,lo,hi,estimate,mass,cond_distortion\n");
    for design in &trace.designs {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            design.iterations,
            g15(design.interval.lo()),
            g15(design.interval.hi()),
            g15(design.estimate),
            g15(design.mass),
            g15(design.cond_distortion),
        ));
    }
    out
}
