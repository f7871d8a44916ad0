//! Conditional statistics of a density restricted to an interval, and
//! the sliding family of constant-mass intervals.
//!
//! The sliding family `[a, b(a)]` with `mass = η` is the backbone of the
//! optimality analysis: the brute-force oracle scans it, the heuristic
//! families are special members of it, and the speed-ratio inequalities
//! are statements about how its conditional mean and median move as the
//! left end slides.

use crate::density::{Density, QUANTILE_TOL};
use crate::fmt::g15;
use crate::interval::Interval;
use crate::{Error, Result};

/// Intervals carrying less mass than this are rejected rather than
/// summarized.
pub const MASS_FLOOR: f64 = 1e-12;

/// Probability mass clipped off an unbounded support end before a scan.
pub const SCAN_EDGE_EPS: f64 = 1e-6;

/// Scan entries whose left-end pdf is below this are flagged: the
/// sliding-family derivative argument assumes `pdf(a) > 0` there.
const FLAG_PDF_FLOOR: f64 = 1e-14;

/// Statistics of `X` conditioned on `X ∈ interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalSummary {
    pub interval: Interval,
    pub mass: f64,
    pub cond_mean: f64,
    pub cond_median: f64,
    /// Variance about the conditional mean, in squared x-units.
    pub cond_variance: f64,
    /// Mean absolute deviation about the conditional median, in x-units.
    pub cond_mad: f64,
    pub midpoint: f64,
}

/// One sliding-family member.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub summary: ConditionalSummary,
    /// Set when the left-end pdf is numerically zero (support corner).
    pub left_pdf_flagged: bool,
}

/// Conditional mean, median, variance and mean absolute deviation of the
/// density restricted to `interval`.
///
/// The median solves the two-sided half-mass equation through the
/// unconditional quantile: `median = quantile(cdf(lo) + mass/2)`.
pub fn conditional_summary(d: &Density, interval: &Interval) -> Result<ConditionalSummary> {
    let mass = d.mass(interval);
    if mass <= MASS_FLOOR {
        return Err(Error::NullMassInterval {
            lo: interval.lo(),
            hi: interval.hi(),
            mass,
        });
    }
    let (lo, hi) = (interval.lo(), interval.hi());
    let cond_mean = d.integrate_weighted(lo, hi, |x| x) / mass;
    let cond_variance =
        d.integrate_weighted(lo, hi, |x| (x - cond_mean) * (x - cond_mean)) / mass;
    let half = d.cdf(lo) + 0.5 * mass;
    let cond_median = d.quantile(half.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON))?;
    let cond_mad = (d.integrate_weighted(lo, cond_median, |x| cond_median - x)
        + d.integrate_weighted(cond_median, hi, |x| x - cond_median))
        / mass;
    Ok(ConditionalSummary {
        interval: *interval,
        mass,
        cond_mean,
        cond_median,
        cond_variance: cond_variance.max(0.0),
        cond_mad: cond_mad.max(0.0),
        midpoint: interval.midpoint(),
    })
}

/// Right end `b` with `mass([a, b]) = eta`, i.e. `quantile(cdf(a) + eta)`.
/// Intervals that would run past the support are capped at the truncated
/// end, which costs less mass than the quantile tolerance.
pub fn right_end_for_mass(d: &Density, a: f64, eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::ProbabilityOutOfRange(eta));
    }
    let target = d.cdf(a) + eta;
    if target > 1.0 + QUANTILE_TOL {
        return Err(Error::InfeasibleEta {
            eta,
            available: 1.0 - d.cdf(a),
        });
    }
    if target >= 1.0 - 1e-15 {
        return Ok(d.truncated_support().hi());
    }
    d.quantile(target)
}

/// Spans the family of mass-`eta` intervals with `grid` equispaced left
/// ends over the feasible range `[support.lo, quantile(1 - eta)]`; an
/// unbounded lower support end is replaced by `quantile(SCAN_EDGE_EPS)`.
pub fn sliding_family_scan(d: &Density, eta: f64, grid: usize) -> Result<Vec<ScanEntry>> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::ProbabilityOutOfRange(eta));
    }
    if grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "sliding-family scan needs at least 2 grid points, got {grid}"
        )));
    }
    let a_min = if d.support().lo().is_finite() {
        d.support().lo()
    } else {
        d.quantile(SCAN_EDGE_EPS)?
    };
    let a_max = d.quantile(1.0 - eta)?;
    let mut entries = Vec::with_capacity(grid);
    for a in crate::numeric::linspace(a_min, a_max.max(a_min), grid) {
        let b = right_end_for_mass(d, a, eta)?;
        let summary = conditional_summary(d, &Interval::new(a, b)?)?;
        entries.push(ScanEntry {
            summary,
            left_pdf_flagged: d.pdf(a) < FLAG_PDF_FLOOR,
        });
    }
    Ok(entries)
}

/// CSV serialization of a scan, one row per entry.
pub fn scan_to_csv(entries: &[ScanEntry]) -> String {
    let mut out = String::from("a,b,mass,cond_mean,cond_median,midpoint,cond_variance,cond_mad\n");
    for entry in entries {
        let s = &entry.summary;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            g15(s.interval.lo()),
            g15(s.interval.hi()),
            g15(s.mass),
            g15(s.cond_mean),
            g15(s.cond_median),
            g15(s.midpoint),
            g15(s.cond_variance),
            g15(s.cond_mad),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN4: f64 = 1.386_294_361_119_890_6;

    #[test]
    fn uniform_restriction_is_uniform() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        let s = conditional_summary(&d, &Interval::new(0.2, 0.6).unwrap()).unwrap();
        assert!((s.cond_mean - 0.4).abs() < 1e-12);
        assert!((s.cond_median - 0.4).abs() < 1e-12);
        assert!((s.cond_variance - 0.4 * 0.4 / 12.0).abs() < 1e-12);
        // MAD of a width-w uniform about its center is w/4.
        assert!((s.cond_mad - 0.1).abs() < 1e-12);
        assert!((s.midpoint - 0.4).abs() < 1e-15);
    }

    #[test]
    fn truncated_exponential_mean_matches_closed_form() {
        let d = Density::exponential(1.0).unwrap();
        let s = conditional_summary(&d, &Interval::new(0.0, LN4).unwrap()).unwrap();
        // Oracle: (1 - (1+c)e^{-c}) / (1 - e^{-c}) at c = ln 4.
        let oracle = (1.0 - (1.0 + LN4) * 0.25) / 0.75;
        assert!((s.cond_mean - oracle).abs() < 1e-10, "{} vs {oracle}", s.cond_mean);
        assert!((s.mass - 0.75).abs() < 1e-12);
    }

    #[test]
    fn exponential_whole_support_median_is_ln2() {
        let d = Density::exponential(1.0).unwrap();
        let t = d.truncated_support();
        let s = conditional_summary(&d, &t).unwrap();
        assert!((s.cond_median - std::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn summary_invariants_hold_on_catalog_samples() {
        for (name, d) in crate::catalog::reference_catalog() {
            for (p1, p2) in [(0.1, 0.6), (0.25, 0.9), (0.02, 0.98)] {
                let iv = Interval::new(d.quantile(p1).unwrap(), d.quantile(p2).unwrap()).unwrap();
                let s = conditional_summary(&d, &iv).unwrap();
                assert!(iv.lo() <= s.cond_mean && s.cond_mean <= iv.hi(), "{name}: mean outside");
                assert!(iv.lo() <= s.cond_median && s.cond_median <= iv.hi(), "{name}: median outside");
                assert!(s.cond_variance >= 0.0);
                let quarter = iv.len() * iv.len() / 4.0;
                assert!(s.cond_variance <= quarter + 1e-12, "{name}: variance above (hi-lo)²/4");
                assert!(s.mass > 0.0);
            }
        }
    }

    #[test]
    fn null_mass_interval_is_an_error() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        assert!(matches!(
            conditional_summary(&d, &Interval::new(2.0, 3.0).unwrap()),
            Err(Error::NullMassInterval { .. })
        ));
        assert!(conditional_summary(&d, &Interval::point(0.5).unwrap()).is_err());
    }

    #[test]
    fn right_end_examples() {
        let exp = Density::exponential(1.0).unwrap();
        assert!((right_end_for_mass(&exp, 0.0, 0.75).unwrap() - LN4).abs() < 1e-12);

        let uni = Density::uniform(0.0, 1.0).unwrap();
        assert!((right_end_for_mass(&uni, 0.1, 0.5).unwrap() - 0.6).abs() < 1e-12);

        // As a goes to the far left tail, the mass-1/2 right end tends to 0.
        let gauss = Density::gaussian(0.0, 1.0).unwrap();
        let a = gauss.truncated_support().lo();
        assert!(right_end_for_mass(&gauss, a, 0.5).unwrap().abs() < 1e-6);
    }

    #[test]
    fn right_end_detects_infeasible_mass() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        assert!(matches!(
            right_end_for_mass(&d, 0.5, 0.75),
            Err(Error::InfeasibleEta { .. })
        ));
    }

    #[test]
    fn uniform_scan_is_flat() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        let entries = sliding_family_scan(&d, 0.5, 6).unwrap();
        assert_eq!(entries.len(), 6);
        for e in &entries {
            assert!((e.summary.interval.len() - 0.5).abs() < 1e-12);
            assert!((e.summary.cond_variance - 0.25 / 12.0).abs() < 1e-12);
            assert!((e.summary.mass - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_scan_minimum_sits_at_the_symmetric_entry() {
        let d = Density::gaussian(0.0, 1.0).unwrap();
        let eta = 0.6827;
        let entries = sliding_family_scan(&d, eta, 101).unwrap();
        let (argmin, _) = entries
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.summary.cond_variance.total_cmp(&b.1.summary.cond_variance))
            .unwrap();
        let symmetric_a = -d.quantile(0.5 + eta / 2.0).unwrap();
        let step = entries[1].summary.interval.lo() - entries[0].summary.interval.lo();
        assert!(
            (entries[argmin].summary.interval.lo() - symmetric_a).abs() <= step,
            "grid minimum {} vs symmetric left end {symmetric_a}",
            entries[argmin].summary.interval.lo()
        );
    }

    #[test]
    fn exponential_scan_variance_increases() {
        let d = Density::exponential(1.0).unwrap();
        let entries = sliding_family_scan(&d, 0.75, 101).unwrap();
        for pair in entries.windows(2) {
            assert!(pair[1].summary.cond_variance > pair[0].summary.cond_variance);
        }
    }

    #[test]
    fn scan_flags_zero_pdf_corners() {
        let d = Density::triangular(-0.25, 0.0, 1.0).unwrap();
        let entries = sliding_family_scan(&d, 0.4, 21).unwrap();
        assert!(entries[0].left_pdf_flagged, "pdf(lo) = 0 must be flagged");
        assert!(!entries[10].left_pdf_flagged);
    }

    #[test]
    fn scan_csv_has_header_and_rows() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        let entries = sliding_family_scan(&d, 0.5, 3).unwrap();
        let csv = scan_to_csv(&entries);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a,b,mass,cond_mean,cond_median,midpoint,cond_variance,cond_mad"
        );
        assert_eq!(lines.count(), 3);
    }
}
