//! Heuristic silence-interval families and the sweep tables comparing
//! their conditional variance against the brute-force optimum.
//!
//! Four closed-form families collect a prescribed mass `η` around the
//! mode `μ`: super-level intervals `{x : pdf(x) ≥ ℓ}`, equal sides
//! `[μ - α, μ + α]`, equal areas (η/2 of mass on each side of `μ`), and
//! the sliding-family member whose conditional mean equals `μ`. For
//! symmetric densities they all coincide with the optimum; on asymmetric
//! shapes the super-level family is the one to watch.

use crate::centering::{brute_force_optimal, BruteForceOptimal};
use crate::conditional::{conditional_summary, right_end_for_mass, sliding_family_scan};
use crate::density::{Density, QUANTILE_TOL};
use crate::fmt::g15;
use crate::interval::{DistortionKind, Interval};
use crate::numeric;
use crate::{Error, Result};

/// Mass tolerance of the level and half-width bisections, in
/// probability units.
const FAMILY_MASS_TOL: f64 = 1e-10;
/// Tolerance of the mode-as-mean root search, in left-end units.
const ROOT_A_TOL: f64 = 1e-10;

/// The four heuristic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    SuperLevel,
    EqualSides,
    EqualAreas,
    ModeAsConditionalMean,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::SuperLevel,
        FamilyKind::EqualSides,
        FamilyKind::EqualAreas,
        FamilyKind::ModeAsConditionalMean,
    ];

    /// Label used in the sweep CSV.
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::SuperLevel => "super-level",
            FamilyKind::EqualSides => "equal-sides",
            FamilyKind::EqualAreas => "equal-areas",
            FamilyKind::ModeAsConditionalMean => "mode-as-mean",
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(eta))
    }
}

/// Level-set boundary: the point on the given side of the mode where the
/// pdf crosses `level`, or the support edge if the pdf stays above it.
fn level_crossing(d: &Density, level: f64, left_side: bool) -> f64 {
    let t = d.truncated_support();
    let (edge, support_edge) = if left_side {
        (t.lo(), d.support().lo())
    } else {
        (t.hi(), d.support().hi())
    };
    if d.pdf(edge) >= level {
        return if support_edge.is_finite() { support_edge } else { edge };
    }
    let (mut inside, mut outside) = (d.mode(), edge);
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if d.pdf(mid) >= level {
            inside = mid;
        } else {
            outside = mid;
        }
        if (inside - outside).abs() <= f64::EPSILON * (inside.abs() + 1.0) {
            break;
        }
    }
    inside
}

/// Smallest super-level set `{x : pdf(x) ≥ ℓ}` with mass at least `eta`;
/// an interval by unimodality. On a flat-topped density (uniform) the
/// critical level is ambiguous, and the smallest mass-`eta` interval
/// centered in the flat region is returned.
pub fn super_level_interval(d: &Density, eta: f64) -> Result<Interval> {
    check_eta(eta)?;
    // Flat top across the whole support: center the interval in it.
    if let crate::density::DensityKind::Uniform { lo, hi } = *d.kind() {
        let half = 0.5 * eta * (hi - lo);
        return Interval::new(d.mode() - half, d.mode() + half);
    }
    let mass_at_level = |level: f64| -> f64 {
        let lo = level_crossing(d, level, true);
        let hi = level_crossing(d, level, false);
        d.cdf(hi) - d.cdf(lo)
    };
    // mass(level) decreases from 1 at level 0 to 0 at the peak; bisect
    // for the largest level still holding mass eta.
    let (mut lo_level, mut hi_level) = (0.0_f64, d.peak());
    for _ in 0..200 {
        let mid = 0.5 * (lo_level + hi_level);
        let gap = mass_at_level(mid) - eta;
        if gap >= 0.0 {
            lo_level = mid;
            if gap <= FAMILY_MASS_TOL {
                break;
            }
        } else {
            hi_level = mid;
        }
    }
    Interval::new(
        level_crossing(d, lo_level, true),
        level_crossing(d, lo_level, false),
    )
}

/// Smallest half-width `α` with `mass([μ - α, μ + α]) ≥ eta`, clipped to
/// the support; when the mode sits at a support edge the clipped side
/// stays put and the feasible side keeps growing until the mass is
/// reached.
pub fn equal_sides_interval(d: &Density, eta: f64) -> Result<Interval> {
    check_eta(eta)?;
    let mode = d.mode();
    let mass_at = |r: f64| d.cdf(mode + r) - d.cdf(mode - r);
    let t = d.truncated_support();
    let mut hi = (mode - t.lo()).max(t.hi() - mode).max(1e-12);
    while mass_at(hi) < eta {
        hi *= 2.0;
    }
    let r = numeric::smallest_reaching(mass_at, eta, hi, FAMILY_MASS_TOL);
    let s = d.support();
    Interval::new((mode - r).max(s.lo()), (mode + r).min(s.hi()))
}

/// `[quantile(cdf(μ) - η/2), quantile(cdf(μ) + η/2)]`; a side without
/// enough mass clips to the support edge and the deficit is taken on the
/// other side.
pub fn equal_areas_interval(d: &Density, eta: f64) -> Result<Interval> {
    check_eta(eta)?;
    let at_mode = d.cdf(d.mode());
    let mut lo_p = at_mode - 0.5 * eta;
    let mut hi_p = at_mode + 0.5 * eta;
    if lo_p < 0.0 {
        lo_p = 0.0;
        hi_p = eta;
    } else if hi_p > 1.0 {
        hi_p = 1.0;
        lo_p = 1.0 - eta;
    }
    let lo = if lo_p <= QUANTILE_TOL {
        d.support().lo().max(d.truncated_support().lo())
    } else {
        d.quantile(lo_p)?
    };
    let hi = if hi_p >= 1.0 - QUANTILE_TOL {
        d.support().hi().min(d.truncated_support().hi())
    } else {
        d.quantile(hi_p)?
    };
    Interval::new(lo, hi)
}

/// Member of the mass-`eta` sliding family whose conditional mean equals
/// the mode, found by bisecting the first sign change of
/// `g(a) = cond_mean([a, b(a)]) - μ` over a `grid`-point scan. Returns
/// `None` when `g` keeps one sign across the feasible range.
pub fn mode_as_mean_interval(d: &Density, eta: f64, grid: usize) -> Result<Option<Interval>> {
    check_eta(eta)?;
    let entries = sliding_family_scan(d, eta, grid.max(3))?;
    let g = |a: f64| -> Result<f64> {
        let b = right_end_for_mass(d, a, eta)?;
        let s = conditional_summary(d, &Interval::new(a, b)?)?;
        Ok(s.cond_mean - d.mode())
    };
    let gs: Vec<f64> = entries.iter().map(|e| e.summary.cond_mean - d.mode()).collect();
    let exact_hit = gs.iter().position(|&v| v == 0.0);
    if let Some(i) = exact_hit {
        return Ok(Some(entries[i].summary.interval));
    }
    let Some(i) = (1..gs.len()).find(|&i| gs[i - 1].signum() != gs[i].signum()) else {
        return Ok(None);
    };
    let (mut lo, mut hi) = (
        entries[i - 1].summary.interval.lo(),
        entries[i].summary.interval.lo(),
    );
    let g_lo = gs[i - 1];
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)?.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= ROOT_A_TOL {
            break;
        }
    }
    let a = 0.5 * (lo + hi);
    let b = right_end_for_mass(d, a, eta)?;
    Ok(Some(Interval::new(a, b)?))
}

/// One row of the family comparison: the interval (absent when the
/// family has no solution) and its conditional variance.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub density: String,
    pub eta: f64,
    pub family: &'static str,
    pub interval: Option<Interval>,
    pub cond_variance: Option<f64>,
}

/// One point of a constant-mass sliding-family curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub density: String,
    pub eta: f64,
    pub a: f64,
    pub cond_variance: f64,
}

/// Family comparison table plus the sliding-family curves to overlay.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySweep {
    pub rows: Vec<FamilyRow>,
    pub curves: Vec<CurveRow>,
}

/// For each `eta`: the four family intervals with their conditional
/// variances, a `optimal` row from the brute-force scan, and the full
/// mass-`eta` sliding-family curve.
pub fn family_sweep(d: &Density, etas: &[f64], grid: usize) -> Result<FamilySweep> {
    let mut rows = Vec::new();
    let mut curves = Vec::new();
    let name = d.kind_name().to_string();
    for &eta in etas {
        check_eta(eta)?;
        for family in FamilyKind::ALL {
            let interval = match family {
                FamilyKind::SuperLevel => Some(super_level_interval(d, eta)?),
                FamilyKind::EqualSides => Some(equal_sides_interval(d, eta)?),
                FamilyKind::EqualAreas => Some(equal_areas_interval(d, eta)?),
                FamilyKind::ModeAsConditionalMean => mode_as_mean_interval(d, eta, grid)?,
            };
            let cond_variance = match &interval {
                Some(iv) => Some(conditional_summary(d, iv)?.cond_variance),
                None => None,
            };
            rows.push(FamilyRow { density: name.clone(), eta, family: family.label(), interval, cond_variance });
        }
        let best: BruteForceOptimal =
            brute_force_optimal(d, eta, DistortionKind::SquaredError, grid.max(100))?;
        rows.push(FamilyRow {
            density: name.clone(),
            eta,
            family: "optimal",
            interval: Some(best.design.interval),
            cond_variance: Some(best.design.cond_distortion),
        });
        for entry in sliding_family_scan(d, eta, grid)? {
            curves.push(CurveRow {
                density: name.clone(),
                eta,
                a: entry.summary.interval.lo(),
                cond_variance: entry.summary.cond_variance,
            });
        }
    }
    Ok(FamilySweep { rows, curves })
}

/// CSV of the family rows; absent intervals serialize as empty fields.
pub fn rows_to_csv(rows: &[FamilyRow]) -> String {
    let mut out = String::from("density,eta,family,lo,hi,cond_variance\n");
    for row in rows {
        let (lo, hi) = row
            .interval
            .map(|iv| (g15(iv.lo()), g15(iv.hi())))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.density,
            g15(row.eta),
            row.family,
            lo,
            hi,
            row.cond_variance.map(g15).unwrap_or_default(),
        ));
    }
    out
}

/// CSV of the sliding-family curves.
pub fn curves_to_csv(curves: &[CurveRow]) -> String {
    let mut out = String::from("density,eta,a,cond_variance\n");
    for row in curves {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.density,
            g15(row.eta),
            g15(row.a),
            g15(row.cond_variance),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN4: f64 = 1.386_294_361_119_890_6;

    #[test]
    fn gaussian_families_coincide_with_the_symmetric_interval() {
        let d = Density::gaussian(0.0, 1.0).unwrap();
        let eta = 0.6827;
        let hi = d.quantile(0.5 + eta / 2.0).unwrap();
        let intervals = [
            super_level_interval(&d, eta).unwrap(),
            equal_sides_interval(&d, eta).unwrap(),
            equal_areas_interval(&d, eta).unwrap(),
            mode_as_mean_interval(&d, eta, 201).unwrap().unwrap(),
        ];
        for iv in &intervals {
            assert!((iv.lo() + hi).abs() < 1e-6, "lo {}", iv.lo());
            assert!((iv.hi() - hi).abs() < 1e-6, "hi {}", iv.hi());
        }
        for pair in intervals.windows(2) {
            assert!(
                (pair[0].lo() - pair[1].lo()).abs() < 1e-8
                    && (pair[0].hi() - pair[1].hi()).abs() < 1e-8,
                "families disagree beyond 1e-8: {pair:?}"
            );
        }
    }

    #[test]
    fn unbalanced_laplace_sweep_covers_all_families() {
        let d = Density::unbalanced_laplace(1.5, 0.3).unwrap();
        let etas = [0.2, 0.4, 0.6, 0.8];
        let sweep = family_sweep(&d, &etas, 161).unwrap();
        assert_eq!(sweep.rows.len(), etas.len() * 5);
        for row in &sweep.rows {
            // The heavy right tail pushes the conditional mean of every
            // mass-eta interval past the mode once eta reaches 0.4, so
            // only the smallest eta has a mode-as-mean member.
            if row.family == "mode-as-mean" && row.eta > 0.3 {
                assert!(row.interval.is_none(), "unexpected solution at eta {}", row.eta);
                continue;
            }
            assert!(row.interval.is_some(), "absent {} row at eta {}", row.family, row.eta);
            let var = row.cond_variance.unwrap();
            assert!(var.is_finite() && var > 0.0);
        }
        // The optimum never beats a family at its own game.
        for &eta in &etas {
            let optimal = sweep
                .rows
                .iter()
                .find(|r| r.family == "optimal" && r.eta == eta)
                .and_then(|r| r.cond_variance)
                .unwrap();
            for row in sweep.rows.iter().filter(|r| r.eta == eta) {
                if let Some(var) = row.cond_variance {
                    assert!(
                        var >= optimal - 1e-9,
                        "{} at eta {eta} beats the optimum",
                        row.family
                    );
                }
            }
        }
    }

    #[test]
    fn exponential_families_clip_to_the_support_edge() {
        let d = Density::exponential(1.0).unwrap();
        for iv in [
            super_level_interval(&d, 0.75).unwrap(),
            equal_sides_interval(&d, 0.75).unwrap(),
            equal_areas_interval(&d, 0.75).unwrap(),
        ] {
            assert!(iv.lo().abs() < 1e-9, "lo {}", iv.lo());
            assert!((iv.hi() - LN4).abs() < 1e-8, "hi {}", iv.hi());
        }
    }

    #[test]
    fn exponential_has_no_mode_as_mean_interval() {
        let d = Density::exponential(1.0).unwrap();
        for eta in [0.2, 0.5, 0.8] {
            assert!(mode_as_mean_interval(&d, eta, 201).unwrap().is_none());
        }
    }

    #[test]
    fn uniform_families_center_on_the_midpoint() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        let sl = super_level_interval(&d, 0.5).unwrap();
        assert!((sl.lo() - 0.25).abs() < 1e-12 && (sl.hi() - 0.75).abs() < 1e-12);
        let mm = mode_as_mean_interval(&d, 0.5, 201).unwrap().unwrap();
        assert!((mm.lo() - 0.25).abs() < 1e-8 && (mm.hi() - 0.75).abs() < 1e-8);
    }

    #[test]
    fn triangular_equal_sides_is_symmetric_about_the_mode() {
        let d = Density::triangular(-0.25, 0.0, 1.0).unwrap();
        let iv = equal_sides_interval(&d, 0.3).unwrap();
        assert!((iv.lo() + iv.hi()).abs() < 1e-9, "not symmetric: {iv:?}");
        assert!((d.mass(&iv) - 0.3).abs() < 1e-9);
    }

    #[test]
    fn triangular_equal_areas_uses_the_mode_quantiles() {
        // cdf(mode) = 0.2 here, so eta = 0.4 puts the lower quantile
        // exactly at probability zero: the support edge.
        let d = Density::triangular(-0.25, 0.0, 1.0).unwrap();
        let iv = equal_areas_interval(&d, 0.4).unwrap();
        assert!((iv.lo() + 0.25).abs() < 1e-12);
        assert!((iv.hi() - d.quantile(0.4).unwrap()).abs() < 1e-12);

        let iv = equal_areas_interval(&d, 0.3).unwrap();
        let at_mode = d.cdf(0.0);
        assert!((iv.lo() - d.quantile(at_mode - 0.15).unwrap()).abs() < 1e-12);
        assert!((iv.hi() - d.quantile(at_mode + 0.15).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn triangular_super_level_matches_independent_level_bisection() {
        // Oracle: bisection on the level against Simpson-rule mass, kept
        // clear of the production cdf path.
        let d = Density::triangular(-0.25, 0.0, 1.0).unwrap();
        let eta = 0.5;
        let simpson_mass = |lo: f64, hi: f64| -> f64 {
            let n = 4000;
            let h = (hi - lo) / n as f64;
            let mut acc = d.pdf(lo) + d.pdf(hi);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * d.pdf(lo + h * i as f64);
            }
            acc * h / 3.0
        };
        // Piecewise-linear pdf: crossing points are linear in the level.
        let ends = |level: f64| -> (f64, f64) {
            (level / 6.4 - 0.25, 1.0 - level / 1.6)
        };
        let (mut lo_l, mut hi_l) = (0.0, 1.6);
        for _ in 0..60 {
            let mid = 0.5 * (lo_l + hi_l);
            let (a, b) = ends(mid);
            if simpson_mass(a, b) >= eta {
                lo_l = mid;
            } else {
                hi_l = mid;
            }
        }
        let (a_oracle, b_oracle) = ends(lo_l);
        let iv = super_level_interval(&d, eta).unwrap();
        assert!((iv.lo() - a_oracle).abs() < 1e-6, "{} vs {a_oracle}", iv.lo());
        assert!((iv.hi() - b_oracle).abs() < 1e-6, "{} vs {b_oracle}", iv.hi());
        assert!((d.mass(&iv) - eta).abs() < 1e-9);
    }

    #[test]
    fn family_masses_stay_in_the_eta_window() {
        for (name, d) in crate::catalog::reference_catalog() {
            for eta in [0.2, 0.5, 0.8] {
                for (family, iv) in [
                    ("super-level", Some(super_level_interval(&d, eta).unwrap())),
                    ("equal-sides", Some(equal_sides_interval(&d, eta).unwrap())),
                    ("equal-areas", Some(equal_areas_interval(&d, eta).unwrap())),
                    ("mode-as-mean", mode_as_mean_interval(&d, eta, 161).unwrap()),
                ] {
                    if let Some(iv) = iv {
                        let mass = d.mass(&iv);
                        assert!(
                            mass >= eta - 1e-9 && mass <= eta + 1e-6,
                            "{name}/{family} eta {eta}: mass {mass}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_densities_collapse_all_families_onto_the_optimum() {
        for name in ["gaussian", "laplace", "uniform"] {
            let d = crate::catalog::reference_catalog()
                .into_iter()
                .find(|(n, _)| *n == name)
                .unwrap()
                .1;
            let sweep = family_sweep(&d, &[0.5], 201).unwrap();
            let reference = sweep.rows[0].interval.unwrap();
            for row in &sweep.rows {
                let iv = row.interval.unwrap_or_else(|| panic!("{name}: absent row"));
                assert!(
                    (iv.lo() - reference.lo()).abs() < 1e-6
                        && (iv.hi() - reference.hi()).abs() < 1e-6,
                    "{name}/{}: {iv:?} vs {reference:?}",
                    row.family
                );
            }
        }
    }

    #[test]
    fn sweep_table_shape_and_absent_rows() {
        let d = Density::exponential(1.0).unwrap();
        let etas = [0.2, 0.4];
        let sweep = family_sweep(&d, &etas, 120).unwrap();
        // 4 families + 1 optimal row per eta.
        assert_eq!(sweep.rows.len(), etas.len() * 5);
        assert_eq!(sweep.curves.len(), etas.len() * 120);
        let absent: Vec<_> = sweep
            .rows
            .iter()
            .filter(|r| r.interval.is_none())
            .map(|r| r.family)
            .collect();
        assert_eq!(absent, vec!["mode-as-mean", "mode-as-mean"]);
        let csv = rows_to_csv(&sweep.rows);
        assert!(csv.starts_with("density,eta,family,lo,hi,cond_variance\n"));
        let absent_line = csv
            .lines()
            .find(|l| l.contains("mode-as-mean"))
            .expect("absent row present");
        assert!(absent_line.ends_with(",,,"), "absent fields empty: {absent_line}");
        let curves = curves_to_csv(&sweep.curves);
        assert!(curves.starts_with("density,eta,a,cond_variance\n"));
    }
}
