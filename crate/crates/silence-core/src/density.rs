//! Catalog of scalar log-concave densities and their numeric services.
//!
//! Each density exposes pdf / log-pdf / cdf / quantile / interval-mass
//! plus cached mean, variance and mode. The cumulative distributions are
//! closed-form for every catalog member, so quantile inversion and mass
//! queries never touch the quadrature machinery; conditional moments are
//! integrated adaptively by the [`crate::conditional`] module through
//! [`Density::integrate_weighted`].

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::interval::Interval;
use crate::numeric;
use crate::{Error, Result};

/// Absolute quadrature tolerance used throughout the crate.
pub const QUAD_ABS_TOL: f64 = 1e-10;
/// Relative quadrature tolerance used throughout the crate.
pub const QUAD_REL_TOL: f64 = 1e-10;
/// Quantile inversion tolerance, in probability units.
pub const QUANTILE_TOL: f64 = 1e-12;

/// Unbounded tails are truncated where the pdf falls below 1e-16 of the
/// peak; `LN_TAIL = -ln(1e-16)`. The mass cut off stays below 1e-16 for
/// every catalog member.
const LN_TAIL: f64 = 36.841_361_487_904_73;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
const FRAC_PI_4: f64 = std::f64::consts::FRAC_PI_4;

/// Density identifier plus parameters, mirroring the JSON configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    Uniform { lo: f64, hi: f64 },
    Exponential { lambda: f64 },
    Gaussian { mu: f64, sigma: f64 },
    Laplace { mu: f64, b: f64 },
    UnbalancedLaplace { lambda_left: f64, lambda_right: f64 },
    Rayleigh { sigma: f64 },
    Triangular { lo: f64, mode: f64, hi: f64 },
    CircularArc { r_left: f64, r_right: f64 },
}

/// A scalar probability density from the catalog.
///
/// Immutable after construction; every method is pure, so instances can
/// be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    kind: DensityKind,
    support: Interval,
    truncated: Interval,
    mean: f64,
    variance: f64,
    mode: f64,
    peak: f64,
    /// Normalization constant for the patchwork kinds; 1.0 elsewhere.
    norm: f64,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

impl Density {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        require(lo.is_finite() && hi.is_finite() && lo < hi, || {
            format!("uniform requires finite lo < hi, got lo={lo}, hi={hi}")
        })?;
        let support = Interval::new(lo, hi)?;
        let width = hi - lo;
        Ok(Self {
            kind: DensityKind::Uniform { lo, hi },
            support,
            truncated: support,
            mean: 0.5 * (lo + hi),
            variance: width * width / 12.0,
            // Flat top: the support midpoint is the canonical mode.
            mode: 0.5 * (lo + hi),
            peak: 1.0 / width,
            norm: 1.0,
        })
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        require(lambda.is_finite() && lambda > 0.0, || {
            format!("exponential requires lambda > 0, got {lambda}")
        })?;
        Ok(Self {
            kind: DensityKind::Exponential { lambda },
            support: Interval::support(0.0, f64::INFINITY)?,
            truncated: Interval::new(0.0, LN_TAIL / lambda)?,
            mean: 1.0 / lambda,
            variance: 1.0 / (lambda * lambda),
            mode: 0.0,
            peak: lambda,
            norm: 1.0,
        })
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        require(mu.is_finite() && sigma.is_finite() && sigma > 0.0, || {
            format!("gaussian requires finite mu and sigma > 0, got mu={mu}, sigma={sigma}")
        })?;
        let half_width = sigma * (2.0 * LN_TAIL).sqrt();
        Ok(Self {
            kind: DensityKind::Gaussian { mu, sigma },
            support: Interval::support(f64::NEG_INFINITY, f64::INFINITY)?,
            truncated: Interval::new(mu - half_width, mu + half_width)?,
            mean: mu,
            variance: sigma * sigma,
            mode: mu,
            peak: 1.0 / (sigma * SQRT_2PI),
            norm: 1.0,
        })
    }

    pub fn laplace(mu: f64, b: f64) -> Result<Self> {
        require(mu.is_finite() && b.is_finite() && b > 0.0, || {
            format!("laplace requires finite mu and b > 0, got mu={mu}, b={b}")
        })?;
        Ok(Self {
            kind: DensityKind::Laplace { mu, b },
            support: Interval::support(f64::NEG_INFINITY, f64::INFINITY)?,
            truncated: Interval::new(mu - b * LN_TAIL, mu + b * LN_TAIL)?,
            mean: mu,
            variance: 2.0 * b * b,
            mode: mu,
            peak: 0.5 / b,
            norm: 1.0,
        })
    }

    /// Two-sided exponential with rate `lambda_left` below the mode at 0
    /// and `lambda_right` above it, normalized to unit mass.
    pub fn unbalanced_laplace(lambda_left: f64, lambda_right: f64) -> Result<Self> {
        require(
            lambda_left.is_finite() && lambda_right.is_finite() && lambda_left > 0.0 && lambda_right > 0.0,
            || {
                format!(
                    "unbalanced-laplace requires positive rates, got lambda_left={lambda_left}, lambda_right={lambda_right}"
                )
            },
        )?;
        let norm = lambda_left * lambda_right / (lambda_left + lambda_right);
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::NonNormalizable(format!(
                "unbalanced-laplace rates {lambda_left}, {lambda_right} overflow the normalization"
            )));
        }
        let weight_left = norm / lambda_left;
        let weight_right = norm / lambda_right;
        let mean = weight_right / lambda_right - weight_left / lambda_left;
        let second_moment =
            2.0 * (weight_left / (lambda_left * lambda_left) + weight_right / (lambda_right * lambda_right));
        Ok(Self {
            kind: DensityKind::UnbalancedLaplace { lambda_left, lambda_right },
            support: Interval::support(f64::NEG_INFINITY, f64::INFINITY)?,
            truncated: Interval::new(-LN_TAIL / lambda_left, LN_TAIL / lambda_right)?,
            mean,
            variance: second_moment - mean * mean,
            mode: 0.0,
            peak: norm,
            norm,
        })
    }

    pub fn rayleigh(sigma: f64) -> Result<Self> {
        require(sigma.is_finite() && sigma > 0.0, || {
            format!("rayleigh requires sigma > 0, got {sigma}")
        })?;
        // Solve u·exp((1-u²)/2) = 1e-16 for the truncation point u·sigma.
        let mut u = (1.0 + 2.0 * LN_TAIL).sqrt();
        for _ in 0..4 {
            u = (1.0 + 2.0 * LN_TAIL + 2.0 * u.ln()).sqrt();
        }
        Ok(Self {
            kind: DensityKind::Rayleigh { sigma },
            support: Interval::support(0.0, f64::INFINITY)?,
            truncated: Interval::new(0.0, sigma * u)?,
            mean: sigma * (std::f64::consts::PI / 2.0).sqrt(),
            variance: (2.0 - std::f64::consts::PI / 2.0) * sigma * sigma,
            mode: sigma,
            peak: (-0.5_f64).exp() / sigma,
            norm: 1.0,
        })
    }

    /// Triangular density on `[lo, hi]` with peak at `mode`, normalized
    /// to unit mass. Degenerate sides (`lo == mode` or `mode == hi`) give
    /// right- or left-triangle shapes.
    pub fn triangular(lo: f64, mode: f64, hi: f64) -> Result<Self> {
        require(
            lo.is_finite() && mode.is_finite() && hi.is_finite() && lo <= mode && mode <= hi && lo < hi,
            || format!("triangular requires lo <= mode <= hi with lo < hi, got {lo}, {mode}, {hi}"),
        )?;
        let support = Interval::new(lo, hi)?;
        let mut d = Self {
            kind: DensityKind::Triangular { lo, mode, hi },
            support,
            truncated: support,
            mean: 0.0,
            variance: 0.0,
            mode,
            peak: 2.0 / (hi - lo),
            norm: 1.0,
        };
        let (mean, variance) = d.moments_by_quadrature();
        d.mean = mean;
        d.variance = variance;
        Ok(d)
    }

    /// Patchwork of two circular arcs: a quarter circle of radius
    /// `r_left` on `[-r_left, 0]` and an arc of radius `r_right` lifted
    /// by `r_left - r_right` on `[0, r_right]`, renormalized to unit
    /// mass. Requires `r_left >= r_right` so the lift is nonnegative.
    pub fn circular_arc(r_left: f64, r_right: f64) -> Result<Self> {
        require(
            r_left.is_finite() && r_right.is_finite() && r_right > 0.0 && r_left >= r_right,
            || format!("circular-arc requires r_left >= r_right > 0, got r_left={r_left}, r_right={r_right}"),
        )?;
        let lift = r_left - r_right;
        let total = FRAC_PI_4 * r_left * r_left + lift * r_right + FRAC_PI_4 * r_right * r_right;
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::NonNormalizable(format!(
                "circular-arc radii {r_left}, {r_right} give area {total}"
            )));
        }
        let support = Interval::new(-r_left, r_right)?;
        let mut d = Self {
            kind: DensityKind::CircularArc { r_left, r_right },
            support,
            truncated: support,
            mean: 0.0,
            variance: 0.0,
            mode: 0.0,
            peak: r_left / total,
            norm: 1.0 / total,
        };
        let (mean, variance) = d.moments_by_quadrature();
        d.mean = mean;
        d.variance = variance;
        Ok(d)
    }

    /// Builds a density from its JSON configuration,
    /// `{"kind": "<identifier>", "params": {<name>: <number>, ...}}`.
    /// Unknown keys are rejected at both levels.
    pub fn from_config_json(text: &str) -> Result<Self> {
        let config: DensityConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.build()
    }

    /// Catalog identifier, matching the JSON `kind` field.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            DensityKind::Uniform { .. } => "uniform",
            DensityKind::Exponential { .. } => "exponential",
            DensityKind::Gaussian { .. } => "gaussian",
            DensityKind::Laplace { .. } => "laplace",
            DensityKind::UnbalancedLaplace { .. } => "unbalanced-laplace",
            DensityKind::Rayleigh { .. } => "rayleigh",
            DensityKind::Triangular { .. } => "triangular",
            DensityKind::CircularArc { .. } => "circular-arc",
        }
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn mode(&self) -> f64 {
        self.mode
    }

    /// pdf value at the mode.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    /// Declared support; may be unbounded on either side.
    pub fn support(&self) -> Interval {
        self.support
    }

    /// Finite interval outside which the pdf is below `1e-16` of the
    /// peak; quadrature and scan clipping operate inside it.
    pub fn truncated_support(&self) -> Interval {
        self.truncated
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if !self.support.contains(x) {
            return 0.0;
        }
        match self.kind {
            DensityKind::Uniform { .. } => self.peak,
            DensityKind::Exponential { lambda } => lambda * (-lambda * x).exp(),
            DensityKind::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                (-0.5 * z * z).exp() / (sigma * SQRT_2PI)
            }
            DensityKind::Laplace { mu, b } => 0.5 / b * (-(x - mu).abs() / b).exp(),
            DensityKind::UnbalancedLaplace { lambda_left, lambda_right } => {
                if x <= 0.0 {
                    self.norm * (lambda_left * x).exp()
                } else {
                    self.norm * (-lambda_right * x).exp()
                }
            }
            DensityKind::Rayleigh { sigma } => {
                let s2 = sigma * sigma;
                x / s2 * (-0.5 * x * x / s2).exp()
            }
            DensityKind::Triangular { lo, mode, hi } => {
                if x <= mode {
                    if mode > lo {
                        self.peak * (x - lo) / (mode - lo)
                    } else {
                        self.peak
                    }
                } else if hi > mode {
                    self.peak * (hi - x) / (hi - mode)
                } else {
                    self.peak
                }
            }
            DensityKind::CircularArc { r_left, r_right } => {
                let shape = if x <= 0.0 {
                    (r_left * r_left - x * x).max(0.0).sqrt()
                } else {
                    (r_left - r_right) + (r_right * r_right - x * x).max(0.0).sqrt()
                };
                self.norm * shape
            }
        }
    }

    /// Natural log of the pdf; `-inf` outside the support.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        if !self.support.contains(x) {
            return f64::NEG_INFINITY;
        }
        match self.kind {
            DensityKind::Exponential { lambda } => lambda.ln() - lambda * x,
            DensityKind::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                -0.5 * z * z - (sigma * SQRT_2PI).ln()
            }
            DensityKind::Laplace { mu, b } => -(x - mu).abs() / b - (2.0 * b).ln(),
            DensityKind::UnbalancedLaplace { lambda_left, lambda_right } => {
                if x <= 0.0 {
                    self.norm.ln() + lambda_left * x
                } else {
                    self.norm.ln() - lambda_right * x
                }
            }
            _ => self.pdf(x).ln(),
        }
    }

    /// Cumulative distribution; clamps to 0 and 1 outside the support.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.support.lo() {
            return 0.0;
        }
        if x >= self.support.hi() {
            return 1.0;
        }
        match self.kind {
            DensityKind::Uniform { lo, hi } => (x - lo) / (hi - lo),
            DensityKind::Exponential { lambda } => -(-lambda * x).exp_m1(),
            DensityKind::Gaussian { mu, sigma } => {
                let z = (x - mu) / (sigma * std::f64::consts::SQRT_2);
                0.5 * libm::erfc(-z)
            }
            DensityKind::Laplace { mu, b } => {
                if x < mu {
                    0.5 * ((x - mu) / b).exp()
                } else {
                    1.0 - 0.5 * ((mu - x) / b).exp()
                }
            }
            DensityKind::UnbalancedLaplace { lambda_left, lambda_right } => {
                if x <= 0.0 {
                    self.norm / lambda_left * (lambda_left * x).exp()
                } else {
                    1.0 - self.norm / lambda_right * (-lambda_right * x).exp()
                }
            }
            DensityKind::Rayleigh { sigma } => {
                let s2 = sigma * sigma;
                -(-0.5 * x * x / s2).exp_m1()
            }
            DensityKind::Triangular { lo, mode, hi } => {
                let width = hi - lo;
                if x <= mode {
                    if mode > lo {
                        (x - lo) * (x - lo) / (width * (mode - lo))
                    } else {
                        0.0
                    }
                } else if hi > mode {
                    1.0 - (hi - x) * (hi - x) / (width * (hi - mode))
                } else {
                    1.0
                }
            }
            DensityKind::CircularArc { r_left, r_right } => {
                let quarter_left = FRAC_PI_4 * r_left * r_left;
                let raw = if x <= 0.0 {
                    arc_antiderivative(x, r_left) + quarter_left
                } else {
                    quarter_left + (r_left - r_right) * x + arc_antiderivative(x, r_right)
                };
                (raw * self.norm).clamp(0.0, 1.0)
            }
        }
    }

    /// Inverse cdf for `p` strictly inside `(0, 1)`. The result satisfies
    /// `|cdf(quantile(p)) - p| <= QUANTILE_TOL`; kinds without a
    /// closed-form inverse fall back on bracketed bisection refined by
    /// Newton steps with the pdf as derivative.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(match self.kind {
            DensityKind::Uniform { lo, hi } => lo + p * (hi - lo),
            DensityKind::Exponential { lambda } => -(-p).ln_1p() / lambda,
            DensityKind::Gaussian { mu, sigma } => {
                let guess = mu + sigma * normal_quantile_seed(p);
                numeric::invert_monotone(
                    |x| self.cdf(x),
                    |x| self.pdf(x),
                    p,
                    self.truncated.lo(),
                    self.truncated.hi(),
                    guess,
                    1e-15,
                )
            }
            DensityKind::Laplace { mu, b } => {
                if p < 0.5 {
                    mu + b * (2.0 * p).ln()
                } else {
                    mu - b * (2.0 * (1.0 - p)).ln()
                }
            }
            DensityKind::UnbalancedLaplace { lambda_left, lambda_right } => {
                let weight_left = self.norm / lambda_left;
                if p <= weight_left {
                    (p / weight_left).ln() / lambda_left
                } else {
                    let weight_right = self.norm / lambda_right;
                    -((1.0 - p) / weight_right).ln() / lambda_right
                }
            }
            DensityKind::Rayleigh { sigma } => sigma * (-2.0 * (-p).ln_1p()).sqrt(),
            DensityKind::Triangular { lo, mode, hi } => {
                let width = hi - lo;
                let split = (mode - lo) / width;
                if p <= split {
                    lo + (p * width * (mode - lo)).sqrt()
                } else {
                    hi - ((1.0 - p) * width * (hi - mode)).sqrt()
                }
            }
            DensityKind::CircularArc { .. } => numeric::invert_monotone(
                |x| self.cdf(x),
                |x| self.pdf(x),
                p,
                self.support.lo(),
                self.support.hi(),
                f64::NAN,
                1e-15,
            ),
        })
    }

    /// Probability mass of a finite interval, `cdf(hi) - cdf(lo)`.
    pub fn mass(&self, interval: &Interval) -> f64 {
        (self.cdf(interval.hi()) - self.cdf(interval.lo())).max(0.0)
    }

    /// Interior points where the pdf is continuous but not smooth;
    /// quadrature panels are split there.
    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        match self.kind {
            DensityKind::Laplace { mu, .. } => vec![mu],
            DensityKind::UnbalancedLaplace { .. } | DensityKind::CircularArc { .. } => vec![0.0],
            DensityKind::Triangular { mode, .. } => vec![mode],
            _ => Vec::new(),
        }
    }

    /// Adaptive quadrature of `g(x)·pdf(x)` over `[lo, hi]`, clipped to
    /// the truncated support and split at pdf breakpoints.
    pub fn integrate_weighted<G: Fn(f64) -> f64>(&self, lo: f64, hi: f64, g: G) -> f64 {
        let lo = lo.max(self.truncated.lo());
        let hi = hi.min(self.truncated.hi());
        if lo >= hi {
            return 0.0;
        }
        let mut cuts = vec![lo];
        for b in self.breakpoints() {
            if b > lo && b < hi {
                cuts.push(b);
            }
        }
        cuts.push(hi);
        let mut total = 0.0;
        for pair in cuts.windows(2) {
            total += numeric::integrate(
                |x| g(x) * self.pdf(x),
                pair[0],
                pair[1],
                QUAD_ABS_TOL,
                QUAD_REL_TOL,
            );
        }
        total
    }

    /// Checks concavity of the log-pdf by scanning second differences on
    /// an equispaced grid strictly inside the (truncated) support.
    pub fn verify_log_concavity(&self, grid_points: usize, tol: f64) -> Result<LogConcavityCheck> {
        let violation = log_concavity_violation(
            |x| self.ln_pdf(x),
            self.truncated.lo(),
            self.truncated.hi(),
            grid_points,
            tol,
        )?;
        Ok(LogConcavityCheck { is_log_concave: violation.is_none(), violation })
    }

    fn moments_by_quadrature(&self) -> (f64, f64) {
        let (lo, hi) = (self.truncated.lo(), self.truncated.hi());
        let mean = self.integrate_weighted(lo, hi, |x| x);
        let variance = self.integrate_weighted(lo, hi, |x| (x - mean) * (x - mean));
        (mean, variance)
    }
}

/// `∫ sqrt(R² - t²) dt` evaluated at `x`, zero at `x = 0`.
fn arc_antiderivative(x: f64, radius: f64) -> f64 {
    let clamped = (x / radius).clamp(-1.0, 1.0);
    0.5 * x * (radius * radius - x * x).max(0.0).sqrt()
        + 0.5 * radius * radius * clamped.asin()
}

/// Abramowitz–Stegun 26.2.23 rational seed for the standard normal
/// quantile (|error| < 4.5e-4); Newton polishing does the rest.
fn normal_quantile_seed(p: f64) -> f64 {
    let tail = p.min(1.0 - p);
    let t = (-2.0 * tail.ln()).sqrt();
    let z = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
    if p < 0.5 {
        -z
    } else {
        z
    }
}

/// Result of a log-concavity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct LogConcavityCheck {
    pub is_log_concave: bool,
    /// First triple whose second difference exceeds the tolerance.
    pub violation: Option<ConcavityViolation>,
}

/// A grid triple witnessing a convex kink in the log-pdf.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityViolation {
    pub xs: [f64; 3],
    pub second_difference: f64,
}

/// Scans second differences of `ln_pdf` on `grid_points` equispaced
/// points strictly inside `[lo, hi]`. Tolerance is relative to the local
/// log-pdf magnitude. Returns the first violating triple, or an error if
/// the function is not finite at an interior grid point.
pub fn log_concavity_violation<F: Fn(f64) -> f64>(
    ln_pdf: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    tol: f64,
) -> Result<Option<ConcavityViolation>> {
    if grid_points < 3 {
        return Err(Error::InvalidParameter(format!(
            "log-concavity scan needs at least 3 grid points, got {grid_points}"
        )));
    }
    let step = (hi - lo) / (grid_points + 1) as f64;
    let xs: Vec<f64> = (1..=grid_points).map(|i| lo + step * i as f64).collect();
    let mut values = Vec::with_capacity(grid_points);
    for &x in &xs {
        let v = ln_pdf(x);
        if !v.is_finite() {
            return Err(Error::SupportSample { x });
        }
        values.push(v);
    }
    for i in 1..grid_points - 1 {
        let (l0, l1, l2) = (values[i - 1], values[i], values[i + 1]);
        let d2 = l0 - 2.0 * l1 + l2;
        let scale = 1.0_f64.max(l0.abs()).max(l1.abs()).max(l2.abs());
        if d2 > tol * scale {
            return Ok(Some(ConcavityViolation {
                xs: [xs[i - 1], xs[i], xs[i + 1]],
                second_difference: d2,
            }));
        }
    }
    Ok(None)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityConfig {
    kind: String,
    params: BTreeMap<String, f64>,
}

impl DensityConfig {
    fn build(&self) -> Result<Density> {
        let p = |names: &[&str]| -> Result<Vec<f64>> {
            for key in self.params.keys() {
                if !names.contains(&key.as_str()) {
                    return Err(Error::Config(format!(
                        "unknown parameter {key:?} for density kind {:?}",
                        self.kind
                    )));
                }
            }
            names
                .iter()
                .map(|name| {
                    self.params.get(*name).copied().ok_or_else(|| {
                        Error::Config(format!(
                            "missing parameter {name:?} for density kind {:?}",
                            self.kind
                        ))
                    })
                })
                .collect()
        };
        match self.kind.as_str() {
            "uniform" => {
                let v = p(&["lo", "hi"])?;
                Density::uniform(v[0], v[1])
            }
            "exponential" => {
                let v = p(&["lambda"])?;
                Density::exponential(v[0])
            }
            "gaussian" => {
                let v = p(&["mu", "sigma"])?;
                Density::gaussian(v[0], v[1])
            }
            "laplace" => {
                let v = p(&["mu", "b"])?;
                Density::laplace(v[0], v[1])
            }
            "unbalanced-laplace" => {
                let v = p(&["lambda_left", "lambda_right"])?;
                Density::unbalanced_laplace(v[0], v[1])
            }
            "rayleigh" => {
                let v = p(&["sigma"])?;
                Density::rayleigh(v[0])
            }
            "triangular" => {
                let v = p(&["lo", "mode", "hi"])?;
                Density::triangular(v[0], v[1], v[2])
            }
            "circular-arc" => {
                let v = p(&["r_left", "r_right"])?;
                Density::circular_arc(v[0], v[1])
            }
            other => Err(Error::Config(format!(
                "unknown density kind {other:?}; expected one of uniform, exponential, gaussian, \
                 laplace, unbalanced-laplace, rayleigh, triangular, circular-arc"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::reference_catalog;

    const LN4: f64 = 1.386_294_361_119_890_6;

    #[test]
    fn uniform_moments_and_values() {
        let d = Density::uniform(0.0, 1.0).unwrap();
        assert_eq!(d.mean(), 0.5);
        assert!((d.variance() - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(d.mode(), 0.5);
        assert_eq!(d.pdf(0.5), 1.0);
        assert_eq!(d.pdf(1.5), 0.0);
        assert_eq!(d.cdf(0.0), 0.0);
        assert_eq!(d.quantile(0.3).unwrap(), 0.3);
        let iv = Interval::new(0.2, 0.7).unwrap();
        assert!((d.mass(&iv) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exponential_matches_closed_forms() {
        let d = Density::exponential(1.0).unwrap();
        assert_eq!(d.mean(), 1.0);
        assert_eq!(d.variance(), 1.0);
        assert_eq!(d.mode(), 0.0);
        // Oracle: pdf(x) = e^{-x}, cdf(x) = 1 - e^{-x}.
        assert!((d.pdf(LN4) - 0.25).abs() < 1e-15);
        assert!((d.cdf(LN4) - 0.75).abs() < 1e-15);
        assert!((d.quantile(0.75).unwrap() - LN4).abs() < 1e-14);
        assert!((d.mass(&Interval::new(0.0, LN4).unwrap()) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn gaussian_symmetry_and_center() {
        let d = Density::gaussian(0.0, 1.0).unwrap();
        assert!((d.pdf(-3.0) - d.pdf(3.0)).abs() < 1e-18);
        assert!((d.cdf(0.0) - 0.5).abs() < 1e-16);
        assert!(d.quantile(0.5).unwrap().abs() < 1e-14);
        // Phi(1) from the erfc route, against the textbook value.
        assert!((d.cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-14);
    }

    #[test]
    fn triangular_normalizes_and_mean_matches_closed_form() {
        let d = Density::triangular(-0.25, 0.0, 1.0).unwrap();
        let total = numeric::integrate(|x| d.pdf(x), -0.25, 1.0, 1e-12, 1e-12);
        assert!((total - 1.0).abs() < 1e-10);
        // Oracle: mean of a triangular density is (lo + mode + hi) / 3.
        assert!((d.mean() - 0.25).abs() < 1e-10);
        // Oracle: variance (a² + b² + c² - ab - ac - bc) / 18.
        let var = (0.0625 + 0.0 + 1.0 - 0.0 + 0.25 - 0.0) / 18.0;
        assert!((d.variance() - var).abs() < 1e-10);
        assert_eq!(d.peak(), 1.6);
    }

    #[test]
    fn unbalanced_laplace_weights_and_moments() {
        let d = Density::unbalanced_laplace(1.5, 0.3).unwrap();
        // Mass left of the mode is lambda_right / (lambda_left + lambda_right).
        assert!((d.cdf(0.0) - 0.3 / 1.8).abs() < 1e-15);
        // Quadrature oracle for the cached closed-form moments.
        let t = d.truncated_support();
        let mean = d.integrate_weighted(t.lo(), t.hi(), |x| x);
        let var = d.integrate_weighted(t.lo(), t.hi(), |x| (x - mean) * (x - mean));
        assert!((d.mean() - mean).abs() < 1e-8, "{} vs {mean}", d.mean());
        assert!((d.variance() - var).abs() < 1e-7, "{} vs {var}", d.variance());
    }

    #[test]
    fn circular_arc_geometry() {
        let d = Density::circular_arc(2.0, 1.0).unwrap();
        let s = d.support();
        assert_eq!((s.lo(), s.hi()), (-2.0, 1.0));
        assert_eq!(d.mode(), 0.0);
        assert_eq!(d.cdf(1.0), 1.0);
        assert_eq!(d.cdf(-2.0), 0.0);
        // Total area before normalization: pi + 1 + pi/4.
        let z = 1.0 + 1.25 * std::f64::consts::PI;
        assert!((d.pdf(0.0) - 2.0 / z).abs() < 1e-15);
        assert!((d.pdf(1.0) - 1.0 / z).abs() < 1e-15);
        let total = numeric::integrate(|x| d.pdf(x), -2.0, 1.0, 1e-12, 1e-12);
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rayleigh_basics() {
        let d = Density::rayleigh(8.0).unwrap();
        assert_eq!(d.mode(), 8.0);
        assert!((d.cdf(d.quantile(0.8).unwrap()) - 0.8).abs() < 1e-14);
        assert!((d.mean() - 8.0 * (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn constructor_rejections() {
        assert!(Density::uniform(1.0, 0.0).is_err());
        assert!(Density::uniform(0.0, 0.0).is_err());
        assert!(Density::exponential(0.0).is_err());
        assert!(Density::exponential(-1.0).is_err());
        assert!(Density::gaussian(0.0, 0.0).is_err());
        assert!(Density::laplace(0.0, -2.0).is_err());
        assert!(Density::unbalanced_laplace(0.0, 1.0).is_err());
        assert!(Density::rayleigh(f64::NAN).is_err());
        assert!(Density::triangular(0.0, 2.0, 1.0).is_err());
        assert!(Density::circular_arc(1.0, 2.0).is_err());
    }

    #[test]
    fn config_json_round_trips_and_rejects_unknowns() {
        let d = Density::from_config_json(r#"{"kind":"exponential","params":{"lambda":1}}"#).unwrap();
        assert_eq!(d.kind_name(), "exponential");
        let d = Density::from_config_json(
            r#"{"kind":"triangular","params":{"lo":-0.25,"mode":0,"hi":1}}"#,
        )
        .unwrap();
        assert_eq!(d.kind_name(), "triangular");

        assert!(Density::from_config_json(r#"{"kind":"normal","params":{}}"#).is_err());
        assert!(
            Density::from_config_json(r#"{"kind":"exponential","params":{"rate":1}}"#).is_err()
        );
        assert!(Density::from_config_json(
            r#"{"kind":"exponential","params":{"lambda":1},"extra":0}"#
        )
        .is_err());
        assert!(Density::from_config_json(r#"{"kind":"gaussian","params":{"mu":0}}"#).is_err());
    }

    #[test]
    fn every_catalog_member_integrates_to_one() {
        for (name, d) in reference_catalog() {
            let t = d.truncated_support();
            let total = numeric::integrate(|x| d.pdf(x), t.lo(), t.hi(), 1e-12, 1e-12);
            assert!((total - 1.0).abs() < 1e-8, "{name}: integral {total}");
        }
    }

    #[test]
    fn every_catalog_member_is_log_concave() {
        for (name, d) in reference_catalog() {
            let check = d.verify_log_concavity(1001, 1e-9).unwrap();
            assert!(check.is_log_concave, "{name}: {:?}", check.violation);
        }
    }

    #[test]
    fn bimodal_fixture_fails_log_concavity() {
        // Equal-weight mixture of two unit-variance normals; the valley
        // between the peaks makes the log-pdf convex there.
        let ln_pdf = |x: f64| {
            let a = (-0.5 * (x + 2.0) * (x + 2.0)).exp();
            let b = (-0.5 * (x - 2.0) * (x - 2.0)).exp();
            (0.5 * (a + b) / SQRT_2PI).ln()
        };
        let violation = log_concavity_violation(ln_pdf, -6.0, 6.0, 1001, 1e-9)
            .unwrap()
            .expect("mixture must violate log-concavity");
        assert!(violation.xs[1].abs() < 1.5, "violation near the valley, got {:?}", violation.xs);
        assert!(violation.second_difference > 0.0);
    }

    #[test]
    fn log_concavity_scan_validates_grid() {
        let d = Density::gaussian(0.0, 1.0).unwrap();
        assert!(d.verify_log_concavity(2, 1e-9).is_err());
    }

    #[test]
    fn symmetric_members_have_symmetric_pdfs() {
        let symmetric = ["uniform", "gaussian", "laplace"];
        let rng = crate::simulate::CounterRng::new(0x5E11);
        for (name, d) in reference_catalog() {
            if !symmetric.contains(&name) {
                continue;
            }
            let mode = d.mode();
            let half_span = 0.5 * d.truncated_support().len();
            for i in 0..100 {
                let t = rng.uniform(i) * half_span;
                let lhs = d.pdf(mode + t);
                let rhs = d.pdf(mode - t);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * lhs.max(rhs).max(1e-300),
                    "{name} asymmetric at t={t}"
                );
            }
        }
    }

    #[test]
    fn quantile_rejects_boundary_probabilities() {
        let d = Density::exponential(1.0).unwrap();
        assert!(d.quantile(0.0).is_err());
        assert!(d.quantile(1.0).is_err());
        assert!(d.quantile(-0.1).is_err());
        assert!(d.quantile(f64::NAN).is_err());
    }

    #[test]
    fn quantile_meets_probability_tolerance_on_catalog() {
        for (name, d) in reference_catalog() {
            for i in 1..40 {
                let p = i as f64 / 40.0;
                let x = d.quantile(p).unwrap();
                assert!(
                    (d.cdf(x) - p).abs() <= QUANTILE_TOL,
                    "{name}: |cdf(quantile({p})) - {p}| = {}",
                    (d.cdf(x) - p).abs()
                );
            }
        }
    }

    #[test]
    fn mass_of_degenerate_interval_is_zero() {
        for (_, d) in reference_catalog() {
            let x = d.mode();
            assert_eq!(d.mass(&Interval::point(x).unwrap()), 0.0);
        }
    }

    #[test]
    fn cdf_saturates_at_support_ends() {
        for (name, d) in reference_catalog() {
            let s = d.support();
            if s.lo().is_finite() {
                assert_eq!(d.cdf(s.lo()), 0.0, "{name}");
            }
            if s.hi().is_finite() {
                assert_eq!(d.cdf(s.hi()), 1.0, "{name}");
            }
            assert_eq!(d.cdf(-1e300), 0.0, "{name}");
            assert_eq!(d.cdf(1e300), 1.0, "{name}");
        }
    }

    #[test]
    fn truncated_support_cuts_negligible_mass() {
        for (name, d) in reference_catalog() {
            let t = d.truncated_support();
            let outside = d.cdf(t.lo()) + (1.0 - d.cdf(t.hi()));
            assert!(outside < 1e-12, "{name}: truncated mass {outside}");
            assert!(d.pdf(t.lo()) <= 1e-15 * d.peak() || t.lo() == d.support().lo());
            assert!(d.pdf(t.hi()) <= 1e-15 * d.peak() || t.hi() == d.support().hi());
        }
    }
}
