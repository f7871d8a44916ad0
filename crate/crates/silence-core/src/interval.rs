//! Closed intervals on the real line and the two distortion measures.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A closed interval `[lo, hi]`.
///
/// Regular intervals have finite endpoints. Density supports may be
/// unbounded on either side and are built with [`Interval::support`];
/// everything else goes through [`Interval::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Finite interval with `lo ≤ hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Support descriptor; endpoints may be `±∞` but not NaN.
    pub fn support(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Intersection, or `None` when the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}

/// Distortion measure applied to the estimation error under silence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistortionKind {
    /// `δ(e) = e²`; the best estimate under silence is the conditional mean.
    #[serde(rename = "mse")]
    SquaredError,
    /// `δ(e) = |e|`; the best estimate under silence is the conditional median.
    #[serde(rename = "mae")]
    AbsoluteError,
}

impl DistortionKind {
    pub fn penalty(&self, error: f64) -> f64 {
        match self {
            DistortionKind::SquaredError => error * error,
            DistortionKind::AbsoluteError => error.abs(),
        }
    }

    /// Token used on the command line and in serialized summaries.
    pub fn token(&self) -> &'static str {
        match self {
            DistortionKind::SquaredError => "mse",
            DistortionKind::AbsoluteError => "mae",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mse" => Ok(DistortionKind::SquaredError),
            "mae" => Ok(DistortionKind::AbsoluteError),
            other => Err(Error::Config(format!(
                "unknown distortion kind {other:?}; expected \"mse\" or \"mae\""
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_reversed_and_non_finite() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 0.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        assert!(Interval::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn support_allows_infinite_ends() {
        let s = Interval::support(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!(!s.is_finite());
        assert!(s.contains(1e300));
        assert!(Interval::support(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn intersect_clips_and_detects_disjoint() {
        let a = Interval::new(0.0, 2.0).unwrap();
        let b = Interval::new(1.0, 3.0).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!((c.lo(), c.hi()), (1.0, 2.0));
        assert!(a.intersect(&Interval::new(5.0, 6.0).unwrap()).is_none());
    }

    #[test]
    fn distortion_tokens_round_trip() {
        for kind in [DistortionKind::SquaredError, DistortionKind::AbsoluteError] {
            assert_eq!(DistortionKind::parse(kind.token()).unwrap(), kind);
        }
        assert!(DistortionKind::parse("l2").is_err());
    }

    #[test]
    fn penalties() {
        assert_eq!(DistortionKind::SquaredError.penalty(-3.0), 9.0);
        assert_eq!(DistortionKind::AbsoluteError.penalty(-3.0), 3.0);
    }
}
