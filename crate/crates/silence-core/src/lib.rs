//! Silence-interval design for probabilistic sampling of scalar random
//! variables.
//!
//! A sensor watching an IID scalar signal stays quiet whenever the value
//! falls inside a prescribed *silence interval* and transmits the exact
//! value otherwise. Subject to a chance constraint `P[X ∈ S] ≥ η` on the
//! silence probability, the interval is chosen to minimize the mean
//! squared (or mean absolute) estimation error at the receiver, which
//! sees either the exact sample or must fall back on a fixed estimate.
//!
//! The crate provides:
//!
//! * [`density`] — a catalog of scalar log-concave densities with
//!   pdf/cdf/quantile/moment services and a log-concavity checker;
//! * [`conditional`] — conditional statistics of a density restricted to
//!   an interval, and the sliding family of constant-mass intervals;
//! * [`centering`] — the centering fixed-point iteration for the optimal
//!   silence interval, plus an independent brute-force scan;
//! * [`heuristics`] — four closed-form interval families (super-level,
//!   equal sides, equal areas, mode-as-conditional-mean) and sweep
//!   tables comparing them against the optimum;
//! * [`bounds`] — Gauss-inequality rate and distortion bounds and the
//!   exact rate–distortion curves they are compared against;
//! * [`simulate`] — a seeded, counter-based Monte-Carlo harness that
//!   validates the analytic numbers empirically.

pub mod bounds;
pub mod catalog;
pub mod centering;
pub mod conditional;
pub mod density;
mod fmt;
pub mod heuristics;
pub mod interval;
pub mod numeric;
pub mod simulate;

pub use density::Density;
pub use interval::{DistortionKind, Interval};

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor precondition failed (non-positive scale, lo > hi, ...).
    InvalidParameter(String),
    /// A density configuration cannot be normalized to unit mass.
    NonNormalizable(String),
    /// Probability argument outside the open interval (0, 1).
    ProbabilityOutOfRange(f64),
    /// The interval carries less probability mass than the mass floor.
    NullMassInterval { lo: f64, hi: f64, mass: f64 },
    /// The requested silence mass cannot be reached.
    InfeasibleEta { eta: f64, available: f64 },
    /// Endpoints out of order or not finite where finiteness is required.
    InvalidInterval { lo: f64, hi: f64 },
    /// The density vanishes on an interior grid point of a log-concavity
    /// scan even though the support claims positivity there.
    SupportSample { x: f64 },
    /// Malformed density configuration.
    Config(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonNormalizable(msg) => write!(f, "non-normalizable density: {msg}"),
            Error::ProbabilityOutOfRange(p) => {
                write!(f, "probability {p} outside the open interval (0, 1)")
            }
            Error::NullMassInterval { lo, hi, mass } => {
                write!(f, "interval [{lo}, {hi}] has null probability mass {mass}")
            }
            Error::InfeasibleEta { eta, available } => {
                write!(f, "silence mass {eta} infeasible ({available} available)")
            }
            Error::InvalidInterval { lo, hi } => write!(f, "invalid interval [{lo}, {hi}]"),
            Error::SupportSample { x } => {
                write!(f, "density vanishes at interior support point {x}")
            }
            Error::Config(msg) => write!(f, "bad density configuration: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
