//! Reference parameterizations of the density catalog.
//!
//! These are the instances used by the sweep tables, the acceptance
//! suite and the documentation examples: the three asymmetric shapes
//! (unbalanced Laplace, circular-arc patchwork, triangular) carry the
//! parameters of the empirical study they reproduce.

use crate::density::Density;

/// All eight catalog members under their canonical parameters, keyed by
/// the JSON kind identifier.
pub fn reference_catalog() -> Vec<(&'static str, Density)> {
    vec![
        ("uniform", Density::uniform(0.0, 1.0).expect("valid")),
        ("exponential", Density::exponential(1.0).expect("valid")),
        ("gaussian", Density::gaussian(0.0, 1.0).expect("valid")),
        ("laplace", Density::laplace(0.0, 1.0).expect("valid")),
        (
            "unbalanced-laplace",
            Density::unbalanced_laplace(1.5, 0.3).expect("valid"),
        ),
        ("rayleigh", Density::rayleigh(8.0).expect("valid")),
        ("triangular", Density::triangular(-0.25, 0.0, 1.0).expect("valid")),
        ("circular-arc", Density::circular_arc(2.0, 1.0).expect("valid")),
    ]
}

/// The three asymmetric densities of the heuristic-family comparison.
pub fn asymmetric_study_catalog() -> Vec<(&'static str, Density)> {
    reference_catalog()
        .into_iter()
        .filter(|(name, _)| {
            matches!(*name, "unbalanced-laplace" | "circular-arc" | "triangular")
        })
        .collect()
}
