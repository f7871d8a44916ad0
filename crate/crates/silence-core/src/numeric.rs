//! Numerical workhorses: adaptive quadrature, bracketed root finding and
//! golden-section minimization.
//!
//! Everything here is deterministic and allocation-light; the rest of the
//! crate builds its tolerance contracts on top of these routines.

/// Gauss–Kronrod 7–15 abscissae on `[0, 1]` side of the interval
/// (QUADPACK `qk15` constants).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];

/// Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss-7 weights for the even-indexed abscissae of [`XGK`].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod 15-point pass; returns the Kronrod estimate and a
/// conservative error estimate `|K15 − G7|`.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Adaptive Gauss–Kronrod integration of `f` over `[lo, hi]`.
///
/// Panels are split until the local error estimate drops below the
/// absolute/relative tolerance pair, with the absolute budget halved at
/// each split. Subdivision depth is capped, so the routine always
/// terminates; on pathological integrands it returns its best estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    if lo >= hi {
        return 0.0;
    }
    const MAX_DEPTH: u32 = 52;
    let mut total = 0.0;
    let mut stack: Vec<(f64, f64, f64, u32)> = vec![(lo, hi, abs_tol.max(1e-300), 0)];
    while let Some((a, b, budget, depth)) = stack.pop() {
        let (value, err) = kronrod15(&f, a, b);
        if err <= budget.max(rel_tol * value.abs()) || depth >= MAX_DEPTH {
            total += value;
        } else {
            let mid = 0.5 * (a + b);
            let half_budget = 0.5 * budget;
            stack.push((a, mid, half_budget, depth + 1));
            stack.push((mid, b, half_budget, depth + 1));
        }
    }
    total
}

/// Solve `f(x) = target` for a nondecreasing `f` on the bracket
/// `[lo, hi]`, using bisection safeguarded Newton steps with `df` as the
/// derivative. Stops once `|f(x) − target| ≤ f_tol` or the bracket is
/// exhausted. `guess`, when finite and inside the bracket, seeds the
/// first Newton step.
pub fn invert_monotone<F, D>(f: F, df: D, target: f64, lo: f64, hi: f64, guess: f64, f_tol: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut x = if guess.is_finite() && guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..200 {
        let fx = f(x) - target;
        if fx.abs() <= f_tol {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = df(x);
        let newton = x - fx / slope;
        x = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * (x.abs() + 1.0) {
            return x;
        }
    }
    x
}

/// Smallest `r ∈ [0, hi]` with `f(r) ≥ target` for a nondecreasing,
/// continuous `f`; plain bisection on `f(r) − target` down to `f_tol`.
///
/// Assumes `f(hi) ≥ target` (callers expand the bracket beforehand).
pub fn smallest_reaching<F: Fn(f64) -> f64>(f: F, target: f64, hi: f64, f_tol: f64) -> f64 {
    if f(0.0) >= target {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gap = f(mid) - target;
        if gap >= 0.0 {
            hi = mid;
            if gap <= f_tol {
                break;
            }
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * (hi.abs() + 1.0) {
            break;
        }
    }
    hi
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[lo, hi]`.
///
/// Returns the best abscissa/value pair among all evaluated points, so a
/// boundary minimum is reported exactly even though the interior probes
/// never quite reach it.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, x_tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_GOLDEN * (b - a);
    let mut x2 = a + INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let f_lo = f(lo);
    let f_hi = f(hi);
    let mut best = if f_lo <= f_hi { (lo, f_lo) } else { (hi, f_hi) };
    while b - a > x_tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_GOLDEN * (b - a);
            f2 = f(x2);
        }
        let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}
