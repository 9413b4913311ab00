//! Numerical ground truth: adaptive quadrature, the incomplete profile
//! integral `I(a, b) = ∫_a^b (1 − t²)^{1/σ − 1} dt`, and central differences.
//!
//! Everything else in the crate is checked against these routines, so they
//! are kept free of any dependency on the closed-form solvers.

use crate::error::{Error, Result};

/// Tolerance settings for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub max_depth: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl Quadrature {
    pub fn new(abs_tol: f64, max_depth: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || max_depth == 0 {
            return Err(Error::Domain(format!(
                "quadrature needs abs_tol > 0 and max_depth >= 1 (got {abs_tol}, {max_depth})"
            )));
        }
        Ok(Self { abs_tol, max_depth })
    }
}

// The interval is cut into this many panels before adaptive refinement so a
// narrow peak cannot hide between the first three Simpson nodes.
const INITIAL_PANELS: usize = 16;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// The tolerance is split evenly over the initial panels and halved at each
/// bisection; each accepted panel carries the Richardson correction.
pub fn integrate<F>(f: F, a: f64, b: f64, q: Quadrature) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a <= b) {
        return Err(Error::Domain(format!("integration bounds out of order: [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };

    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = q.abs_tol / INITIAL_PANELS as f64;
    let mut total = 0.0;
    let mut lo = a;
    let mut f_lo = eval(lo)?;
    for k in 0..INITIAL_PANELS {
        let hi = if k + 1 == INITIAL_PANELS { b } else { a + (k + 1) as f64 * width };
        let mid = 0.5 * (lo + hi);
        let f_mid = eval(mid)?;
        let f_hi = eval(hi)?;
        let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
        total += simpson_step(&eval, lo, mid, hi, f_lo, f_mid, f_hi, whole, panel_tol, q.max_depth)
            .map_err(|e| match e {
                Error::DepthExceeded { a, b, .. } => Error::DepthExceeded { a, b, max_depth: q.max_depth },
                other => other,
            })?;
        lo = hi;
        f_lo = f_hi;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<G>(
    eval: &G,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    // Floating point cannot split the panel further.
    if lm <= a || rm >= b || m <= lm || m >= rm {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::DepthExceeded { a, b, max_depth: depth });
    }
    let l = simpson_step(eval, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_step(eval, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Central difference `(f(x+h) − f(x−h)) / 2h`.
pub fn fd_derivative<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(h > 0.0) {
        return Err(Error::Domain(format!("finite-difference step must be positive, got {h}")));
    }
    let fp = f(x + h);
    if !fp.is_finite() {
        return Err(Error::NonFinite { at: x + h });
    }
    let fm = f(x - h);
    if !fm.is_finite() {
        return Err(Error::NonFinite { at: x - h });
    }
    Ok((fp - fm) / (2.0 * h))
}

/// Half-width beyond which a sech-power profile of frequency `omega` is
/// below 1e-17 of its peak.
pub fn tail_cutoff(sigma: f64, omega: f64) -> f64 {
    40.0 / (sigma * omega.sqrt())
}

const PROFILE_QUAD: Quadrature = Quadrature {
    abs_tol: 1e-15,
    max_depth: 50,
};

// Switch point between the direct integrand and the endpoint substitution.
const SPLIT: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma must lie in (0, 2], got {sigma}")))
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("profile integral bound {x} outside [-1, 1]")))
    }
}

/// `∫_0^x (1 − t²)^{1/σ − 1} dt` for `0 ≤ x ≤ 1/√2`, where the integrand is smooth.
fn core_part(sigma: f64, x: f64) -> Result<f64> {
    let c = 1.0 / sigma - 1.0;
    integrate(|t| (1.0 - t * t).powf(c), 0.0, x, PROFILE_QUAD)
}

/// `∫_x^1 (1 − t²)^{1/σ − 1} dt` for `1/√2 ≤ x ≤ 1`.
///
/// With `1 − t = s^m`, `m = 4σ`, the integrand becomes `m s³ (2 − s^m)^{1/σ−1}`,
/// which is regular at `s = 0` for every `σ ∈ (0, 2]`.
fn endpoint_part(sigma: f64, x: f64) -> Result<f64> {
    let c = 1.0 / sigma - 1.0;
    let m = 4.0 * sigma;
    let s_max = (1.0 - x).max(0.0).powf(1.0 / m);
    integrate(
        |s| {
            let sm = s.powf(m);
            m * s * s * s * (2.0 - sm).powf(c)
        },
        0.0,
        s_max,
        PROFILE_QUAD,
    )
}

/// Upper tail `I(x, 1)` of the profile integral, free of cancellation near `x = ±1`.
pub fn profile_tail(sigma: f64, x: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_unit(x)?;
    if x >= SPLIT {
        endpoint_part(sigma, x)
    } else if x >= 0.0 {
        Ok(endpoint_part(sigma, SPLIT)? + core_part(sigma, SPLIT)? - core_part(sigma, x)?)
    } else if x > -SPLIT {
        Ok(endpoint_part(sigma, SPLIT)? + core_part(sigma, SPLIT)? + core_part(sigma, -x)?)
    } else {
        let half = endpoint_part(sigma, SPLIT)? + core_part(sigma, SPLIT)?;
        Ok(2.0 * half - endpoint_part(sigma, -x)?)
    }
}

/// Full profile integral `I(−1, 1)`.
pub fn profile_integral_full(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(2.0 * (endpoint_part(sigma, SPLIT)? + core_part(sigma, SPLIT)?))
}

/// `I(a, b) = ∫_a^b (1 − t²)^{1/σ − 1} dt`. Reversed bounds give the
/// negated value.
pub fn profile_integral(sigma: f64, a: f64, b: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_unit(a)?;
    check_unit(b)?;
    Ok(profile_tail(sigma, a)? - profile_tail(sigma, b)?)
}
