use rand::Rng;

use super::GridFunction;
use crate::error::Result;
use crate::profiles::ModelParams;

/// Families of random test functions in the discrete jump space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomShape {
    /// Signed sums of Gaussians with a matched jump at the origin.
    General,
    /// Like `General` but nonnegative.
    Nonnegative,
    /// Nonnegative and vanishing on both sides of the origin.
    VanishingAtOrigin,
}

fn gaussian_sum<R: Rng>(rng: &mut R, reach: f64, signed: bool) -> Vec<(f64, f64, f64)> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| {
            let amp = if signed { rng.gen_range(-2.0..2.0) } else { rng.gen_range(0.2..2.0) };
            (amp, rng.gen_range(-reach..reach), rng.gen_range(0.3..3.0))
        })
        .collect()
}

fn eval(terms: &[(f64, f64, f64)], x: f64) -> f64 {
    terms.iter().map(|&(a, c, w)| a * (-((x - c) / w).powi(2)).exp()).sum()
}

/// A random `C¹` function supported in `|x| < 0.45 X`, with the jump condition
/// satisfied exactly.
pub fn random_bump_function<R: Rng>(
    params: &ModelParams,
    half_extent: f64,
    cells: usize,
    rng: &mut R,
    shape: RandomShape,
) -> Result<GridFunction> {
    let reach = half_extent / 4.0;
    let signed = shape == RandomShape::General;
    let fl = gaussian_sum(rng, reach, signed);
    let fr = gaussian_sum(rng, reach, signed);
    let w0 = rng.gen_range(0.3..2.0);
    let w1 = rng.gen_range(0.2..2.0);
    // support inside |x| < 0.45 X so that every level set fits on one half-line
    let x2 = (0.45 * half_extent).powi(2);
    let window = move |x: f64| (1.0 - x * x / x2).max(0.0).powi(2);
    let notch = move |x: f64| x * x / (x * x + w1 * w1);
    let tau = params.tau;

    let mut g = if shape == RandomShape::VanishingAtOrigin {
        GridFunction::from_fns(
            *params,
            half_extent,
            cells,
            |x| eval(&fl, x) * notch(x) * window(x),
            |x| eval(&fr, x) * notch(x) * window(x),
        )?
    } else {
        let u0 = eval(&fl, 0.0);
        GridFunction::from_fns(
            *params,
            half_extent,
            cells,
            |x| eval(&fl, x) * window(x),
            |x| {
                if x == 0.0 {
                    tau * u0
                } else {
                    (tau * u0 * (-(x / w0).powi(2)).exp() + eval(&fr, x) * notch(x)) * window(x)
                }
            },
        )?
    };
    g.left[0] = 0.0;
    let n = g.cells();
    g.right[n] = 0.0;
    Ok(g)
}
