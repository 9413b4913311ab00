//! Finite-difference discretization of the energy on the jump space.
//!
//! A [`GridFunction`] stores `N+1` samples on `[−X, 0]` (the last one is
//! `u(0⁻)`) and `N+1` samples on `[0, X]` (the first one is `u(0⁺)`).
//! Differences never straddle the origin, and `u(0⁺) = τ u(0⁻)` is kept as a
//! constraint, so the origin carries a single degree of freedom.

mod competitor;
mod gn;
mod minimize;
mod random;
mod rearrange;

pub use competitor::{subcritical_competitor, Competitor};
pub use gn::{gn_quotient, maximize_gn_quotient, GnAscentOptions, GnAscentReport};
pub use minimize::{minimize_energy, MinimizationReport, MinimizeOptions};
pub use random::{random_bump_function, RandomShape};
pub use rearrange::rearrange;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::ModelParams;
use crate::stationary::StationaryState;

pub const DEFAULT_HALF_EXTENT: f64 = 30.0;
pub const DEFAULT_CELLS: usize = 4000;

const JUMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub h: f64,
    pub half_extent: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub params: ModelParams,
}

impl GridFunction {
    pub fn zeros(params: ModelParams, half_extent: f64, cells: usize) -> Result<Self> {
        params.validate()?;
        if !(half_extent > 0.0) || !half_extent.is_finite() || cells < 2 {
            return Err(Error::Domain(format!(
                "grid needs X > 0 and at least 2 cells, got X = {half_extent}, N = {cells}"
            )));
        }
        Ok(Self {
            h: half_extent / cells as f64,
            half_extent,
            left: vec![0.0; cells + 1],
            right: vec![0.0; cells + 1],
            params,
        })
    }

    /// Samples `f_left` on `[−X, 0]` and `f_right` on `[0, X]`; the two
    /// origin values must already satisfy the jump condition.
    pub fn from_fns<L, R>(params: ModelParams, half_extent: f64, cells: usize, f_left: L, f_right: R) -> Result<Self>
    where
        L: Fn(f64) -> f64,
        R: Fn(f64) -> f64,
    {
        let mut g = Self::zeros(params, half_extent, cells)?;
        for i in 0..=cells {
            g.left[i] = f_left(g.left_x(i));
            g.right[i] = f_right(g.right_x(i));
        }
        g.validate()?;
        Ok(g)
    }

    /// Builds from raw sample vectors, checking lengths, finiteness and the jump.
    pub fn from_samples(params: ModelParams, half_extent: f64, left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        if left.len() != right.len() || left.len() < 3 {
            return Err(Error::Domain("left and right need equal length >= 3".into()));
        }
        let mut g = Self::zeros(params, half_extent, left.len() - 1)?;
        g.left = left;
        g.right = right;
        g.validate()?;
        Ok(g)
    }

    pub fn sample_state(state: &StationaryState, half_extent: f64, cells: usize) -> Result<Self> {
        let (l, r) = (state.left_profile(), state.right_profile());
        Self::from_fns(state.params, half_extent, cells, |x| l.value(x), |x| r.value(x))
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.len() != self.right.len() || self.left.len() < 3 {
            return Err(Error::Domain("left and right need equal length >= 3".into()));
        }
        if let Some((i, v)) = self.left.iter().chain(&self.right).enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!("sample {i} is not finite ({v})")));
        }
        let res = self.jump_residual();
        if res.abs() > JUMP_TOL * (1.0 + self.right[0].abs()) {
            return Err(Error::Domain(format!("jump condition violated by {res}")));
        }
        Ok(())
    }

    pub fn cells(&self) -> usize {
        self.left.len() - 1
    }

    pub fn left_x(&self, i: usize) -> f64 {
        -self.half_extent + i as f64 * self.h
    }

    pub fn right_x(&self, j: usize) -> f64 {
        j as f64 * self.h
    }

    pub fn at_origin_left(&self) -> f64 {
        self.left[self.cells()]
    }

    pub fn jump_residual(&self) -> f64 {
        self.right[0] - self.params.tau * self.at_origin_left()
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut g = self.clone();
        g.left.iter_mut().chain(g.right.iter_mut()).for_each(|v| *v *= c);
        g
    }

    pub fn abs(&self) -> Self {
        let mut g = self.clone();
        g.left.iter_mut().chain(g.right.iter_mut()).for_each(|v| *v = v.abs());
        g
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        let mut g = self.clone();
        g.params = ModelParams::new(g.params.sigma, g.params.tau, alpha)?;
        Ok(g)
    }

    pub fn left_mass(&self) -> f64 {
        trapezoid(&self.left, self.h, |v| v * v)
    }

    pub fn mass(&self) -> f64 {
        self.left_mass() + trapezoid(&self.right, self.h, |v| v * v)
    }

    pub fn left_lp_pow(&self, p: f64) -> f64 {
        trapezoid(&self.left, self.h, |v| v.abs().powf(p))
    }

    /// `∫ |u|^p` by the trapezoid rule on each half-line.
    pub fn lp_pow(&self, p: f64) -> f64 {
        self.left_lp_pow(p) + trapezoid(&self.right, self.h, |v| v.abs().powf(p))
    }

    /// `Σ (Δu)²/h` over both halves: the discrete `‖u'‖²`.
    pub fn kinetic(&self) -> f64 {
        let sq = |s: &[f64]| s.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>();
        (sq(&self.left) + sq(&self.right)) / self.h
    }

    /// Discrete `E_α`.
    pub fn energy(&self) -> f64 {
        let pw = 2.0 * self.params.sigma + 2.0;
        let a = self.at_origin_left();
        0.5 * self.kinetic() - self.lp_pow(pw) / pw - 0.5 * self.params.alpha * a * a
    }

    /// `(∫ |u − v|²)^{1/2}` against a closed-form state on the same nodes.
    pub fn l2_distance_to(&self, state: &StationaryState) -> f64 {
        let (l, r) = (state.left_profile(), state.right_profile());
        let dl: Vec<f64> = (0..self.left.len()).map(|i| self.left[i] - l.value(self.left_x(i))).collect();
        let dr: Vec<f64> = (0..self.right.len()).map(|j| self.right[j] - r.value(self.right_x(j))).collect();
        (trapezoid(&dl, self.h, |v| v * v) + trapezoid(&dr, self.h, |v| v * v)).sqrt()
    }

    /// Free coordinates `[u₋(x₁) … u₋(0⁻), u₊(x₁) … u₊(x_{N−1})]`; the outer
    /// samples are pinned to zero and `u(0⁺)` follows from the jump.
    pub fn reduced(&self) -> Vec<f64> {
        let n = self.cells();
        let mut z = Vec::with_capacity(2 * n - 1);
        z.extend_from_slice(&self.left[1..=n]);
        z.extend_from_slice(&self.right[1..n]);
        z
    }

    /// Inverse of [`GridFunction::reduced`] with zero outer samples.
    pub fn set_reduced(&mut self, z: &[f64]) {
        let n = self.cells();
        debug_assert_eq!(z.len(), 2 * n - 1);
        self.left[0] = 0.0;
        self.left[1..=n].copy_from_slice(&z[..n]);
        self.right[0] = self.params.tau * z[n - 1];
        self.right[1..n].copy_from_slice(&z[n..]);
        self.right[n] = 0.0;
    }

    /// Gradient of [`GridFunction::energy`] in the reduced coordinates.
    pub fn energy_gradient(&self) -> Vec<f64> {
        let n = self.cells();
        let z = self.reduced();
        let ops = ReducedOps::new(n, self.h, self.params.tau);
        let mut g = ops.kinetic_apply(&z);
        let pw = 2.0 * self.params.sigma + 2.0;
        let force = |v: f64| v.abs().powf(pw - 2.0) * v;
        for (k, gk) in g.iter_mut().enumerate() {
            if k == n - 1 {
                let a = z[k];
                let t = self.params.tau;
                *gk -= 0.5 * self.h * (force(a) + t * force(t * a)) + self.params.alpha * a;
            } else {
                *gk -= self.h * force(z[k]);
            }
        }
        g
    }
}

/// `h Σ' f(v_i)` with half weights at both ends.
pub(crate) fn trapezoid<F: Fn(f64) -> f64>(v: &[f64], h: f64, f: F) -> f64 {
    let n = v.len();
    if n < 2 {
        return 0.0;
    }
    let inner: f64 = v[1..n - 1].iter().map(|&x| f(x)).sum();
    h * (inner + 0.5 * (f(v[0]) + f(v[n - 1])))
}

/// Kinetic and mass matrices in reduced coordinates. Both are tridiagonal;
/// the origin row couples `u(0⁻)` to `u₊(x₁)` with weight `τ`.
pub(crate) struct ReducedOps {
    pub n: usize,
    pub h: f64,
    pub tau: f64,
}

impl ReducedOps {
    pub fn new(n: usize, h: f64, tau: f64) -> Self {
        Self { n, h, tau }
    }

    pub fn dim(&self) -> usize {
        2 * self.n - 1
    }

    fn origin(&self) -> usize {
        self.n - 1
    }

    /// Diagonal and off-diagonal (`k`, `k+1`) entries of the kinetic matrix `K`
    /// with `½ zᵀKz`-gradient `Kz` and `zᵀKz = Σ(Δu)²/h`.
    pub fn kinetic_bands(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.dim();
        let ih = 1.0 / self.h;
        let mut diag = vec![2.0 * ih; m];
        let mut off = vec![-ih; m - 1];
        diag[self.origin()] = (1.0 + self.tau * self.tau) * ih;
        off[self.origin()] = -self.tau * ih;
        (diag, off)
    }

    /// Diagonal of the mass matrix: `zᵀMz` is the trapezoid `‖u‖²`.
    pub fn mass_diag(&self) -> Vec<f64> {
        let mut d = vec![self.h; self.dim()];
        d[self.origin()] = 0.5 * self.h * (1.0 + self.tau * self.tau);
        d
    }

    pub fn kinetic_apply(&self, z: &[f64]) -> Vec<f64> {
        let (diag, off) = self.kinetic_bands();
        let m = z.len();
        (0..m)
            .map(|k| {
                let mut s = diag[k] * z[k];
                if k > 0 {
                    s += off[k - 1] * z[k - 1];
                }
                if k + 1 < m {
                    s += off[k] * z[k + 1];
                }
                s
            })
            .collect()
    }
}

/// Solves a symmetric tridiagonal system by the Thomas algorithm.
pub(crate) fn solve_tridiagonal(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = if m > 1 { off[0] / diag[0] } else { 0.0 };
    d[0] = rhs[0] / diag[0];
    for k in 1..m {
        let denom = diag[k] - off[k - 1] * c[k - 1];
        if k + 1 < m {
            c[k] = off[k] / denom;
        }
        d[k] = (rhs[k] - off[k - 1] * d[k - 1]) / denom;
    }
    for k in (0..m - 1).rev() {
        d[k] -= c[k] * d[k + 1];
    }
    d
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sobolev preconditioner `P = K + cM`.
pub(crate) struct Preconditioner {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Preconditioner {
    pub fn new(ops: &ReducedOps, shift: f64) -> Self {
        let (mut diag, off) = ops.kinetic_bands();
        for (d, m) in diag.iter_mut().zip(ops.mass_diag()) {
            *d += shift * m;
        }
        Self { diag, off }
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        solve_tridiagonal(&self.diag, &self.off, rhs)
    }
}
