//! Closed-form positive stationary states.
//!
//! Every positive solution of
//!
//! ```text
//! u'' + |u|^{2σ} u = ω u      on ℝ \ {0}
//! u(0⁺) = τ u(0⁻),   u'(0⁻) − τ u'(0⁺) = α u(0⁻)
//! ```
//!
//! is `φ_ω(x + x₋)` on the negative half-line and `φ_ω(x + x₊)` on the
//! positive one, where `T± = tanh(σ√ω x±)` solve
//!
//! ```text
//! τ²√ω T₊ = √ω T₋ + α,     τ^{2σ} T₋² − T₊² = τ^{2σ} − 1.
//! ```
//!
//! The two roots for `T₋` give the branches `L` (ground states) and `R`
//! (excited states).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::critical::{critical_data, Infimum};
use crate::error::{Error, Result};
use crate::oracle::{integrate, profile_tail, tail_cutoff, Quadrature};
use crate::profiles::{mass_prefactor, soliton_mass, ModelParams, SolitonProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    L,
    R,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::L, Branch::R];
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::L => f.write_str("L"),
            Branch::R => f.write_str("R"),
        }
    }
}

/// Frequency and mass thresholds of the two branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `α²/(τ²+1)²`: the L branch bifurcates from the linear eigenvalue here.
    pub omega_lin: f64,
    /// `α²/(τ²−1)²`: resonance frequency where the R branch is born.
    pub omega_res: f64,
    /// Mass above which the excited state exists (`σ < 2` only).
    pub mu_alpha: Option<f64>,
}

impl Thresholds {
    pub fn new(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        let ModelParams { sigma, tau, alpha } = *params;
        let t2 = tau * tau;
        let omega_lin = alpha * alpha / ((t2 + 1.0) * (t2 + 1.0));
        let omega_res = alpha * alpha / ((t2 - 1.0) * (t2 - 1.0));
        let mu_alpha = if sigma < 2.0 {
            Some(if alpha > 0.0 { soliton_mass(sigma, omega_res)? } else { 0.0 })
        } else {
            None
        };
        Ok(Self {
            omega_lin,
            omega_res,
            mu_alpha,
        })
    }

    pub fn for_branch(&self, branch: Branch) -> f64 {
        match branch {
            Branch::L => self.omega_lin,
            Branch::R => self.omega_res,
        }
    }
}

/// Excited-state mass threshold evaluated directly as
/// `((σ+1)^{1/σ}/σ) (α/(τ²−1))^{(2−σ)/σ} I(−1, 1)`.
pub fn excited_threshold_mass(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let ModelParams { sigma, tau, alpha } = *params;
    if sigma == 2.0 {
        return Err(Error::CriticalSigma);
    }
    let full = crate::oracle::profile_integral_full(sigma)?;
    Ok(mass_prefactor(sigma) * (alpha / (tau * tau - 1.0)).powf((2.0 - sigma) / sigma) * full)
}

/// Number of positive L² solutions at frequency `omega`.
pub fn multiplicity(params: &ModelParams, omega: f64) -> usize {
    if !(omega > 0.0) {
        return 0;
    }
    let t2 = params.tau * params.tau;
    let a2 = params.alpha * params.alpha;
    let lin = a2 / ((t2 + 1.0) * (t2 + 1.0));
    let res = a2 / ((t2 - 1.0) * (t2 - 1.0));
    if omega <= lin {
        0
    } else if omega <= res {
        1
    } else {
        2
    }
}

fn branch_exists(params: &ModelParams, omega: f64, branch: Branch) -> bool {
    match branch {
        Branch::L => multiplicity(params, omega) >= 1,
        Branch::R => multiplicity(params, omega) == 2,
    }
}

fn require_branch(params: &ModelParams, omega: f64, branch: Branch) -> Result<()> {
    params.validate()?;
    if branch_exists(params, omega, branch) {
        Ok(())
    } else {
        let threshold = Thresholds::new(params)?.for_branch(branch);
        Err(Error::BranchAbsent {
            branch,
            omega,
            threshold,
        })
    }
}

struct Coefficients {
    /// `τ^{2σ}`
    t2s: f64,
    /// `τ^{2σ+4} − 1`
    d: f64,
    /// `(τ^{2σ+4} − 1)(τ^{2σ} − 1)`
    b: f64,
}

impl Coefficients {
    fn new(params: &ModelParams) -> Self {
        let t2s = params.tau.powf(2.0 * params.sigma);
        let d = t2s * params.tau.powi(4) - 1.0;
        Self { t2s, d, b: d * (t2s - 1.0) }
    }
}

/// Roots `(T₋, T₊)` of the boundary system for the requested branch.
pub fn tanh_variables(params: &ModelParams, omega: f64, branch: Branch) -> Result<(f64, f64)> {
    require_branch(params, omega, branch)?;
    Ok(tanh_roots(params, omega, branch))
}

fn tanh_roots(params: &ModelParams, omega: f64, branch: Branch) -> (f64, f64) {
    let ModelParams { tau, alpha, .. } = *params;
    let c = Coefficients::new(params);
    let sw = omega.sqrt();
    let root = (alpha * alpha * c.t2s / omega + c.b).sqrt();
    let sign = match branch {
        Branch::L => -1.0,
        Branch::R => 1.0,
    };
    let t_minus = (alpha / sw + sign * tau * tau * root) / c.d;
    let t_plus = (t_minus * sw + alpha) / (tau * tau * sw);
    (t_minus, t_plus)
}

const TANH_GUARD: f64 = 1.0 - 1e-15;

fn guarded_atanh(t: f64) -> Result<f64> {
    if t.abs() > TANH_GUARD {
        return Err(Error::NumericalOverflow { value: t });
    }
    Ok(0.5 * (t.ln_1p() - (-t).ln_1p()))
}

/// One point of a branch: the closed-form profile and its mass and energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryState {
    pub params: ModelParams,
    pub branch: Branch,
    pub omega: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub mass: f64,
    pub energy: f64,
}

impl StationaryState {
    /// Soliton whose restriction to `x < 0` is the state.
    pub fn left_profile(&self) -> SolitonProfile {
        SolitonProfile {
            sigma: self.params.sigma,
            omega: self.omega,
            shift: -self.x_minus,
        }
    }

    /// Soliton whose restriction to `x > 0` is the state.
    pub fn right_profile(&self) -> SolitonProfile {
        SolitonProfile {
            sigma: self.params.sigma,
            omega: self.omega,
            shift: -self.x_plus,
        }
    }

    /// `u(x)`; the origin is assigned the right-hand value `u(0⁺)`.
    pub fn value(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left_profile().value(x)
        } else {
            self.right_profile().value(x)
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left_profile().derivative(x)
        } else {
            self.right_profile().derivative(x)
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left_profile().second_derivative(x)
        } else {
            self.right_profile().second_derivative(x)
        }
    }

    pub fn value_left_of_origin(&self) -> f64 {
        self.left_profile().value(0.0)
    }

    pub fn value_right_of_origin(&self) -> f64 {
        self.right_profile().value(0.0)
    }

    /// `u(0⁺) − τ u(0⁻)` evaluated from the profiles.
    pub fn jump_residual(&self) -> f64 {
        self.value_right_of_origin() - self.params.tau * self.value_left_of_origin()
    }

    /// `u'(0⁻) − τ u'(0⁺) − α u(0⁻)` evaluated from the profiles.
    pub fn flux_residual(&self) -> f64 {
        let (l, r) = (self.left_profile(), self.right_profile());
        l.derivative(0.0) - self.params.tau * r.derivative(0.0) - self.params.alpha * l.value(0.0)
    }

    /// `u'' + |u|^{2σ} u − ω u` at `x ≠ 0`.
    pub fn el_residual(&self, x: f64) -> f64 {
        let u = self.value(x);
        self.second_derivative(x) + u.abs().powf(2.0 * self.params.sigma) * u - self.omega * u
    }

    /// `‖u‖²` by quadrature of the profile, independent of the closed form.
    pub fn mass_by_quadrature(&self) -> Result<f64> {
        self.integrate_halves(|p, x| p.value(x).powi(2))
    }

    /// Energy with the point term `−(α/2) u(0⁻)²` added exactly.
    pub fn energy_by_quadrature(&self) -> Result<f64> {
        let pw = 2.0 * self.params.sigma + 2.0;
        let bulk = self.integrate_halves(|p, x| {
            let d = p.derivative(x);
            0.5 * d * d - p.value(x).powf(pw) / pw
        })?;
        let a = self.value_left_of_origin();
        Ok(bulk - 0.5 * self.params.alpha * a * a)
    }

    fn integrate_halves<F>(&self, density: F) -> Result<f64>
    where
        F: Fn(&SolitonProfile, f64) -> f64,
    {
        let q = Quadrature {
            abs_tol: 1e-11,
            max_depth: 40,
        };
        let cut = tail_cutoff(self.params.sigma, self.omega);
        let (l, r) = (self.left_profile(), self.right_profile());
        let mut total = 0.0;
        let lo = l.shift - cut;
        if lo < 0.0 {
            total += integrate(|x| density(&l, x), lo, 0.0, q)?;
        }
        let hi = r.shift + cut;
        if hi > 0.0 {
            total += integrate(|x| density(&r, x), 0.0, hi, q)?;
        }
        Ok(total)
    }
}

/// Solves the boundary system on one branch and builds the state.
pub fn solve_branch(params: &ModelParams, omega: f64, branch: Branch) -> Result<StationaryState> {
    let (t_minus, t_plus) = tanh_variables(params, omega, branch)?;
    let rate = params.sigma * omega.sqrt();
    let x_minus = guarded_atanh(t_minus)? / rate;
    let x_plus = guarded_atanh(t_plus)? / rate;
    let mut state = StationaryState {
        params: *params,
        branch,
        omega,
        t_minus,
        t_plus,
        x_minus,
        x_plus,
        mass: mass_from_tanh(params, omega, t_minus, t_plus)?,
        energy: 0.0,
    };
    state.energy = state.energy_by_quadrature()?;
    Ok(state)
}

fn mass_from_tanh(params: &ModelParams, omega: f64, t_minus: f64, t_plus: f64) -> Result<f64> {
    let sigma = params.sigma;
    // I(−1,1) − I(T₋,T₊) = I(−1,T₋) + I(T₊,1)
    let outer = profile_tail(sigma, -t_minus)? + profile_tail(sigma, t_plus)?;
    Ok(mass_prefactor(sigma) * omega.powf(1.0 / sigma - 0.5) * outer)
}

/// `‖u_ω‖²` on a branch from the closed-form mass identity.
pub fn branch_mass(params: &ModelParams, omega: f64, branch: Branch) -> Result<f64> {
    let (t_minus, t_plus) = tanh_variables(params, omega, branch)?;
    mass_from_tanh(params, omega, t_minus, t_plus)
}

/// Closed-form `d/dω ‖u_ω‖²` on a branch.
pub fn branch_mass_derivative(params: &ModelParams, omega: f64, branch: Branch) -> Result<f64> {
    let (t_minus, t_plus) = tanh_variables(params, omega, branch)?;
    let ModelParams { sigma, alpha, .. } = *params;
    let c = Coefficients::new(params);
    let pre = mass_prefactor(sigma);
    let outer = profile_tail(sigma, -t_minus)? + profile_tail(sigma, t_plus)?;
    let first = pre * (2.0 - sigma) / (2.0 * sigma) * omega.powf(1.0 / sigma - 1.5) * outer;

    let sign = match branch {
        Branch::L => -1.0,
        Branch::R => 1.0,
    };
    let tau_pow = params.tau.powf(2.0 * sigma + 2.0);
    let disc = (alpha * alpha * c.t2s + c.b * omega).sqrt();
    // 2ω^{3/2} T₋'(ω)
    let scaled_dt = if alpha == 0.0 {
        0.0
    } else {
        -(alpha / c.d) * (1.0 + sign * alpha * tau_pow / disc)
    };
    let bracket = scaled_dt + alpha / (c.t2s - 1.0);
    let weight = (c.t2s - 1.0) * (1.0 - t_minus * t_minus).powf(1.0 / sigma - 1.0) / (2.0 * c.t2s);
    let second = pre * omega.powf(1.0 / sigma - 2.0) * weight * bracket;
    Ok(first + second)
}

/// Open interval of masses swept by a branch.
pub fn branch_mass_range(params: &ModelParams, branch: Branch) -> Result<(f64, f64)> {
    params.validate()?;
    if params.sigma < 2.0 {
        let th = Thresholds::new(params)?;
        return Ok(match branch {
            Branch::L => (0.0, f64::INFINITY),
            Branch::R => (th.mu_alpha.unwrap_or(0.0), f64::INFINITY),
        });
    }
    if params.alpha == 0.0 {
        return Err(Error::DegenerateMap);
    }
    let crit = critical_data(params.tau)?;
    Ok(match branch {
        Branch::L => (0.0, crit.mu_star),
        Branch::R => (crit.mu_line, crit.mu_tilde),
    })
}

/// The unique state of the requested branch carrying mass `mu`.
///
/// The mass map is strictly increasing in `ω`, so the frequency is bracketed
/// by geometric expansion, refined by bisection and polished by one Newton
/// step.
pub fn state_by_mass(params: &ModelParams, mu: f64, branch: Branch) -> Result<StationaryState> {
    let (lo_mass, hi_mass) = branch_mass_range(params, branch)?;
    if !(mu > lo_mass && mu < hi_mass) {
        return Err(Error::MassOutOfRange {
            branch,
            mu,
            lo: lo_mass,
            hi: hi_mass,
        });
    }
    let out_of_range = || Error::MassOutOfRange {
        branch,
        mu,
        lo: lo_mass,
        hi: hi_mass,
    };
    let threshold = Thresholds::new(params)?.for_branch(branch);
    let mass = |w: f64| branch_mass(params, w, branch);

    let mut hi = (2.0 * threshold).max(1.0);
    let mut expansions = 0;
    while mass(hi)? < mu {
        hi *= 2.0;
        expansions += 1;
        if expansions > 1100 || !hi.is_finite() {
            return Err(out_of_range());
        }
    }
    let mut lo = if threshold > 0.0 {
        threshold * (1.0 + 1e-12)
    } else {
        let mut w = hi;
        let mut shrinks = 0;
        while mass(w)? > mu {
            w *= 0.5;
            shrinks += 1;
            if shrinks > 1100 || w == 0.0 {
                return Err(out_of_range());
            }
        }
        w
    };
    if mass(lo)? > mu {
        return Err(out_of_range());
    }

    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mass(mid)? < mu {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut omega = 0.5 * (lo + hi);
    let slope = branch_mass_derivative(params, omega, branch)?;
    if slope > 0.0 && slope.is_finite() {
        let polished = omega - (mass(omega)? - mu) / slope;
        if polished > lo && polished < hi {
            omega = polished;
        }
    }
    solve_branch(params, omega, branch)
}

/// Outcome of the ground-state search at a given mass.
#[derive(Debug, Clone, PartialEq)]
pub enum GroundState {
    Found(StationaryState),
    Absent { infimum: Infimum, reason: String },
}

/// Mass tolerance for the single-mass ground states of the critical dipole.
pub const DIPOLE_MASS_TOL: f64 = 1e-9;

pub fn identify_ground_state(params: &ModelParams, mu: f64) -> Result<GroundState> {
    params.validate()?;
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {mu}")));
    }
    if params.sigma < 2.0 {
        return Ok(GroundState::Found(state_by_mass(params, mu, Branch::L)?));
    }
    let crit = critical_data(params.tau)?;
    if params.alpha > 0.0 {
        if mu < crit.mu_star {
            return Ok(GroundState::Found(state_by_mass(params, mu, Branch::L)?));
        }
        return Ok(GroundState::Absent {
            infimum: Infimum::NegativeInfinity,
            reason: format!(
                "critical power with alpha > 0: mass {mu} >= mu* = {} so the energy is unbounded below",
                crit.mu_star
            ),
        });
    }
    if (mu - crit.mu_star).abs() <= DIPOLE_MASS_TOL {
        return Ok(GroundState::Found(solve_branch(params, 1.0, Branch::L)?));
    }
    let (infimum, reason) = if mu < crit.mu_star {
        (
            Infimum::Zero,
            format!("critical dipole: infimum 0 is not attained below mu* = {}", crit.mu_star),
        )
    } else {
        (
            Infimum::NegativeInfinity,
            format!("critical dipole: mass {mu} > mu* = {} so the energy is unbounded below", crit.mu_star),
        )
    };
    Ok(GroundState::Absent { infimum, reason })
}

/// `E_α(u)` of a state, by quadrature plus the exact point term.
pub fn energy_of_state(s: &StationaryState) -> Result<f64> {
    s.energy_by_quadrature()
}

/// Piecewise exponential `c₋ e^{k₋ x}` (x < 0), `c₊ e^{k₊ x}` (x > 0)
/// solving `u'' = ω u` away from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialPair {
    pub omega: f64,
    pub left_coeff: f64,
    pub left_rate: f64,
    pub right_coeff: f64,
    pub right_rate: f64,
}

impl ExponentialPair {
    pub fn value(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left_coeff * (self.left_rate * x).exp()
        } else {
            self.right_coeff * (self.right_rate * x).exp()
        }
    }

    pub fn jump_residual(&self, tau: f64) -> f64 {
        self.right_coeff - tau * self.left_coeff
    }

    pub fn flux_residual(&self, tau: f64, alpha: f64) -> f64 {
        let left_d = self.left_coeff * self.left_rate;
        let right_d = self.right_coeff * self.right_rate;
        left_d - tau * right_d - alpha * self.left_coeff
    }

    /// `u'' − ω u` at `x ≠ 0`.
    pub fn ode_residual(&self, x: f64) -> f64 {
        let (c, k) = if x < 0.0 {
            (self.left_coeff, self.left_rate)
        } else {
            (self.right_coeff, self.right_rate)
        };
        c * k * k * (k * x).exp() - self.omega * self.value(x)
    }

    pub fn is_square_integrable(&self) -> bool {
        self.left_rate > 0.0 && self.right_rate < 0.0
    }
}

/// Lowest eigenvalue `−α²/(τ²+1)²` of the linear operator and its eigenfunction.
pub fn linear_eigenpair(params: &ModelParams) -> Result<ExponentialPair> {
    params.validate()?;
    if params.alpha == 0.0 {
        return Err(Error::NoEigenvalue);
    }
    let t2 = params.tau * params.tau;
    let omega = params.alpha * params.alpha / ((t2 + 1.0) * (t2 + 1.0));
    let k = omega.sqrt();
    Ok(ExponentialPair {
        omega,
        left_coeff: 1.0,
        left_rate: k,
        right_coeff: params.tau,
        right_rate: -k,
    })
}

/// Non-L² solution of the linear problem at the resonance frequency `ω_α`.
pub fn resonance(params: &ModelParams) -> Result<ExponentialPair> {
    params.validate()?;
    if params.alpha == 0.0 {
        return Err(Error::NoEigenvalue);
    }
    let t2 = params.tau * params.tau;
    let omega = params.alpha * params.alpha / ((t2 - 1.0) * (t2 - 1.0));
    let k = omega.sqrt();
    Ok(ExponentialPair {
        omega,
        left_coeff: 1.0,
        left_rate: -k,
        right_coeff: params.tau,
        right_rate: -k,
    })
}

/// Critical soliton mass `√3π/2` on the line.
pub fn critical_line_mass() -> f64 {
    3f64.sqrt() * PI / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fd_derivative;
    use crate::profiles::nls_energy;

    fn p(s: f64, t: f64, a: f64) -> ModelParams {
        ModelParams::new(s, t, a).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let q = p(1.0, 2.0, 1.0);
        assert_eq!(multiplicity(&q, 0.03), 0);
        assert_eq!(multiplicity(&q, 0.07), 1);
        assert_eq!(multiplicity(&q, 0.2), 2);
        assert_eq!(multiplicity(&q, -1.0), 0);
        let dip = p(1.0, 2.0, 0.0);
        assert_eq!(multiplicity(&dip, 1e-9), 2);
        assert_eq!(multiplicity(&dip, 0.0), 0);
    }

    #[test]
    fn dipole_critical_tanh_values() {
        let q = p(2.0, 2.0, 0.0);
        for &w in &[0.1, 1.0, 5.0] {
            let s = solve_branch(&q, w, Branch::L).unwrap();
            assert!((s.t_minus + 4.0 / 17f64.sqrt()).abs() < 1e-14);
            assert!((s.t_plus + 1.0 / 17f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn figure_translations() {
        let q = p(2.0, 1.2, 0.0);
        let l = solve_branch(&q, 0.25, Branch::L).unwrap();
        assert!((l.x_plus + 0.648).abs() < 5e-3, "{}", l.x_plus);
        assert!((l.x_minus + 1.161).abs() < 5e-3, "{}", l.x_minus);
        let r = solve_branch(&q, 0.25, Branch::R).unwrap();
        assert!((r.x_plus - 0.648).abs() < 5e-3);
        assert!((r.x_minus - 1.161).abs() < 5e-3);
    }

    #[test]
    fn absent_branch_errors() {
        let q = p(1.0, 2.0, 1.0);
        assert!(matches!(solve_branch(&q, 0.07, Branch::R), Err(Error::BranchAbsent { .. })));
        assert!(matches!(solve_branch(&q, 0.03, Branch::L), Err(Error::BranchAbsent { .. })));
        assert!(matches!(branch_mass(&q, 0.1, Branch::R), Err(Error::BranchAbsent { .. })));
    }

    #[test]
    fn overflow_guard_near_threshold() {
        let q = p(1.0, 2.0, 1.0);
        let w = 0.04 * (1.0 + 1e-17);
        // Rounds onto the threshold: branch absent rather than overflow.
        assert!(solve_branch(&q, w, Branch::L).is_err());
        let w = 0.04 + 1e-15;
        match solve_branch(&q, w, Branch::L) {
            Err(Error::NumericalOverflow { .. }) | Ok(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn residuals_vanish() {
        for &(s, t, a, w) in &[(1.0, 2.0, 1.0, 0.5), (0.5, 1.5, 2.0, 3.0), (2.0, 3.0, 0.7, 0.2)] {
            let q = p(s, t, a);
            for b in Branch::BOTH {
                if multiplicity(&q, w) < if b == Branch::L { 1 } else { 2 } {
                    continue;
                }
                let st = solve_branch(&q, w, b).unwrap();
                assert!(st.jump_residual().abs() < 1e-12);
                assert!(st.flux_residual().abs() < 1e-10);
                for &x in &[-2.0, -0.3, 0.4, 1.7] {
                    let r = st.el_residual(x);
                    assert!(r.abs() < 1e-8 * (1.0 + st.second_derivative(x).abs()));
                }
            }
        }
    }

    #[test]
    fn mass_examples() {
        let near_line = p(2.0, 1.0 + 1e-9, 0.0);
        let m = branch_mass(&near_line, 1.0, Branch::L).unwrap();
        assert!((m - critical_line_mass()).abs() < 1e-6);
        let q = p(2.0, 2.0, 0.0);
        let m = branch_mass(&q, 1.0, Branch::L).unwrap();
        let mu_star = critical_data(2.0).unwrap().mu_star;
        assert!((m - mu_star).abs() < 1e-12);
        assert!((m - 1.78467).abs() < 1e-5);
        let q = p(1.0, 2.0, 1.0);
        let m = branch_mass(&q, (1.0 / 9.0) * (1.0 + 1e-8), Branch::R).unwrap();
        assert!((m - 4.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn mass_matches_quadrature() {
        for &(s, t, a, w) in &[(1.0, 2.0, 1.0, 0.5), (1.5, 1.3, 0.4, 0.9), (0.7, 3.0, 1.0, 0.2)] {
            let q = p(s, t, a);
            for b in Branch::BOTH {
                if let Ok(st) = solve_branch(&q, w, b) {
                    assert!((st.mass - st.mass_by_quadrature().unwrap()).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn mass_derivative_matches_differences() {
        let q = p(1.0, 2.0, 1.0);
        let exact = branch_mass_derivative(&q, 0.5, Branch::L).unwrap();
        let fd = fd_derivative(|w| branch_mass(&q, w, Branch::L).unwrap(), 0.5, 1e-5).unwrap();
        assert!(((exact - fd) / exact).abs() < 1e-6, "{exact} {fd}");
        let q = p(2.0, 2.0, 1.0);
        assert!(branch_mass_derivative(&q, 1.0, Branch::R).unwrap() > 0.0);
        let q = p(2.0, 2.0, 0.0);
        for b in Branch::BOTH {
            assert!(branch_mass_derivative(&q, 0.8, b).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn inversion_examples() {
        let q = p(1.0, 2.0, 1.0);
        let s = state_by_mass(&q, 1.0, Branch::L).unwrap();
        assert!((branch_mass(&q, s.omega, Branch::L).unwrap() - 1.0).abs() < 1e-10);
        let s = state_by_mass(&q, 4.0 / 3.0 + 1e-6, Branch::R).unwrap();
        assert!(s.omega > 1.0 / 9.0 && s.omega < 1.0 / 9.0 * 1.01);
        assert!(matches!(state_by_mass(&q, 1.0, Branch::R), Err(Error::MassOutOfRange { .. })));

        let crit = p(2.0, 2.0, 1.0);
        for b in Branch::BOTH {
            assert!(matches!(state_by_mass(&crit, 2.0, b), Err(Error::MassOutOfRange { .. })));
        }
        let s = state_by_mass(&crit, 3.0, Branch::R).unwrap();
        assert!((s.mass - 3.0).abs() < 1e-10);
        assert_eq!(state_by_mass(&p(2.0, 2.0, 0.0), 1.0, Branch::L), Err(Error::DegenerateMap));
    }

    #[test]
    fn ground_state_examples() {
        let q = p(1.0, 2.0, 1.0);
        match identify_ground_state(&q, 5.0).unwrap() {
            GroundState::Found(s) => assert_eq!(s.branch, Branch::L),
            other => panic!("{other:?}"),
        }
        let q = p(2.0, 2.0, 1.0);
        assert!(matches!(identify_ground_state(&q, 1.0).unwrap(), GroundState::Found(_)));
        match identify_ground_state(&q, 3.0).unwrap() {
            GroundState::Absent { infimum, .. } => assert_eq!(infimum, Infimum::NegativeInfinity),
            other => panic!("{other:?}"),
        }
        let dip = p(2.0, 2.0, 0.0);
        let mu_star = critical_data(2.0).unwrap().mu_star;
        assert!(matches!(identify_ground_state(&dip, mu_star).unwrap(), GroundState::Found(_)));
        match identify_ground_state(&dip, 1.0).unwrap() {
            GroundState::Absent { infimum, .. } => assert_eq!(infimum, Infimum::Zero),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn energies() {
        let q = p(2.0, 2.0, 0.0);
        for b in Branch::BOTH {
            let s = solve_branch(&q, 1.0, b).unwrap();
            assert!(energy_of_state(&s).unwrap().abs() < 1e-8);
        }
        let q = p(1.0, 2.0, 1.0);
        let gs = state_by_mass(&q, 1.0, Branch::L).unwrap();
        let line = nls_energy(&crate::profiles::soliton_by_mass(1.0, 1.0).unwrap()).unwrap();
        assert!(gs.energy < line);
    }

    #[test]
    fn linear_problem() {
        let q = p(1.0, 2.0, 1.0);
        let e = linear_eigenpair(&q).unwrap();
        assert!((e.omega - 1.0 / 25.0).abs() < 1e-15);
        assert!(e.jump_residual(2.0).abs() < 1e-12);
        assert!(e.flux_residual(2.0, 1.0).abs() < 1e-12);
        assert!(e.ode_residual(-0.7).abs() < 1e-12 && e.ode_residual(1.3).abs() < 1e-12);
        assert!(e.is_square_integrable());

        let r = resonance(&q).unwrap();
        assert!((r.omega - 1.0 / 9.0).abs() < 1e-15);
        assert!(r.jump_residual(2.0).abs() < 1e-12);
        assert!(r.flux_residual(2.0, 1.0).abs() < 1e-12);
        assert!(!r.is_square_integrable());

        assert_eq!(linear_eigenpair(&p(1.0, 2.0, 0.0)), Err(Error::NoEigenvalue));
    }

    #[test]
    fn threshold_formula_matches_soliton_mass() {
        let q = p(1.0, 2.0, 1.0);
        let direct = excited_threshold_mass(&q).unwrap();
        assert!((direct - 4.0 / 3.0).abs() < 1e-10);
        let th = Thresholds::new(&q).unwrap();
        assert!((th.mu_alpha.unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn translation_signs() {
        let q = p(1.0, 2.0, 1.0);
        for &w in &[0.0401, 0.2, 1.0, 40.0] {
            let l = solve_branch(&q, w, Branch::L).unwrap();
            assert!(l.x_minus < 0.0);
            if w > 1.0 / 9.0 {
                let r = solve_branch(&q, w, Branch::R).unwrap();
                assert!(r.x_minus > 0.0 && r.x_plus > 0.0);
            }
        }
        // x₊ᴸ changes sign where T₋ = −α/√ω, i.e. ω = α² τ^{2σ}/(τ^{2σ} − 1) = 4/3.
        assert!(solve_branch(&q, 0.05, Branch::L).unwrap().x_plus > 0.0);
        assert!(solve_branch(&q, 1.3, Branch::L).unwrap().x_plus > 0.0);
        assert!(solve_branch(&q, 1.4, Branch::L).unwrap().x_plus < 0.0);
        assert!(solve_branch(&q, 50.0, Branch::L).unwrap().x_plus < 0.0);
    }
}
