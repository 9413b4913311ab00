//! Critical power `σ = 2`: critical masses, the optimal GN constant on the
//! jump space and the classification of masses.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::ModelParams;
use crate::stationary::{solve_branch, Branch, StationaryState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub tau: f64,
    /// Mass of the dipole ground state; the energy is bounded below up to here.
    pub mu_star: f64,
    /// Mass of the excited dipole state.
    pub mu_tilde: f64,
    /// Optimal constant of `‖u‖⁶₆ ≤ K ‖u'‖² ‖u‖⁴` on the jump space.
    pub k_tau: f64,
    /// `√3π/2`, the critical mass on the line.
    pub mu_line: f64,
}

pub fn critical_data(tau: f64) -> Result<CriticalData> {
    if !(tau >= 1.0) || !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be >= 1, got {tau}")));
    }
    let half_root3 = 0.5 * 3f64.sqrt();
    // 1/√(1+τ⁴) written to survive τ⁴ overflow
    let s = if tau > 1e75 { 1.0 / (tau * tau) } else { 1.0 / (1.0 + tau.powi(4)).sqrt() };
    let angle = 2.0 * s.asin();
    let mu_star = half_root3 * (0.5 * PI + angle);
    let mu_tilde = half_root3 * (1.5 * PI - angle);
    Ok(CriticalData {
        tau,
        mu_star,
        mu_tilde,
        k_tau: 3.0 / (mu_star * mu_star),
        mu_line: half_root3 * PI,
    })
}

/// The two positive stationary states of the dipole problem at `σ = 2`:
/// `u₁` (ground state, mass `μ*`) and `u₂` (excited, mass `μ̃`).
pub fn dipole_critical_states(tau: f64, omega: f64) -> Result<(StationaryState, StationaryState)> {
    let params = ModelParams::new(2.0, tau, 0.0)?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("frequency must be positive, got {omega}")));
    }
    Ok((
        solve_branch(&params, omega, Branch::L)?,
        solve_branch(&params, omega, Branch::R)?,
    ))
}

/// Qualitative value of `inf { E_α(v) : ‖v‖² = μ }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Infimum {
    Zero,
    FiniteNegative,
    NegativeInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub tau: f64,
    pub alpha: f64,
    pub mu: f64,
    pub infimum: Infimum,
    pub ground_state: bool,
    pub excited_state: bool,
    /// Masses carrying an excited state; a single point when `α = 0`.
    pub excited_window: (f64, f64),
    /// Set when no positive stationary state has mass `μ`.
    pub no_stationary_state: bool,
}

/// Relative tolerance for hitting the isolated dipole masses `μ*`, `μ̃`.
pub const MASS_MATCH_TOL: f64 = 1e-9;

pub fn classify_mass_regime(params: &ModelParams, mu: f64) -> Result<RegimeReport> {
    params.validate()?;
    if params.sigma != 2.0 {
        return Err(Error::WrongSigma(params.sigma));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {mu}")));
    }
    let c = critical_data(params.tau)?;
    let (infimum, ground_state, excited_state, excited_window) = if params.alpha == 0.0 {
        let inf = if mu <= c.mu_star + MASS_MATCH_TOL {
            Infimum::Zero
        } else {
            Infimum::NegativeInfinity
        };
        (
            inf,
            (mu - c.mu_star).abs() <= MASS_MATCH_TOL,
            (mu - c.mu_tilde).abs() <= MASS_MATCH_TOL,
            (c.mu_tilde, c.mu_tilde),
        )
    } else {
        let inf = if mu < c.mu_star {
            Infimum::FiniteNegative
        } else {
            Infimum::NegativeInfinity
        };
        (
            inf,
            mu < c.mu_star,
            mu > c.mu_line && mu < c.mu_tilde,
            (c.mu_line, c.mu_tilde),
        )
    };
    Ok(RegimeReport {
        tau: params.tau,
        alpha: params.alpha,
        mu,
        infimum,
        ground_state,
        excited_state,
        excited_window,
        no_stationary_state: !ground_state && !excited_state,
    })
}
