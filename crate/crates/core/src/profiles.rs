//! Sech-power solitons of `u'' + |u|^{2σ} u = ω u` on the line.

use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{integrate, profile_integral_full, tail_cutoff, Quadrature};

/// Nonlinearity power `σ`, jump ratio `τ` and delta strength `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub sigma: f64,
    pub tau: f64,
    pub alpha: f64,
}

impl ModelParams {
    /// Validated constructor: `0 < σ ≤ 2`, `τ > 1`, `α ≥ 0`.
    ///
    /// Other jump ratios reduce to `τ > 1` by reflection `u ↦ u(−·)` and a
    /// sign flip on one half-line; that reduction is left to the caller.
    pub fn new(sigma: f64, tau: f64, alpha: f64) -> Result<Self> {
        let p = Self { sigma, tau, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma <= 2.0) {
            return Err(Error::Domain(format!("sigma must lie in (0, 2], got {}", self.sigma)));
        }
        if !(self.tau > 1.0) || !self.tau.is_finite() {
            return Err(Error::Domain(format!("tau must be > 1, got {}", self.tau)));
        }
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        Ok(())
    }

    pub fn is_critical(&self) -> bool {
        self.sigma == 2.0
    }
}

/// `φ_ω(x − shift)` with `φ_ω(x) = (ω(σ+1))^{1/2σ} cosh^{−1/σ}(σ√ω x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitonProfile {
    pub sigma: f64,
    pub omega: f64,
    pub shift: f64,
}

impl SolitonProfile {
    pub fn new(sigma: f64, omega: f64, shift: f64) -> Result<Self> {
        check_sigma(sigma)?;
        check_omega(omega)?;
        Ok(Self { sigma, omega, shift })
    }

    pub fn amplitude(&self) -> f64 {
        (self.omega * (self.sigma + 1.0)).powf(0.5 / self.sigma)
    }

    /// Inverse width `σ√ω`.
    pub fn rate(&self) -> f64 {
        self.sigma * self.omega.sqrt()
    }

    pub fn value(&self, x: f64) -> f64 {
        let y = self.rate() * (x - self.shift);
        self.amplitude() * y.cosh().powf(-1.0 / self.sigma)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let y = self.rate() * (x - self.shift);
        -self.omega.sqrt() * self.value(x) * y.tanh()
    }

    /// Second derivative obtained by differentiating [`Self::derivative`];
    /// it does not use the equation itself.
    pub fn second_derivative(&self, x: f64) -> f64 {
        let y = self.rate() * (x - self.shift);
        let th = y.tanh();
        let sech2 = 1.0 / y.cosh().powi(2);
        self.omega * self.value(x) * (th * th - self.sigma * sech2)
    }

    /// `‖φ‖²` on the line.
    pub fn mass(&self) -> Result<f64> {
        soliton_mass(self.sigma, self.omega)
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma must lie in (0, 2], got {sigma}")))
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("frequency must be positive, got {omega}")))
    }
}

/// Prefactor `(σ+1)^{1/σ} / σ` shared by every mass formula.
pub(crate) fn mass_prefactor(sigma: f64) -> f64 {
    (sigma + 1.0).powf(1.0 / sigma) / sigma
}

/// `‖φ_ω‖²_{L²(ℝ)} = ((σ+1)^{1/σ}/σ) ω^{1/σ − 1/2} I(−1, 1)`.
pub fn soliton_mass(sigma: f64, omega: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_omega(omega)?;
    Ok(mass_prefactor(sigma) * omega.powf(1.0 / sigma - 0.5) * profile_integral_full(sigma)?)
}

/// The centred soliton of mass `mu`. Only defined for `σ < 2`, where the
/// mass is a strictly monotone function of the frequency.
pub fn soliton_by_mass(sigma: f64, mu: f64) -> Result<SolitonProfile> {
    check_sigma(sigma)?;
    if sigma == 2.0 {
        return Err(Error::CriticalSigma);
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {mu}")));
    }
    let base = mu / (mass_prefactor(sigma) * profile_integral_full(sigma)?);
    let omega = base.powf(2.0 * sigma / (2.0 - sigma));
    SolitonProfile::new(sigma, omega, 0.0)
}

const ENERGY_QUAD: Quadrature = Quadrature {
    abs_tol: 1e-11,
    max_depth: 40,
};

/// `E_NLS(φ) = ½‖φ'‖² − ‖φ‖^{2σ+2}_{2σ+2} / (2σ+2)` by quadrature.
pub fn nls_energy(p: &SolitonProfile) -> Result<f64> {
    let cut = tail_cutoff(p.sigma, p.omega);
    let pw = 2.0 * p.sigma + 2.0;
    integrate(
        |x| {
            let d = p.derivative(x);
            0.5 * d * d - p.value(x).powf(pw) / pw
        },
        p.shift - cut,
        p.shift + cut,
        ENERGY_QUAD,
    )
}

/// `θ_σ` in `E_NLS(φ_μ) = −θ_σ μ^{(σ+2)/(2−σ)}`, computed once per `σ`.
pub fn energy_scaling_constant(sigma: f64) -> Result<f64> {
    static CACHE: OnceLock<Mutex<Vec<(u64, f64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let key = sigma.to_bits();
    if let Some(&(_, v)) = cache.lock().unwrap().iter().find(|(k, _)| *k == key) {
        return Ok(v);
    }
    let unit = soliton_by_mass(sigma, 1.0)?;
    let theta = -nls_energy(&unit)?;
    cache.lock().unwrap().push((key, theta));
    Ok(theta)
}

/// `E_NLS(φ_μ)` through the scaling law.
pub fn soliton_energy_at_mass(sigma: f64, mu: f64) -> Result<f64> {
    let theta = energy_scaling_constant(sigma)?;
    Ok(-theta * mu.powf((sigma + 2.0) / (2.0 - sigma)))
}

/// Optimal constant `C` in `‖u‖^{2σ+2}_{2σ+2} ≤ C ‖u'‖^σ ‖u‖^{σ+2}` on the
/// line, attained by the soliton.
pub fn gn_line_constant(sigma: f64) -> Result<f64> {
    let p = SolitonProfile::new(sigma, 1.0, 0.0)?;
    let cut = tail_cutoff(sigma, 1.0);
    let pw = 2.0 * sigma + 2.0;
    let q = ENERGY_QUAD;
    let lp = integrate(|x| p.value(x).powf(pw), -cut, cut, q)?;
    let kin = integrate(|x| p.derivative(x).powi(2), -cut, cut, q)?;
    let mass = integrate(|x| p.value(x).powi(2), -cut, cut, q)?;
    Ok(lp / (kin.powf(0.5 * sigma) * mass.powf(0.5 * sigma + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fd_derivative;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn quad_mass(p: &SolitonProfile) -> f64 {
        let cut = tail_cutoff(p.sigma, p.omega);
        integrate(|x| p.value(x).powi(2), p.shift - cut, p.shift + cut, Quadrature::default()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1.0, 2.0, 1.0).is_ok());
        assert!(ModelParams::new(0.0, 2.0, 1.0).is_err());
        assert!(ModelParams::new(2.5, 2.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.5, 1.0).is_err());
        assert!(ModelParams::new(1.0, 2.0, -0.1).is_err());
    }

    #[test]
    fn value_examples() {
        let p = SolitonProfile::new(2.0, 1.0 / 3.0, 0.0).unwrap();
        assert!((p.value(0.0) - 1.0).abs() < 1e-15);
        let p = SolitonProfile::new(1.0, 1.0, 0.0).unwrap();
        assert!((p.value(0.0) - 2f64.sqrt()).abs() < 1e-15);
        let p = SolitonProfile::new(2.0, 0.25, 0.648).unwrap();
        let expected = 0.75f64.powf(0.25) / 0.648f64.cosh().sqrt();
        assert!((p.value(0.0) - expected).abs() < 1e-15);
        assert!((p.value(0.0) - 0.843428).abs() < 1e-6);
    }

    #[test]
    fn mass_examples() {
        assert!((soliton_mass(1.0, 1.0 / 9.0).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!((soliton_mass(1.0, 1.0).unwrap() - 4.0).abs() < 1e-12);
        for &w in &[0.1, 1.0, 7.0] {
            let m = soliton_mass(2.0, w).unwrap();
            assert!((m - 3f64.sqrt() * PI / 2.0).abs() < 1e-12);
        }
        assert!(soliton_mass(1.0, 0.0).is_err());
    }

    #[test]
    fn mass_agrees_with_quadrature() {
        for &(s, w) in &[(0.5, 1.0), (1.0, 1.0 / 9.0), (1.5, 2.0), (2.0, 0.3)] {
            let p = SolitonProfile::new(s, w, 0.7).unwrap();
            assert!((quad_mass(&p) - soliton_mass(s, w).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn inversion_examples() {
        let p = soliton_by_mass(1.0, 4.0).unwrap();
        assert!((p.omega - 1.0).abs() < 1e-12);
        let p = soliton_by_mass(1.0, 4.0 / 3.0).unwrap();
        assert!((p.omega - 1.0 / 9.0).abs() < 1e-12);
        let m = soliton_mass(0.5, 1.0).unwrap();
        assert!((soliton_by_mass(0.5, m).unwrap().omega - 1.0).abs() < 1e-12);
        assert_eq!(soliton_by_mass(2.0, 1.0), Err(Error::CriticalSigma));
        assert!(soliton_by_mass(1.0, 0.0).is_err());
    }

    #[test]
    fn inversion_round_trip() {
        for &s in &[0.5, 1.0, 1.5] {
            for &w in &[0.01, 0.3, 1.0, 12.0] {
                let mu = soliton_mass(s, w).unwrap();
                let back = soliton_by_mass(s, mu).unwrap();
                assert!(((back.omega - w) / w).abs() < 1e-10);
                assert!(((back.mass().unwrap() - mu) / mu).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn energy_examples() {
        for &w in &[0.2, 1.0, 3.0] {
            let p = SolitonProfile::new(2.0, w, 0.0).unwrap();
            assert!(nls_energy(&p).unwrap().abs() < 1e-8);
        }
        let p = SolitonProfile::new(1.0, 1.0, 0.0).unwrap();
        assert!((nls_energy(&p).unwrap() + 2.0 / 3.0).abs() < 1e-8);
        // θ₁ = 1/96: E(φ_ω=1) = −2/3 at mass 4 = −θ·4³.
        assert!((energy_scaling_constant(1.0).unwrap() - 1.0 / 96.0).abs() < 1e-10);
    }

    #[test]
    fn translation_invariance() {
        for &shift in &[-3.0, -0.5, 0.0, 1.25, 4.0] {
            let p = SolitonProfile::new(1.0, 1.0, shift).unwrap();
            let q = SolitonProfile::new(1.0, 1.0, 0.0).unwrap();
            assert!((nls_energy(&p).unwrap() - nls_energy(&q).unwrap()).abs() < 1e-12);
            assert_eq!(p.mass().unwrap(), q.mass().unwrap());
        }
    }

    #[test]
    fn analytic_derivatives_match_differences() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let s = rng.gen_range(0.3..2.0);
            let w = rng.gen_range(0.2..3.0);
            let p = SolitonProfile::new(s, w, rng.gen_range(-1.0..1.0)).unwrap();
            let x = rng.gen_range(-3.0..3.0);
            let d1 = fd_derivative(|y| p.value(y), x, 1e-5).unwrap();
            assert!((d1 - p.derivative(x)).abs() < 1e-6);
            let d2 = fd_derivative(|y| p.derivative(y), x, 1e-5).unwrap();
            assert!((d2 - p.second_derivative(x)).abs() < 1e-6);
        }
    }

    #[test]
    fn mass_derivative_by_differences() {
        // d/dω 4√ω = 2 at ω = 1
        let d = fd_derivative(|w| soliton_mass(1.0, w).unwrap(), 1.0, 1e-4).unwrap();
        assert!((d - 2.0).abs() < 1e-6);
    }

    #[test]
    fn line_gn_constant_at_critical_power() {
        assert!((gn_line_constant(2.0).unwrap() - 4.0 / (PI * PI)).abs() < 1e-9);
    }
}
