use serde::{Deserialize, Serialize};

use super::{GridFunction, DEFAULT_CELLS};
use crate::error::{Error, Result};
use crate::oracle::tail_cutoff;
use crate::profiles::{nls_energy, soliton_by_mass, ModelParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Competitor {
    pub v: GridFunction,
    /// Mass carried by the positive half-line.
    pub nu: f64,
    /// `E₀(v)` from the two half-solitons.
    pub energy: f64,
    /// `E_NLS(φ_μ) − E₀(v)`.
    pub energy_gap: f64,
}

/// Half of the soliton of mass `2(μ−ν)` on the negative side glued to half of
/// the soliton of mass `2ν` on the positive side, `ν = τ^{2−σ}μ/(1+τ^{2−σ})`.
/// The amplitudes then differ by exactly the factor `τ`.
pub fn subcritical_competitor(sigma: f64, tau: f64, mu: f64) -> Result<Competitor> {
    if !(sigma > 0.0 && sigma < 2.0) {
        return Err(Error::Domain(format!("sigma must lie in (0, 2), got {sigma}")));
    }
    let params = ModelParams::new(sigma, tau, 0.0)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {mu}")));
    }
    let r = tau.powf(2.0 - sigma);
    let nu = r * mu / (1.0 + r);
    let left = soliton_by_mass(sigma, 2.0 * (mu - nu))?;
    let right = soliton_by_mass(sigma, 2.0 * nu)?;
    let whole = soliton_by_mass(sigma, mu)?;

    let energy = 0.5 * (nls_energy(&left)? + nls_energy(&right)?);
    let energy_gap = nls_energy(&whole)? - energy;
    let half_extent = tail_cutoff(sigma, left.omega.min(right.omega));
    let v = GridFunction::from_fns(params, half_extent, DEFAULT_CELLS, |x| left.value(x), |x| right.value(x))?;
    Ok(Competitor {
        v,
        nu,
        energy,
        energy_gap,
    })
}
