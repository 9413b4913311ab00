//! Frequency sweeps over both branches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::ModelParams;
use crate::stationary::{multiplicity, solve_branch, Branch};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_step: f64,
}

impl SweepSpec {
    /// Frequencies `ω_min + kΔ` up to `ω_max` (inclusive up to rounding).
    pub fn grid(&self) -> Result<Vec<f64>> {
        let SweepSpec {
            omega_min,
            omega_max,
            omega_step,
        } = *self;
        if !(omega_step > 0.0) || !omega_step.is_finite() {
            return Err(Error::Domain(format!("omega step must be positive, got {omega_step}")));
        }
        if !(omega_min > 0.0) || !omega_max.is_finite() || omega_max < omega_min {
            return Err(Error::Domain(format!(
                "empty frequency range [{omega_min}, {omega_max}]"
            )));
        }
        let n = ((omega_max - omega_min) / omega_step * (1.0 + 1e-12)).floor() as usize;
        if n > 10_000_000 {
            return Err(Error::Domain(format!("sweep has {n} points, too many")));
        }
        Ok((0..=n).map(|k| omega_min + k as f64 * omega_step).collect())
    }
}

/// Residuals above this mark a row as suspect.
pub const RESIDUAL_FLAG: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub branch: Branch,
    pub omega: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub mass: f64,
    pub energy: f64,
    pub jump_res: f64,
    pub flux_res: f64,
    pub flagged: bool,
}

/// One row per frequency per existing branch, sorted by `ω` then branch.
pub fn sweep_branches(params: &ModelParams, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    params.validate()?;
    let jobs: Vec<(f64, Branch)> = spec
        .grid()?
        .into_iter()
        .flat_map(|w| {
            let m = multiplicity(params, w);
            Branch::BOTH.into_iter().take(m).map(move |b| (w, b))
        })
        .collect();
    jobs.par_iter()
        .map(|&(w, b)| {
            let s = solve_branch(params, w, b)?;
            let jump_res = s.jump_residual();
            let flux_res = s.flux_residual();
            Ok(SweepRow {
                branch: b,
                omega: w,
                t_minus: s.t_minus,
                t_plus: s.t_plus,
                x_minus: s.x_minus,
                x_plus: s.x_plus,
                mass: s.mass,
                energy: s.energy,
                jump_res,
                flux_res,
                flagged: jump_res.abs() >= RESIDUAL_FLAG || flux_res.abs() >= RESIDUAL_FLAG,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_respected() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        let spec = SweepSpec {
            omega_min: 0.05,
            omega_max: 1.0,
            omega_step: 0.05,
        };
        let rows = sweep_branches(&p, &spec).unwrap();
        assert_eq!(rows.iter().filter(|r| r.branch == Branch::L).count(), 20);
        assert!(rows.iter().filter(|r| r.branch == Branch::R).all(|r| r.omega > 1.0 / 9.0));
        assert_eq!(rows.iter().filter(|r| r.branch == Branch::R).count(), 18);
        assert!(rows.windows(2).all(|w| w[0].omega <= w[1].omega));
        assert!(rows.iter().all(|r| !r.flagged));
    }

    #[test]
    fn dipole_masses_constant() {
        let p = ModelParams::new(2.0, 2.0, 0.0).unwrap();
        let spec = SweepSpec {
            omega_min: 0.2,
            omega_max: 3.0,
            omega_step: 0.4,
        };
        let rows = sweep_branches(&p, &spec).unwrap();
        for b in Branch::BOTH {
            let m: Vec<f64> = rows.iter().filter(|r| r.branch == b).map(|r| r.mass).collect();
            assert!(m.iter().all(|x| (x - m[0]).abs() < 1e-10));
        }
    }

    #[test]
    fn empty_range_rejected() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        for spec in [
            SweepSpec { omega_min: 1.0, omega_max: 0.5, omega_step: 0.1 },
            SweepSpec { omega_min: 0.1, omega_max: 0.5, omega_step: 0.0 },
        ] {
            assert!(matches!(sweep_branches(&p, &spec), Err(Error::Domain(_))));
        }
    }
}
