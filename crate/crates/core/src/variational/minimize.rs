use serde::{Deserialize, Serialize};

use super::{dot, rearrange, solve_tridiagonal, GridFunction, Preconditioner, ReducedOps, DEFAULT_CELLS, DEFAULT_HALF_EXTENT};
use crate::critical::critical_data;
use crate::error::{Error, Result};
use crate::profiles::ModelParams;
use crate::stationary::StationaryState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOptions {
    pub half_extent: f64,
    pub cells: usize,
    pub max_iters: usize,
    /// Stop once `|E_{k−window} − E_k| ≤ rel_tol |E_k|`.
    pub rel_tol: f64,
    pub window: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            half_extent: DEFAULT_HALF_EXTENT,
            cells: DEFAULT_CELLS,
            max_iters: 20_000,
            rel_tol: 1e-12,
            window: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizationReport {
    pub final_state: GridFunction,
    /// Energy after each accepted step, starting with the initial guess.
    pub energy_history: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// `ω ≈ (‖u‖^{2σ+2}_{2σ+2} + α u(0⁻)² − ‖u'‖²) / μ`.
    pub lagrange_omega: f64,
    pub profile_error_l2: Option<f64>,
}

fn check_regime(params: &ModelParams, mu: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {mu}")));
    }
    if params.sigma < 2.0 {
        return Ok(());
    }
    let mu_star = critical_data(params.tau)?.mu_star;
    if params.alpha > 0.0 {
        if mu >= mu_star {
            return Err(Error::Unbounded { mu });
        }
    } else if mu > mu_star {
        return Err(Error::Unbounded { mu });
    } else {
        return Err(Error::NoMinimizer { mu });
    }
    Ok(())
}

fn default_guess(params: &ModelParams, opts: &MinimizeOptions) -> Result<GridFunction> {
    let tau = params.tau;
    GridFunction::from_fns(
        *params,
        opts.half_extent,
        opts.cells,
        |x| (x / 2.0).cosh().recip(),
        |x| tau * (x / 2.0).cosh().recip(),
    )
}

fn normalize(z: &mut [f64], mass_w: &[f64], mu: f64) -> Result<()> {
    let m: f64 = z.iter().zip(mass_w).map(|(v, w)| v * v * w).sum();
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::ZeroFunction);
    }
    let c = (mu / m).sqrt();
    z.iter_mut().for_each(|v| *v = (*v * c).abs());
    Ok(())
}

/// One Newton step on the Lagrange system `∇E(z) + ωMz = 0`, `zᵀMz = μ`.
/// The Hessian is tridiagonal, so the bordered system costs two solves.
#[allow(clippy::too_many_arguments)]
fn newton_step(
    u: &GridFunction,
    z: &[f64],
    g: &[f64],
    mz: &[f64],
    omega: f64,
    ops: &ReducedOps,
    mass_w: &[f64],
    mu: f64,
) -> Option<Vec<f64>> {
    let n = u.cells();
    let ModelParams { sigma, tau, alpha } = u.params;
    let (mut diag, off) = ops.kinetic_bands();
    let curv = |v: f64| (2.0 * sigma + 1.0) * v.abs().powf(2.0 * sigma);
    for (k, d) in diag.iter_mut().enumerate() {
        let v = z[k];
        *d += omega * mass_w[k];
        *d -= if k == n - 1 {
            0.5 * u.h * (curv(v) + tau * tau * curv(tau * v)) + alpha
        } else {
            u.h * curv(v)
        };
    }
    let r: Vec<f64> = g.iter().zip(mz).map(|(a, b)| -(a + omega * b)).collect();
    let y1 = solve_tridiagonal(&diag, &off, &r);
    let y2 = solve_tridiagonal(&diag, &off, mz);
    let c = dot(z, mz) - mu;
    let d_omega = (2.0 * dot(mz, &y1) + c) / (2.0 * dot(mz, &y2));
    let zt: Vec<f64> = z.iter().zip(y1.iter().zip(&y2)).map(|(a, (p, q))| a + p - d_omega * q).collect();
    zt.iter().all(|v| v.is_finite()).then_some(zt)
}

/// Minimizes the discrete energy on the sphere `‖u‖² = μ`.
///
/// The start is `|init|` rearranged (or a symmetric bump with the jump if no
/// guess is given). Each step follows the tangential part of the gradient in
/// the discrete `H¹` metric `K + cM`, backtracks until the energy drops and
/// rescales to mass `μ`. A constrained Newton step is tried first and kept
/// only when it lowers the energy, which removes the slow tail of plain
/// descent near the minimizer.
pub fn minimize_energy(
    params: &ModelParams,
    mu: f64,
    init: Option<&GridFunction>,
    reference: Option<&StationaryState>,
    opts: &MinimizeOptions,
) -> Result<MinimizationReport> {
    params.validate()?;
    check_regime(params, mu)?;
    let start = match init {
        Some(g) => {
            let mut g = g.abs();
            g.params = *params;
            g.validate()?;
            g
        }
        None => default_guess(params, opts)?,
    };
    let start = rearrange(&start).unwrap_or(start);

    let n = start.cells();
    let ops = ReducedOps::new(n, start.h, params.tau);
    let mass_w = ops.mass_diag();
    let mut u = start;
    let mut z = u.reduced();
    normalize(&mut z, &mass_w, mu)?;
    u.set_reduced(&z);

    let mut energy = u.energy();
    let mut history = vec![energy];
    let mut shift = 1.0;
    let mut step: f64 = 1.0;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        iterations += 1;
        let g = u.energy_gradient();
        let mz: Vec<f64> = z.iter().zip(&mass_w).map(|(v, w)| v * w).collect();
        let pre = Preconditioner::new(&ops, shift);
        let d1 = pre.solve(&g);
        let d2 = pre.solve(&mz);
        let lambda = dot(&mz, &d1) / dot(&mz, &d2);
        let dir: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a - lambda * b).collect();
        // λ ≈ −ω near a critical point
        shift = (-lambda).clamp(1e-3, 1e3);

        let mut trial = u.clone();
        let mut accepted = None;
        if let Some(mut zt) = newton_step(&u, &z, &g, &mz, shift, &ops, &mass_w, mu) {
            if normalize(&mut zt, &mass_w, mu).is_ok() {
                trial.set_reduced(&zt);
                let e = trial.energy();
                if e < energy {
                    accepted = Some((zt, e));
                }
            }
        }
        if accepted.is_none() {
            step = (step * 2.0).min(4.0);
            for _ in 0..60 {
                let mut zt: Vec<f64> = z.iter().zip(&dir).map(|(a, d)| a - step * d).collect();
                normalize(&mut zt, &mass_w, mu)?;
                trial.set_reduced(&zt);
                let e = trial.energy();
                if e < energy {
                    accepted = Some((zt, e));
                    break;
                }
                step *= 0.5;
            }
        }
        let Some((zt, e)) = accepted else {
            converged = true;
            break;
        };
        z = zt;
        u = trial;
        energy = e;
        history.push(energy);
        let k = history.len();
        if k > opts.window && (history[k - 1 - opts.window] - energy).abs() <= opts.rel_tol * energy.abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NotConverged { iterations });
    }

    let pw = 2.0 * params.sigma + 2.0;
    let a = u.at_origin_left();
    let lagrange_omega = (u.lp_pow(pw) + params.alpha * a * a - u.kinetic()) / u.mass();
    Ok(MinimizationReport {
        profile_error_l2: reference.map(|s| u.l2_distance_to(s)),
        final_state: u,
        energy_history: history,
        converged,
        iterations,
        lagrange_omega,
    })
}
