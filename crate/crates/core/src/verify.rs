//! Numbered self-checks of the whole library.
//!
//! Each check recomputes a known value or property through an independent
//! route (closed form vs quadrature, finite differences, direct
//! minimization, random sampling) and reports pass/fail with a short detail.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical::{classify_mass_regime, critical_data, dipole_critical_states, Infimum};
use crate::error::Result;
use crate::oracle::fd_derivative;
use crate::profiles::{gn_line_constant, soliton_mass, ModelParams};
use crate::stationary::{
    branch_mass, branch_mass_derivative, excited_threshold_mass, multiplicity, solve_branch, state_by_mass, Branch,
    Thresholds,
};
use crate::variational::{
    gn_quotient, maximize_gn_quotient, minimize_energy, random_bump_function, rearrange, subcritical_competitor,
    GnAscentOptions, GridFunction, MinimizeOptions, RandomShape,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn() -> Result<(bool, String)>;

const CHECKS: [(u32, &str, CheckFn); 14] = [
    (1, "critical constants", check_critical_constants),
    (2, "critical mass sum", check_mass_sum),
    (3, "subcritical threshold", check_subcritical_threshold),
    (4, "multiplicity boundaries", check_multiplicity),
    (5, "closed form vs quadrature", check_quadrature),
    (6, "mass derivative", check_mass_derivative),
    (7, "boundary and E-L residuals", check_residuals),
    (8, "translation anchor", check_translations),
    (9, "variational cross-check", check_minimizer),
    (10, "GN optimality", check_gn_optimality),
    (11, "GN inequality suites", check_inequalities),
    (12, "rearrangement", check_rearrangement),
    (13, "subcritical competitor", check_competitor),
    (14, "regime table", check_regimes),
];

pub fn check_ids() -> Vec<u32> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs the selected checks (all when `ids` is `None`), in id order.
pub fn run_checks(ids: Option<&[u32]>) -> Vec<CheckOutcome> {
    let chosen: Vec<_> = CHECKS
        .iter()
        .filter(|(id, _, _)| ids.is_none_or(|s| s.contains(id)))
        .collect();
    chosen
        .par_iter()
        .map(|&&(id, name, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                id,
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}

fn params(s: f64, t: f64, a: f64) -> Result<ModelParams> {
    ModelParams::new(s, t, a)
}

fn check_critical_constants() -> Result<(bool, String)> {
    let one = critical_data(1.0)?;
    let big = critical_data(1e6)?;
    let e1 = (one.mu_star - 3f64.sqrt() * PI / 2.0).abs();
    let e2 = (one.k_tau - 4.0 / (PI * PI)).abs();
    let e3 = (big.mu_star - 3f64.sqrt() * PI / 4.0).abs();
    Ok((
        e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-6,
        format!("|mu*(1)-sqrt3 pi/2|={e1:.1e} |K(1)-4/pi^2|={e2:.1e} |mu*(1e6)-sqrt3 pi/4|={e3:.1e}"),
    ))
}

fn check_mass_sum() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for k in 1..=20 {
        let tau = 1.0 + 99.0 * k as f64 / 20.0;
        let c = critical_data(tau)?;
        worst = worst.max((c.mu_star + c.mu_tilde - 3f64.sqrt() * PI).abs());
    }
    Ok((worst < 1e-12, format!("max |mu*+mu~-sqrt3 pi| = {worst:.1e} over 20 tau")))
}

fn check_subcritical_threshold() -> Result<(bool, String)> {
    let p = params(1.0, 2.0, 1.0)?;
    let direct = excited_threshold_mass(&p)?;
    let sol = soliton_mass(1.0, 1.0 / 9.0)?;
    let th = Thresholds::new(&p)?;
    let near = branch_mass(&p, th.omega_res * (1.0 + 1e-8), Branch::R)?;
    let e1 = (direct - sol).abs().max((direct - 4.0 / 3.0).abs());
    let e2 = (near - 4.0 / 3.0).abs();
    Ok((e1 < 1e-10 && e2 < 1e-4, format!("mu_alpha err {e1:.1e}; R mass near resonance err {e2:.1e}")))
}

fn check_multiplicity() -> Result<(bool, String)> {
    let p = params(1.0, 2.0, 1.0)?;
    let probes = [0.04 - 1e-9, 0.04 + 1e-9, 1.0 / 9.0 - 1e-9, 1.0 / 9.0 + 1e-9];
    let got: Vec<usize> = probes.iter().map(|&w| multiplicity(&p, w)).collect();
    Ok((got == [0, 1, 1, 2], format!("counts {got:?}")))
}

fn check_quadrature() -> Result<(bool, String)> {
    let mut worst_mass: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    let mut count = 0;
    for &tau in &[1.5, 2.0, 4.0] {
        for &alpha in &[0.0, 0.5, 1.5] {
            for &omega in &[0.5, 1.0, 3.0] {
                for &sigma in &[1.0, 2.0] {
                    let p = params(sigma, tau, alpha)?;
                    for b in Branch::BOTH {
                        if let Ok(s) = solve_branch(&p, omega, b) {
                            worst_mass = worst_mass.max((s.mass - s.mass_by_quadrature()?).abs());
                            count += 1;
                        }
                    }
                }
                if alpha == 0.0 {
                    let (u1, u2) = dipole_critical_states(tau, omega)?;
                    worst_energy = worst_energy.max(u1.energy.abs()).max(u2.energy.abs());
                }
            }
        }
    }
    Ok((
        worst_mass < 1e-8 && worst_energy < 1e-8,
        format!("{count} states: max mass gap {worst_mass:.1e}; max dipole energy {worst_energy:.1e}"),
    ))
}

/// Random `(params, ω, branch)` with the branch present and `ω` moderate.
fn random_point(rng: &mut StdRng) -> Result<(ModelParams, f64, Branch)> {
    let sigma = rng.gen_range(0.3..=2.0);
    let tau = rng.gen_range(1.2..4.0);
    let alpha = rng.gen_range(0.05..2.0);
    let p = params(sigma, tau, alpha)?;
    let branch = if rng.gen_bool(0.5) { Branch::L } else { Branch::R };
    let thr = Thresholds::new(&p)?.for_branch(branch);
    let omega = thr + rng.gen_range(0.1..3.0) * thr.max(0.2);
    Ok((p, omega, branch))
}

fn check_mass_derivative() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut all_positive = true;
    for _ in 0..50 {
        let (p, w, b) = random_point(&mut rng)?;
        let exact = branch_mass_derivative(&p, w, b)?;
        let fd = fd_derivative(|x| branch_mass(&p, x, b).unwrap_or(f64::NAN), w, 1e-4 * w)?;
        worst = worst.max(((exact - fd) / exact).abs());
        all_positive &= exact > 0.0;
    }
    Ok((
        worst < 1e-6 && all_positive,
        format!("max relative gap {worst:.1e}; all positive: {all_positive}"),
    ))
}

fn check_residuals() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(77);
    let (mut flux, mut el): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let (p, w, b) = random_point(&mut rng)?;
        let s = solve_branch(&p, w, b)?;
        flux = flux.max(s.flux_residual().abs()).max(s.jump_residual().abs());
        for _ in 0..50 {
            let mut x: f64 = rng.gen_range(-5.0..5.0);
            if x == 0.0 {
                x = 0.1;
            }
            el = el.max(s.el_residual(x).abs());
        }
    }
    Ok((
        flux < 1e-10 && el < 1e-8,
        format!("50 states: max boundary residual {flux:.1e}; max E-L residual {el:.1e}"),
    ))
}

fn check_translations() -> Result<(bool, String)> {
    let p = params(2.0, 1.2, 0.0)?;
    let l = solve_branch(&p, 0.25, Branch::L)?;
    let r = solve_branch(&p, 0.25, Branch::R)?;
    let ok = (l.x_plus + 0.648).abs() < 5e-3
        && (l.x_minus + 1.161).abs() < 5e-3
        && (r.x_plus - 0.648).abs() < 5e-3
        && (r.x_minus - 1.161).abs() < 5e-3;
    Ok((
        ok,
        format!(
            "L: x+={:.4} x-={:.4}; R: x+={:.4} x-={:.4}",
            l.x_plus, l.x_minus, r.x_plus, r.x_minus
        ),
    ))
}

fn check_minimizer() -> Result<(bool, String)> {
    let p = params(1.0, 2.0, 1.0)?;
    let s = state_by_mass(&p, 1.0, Branch::L)?;
    let r = minimize_energy(&p, 1.0, None, Some(&s), &MinimizeOptions::default())?;
    let err = r.profile_error_l2.unwrap_or(f64::INFINITY);
    let gap = (r.final_state.energy() - s.energy).abs();
    let rel = ((r.lagrange_omega - s.omega) / s.omega).abs();
    Ok((
        r.converged && err < 1e-2 && gap < 1e-3 && rel < 1e-2,
        format!(
            "{} iterations; L2 error {err:.1e}; energy gap {gap:.1e}; omega {:.6} vs {:.6}",
            r.iterations, r.lagrange_omega, s.omega
        ),
    ))
}

fn check_gn_optimality() -> Result<(bool, String)> {
    let k = critical_data(2.0)?.k_tau;
    let asc = maximize_gn_quotient(2.0, None, &GnAscentOptions::default())?;
    let (u1, _) = dipole_critical_states(2.0, 1.0)?;
    let sampled = gn_quotient(&GridFunction::sample_state(&u1, 20.0, 4000)?)?;
    let rel = (asc.quotient / k - 1.0).abs();
    let gap = (sampled - k).abs();
    Ok((
        rel < 1e-2 && gap < 1e-3,
        format!(
            "ascent {:.6} ({} steps) vs K={k:.6}; sampled u1 {sampled:.6}",
            asc.quotient, asc.iterations
        ),
    ))
}

/// Violation counts of the three GN-type inequalities on 100 random functions each.
pub fn inequality_violations(seed: u64, samples: usize) -> Result<[usize; 3]> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (x, n) = (12.0, 1200);
    let mut bad = [0usize; 3];
    for _ in 0..samples {
        let sigma = rng.gen_range(0.2..2.0);
        let tau = rng.gen_range(1.05..4.0);
        let p = params(sigma, tau, 0.0)?;
        let u = random_bump_function(&p, x, n, &mut rng, RandomShape::General)?;
        let pw = 2.0 * sigma + 2.0;
        let c = 2f64.powf(0.5 * sigma + 1.0) * gn_line_constant(sigma)?;
        if u.lp_pow(pw) > c * u.kinetic().powf(0.5 * sigma) * u.mass().powf(0.5 * sigma + 1.0) {
            bad[0] += 1;
        }
    }
    for _ in 0..samples {
        let tau = rng.gen_range(1.05..4.0);
        let p = params(2.0, tau, 0.0)?;
        let u = random_bump_function(&p, x, n, &mut rng, RandomShape::VanishingAtOrigin)?;
        let m = u.mass();
        if u.lp_pow(6.0) > 4.0 / (PI * PI) * m * m * u.kinetic() * (1.0 + 10.0 * u.h) {
            bad[1] += 1;
        }
    }
    for _ in 0..samples {
        let tau: f64 = rng.gen_range(1.05..4.0);
        let p = params(2.0, tau, 0.0)?;
        let u = random_bump_function(&p, x, n, &mut rng, RandomShape::General)?;
        let lhs = u.lp_pow(6.0) + (tau.powi(8) - 1.0) * u.left_lp_pow(6.0);
        let m = u.mass() + (tau.powi(4) - 1.0) * u.left_mass();
        if lhs > 4.0 / (PI * PI) * m * m * u.kinetic() * (1.0 + 10.0 * u.h) {
            bad[2] += 1;
        }
    }
    Ok(bad)
}

fn check_inequalities() -> Result<(bool, String)> {
    let bad = inequality_violations(99, 100)?;
    Ok((
        bad == [0, 0, 0],
        format!("violations: subcritical {}, vanishing-origin {}, modified {}", bad[0], bad[1], bad[2]),
    ))
}

fn check_rearrangement() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(12);
    let (mut mass_gap, mut worst_rise): (f64, f64) = (0.0, f64::NEG_INFINITY);
    let mut ok = true;
    for _ in 0..50 {
        let sigma = rng.gen_range(0.5..=2.0);
        let tau = rng.gen_range(1.1..3.0);
        let alpha = rng.gen_range(0.0..2.0);
        let p = params(sigma, tau, alpha)?;
        let u = random_bump_function(&p, 15.0, 1500, &mut rng, RandomShape::Nonnegative)?;
        let r = rearrange(&u)?;
        let dm = (r.mass() - u.mass()).abs();
        let rise = r.energy() - u.energy();
        mass_gap = mass_gap.max(dm);
        worst_rise = worst_rise.max(rise);
        ok &= dm <= u.h && rise <= 1e-12 * u.energy().abs().max(1.0);
    }
    let p = params(1.0, 2.0, 1.0)?;
    let excited = GridFunction::sample_state(&solve_branch(&p, 1.0, Branch::R)?, 30.0, 3000)?;
    let drop = excited.energy() - rearrange(&excited)?.energy();
    ok &= drop > 0.0;
    Ok((
        ok,
        format!("max mass change {mass_gap:.1e}; max energy change {worst_rise:.1e}; R-state drop {drop:.4}"),
    ))
}

fn check_competitor() -> Result<(bool, String)> {
    let c = subcritical_competitor(1.0, 2.0, 1.0)?;
    let jump = c.v.jump_residual().abs();
    Ok((
        c.energy_gap > 0.0 && jump < 1e-12,
        format!("nu={:.6} gap={:.3e} jump residual {jump:.1e}", c.nu, c.energy_gap),
    ))
}

/// Expected (infimum, ground state, excited state) at the six probe masses.
fn expected_row(alpha_positive: bool, probe: usize) -> (Infimum, bool, bool) {
    use Infimum::*;
    const DIPOLE: [(Infimum, bool, bool); 6] = [
        (Zero, false, false),
        (Zero, true, false),
        (NegativeInfinity, false, false),
        (NegativeInfinity, false, false),
        (NegativeInfinity, false, false),
        (NegativeInfinity, false, false),
    ];
    const GENERAL: [(Infimum, bool, bool); 6] = [
        (FiniteNegative, true, false),
        (NegativeInfinity, false, false),
        (NegativeInfinity, false, false),
        (NegativeInfinity, false, true),
        (NegativeInfinity, false, true),
        (NegativeInfinity, false, false),
    ];
    if alpha_positive {
        GENERAL[probe]
    } else {
        DIPOLE[probe]
    }
}

fn check_regimes() -> Result<(bool, String)> {
    let mut mismatches = Vec::new();
    for &tau in &[1.5, 2.0, 5.0] {
        let c = critical_data(tau)?;
        let probes = [
            0.5 * c.mu_star,
            c.mu_star,
            0.5 * (c.mu_star + c.mu_line),
            c.mu_line + 0.1,
            c.mu_tilde - 0.01,
            c.mu_tilde + 0.1,
        ];
        for &alpha in &[0.0, 1.0] {
            let p = params(2.0, tau, alpha)?;
            for (k, &mu) in probes.iter().enumerate() {
                let r = classify_mass_regime(&p, mu)?;
                let want = expected_row(alpha > 0.0, k);
                let mut ok = (r.infimum, r.ground_state, r.excited_state) == want
                    && r.no_stationary_state == (!want.1 && !want.2);
                if alpha > 0.0 {
                    // the closed-form branches must agree with the table
                    ok &= state_by_mass(&p, mu, Branch::L).is_ok() == want.1;
                    ok &= state_by_mass(&p, mu, Branch::R).is_ok() == want.2;
                }
                if !ok {
                    mismatches.push(format!("tau={tau} alpha={alpha} probe {k}"));
                }
            }
        }
    }
    Ok((
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "36 rows match".to_string()
        } else {
            format!("mismatches: {}", mismatches.join(", "))
        },
    ))
}
