use std::path::PathBuf;

use serde::Serialize;

use ptnls_core::stationary::{multiplicity, Thresholds};
use ptnls_core::variational::{minimize_energy, MinimizeOptions, DEFAULT_CELLS, DEFAULT_HALF_EXTENT};
use ptnls_core::verify::check_ids;
use ptnls_core::{
    classify_mass_regime, critical_data, identify_ground_state, run_checks, solve_branch, sweep_branches, Branch,
    CriticalData, GridFunction, GroundState, Infimum, ModelParams, RegimeReport, StationaryState, SweepSpec,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{ensure_dir, to_json, write_branch_csv, write_profile_csv, write_text};
use crate::svg::{line_plot, Series, COLORS};

fn params(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    let sigma = RunConfig::require(cfg.sigma, "sigma")?;
    let tau = RunConfig::require(cfg.tau, "tau")?;
    let alpha = RunConfig::require(cfg.alpha, "alpha")?;
    Ok(ModelParams::new(sigma, tau, alpha)?)
}

fn minimize_options(cfg: &RunConfig) -> MinimizeOptions {
    let d = MinimizeOptions::default();
    MinimizeOptions {
        half_extent: cfg.half_extent.unwrap_or(d.half_extent),
        cells: cfg.cells.unwrap_or(d.cells),
        max_iters: cfg.max_iters.unwrap_or(d.max_iters),
        ..d
    }
}

fn grid_size(cfg: &RunConfig) -> Result<(f64, usize), CliError> {
    let x = cfg.half_extent.unwrap_or(DEFAULT_HALF_EXTENT);
    let n = cfg.cells.unwrap_or(DEFAULT_CELLS);
    if !(x > 0.0) || !x.is_finite() || n < 2 {
        return Err(CliError::Config(format!("bad grid: half extent {x}, {n} cells")));
    }
    Ok((x, n))
}

fn infimum_text(inf: Infimum) -> &'static str {
    match inf {
        Infimum::Zero => "0",
        Infimum::FiniteNegative => "finite and negative",
        Infimum::NegativeInfinity => "-inf",
    }
}

pub fn branch(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let p = params(cfg)?;
    let spec = SweepSpec {
        omega_min: RunConfig::require(cfg.omega_min, "omega_min")?,
        omega_max: RunConfig::require(cfg.omega_max, "omega_max")?,
        omega_step: RunConfig::require(cfg.omega_step, "omega_step")?,
    };
    let formats = cfg.formats("csv")?;
    let rows = sweep_branches(&p, &spec)?;
    let dir = cfg.out_dir();
    ensure_dir(&dir)?;
    let mut written = Vec::new();
    if formats.csv {
        written.push(write_branch_csv(&dir.join("branch.csv"), &rows)?);
    }
    if formats.json {
        written.push(write_text(&dir.join("branch.json"), &to_json(&rows)?)?);
    }
    if formats.svg {
        let series: Vec<Series> = Branch::BOTH
            .iter()
            .enumerate()
            .map(|(k, &b)| Series {
                label: format!("branch {b}"),
                color: COLORS[k],
                points: rows.iter().filter(|r| r.branch == b).map(|r| (r.omega, r.mass)).collect(),
            })
            .collect();
        let title = format!("mass along the branches (sigma={}, tau={}, alpha={})", p.sigma, p.tau, p.alpha);
        written.push(write_text(&dir.join("branch.svg"), &line_plot(&title, "omega", "mass", &series))?);
    }
    Ok(written)
}

#[derive(Serialize)]
struct GroundStateMeta {
    params: ModelParams,
    mu: f64,
    branch: Branch,
    omega: f64,
    mass: f64,
    energy: f64,
    t_minus: f64,
    t_plus: f64,
    x_minus: f64,
    x_plus: f64,
    thresholds: Thresholds,
    critical: Option<CriticalData>,
    regime: Option<RegimeReport>,
    profile_error_l2: Option<f64>,
    verify_note: Option<String>,
}

fn regime(p: &ModelParams, mu: f64) -> Result<(Option<CriticalData>, Option<RegimeReport>), CliError> {
    if p.is_critical() {
        Ok((Some(critical_data(p.tau)?), Some(classify_mass_regime(p, mu)?)))
    } else {
        Ok((None, None))
    }
}

pub fn ground_state(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let p = params(cfg)?;
    let mu = RunConfig::require(cfg.mu, "mu")?;
    let formats = cfg.formats("csv,json")?;
    let (half_extent, cells) = grid_size(cfg)?;
    let state = match identify_ground_state(&p, mu)? {
        GroundState::Found(s) => s,
        GroundState::Absent { infimum, reason } => {
            return Err(CliError::NoSolution(format!(
                "no ground state at mass {mu}: infimum is {}; {reason}",
                infimum_text(infimum)
            )))
        }
    };
    let (profile_error_l2, verify_note) = if cfg.verify {
        match minimize_energy(&p, mu, None, Some(&state), &minimize_options(cfg)) {
            Ok(r) => (r.profile_error_l2, None),
            // the critical dipole ground state sits at a single mass and is not a descent limit
            Err(e @ (ptnls_core::Error::NoMinimizer { .. } | ptnls_core::Error::Unbounded { .. })) => {
                (None, Some(format!("minimization skipped: {e}")))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    let (critical, regime) = regime(&p, mu)?;
    let meta = GroundStateMeta {
        params: p,
        mu,
        branch: state.branch,
        omega: state.omega,
        mass: state.mass,
        energy: state.energy,
        t_minus: state.t_minus,
        t_plus: state.t_plus,
        x_minus: state.x_minus,
        x_plus: state.x_plus,
        thresholds: Thresholds::new(&p)?,
        critical,
        regime,
        profile_error_l2,
        verify_note,
    };
    let dir = cfg.out_dir();
    ensure_dir(&dir)?;
    let mut written = Vec::new();
    if formats.json {
        written.push(write_text(&dir.join("ground_state.json"), &to_json(&meta)?)?);
    }
    if formats.csv {
        let g = GridFunction::sample_state(&state, half_extent, cells)?;
        written.push(write_profile_csv(&dir.join("ground_state.csv"), &g)?);
    }
    if formats.svg {
        written.push(write_text(&dir.join("ground_state.svg"), &profile_svg(&[state], half_extent)?)?);
    }
    Ok(written)
}

#[derive(Serialize)]
struct MinimizeSummary {
    params: ModelParams,
    mu: f64,
    options: MinimizeOptions,
    converged: bool,
    iterations: usize,
    mass: f64,
    energy: f64,
    initial_energy: f64,
    lagrange_omega: f64,
    reference_omega: Option<f64>,
    reference_energy: Option<f64>,
    profile_error_l2: Option<f64>,
}

pub fn minimize(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let p = params(cfg)?;
    let mu = RunConfig::require(cfg.mu, "mu")?;
    let formats = cfg.formats("csv,json")?;
    let opts = minimize_options(cfg);
    grid_size(cfg)?;
    let reference = match identify_ground_state(&p, mu)? {
        GroundState::Found(s) => Some(s),
        GroundState::Absent { .. } => None,
    };
    let report = minimize_energy(&p, mu, None, reference.as_ref(), &opts)?;
    let u = &report.final_state;
    let summary = MinimizeSummary {
        params: p,
        mu,
        options: opts,
        converged: report.converged,
        iterations: report.iterations,
        mass: u.mass(),
        energy: u.energy(),
        initial_energy: report.energy_history[0],
        lagrange_omega: report.lagrange_omega,
        reference_omega: reference.map(|s| s.omega),
        reference_energy: reference.map(|s| s.energy),
        profile_error_l2: report.profile_error_l2,
    };
    let dir = cfg.out_dir();
    ensure_dir(&dir)?;
    let mut written = Vec::new();
    if formats.json {
        written.push(write_text(&dir.join("minimize.json"), &to_json(&summary)?)?);
    }
    if formats.csv {
        written.push(write_profile_csv(&dir.join("minimize.csv"), u)?);
    }
    if formats.svg {
        let pts = (0..u.left.len())
            .map(|i| (u.left_x(i), u.left[i]))
            .chain((0..u.right.len()).map(|j| (u.right_x(j), u.right[j])))
            .collect();
        let series = [Series {
            label: "minimizer".into(),
            color: COLORS[0],
            points: pts,
        }];
        let title = format!("discrete minimizer at mass {mu}");
        written.push(write_text(&dir.join("minimize.svg"), &line_plot(&title, "x", "u", &series))?);
    }
    Ok(written)
}

pub fn critical(cfg: &RunConfig) -> Result<String, CliError> {
    let tau = RunConfig::require(cfg.tau, "tau")?;
    to_json(&critical_data(tau)?)
}

pub fn verify(cfg: &RunConfig) -> Result<String, CliError> {
    let ids = cfg.check_ids()?;
    if let Some(ids) = &ids {
        let known = check_ids();
        if let Some(bad) = ids.iter().find(|i| !known.contains(i)) {
            return Err(CliError::Config(format!("unknown check id {bad}")));
        }
    }
    let outcomes = run_checks(ids.as_deref());
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(4);
    let mut table = String::new();
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        table.push_str(&format!("{:>2}  {mark}  {:<width$}  {}\n", o.id, o.name, o.detail));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    table.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
    if failed > 0 {
        print!("{table}");
        return Err(CliError::Verification(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(table)
}

fn profile_svg(states: &[StationaryState], half_extent: f64) -> Result<String, CliError> {
    const SAMPLES: usize = 800;
    let series = states
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let left = (0..=SAMPLES).map(|i| {
                let x = -half_extent * (1.0 - i as f64 / SAMPLES as f64);
                (x, s.left_profile().value(x))
            });
            let right = (0..=SAMPLES).map(|i| {
                let x = half_extent * i as f64 / SAMPLES as f64;
                (x, s.right_profile().value(x))
            });
            Series {
                label: format!("branch {}, mass {:.4}", s.branch, s.mass),
                color: COLORS[k % COLORS.len()],
                points: left.chain(right).collect(),
            }
        })
        .collect::<Vec<_>>();
    let p = states.first().map(|s| (s.params, s.omega));
    let title = match p {
        Some((p, w)) => format!("profiles at omega={w} (sigma={}, tau={}, alpha={})", p.sigma, p.tau, p.alpha),
        None => "profiles".into(),
    };
    Ok(line_plot(&title, "x", "u", &series))
}

pub fn plot(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let p = params(cfg)?;
    let omega = RunConfig::require(cfg.omega, "omega")?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(CliError::Config(format!("omega must be positive, got {omega}")));
    }
    let count = multiplicity(&p, omega);
    if count == 0 {
        return Err(CliError::NoSolution(format!("no positive stationary state at omega = {omega}")));
    }
    let states = Branch::BOTH
        .into_iter()
        .take(count)
        .map(|b| solve_branch(&p, omega, b))
        .collect::<Result<Vec<_>, _>>()?;
    let reach = states.iter().map(|s| s.x_minus.abs().max(s.x_plus.abs())).fold(0.0, f64::max);
    let half_extent = cfg.half_extent.unwrap_or(reach + 6.0 / (p.sigma * omega.sqrt()));
    let dir = cfg.out_dir();
    ensure_dir(&dir)?;
    Ok(vec![write_text(&dir.join("profiles.svg"), &profile_svg(&states, half_extent)?)?])
}
