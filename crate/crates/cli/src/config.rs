use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::error::CliError;

/// Flags shared by every subcommand. Each one may also come from the JSON
/// config file under the same name with underscores; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Nonlinearity power, 0 < sigma <= 2
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Jump ratio u(0+) = tau u(0-), tau > 1
    #[arg(long)]
    pub tau: Option<f64>,
    /// Delta strength, alpha >= 0
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Mass for lookups and minimization
    #[arg(long)]
    pub mu: Option<f64>,
    /// Frequency for single-state output (plot)
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega_min: Option<f64>,
    #[arg(long)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub omega_step: Option<f64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg
    #[arg(long)]
    pub format: Option<String>,
    /// Cross-check the closed form by direct minimization
    #[arg(long)]
    #[serde(default)]
    pub verify: bool,
    /// Grid half-length for minimization
    #[arg(long)]
    pub half_extent: Option<f64>,
    /// Cells per half-line for minimization
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Comma-separated check ids for `verify`
    #[arg(long)]
    pub checks: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    /// `self` with unset fields taken from `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            sigma: self.sigma.or(base.sigma),
            tau: self.tau.or(base.tau),
            alpha: self.alpha.or(base.alpha),
            mu: self.mu.or(base.mu),
            omega: self.omega.or(base.omega),
            omega_min: self.omega_min.or(base.omega_min),
            omega_max: self.omega_max.or(base.omega_max),
            omega_step: self.omega_step.or(base.omega_step),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            verify: self.verify || base.verify,
            half_extent: self.half_extent.or(base.half_extent),
            cells: self.cells.or(base.cells),
            max_iters: self.max_iters.or(base.max_iters),
            checks: self.checks.or(base.checks),
        }
    }

    pub fn require(value: Option<f64>, name: &str) -> Result<f64, CliError> {
        value.ok_or_else(|| CliError::Config(format!("missing --{}", name.replace('_', "-"))))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn formats(&self, default: &str) -> Result<Formats, CliError> {
        let spec = self.format.as_deref().unwrap_or(default);
        let mut f = Formats {
            csv: false,
            json: false,
            svg: false,
        };
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "csv" => f.csv = true,
                "json" => f.json = true,
                "svg" => f.svg = true,
                other => return Err(CliError::Config(format!("unknown format '{other}'"))),
            }
        }
        if !(f.csv || f.json || f.svg) {
            return Err(CliError::Config("empty --format".into()));
        }
        Ok(f)
    }

    pub fn check_ids(&self) -> Result<Option<Vec<u32>>, CliError> {
        let Some(spec) = &self.checks else {
            return Ok(None);
        };
        spec.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::Config(format!("bad check id '{s}'")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}
