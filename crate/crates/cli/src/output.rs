use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use ptnls_core::{GridFunction, SweepRow};

use crate::error::CliError;

pub const BRANCH_HEADER: [&str; 10] = [
    "branch", "omega", "t_minus", "t_plus", "x_minus", "x_plus", "mass", "energy", "jump_res", "flux_res",
];

/// 17 significant digits, so every value round-trips.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<PathBuf, CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.to_path_buf())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn write_branch_csv(path: &Path, rows: &[SweepRow]) -> Result<PathBuf, CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(BRANCH_HEADER)?;
    for r in rows {
        let vals = [
            r.omega, r.t_minus, r.t_plus, r.x_minus, r.x_plus, r.mass, r.energy, r.jump_res, r.flux_res,
        ];
        let mut rec = vec![r.branch.to_string()];
        rec.extend(vals.iter().map(|&v| num(v)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// `x,u` samples; the origin appears twice, once per side.
pub fn write_profile_csv(path: &Path, u: &GridFunction) -> Result<PathBuf, CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["x", "u"])?;
    for (i, &v) in u.left.iter().enumerate() {
        w.write_record([num(u.left_x(i)), num(v)])?;
    }
    for (j, &v) in u.right.iter().enumerate() {
        w.write_record([num(u.right_x(j)), num(v)])?;
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(num(-2.5), "-2.5000000000000000e0");
    }
}
