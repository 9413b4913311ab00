//! Fixtures shared by the solver benchmarks.

use ptnls_core::{ModelParams, SweepSpec};

/// Parameter sets spanning subcritical, critical and dipole regimes.
pub fn cases() -> Vec<(&'static str, ModelParams)> {
    [
        ("sigma1_tau2_alpha1", 1.0, 2.0, 1.0),
        ("sigma0.5_tau3_alpha0.5", 0.5, 3.0, 0.5),
        ("sigma2_tau2_alpha1", 2.0, 2.0, 1.0),
        ("sigma2_tau2_alpha0", 2.0, 2.0, 0.0),
    ]
    .into_iter()
    .map(|(name, s, t, a)| (name, ModelParams::new(s, t, a).expect("valid fixture")))
    .collect()
}

/// A sweep with `points` frequencies on `[0.2, 5]`.
pub fn sweep(points: usize) -> SweepSpec {
    let (lo, hi) = (0.2, 5.0);
    SweepSpec {
        omega_min: lo,
        omega_max: hi,
        omega_step: (hi - lo) / (points.max(2) - 1) as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_has_requested_size() {
        assert_eq!(sweep(100).grid().unwrap().len(), 100);
        assert_eq!(cases().len(), 4);
    }
}
