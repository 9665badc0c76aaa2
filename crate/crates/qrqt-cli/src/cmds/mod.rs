//! Subcommand implementations.
//!
//! Each `run` takes the shared [`RunArgs`](crate::RunArgs) plus its own
//! argument struct and returns the assembled [`Report`](crate::output::Report)
//! together with a pass flag: `false` means the data was produced but some
//! advertised tolerance was violated, which the caller maps to exit code 1.
//! Errors (bad flags, domain violations, I/O) map to exit code 2.

pub mod feasibility;
pub mod holevo;
pub mod joint;
pub mod leakage;
pub mod lwe;
pub mod validate;

use anyhow::{bail, Result};
use qrqt::lattice::BkzCostModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    }
}

/// Builds a sweep grid with exact endpoints. Log spacing places the points
/// geometrically and therefore requires `start > 0`.
pub fn grid(start: f64, stop: f64, points: usize, scale: Scale) -> Result<Vec<f64>> {
    if points < 2 {
        bail!("a sweep needs at least 2 points, got {points}");
    }
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        bail!("sweep bounds must be finite with start < stop, got [{start}, {stop}]");
    }
    if scale == Scale::Log && start <= 0.0 {
        bail!("log-scale sweeps need start > 0, got {start}");
    }
    let n = points;
    let (lo, hi) = (start, stop);
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                let f = i as f64 / (n - 1) as f64;
                match scale {
                    Scale::Linear => lo + f * (hi - lo),
                    Scale::Log => (lo.ln() + f * (hi.ln() - lo.ln())).exp().clamp(lo, hi),
                }
            }
        })
        .collect())
}

/// Resolves the BKZ cost model from either a preset name or an explicit
/// coefficient pair, falling back to `(default_a, default_b)`.
pub fn cost_model(
    preset: Option<&str>,
    coeff_a: Option<f64>,
    coeff_b: Option<f64>,
    default_a: f64,
    default_b: f64,
) -> Result<BkzCostModel> {
    match (preset, coeff_a, coeff_b) {
        (Some(name), None, None) => Ok(BkzCostModel::preset(name)?),
        (Some(_), _, _) => bail!("--cost-preset conflicts with --coeff-a/--coeff-b"),
        (None, Some(a), Some(b)) => Ok(BkzCostModel::new(a, b)?),
        (None, None, None) => Ok(BkzCostModel::new(default_a, default_b)?),
        (None, _, _) => bail!("--coeff-a and --coeff-b must be given together"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_endpoints_exactly_and_stay_sorted() {
        for scale in [Scale::Linear, Scale::Log] {
            let g = grid(0.2, 2000.0, 50, scale).unwrap();
            assert_eq!(g.len(), 50);
            assert_eq!(g[0], 0.2);
            assert_eq!(g[49], 2000.0);
            assert!(g.windows(2).all(|w| w[0] < w[1]), "{scale:?} grid not sorted");
        }
        assert_eq!(grid(1.0, 2.0, 2, Scale::Linear).unwrap(), vec![1.0, 2.0]);
        let mid = grid(1.0, 100.0, 3, Scale::Log).unwrap()[1];
        assert!((mid - 10.0).abs() < 1e-12, "log midpoint {mid}");
    }

    #[test]
    fn grid_rejects_degenerate_requests() {
        assert!(grid(0.0, 1.0, 1, Scale::Linear).is_err());
        assert!(grid(2.0, 1.0, 10, Scale::Linear).is_err());
        assert!(grid(1.0, f64::INFINITY, 10, Scale::Linear).is_err());
        assert!(grid(0.0, 1.0, 10, Scale::Log).is_err());
        assert!(grid(0.0, 1.0, 10, Scale::Linear).is_ok());
    }

    #[test]
    fn cost_model_resolution_rules() {
        let defaulted = cost_model(None, None, None, 0.3, 2.7).unwrap();
        assert_eq!(defaulted.coeff_a(), 0.3);
        assert_eq!(defaulted.coeff_b(), 2.7);
        let explicit = cost_model(None, Some(1.8), Some(2.0), 0.3, 2.7).unwrap();
        assert_eq!(explicit.coeff_a(), 1.8);
        assert!(cost_model(Some("bkz2"), Some(1.0), None, 0.3, 2.7).is_err());
        assert!(cost_model(None, Some(1.0), None, 0.3, 2.7).is_err());
        assert!(cost_model(None, None, Some(1.0), 0.3, 2.7).is_err());
    }
}
