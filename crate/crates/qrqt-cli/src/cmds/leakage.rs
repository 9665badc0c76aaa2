//! `qrqt leakage`: expected eavesdropper information and teleportation
//! fidelity as the two classical correction bits leak to the adversary
//! under a stochastic timing model, optionally cross-checked by Monte
//! Carlo class sampling. With exactly two damping strengths the command
//! also locates crossings of the two fidelity curves and reports them on
//! standard error.

use super::{grid, Scale};
use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::{bail, Result};
use clap::Args;
use qrqt::leakage::{
    class_probabilities, expected_fidelity, expected_holevo, monte_carlo_classes, LeakageModel,
};
use qrqt::teleport::{build_ensemble, DampedEnsemble, InputState};
use qrqt::units::{format_sig17, parse_seconds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum ModelKind {
    /// Each bit leaks through its own exponential clock (rates k1, k2).
    Independent,
    /// The second bit can only leak after the first (rates k1, k2).
    Sequential,
    /// One exponential clock (rate k) reveals both bits at once.
    Burst,
    /// Each bit races a shared burst clock of rate mu*k against an
    /// individual clock of rate (1-mu)*k.
    Correlated,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Independent => "independent",
            ModelKind::Sequential => "sequential",
            ModelKind::Burst => "burst",
            ModelKind::Correlated => "correlated",
        }
    }
}

#[derive(Args, Debug)]
pub struct LeakageArgs {
    /// Leakage process for the two classical correction bits.
    #[arg(long, value_enum, default_value_t = ModelKind::Independent)]
    model: ModelKind,
    /// First bit's leak rate in 1/s (independent and sequential models).
    #[arg(long)]
    k1: Option<f64>,
    /// Second bit's leak rate in 1/s (independent and sequential models).
    #[arg(long)]
    k2: Option<f64>,
    /// Overall leak rate in 1/s (burst and correlated models).
    #[arg(long)]
    k: Option<f64>,
    /// Correlation weight in [0, 1] (correlated model only).
    #[arg(long)]
    mu: Option<f64>,
    /// Damping strengths, one output curve each; pass twice or
    /// comma-separated. Exactly two enable the crossing diagnostic.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    gamma: Option<Vec<f64>>,
    /// |0> population of the teleported state.
    #[arg(long, default_value_t = 0.6)]
    alpha2: f64,
    /// Sweep start time (unit suffix required: ns, us, ms, s).
    #[arg(long, value_name = "TIME", default_value = "0s")]
    t_start: String,
    /// Sweep stop time (unit suffix required).
    #[arg(long, value_name = "TIME", default_value = "10s")]
    t_stop: String,
    /// Number of sweep points.
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Grid spacing.
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    /// Monte Carlo sample count; adds empirical class frequencies next to
    /// the closed-form class probabilities.
    #[arg(long)]
    mc: Option<u64>,
}

fn build_model(args: &LeakageArgs) -> Result<LeakageModel> {
    // Reject flags that the chosen model ignores, so a typo cannot
    // silently drop a rate.
    let reject = |flag: &str, set: bool| -> Result<()> {
        if set {
            bail!(
                "--{flag} does not apply to the {} model",
                args.model.name()
            );
        }
        Ok(())
    };
    match args.model {
        ModelKind::Independent | ModelKind::Sequential => {
            reject("k", args.k.is_some())?;
            reject("mu", args.mu.is_some())?;
            let k1 = args.k1.unwrap_or(1.0);
            let k2 = args.k2.unwrap_or(1.0);
            Ok(match args.model {
                ModelKind::Independent => LeakageModel::Independent { k1, k2 },
                _ => LeakageModel::Sequential { k1, k2 },
            })
        }
        ModelKind::Burst => {
            reject("k1", args.k1.is_some())?;
            reject("k2", args.k2.is_some())?;
            reject("mu", args.mu.is_some())?;
            Ok(LeakageModel::Burst {
                k: args.k.unwrap_or(1.0),
            })
        }
        ModelKind::Correlated => {
            reject("k1", args.k1.is_some())?;
            reject("k2", args.k2.is_some())?;
            Ok(LeakageModel::Correlated {
                k: args.k.unwrap_or(1.0),
                mu: args.mu.unwrap_or(0.5),
            })
        }
    }
}

/// Refines a bracketed root of the fidelity difference by bisection.
fn refine_crossing(
    a: &DampedEnsemble,
    b: &DampedEnsemble,
    model: &LeakageModel,
    mut lo: f64,
    mut hi: f64,
) -> qrqt::Result<f64> {
    let diff = |t: f64| -> qrqt::Result<f64> {
        Ok(expected_fidelity(a, model, t)? - expected_fidelity(b, model, t)?)
    };
    let mut f_lo = diff(lo)?;
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = diff(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_lo < 0.0) == (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans the grid for sign changes of `F_a(t) - F_b(t)` and reports each
/// crossing on standard error. Grid points where the difference is exactly
/// zero (such as t = 0, where no bit has leaked yet and every curve starts
/// at 1/2) carry no sign and are skipped.
fn report_crossings(
    curves: &[(f64, DampedEnsemble)],
    model: &LeakageModel,
    ts: &[f64],
) -> qrqt::Result<()> {
    let (g1, a) = &curves[0];
    let (g2, b) = &curves[1];
    let mut found = 0usize;
    let mut last: Option<(f64, f64)> = None;
    for &t in ts {
        let d = expected_fidelity(a, model, t)? - expected_fidelity(b, model, t)?;
        if d == 0.0 {
            continue;
        }
        if let Some((t0, d0)) = last {
            if (d0 < 0.0) != (d < 0.0) {
                found += 1;
                let root = refine_crossing(a, b, model, t0, t)?;
                eprintln!(
                    "note: fidelity crossing between gamma = {g1} and gamma = {g2} at t = {} s",
                    format_sig17(root)
                );
            }
        }
        last = Some((t, d));
    }
    if found == 0 {
        eprintln!("note: no fidelity crossing between gamma = {g1} and gamma = {g2} on this grid");
    }
    Ok(())
}

pub fn run(run: &RunArgs, args: &LeakageArgs) -> Result<(Report, bool)> {
    let model = build_model(args)?;
    let gammas = args.gamma.clone().unwrap_or_else(|| vec![0.2]);
    let t_start = parse_seconds(&args.t_start)?;
    let t_stop = parse_seconds(&args.t_stop)?;
    let ts = grid(t_start, t_stop, args.points, args.scale)?;

    let psi = InputState::from_alpha_sq(args.alpha2)?;
    let curves: Vec<(f64, DampedEnsemble)> = gammas
        .iter()
        .map(|&g| Ok((g, build_ensemble(&psi, g)?)))
        .collect::<qrqt::Result<_>>()?;

    // Class probabilities depend only on (model, t); compute them once per
    // grid point and share them across the gamma curves.
    let closed: Vec<_> = ts
        .iter()
        .map(|&t| class_probabilities(&model, t))
        .collect::<qrqt::Result<_>>()?;
    let sampled = match args.mc {
        Some(n) => Some(
            ts.iter()
                .map(|&t| monte_carlo_classes(&model, t, n, run.seed))
                .collect::<qrqt::Result<Vec<_>>>()?,
        ),
        None => None,
    };

    let mut columns = vec!["gamma", "t", "e_chi", "fidelity"];
    if sampled.is_some() {
        columns.extend_from_slice(&[
            "p_none", "p_first", "p_second", "p_both", "mc_p_none", "mc_p_first", "mc_p_second",
            "mc_p_both",
        ]);
    }
    let mut table = Table::new(&columns);
    for (gamma, ens) in &curves {
        for (i, &t) in ts.iter().enumerate() {
            let mut row = vec![
                Value::Num(*gamma),
                Value::Num(t),
                Value::Num(expected_holevo(ens, &model, t)?),
                Value::Num(expected_fidelity(ens, &model, t)?),
            ];
            if let Some(mc) = &sampled {
                for p in closed[i].as_array() {
                    row.push(Value::Num(p));
                }
                for p in mc[i].as_array() {
                    row.push(Value::Num(p));
                }
            }
            table.push_row(row);
        }
    }

    if curves.len() == 2 {
        report_crossings(&curves, &model, &ts)?;
    }

    let mut parameters = vec![
        ("model".into(), Value::text(args.model.name())),
        ("alpha2".into(), Value::Num(args.alpha2)),
        ("t_start".into(), Value::Num(t_start)),
        ("t_stop".into(), Value::Num(t_stop)),
        ("points".into(), Value::Int(args.points as i64)),
        ("scale".into(), Value::text(args.scale.name())),
        (
            "gamma".into(),
            Value::text(
                gammas
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ),
    ];
    match model {
        LeakageModel::Independent { k1, k2 } | LeakageModel::Sequential { k1, k2 } => {
            parameters.push(("k1".into(), Value::Num(k1)));
            parameters.push(("k2".into(), Value::Num(k2)));
        }
        LeakageModel::Burst { k } => parameters.push(("k".into(), Value::Num(k))),
        LeakageModel::Correlated { k, mu } => {
            parameters.push(("k".into(), Value::Num(k)));
            parameters.push(("mu".into(), Value::Num(mu)));
        }
    }
    if let Some(n) = args.mc {
        parameters.push(("mc".into(), Value::Int(n as i64)));
    }

    let report = Report {
        command: "leakage",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, true))
}
