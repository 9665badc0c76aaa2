//! `qrqt holevo`: eavesdropper information of the conditional-state
//! ensemble, sweeping either the damping strength or the input population,
//! with the closed form checked pointwise against the density-matrix oracle.

use super::{grid, Scale};
use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::Result;
use clap::Args;
use qrqt::exec;
use qrqt::teleport::{holevo_closed_form, holevo_oracle, InputState, OutcomeDistribution};

/// Largest tolerated disagreement between closed form and oracle.
const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum SweepVar {
    /// Sweep the damping strength gamma at fixed |alpha|^2.
    Gamma,
    /// Sweep the |0> population |alpha|^2 at fixed gamma.
    Alpha2,
}

#[derive(Args, Debug)]
pub struct HolevoArgs {
    /// Sweep variable.
    #[arg(long, value_enum, default_value_t = SweepVar::Gamma)]
    sweep: SweepVar,
    /// Sweep start (dimensionless, in [0, 1]).
    #[arg(long, default_value_t = 0.0)]
    start: f64,
    /// Sweep stop (dimensionless, in [0, 1]).
    #[arg(long, default_value_t = 1.0)]
    stop: f64,
    /// Number of sweep points.
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Grid spacing.
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    /// Fixed |0> population when sweeping gamma.
    #[arg(long, default_value_t = 0.5)]
    alpha2: f64,
    /// Fixed damping strength when sweeping |alpha|^2.
    #[arg(long, default_value_t = 0.3)]
    gamma: f64,
}

fn point(args: &HolevoArgs, x: f64) -> qrqt::Result<(f64, f64)> {
    let (alpha2, gamma) = match args.sweep {
        SweepVar::Gamma => (args.alpha2, x),
        SweepVar::Alpha2 => (x, args.gamma),
    };
    let psi = InputState::from_alpha_sq(alpha2)?;
    let closed = holevo_closed_form(&psi, gamma)?;
    let oracle = holevo_oracle(&psi, gamma, &OutcomeDistribution::uniform())?;
    Ok((closed, oracle))
}

pub fn run(run: &RunArgs, args: &HolevoArgs) -> Result<(Report, bool)> {
    let xs = grid(args.start, args.stop, args.points, args.scale)?;
    let values = exec::map_indexed(xs.len(), |i| point(args, xs[i]));

    let var = match args.sweep {
        SweepVar::Gamma => "gamma",
        SweepVar::Alpha2 => "alpha2",
    };
    let mut table = Table::new(&[var, "chi_closed_form", "chi_oracle", "abs_diff"]);
    let mut worst = 0.0f64;
    for (&x, value) in xs.iter().zip(values) {
        let (closed, oracle) = value?;
        let diff = (closed - oracle).abs();
        worst = worst.max(diff);
        table.push_row(vec![
            Value::Num(x),
            Value::Num(closed),
            Value::Num(oracle),
            Value::Num(diff),
        ]);
    }
    table.push_footer("max_abs_diff", Value::Num(worst));

    let passed = worst <= TOLERANCE;
    if !passed {
        eprintln!(
            "holevo: closed form and oracle disagree by {worst:e}, above the {TOLERANCE:e} tolerance"
        );
    }

    let parameters = vec![
        ("sweep".into(), Value::text(var)),
        ("start".into(), Value::Num(args.start)),
        ("stop".into(), Value::Num(args.stop)),
        ("points".into(), Value::Int(args.points as i64)),
        ("scale".into(), Value::text(args.scale.name())),
        match args.sweep {
            SweepVar::Gamma => ("alpha2".into(), Value::Num(args.alpha2)),
            SweepVar::Alpha2 => ("gamma".into(), Value::Num(args.gamma)),
        },
        ("tolerance".into(), Value::Num(TOLERANCE)),
    ];
    let report = Report {
        command: "holevo",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, passed))
}
