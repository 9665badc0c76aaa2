//! `qrqt lwe`: lattice-reduction success probability of the NearestPlanes
//! decoder under the geometric series assumption, evaluated exactly in log
//! space and via the rational-exponent surrogate, sweeping either the
//! reduction time or the lattice dimension.

use super::{cost_model, grid, Scale};
use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::{bail, Result};
use clap::Args;
use qrqt::exec;
use qrqt::lattice::{
    delta_root_from_time, log2_p_lwe_exact_from_delta, log2_p_lwe_pade_from_delta,
    p_lwe_exact_from_delta, LatticeModel,
};
use qrqt::units::{format_sig17, parse_seconds};

/// Advertised relative accuracy of the surrogate on log2 p.
const TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Mode {
    /// Exact log-space evaluation only.
    Exact,
    /// Rational-exponent surrogate only.
    Pade,
    /// Both, with their relative disagreement per point.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum SweepVar {
    /// Sweep the lattice dimension at fixed reduction time.
    M,
    /// Sweep the reduction time at fixed dimension.
    T,
}

#[derive(Args, Debug)]
pub struct LweArgs {
    /// Which evaluations to emit.
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    /// Sweep variable.
    #[arg(long, value_enum, default_value_t = SweepVar::M)]
    sweep: SweepVar,
    /// Gaussian parameter s of the error distribution.
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    /// Common per-direction search width d_i.
    #[arg(long, default_value_t = 2)]
    radius: u32,
    /// First Gram-Schmidt norm of the reduced basis.
    #[arg(long, default_value_t = 10.0)]
    b1_norm: f64,
    /// BKZ cost preset: reference-fit, conservative, gpu, or hpc.
    #[arg(long, value_name = "NAME")]
    cost_preset: Option<String>,
    /// BKZ cost coefficient a (pair with --coeff-b; default 1.8).
    #[arg(long)]
    coeff_a: Option<f64>,
    /// BKZ cost coefficient b (pair with --coeff-a; default 2.7).
    #[arg(long)]
    coeff_b: Option<f64>,
    /// Dimension sweep start (inclusive).
    #[arg(long, default_value_t = 5)]
    m_start: usize,
    /// Dimension sweep stop (inclusive).
    #[arg(long, default_value_t = 50)]
    m_stop: usize,
    /// Fixed reduction time for the dimension sweep (unit suffix
    /// required); the default is 2^30 seconds.
    #[arg(long, value_name = "TIME", default_value = "1073741824s")]
    t_bkz: String,
    /// Fixed dimension for the time sweep.
    #[arg(long, default_value_t = 30)]
    m: usize,
    /// Time sweep start (unit suffix required).
    #[arg(long, value_name = "TIME")]
    t_start: Option<String>,
    /// Time sweep stop (unit suffix required).
    #[arg(long, value_name = "TIME")]
    t_stop: Option<String>,
    /// Number of points for the time sweep.
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Grid spacing for the time sweep.
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    scale: Scale,
}

/// Relative disagreement with the convention that an exact match (including
/// 0 versus 0) counts as zero error.
fn rel_err(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        ((got - want) / want).abs()
    }
}

pub fn run(run: &RunArgs, args: &LweArgs) -> Result<(Report, bool)> {
    let cost = cost_model(
        args.cost_preset.as_deref(),
        args.coeff_a,
        args.coeff_b,
        1.8,
        2.7,
    )?;

    // Each sweep point yields (x, p, log2 exact, log2 surrogate).
    let (var, points): (&str, Vec<(f64, f64, f64, f64)>) = match args.sweep {
        SweepVar::M => {
            if args.m_start < 1 || args.m_stop < args.m_start {
                bail!(
                    "need 1 <= m_start <= m_stop, got [{}, {}]",
                    args.m_start,
                    args.m_stop
                );
            }
            let t_bkz = parse_seconds(&args.t_bkz)?;
            let delta = delta_root_from_time(&cost, t_bkz)?;
            let ms: Vec<usize> = (args.m_start..=args.m_stop).collect();
            let values = exec::map_indexed(ms.len(), |i| -> qrqt::Result<(f64, f64, f64, f64)> {
                let lat = LatticeModel::uniform(ms[i], args.s, args.radius, args.b1_norm)?;
                Ok((
                    ms[i] as f64,
                    p_lwe_exact_from_delta(&lat, delta)?,
                    log2_p_lwe_exact_from_delta(&lat, delta)?,
                    log2_p_lwe_pade_from_delta(&lat, delta)?,
                ))
            });
            ("m", values.into_iter().collect::<qrqt::Result<_>>()?)
        }
        SweepVar::T => {
            let (Some(start), Some(stop)) = (&args.t_start, &args.t_stop) else {
                bail!("--sweep t requires --t-start and --t-stop");
            };
            let lat = LatticeModel::uniform(args.m, args.s, args.radius, args.b1_norm)?;
            let ts = grid(
                parse_seconds(start)?,
                parse_seconds(stop)?,
                args.points,
                args.scale,
            )?;
            let values = exec::map_indexed(ts.len(), |i| -> qrqt::Result<(f64, f64, f64, f64)> {
                let delta = delta_root_from_time(&cost, ts[i])?;
                Ok((
                    ts[i],
                    p_lwe_exact_from_delta(&lat, delta)?,
                    log2_p_lwe_exact_from_delta(&lat, delta)?,
                    log2_p_lwe_pade_from_delta(&lat, delta)?,
                ))
            });
            ("t", values.into_iter().collect::<qrqt::Result<_>>()?)
        }
    };

    let columns: Vec<&str> = match args.mode {
        Mode::Exact => vec![var, "p_lwe", "log2_p_exact"],
        Mode::Pade => vec![var, "log2_p_pade"],
        Mode::Both => vec![var, "log2_p_exact", "log2_p_pade", "rel_err"],
    };
    let mut table = Table::new(&columns);
    let mut worst = 0.0f64;
    let mut worst_x = points[0].0;
    for &(x, p, exact, pade) in &points {
        match args.mode {
            Mode::Exact => table.push_row(vec![Value::Num(x), Value::Num(p), Value::Num(exact)]),
            Mode::Pade => table.push_row(vec![Value::Num(x), Value::Num(pade)]),
            Mode::Both => {
                let err = rel_err(pade, exact);
                if err > worst {
                    worst = err;
                    worst_x = x;
                }
                table.push_row(vec![
                    Value::Num(x),
                    Value::Num(exact),
                    Value::Num(pade),
                    Value::Num(err),
                ]);
            }
        }
    }

    let mut passed = true;
    if args.mode == Mode::Both {
        table.push_footer("max_rel_err", Value::Num(worst));
        table.push_footer("max_rel_err_at", Value::Num(worst_x));
        passed = worst <= TOLERANCE;
        if !passed {
            eprintln!(
                "lwe: surrogate deviates from the exact evaluation by a relative {} at {var} = {} (tolerance {TOLERANCE:e})",
                format_sig17(worst),
                worst_x,
            );
        }
    }

    let mut parameters = vec![
        ("mode".into(), Value::text(format!("{:?}", args.mode).to_lowercase())),
        ("sweep".into(), Value::text(var)),
        ("s".into(), Value::Num(args.s)),
        ("radius".into(), Value::Int(args.radius as i64)),
        ("b1_norm".into(), Value::Num(args.b1_norm)),
        ("coeff_a".into(), Value::Num(cost.coeff_a())),
        ("coeff_b".into(), Value::Num(cost.coeff_b())),
    ];
    match args.sweep {
        SweepVar::M => {
            parameters.push(("m_start".into(), Value::Int(args.m_start as i64)));
            parameters.push(("m_stop".into(), Value::Int(args.m_stop as i64)));
            parameters.push(("t_bkz".into(), Value::Num(parse_seconds(&args.t_bkz)?)));
        }
        SweepVar::T => {
            parameters.push(("m".into(), Value::Int(args.m as i64)));
            parameters.push((
                "t_start".into(),
                Value::Num(parse_seconds(args.t_start.as_ref().unwrap())?),
            ));
            parameters.push((
                "t_stop".into(),
                Value::Num(parse_seconds(args.t_stop.as_ref().unwrap())?),
            ));
            parameters.push(("points".into(), Value::Int(args.points as i64)));
            parameters.push(("scale".into(), Value::text(args.scale.name())));
        }
    }
    if args.mode == Mode::Both {
        parameters.push(("tolerance".into(), Value::Num(TOLERANCE)));
    }

    let report = Report {
        command: "lwe",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, passed))
}
