//! `qrqt joint`: time-resolved joint attack probability. The adversary
//! must both break the lattice-protected classical channel (success
//! probability rising with reduction time) and keep the intercepted qubit
//! coherent (probability falling with time); the product peaks at the
//! optimal attack window reported in the footer.

use super::{cost_model, grid, Scale};
use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::{bail, Result};
use clap::Args;
use qrqt::exec;
use qrqt::lattice::{p_lwe_exact, LatticeModel};
use qrqt::threat::{epsilon_secure, optimal_attack_time, p_joint, p_swap, JointScenario, SwapModel};
use qrqt::units::{format_sig17, parse_seconds, parse_seconds_or_inf};

#[derive(Args, Debug)]
pub struct JointArgs {
    /// Lattice dimension (number of NearestPlanes directions).
    #[arg(long, default_value_t = 30)]
    m: usize,
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
    /// BKZ cost coefficient a (pair with --coeff-b; default 0.3).
    #[arg(long)]
    coeff_a: Option<f64>,
    /// BKZ cost coefficient b (pair with --coeff-a; default 2.7).
    #[arg(long)]
    coeff_b: Option<f64>,
    /// Quantum memory coherence time (unit suffix required, or "inf").
    #[arg(long, value_name = "TIME", default_value = "20s")]
    t_coh: String,
    /// Probability that the attack is detected and aborted.
    #[arg(long, default_value_t = 0.0)]
    p_detect: f64,
    /// Sweep start time (unit suffix required).
    #[arg(long, value_name = "TIME", default_value = "0.2s")]
    t_start: String,
    /// Sweep stop time (unit suffix required).
    #[arg(long, value_name = "TIME", default_value = "2000s")]
    t_stop: String,
    /// Number of sweep points.
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Grid spacing.
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    scale: Scale,
    /// Security threshold in (0, 1]; adds per-row joint and factorwise
    /// security flags.
    #[arg(long)]
    epsilon: Option<f64>,
}

type PointRow = (f64, f64, f64, Option<(bool, bool)>);

fn point(scn: &JointScenario, t: f64, epsilon: Option<f64>) -> qrqt::Result<PointRow> {
    let lwe = p_lwe_exact(scn.lattice(), scn.cost(), t)?;
    let swap = p_swap(scn.swap(), t)?;
    let joint = p_joint(scn, t)?;
    let flags = match epsilon {
        Some(e) => Some(epsilon_secure(scn, t, e)?),
        None => None,
    };
    Ok((lwe, swap, joint, flags))
}

pub fn run(run: &RunArgs, args: &JointArgs) -> Result<(Report, bool)> {
    if let Some(e) = args.epsilon {
        if !(e > 0.0 && e <= 1.0) {
            bail!("--epsilon must lie in (0, 1], got {e}");
        }
    }
    let cost = cost_model(
        args.cost_preset.as_deref(),
        args.coeff_a,
        args.coeff_b,
        0.3,
        2.7,
    )?;
    let t_coh = parse_seconds_or_inf(&args.t_coh)?;
    let scn = JointScenario::new(
        SwapModel::new(t_coh)?,
        LatticeModel::uniform(args.m, args.s, args.radius, args.b1_norm)?,
        cost,
    )
    .with_detection(args.p_detect)?;

    let t_start = parse_seconds(&args.t_start)?;
    let t_stop = parse_seconds(&args.t_stop)?;
    let requested = grid(t_start, t_stop, args.points, args.scale)?;

    // The cost model is undefined at reduction times at or below 2^(-b);
    // silently computing there would be meaningless, so such sweep points
    // are dropped with a warning instead.
    let bound = cost.min_time();
    let ts: Vec<f64> = requested.iter().copied().filter(|&t| t > bound).collect();
    let dropped = requested.len() - ts.len();
    if dropped > 0 {
        eprintln!(
            "warning: dropped {dropped} sweep point(s) at or below the cost-model validity bound 2^(-{}) = {} s",
            cost.coeff_b(),
            format_sig17(bound),
        );
    }
    if ts.is_empty() {
        bail!(
            "every sweep point lies at or below the cost-model validity bound {} s",
            format_sig17(bound)
        );
    }

    let values = exec::map_indexed(ts.len(), |i| point(&scn, ts[i], args.epsilon));

    let mut columns = vec!["t", "p_lwe", "p_swap", "p_joint"];
    if args.epsilon.is_some() {
        columns.extend_from_slice(&["joint_secure", "factorwise_secure"]);
    }
    let mut table = Table::new(&columns);
    for (&t, value) in ts.iter().zip(values) {
        let (lwe, swap, joint, flags) = value?;
        let mut row = vec![
            Value::Num(t),
            Value::Num(lwe),
            Value::Num(swap),
            Value::Num(joint),
        ];
        if let Some((joint_ok, factorwise_ok)) = flags {
            row.push(Value::Bool(joint_ok));
            row.push(Value::Bool(factorwise_ok));
        }
        table.push_row(row);
    }

    // Optimal attack window over the default bracket: just above the cost
    // model's validity bound up to 100 coherence times (the joint
    // probability is decaying there), or the sweep end for perfect memory.
    let bracket_lo = bound * 1.01;
    let bracket_hi = if t_coh.is_finite() {
        100.0 * t_coh
    } else {
        eprintln!("note: t_coh is infinite; optimal window searched up to the sweep end");
        t_stop
    };
    if bracket_hi <= bracket_lo {
        bail!(
            "optimal-window bracket is empty: [{}, {}] s",
            format_sig17(bracket_lo),
            format_sig17(bracket_hi)
        );
    }
    let (t_star, p_star) = optimal_attack_time(&scn, bracket_lo, bracket_hi)?;
    table.push_footer("t_star", Value::Num(t_star));
    table.push_footer("p_star", Value::Num(p_star));

    let mut parameters = vec![
        ("m".into(), Value::Int(args.m as i64)),
        ("s".into(), Value::Num(args.s)),
        ("radius".into(), Value::Int(args.radius as i64)),
        ("b1_norm".into(), Value::Num(args.b1_norm)),
        ("coeff_a".into(), Value::Num(cost.coeff_a())),
        ("coeff_b".into(), Value::Num(cost.coeff_b())),
        ("t_coh".into(), Value::Num(t_coh)),
        ("p_detect".into(), Value::Num(args.p_detect)),
        ("t_start".into(), Value::Num(t_start)),
        ("t_stop".into(), Value::Num(t_stop)),
        ("points".into(), Value::Int(args.points as i64)),
        ("scale".into(), Value::text(args.scale.name())),
    ];
    if let Some(e) = args.epsilon {
        parameters.push(("epsilon".into(), Value::Num(e)));
    }

    let report = Report {
        command: "joint",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, true))
}
