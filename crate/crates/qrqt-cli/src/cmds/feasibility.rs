//! `qrqt feasibility`: distance budgets for teleportation with a
//! post-quantum-protected classical channel. Table mode reports each
//! scheme's maximum feasible link length under a given memory coherence
//! time; sweep mode reports the round-trip latency and feasibility flag
//! across distances for one scheme or a fully custom timing profile.

use super::grid;
use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::{anyhow, bail, Result};
use clap::Args;
use qrqt::feasibility::{
    is_feasible, load_scheme_file, max_distance, total_latency, builtin_scheme_table, PqcScheme,
    TimingProfile, DEFAULT_V_FIBER,
};
use qrqt::units::{parse_km, parse_seconds, parse_seconds_or_inf};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct FeasibilityArgs {
    /// Quantum memory coherence time (unit suffix required, or "inf").
    #[arg(long, value_name = "TIME", default_value = "1ms")]
    t_coh: String,
    /// Extra scheme table: whitespace-separated "name security_level
    /// t_enc" lines; entries replace built-ins of the same name.
    #[arg(long, value_name = "PATH")]
    schemes_file: Option<PathBuf>,
    /// Restrict to one named scheme (required for a distance sweep).
    #[arg(long, value_name = "NAME")]
    scheme: Option<String>,
    /// Distance sweep start (km suffix required).
    #[arg(long, value_name = "DIST")]
    d_start: Option<String>,
    /// Distance sweep stop (km suffix required).
    #[arg(long, value_name = "DIST")]
    d_stop: Option<String>,
    /// Number of distance sweep points.
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Bell-pair preparation delay for a custom profile (unit suffix
    /// required; unset delays default to 0s).
    #[arg(long, value_name = "TIME")]
    t_prep: Option<String>,
    /// Bell-basis transformation delay for a custom profile.
    #[arg(long, value_name = "TIME")]
    t_transform: Option<String>,
    /// Measurement delay for a custom profile.
    #[arg(long, value_name = "TIME")]
    t_measure: Option<String>,
    /// Classical-channel cryptography delay for a custom profile.
    #[arg(long, value_name = "TIME")]
    t_pqc: Option<String>,
    /// Correction delay for a custom profile.
    #[arg(long, value_name = "TIME")]
    t_correct: Option<String>,
    /// Fiber signal velocity in km/s.
    #[arg(long, default_value_t = DEFAULT_V_FIBER)]
    v_fiber: f64,
}

/// Built-in schemes with file-provided entries replacing same-named rows
/// and new names appended in file order.
fn merged_schemes(args: &FeasibilityArgs) -> Result<Vec<PqcScheme>> {
    let mut schemes = builtin_scheme_table();
    if let Some(path) = &args.schemes_file {
        for entry in load_scheme_file(path)? {
            match schemes.iter_mut().find(|s| s.name == entry.name) {
                Some(slot) => *slot = entry,
                None => schemes.push(entry),
            }
        }
    }
    Ok(schemes)
}

fn lookup<'a>(schemes: &'a [PqcScheme], name: &str) -> Result<&'a PqcScheme> {
    schemes.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = schemes.iter().map(|s| s.name.as_str()).collect();
        anyhow!("unknown scheme {name:?}; available: {}", names.join(", "))
    })
}

fn custom_profile(args: &FeasibilityArgs) -> Result<Option<TimingProfile>> {
    let delays = [
        &args.t_prep,
        &args.t_transform,
        &args.t_measure,
        &args.t_pqc,
        &args.t_correct,
    ];
    if delays.iter().all(|d| d.is_none()) {
        return Ok(None);
    }
    let parse = |d: &Option<String>| -> Result<f64> {
        Ok(match d {
            Some(text) => parse_seconds(text)?,
            None => 0.0,
        })
    };
    Ok(Some(TimingProfile::new(
        parse(&args.t_prep)?,
        parse(&args.t_transform)?,
        parse(&args.t_measure)?,
        parse(&args.t_pqc)?,
        parse(&args.t_correct)?,
        args.v_fiber,
    )?))
}

pub fn run(run: &RunArgs, args: &FeasibilityArgs) -> Result<(Report, bool)> {
    let t_coh = parse_seconds_or_inf(&args.t_coh)?;
    let schemes = merged_schemes(args)?;
    let custom = custom_profile(args)?;
    if custom.is_some() && args.scheme.is_some() {
        bail!("--scheme conflicts with custom profile delays (--t-prep and friends)");
    }

    let mut parameters = vec![
        ("t_coh".into(), Value::Num(t_coh)),
        ("v_fiber".into(), Value::Num(args.v_fiber)),
    ];
    if let Some(path) = &args.schemes_file {
        parameters.push(("schemes_file".into(), Value::text(path.display().to_string())));
    }

    let table = match (&args.d_start, &args.d_stop) {
        (Some(d_start), Some(d_stop)) => {
            // Sweep mode: one profile across a distance grid.
            let profile = match (&custom, &args.scheme) {
                (Some(profile), None) => *profile,
                (None, Some(name)) => {
                    let scheme = lookup(&schemes, name)?;
                    parameters.push(("scheme".into(), Value::text(scheme.name.clone())));
                    parameters.push(("t_enc".into(), Value::Num(scheme.t_enc)));
                    TimingProfile::pqc_only(scheme.t_enc)?.with_v_fiber(args.v_fiber)?
                }
                (None, None) => {
                    bail!("a distance sweep needs --scheme or custom profile delays")
                }
                (Some(_), Some(_)) => unreachable!("rejected above"),
            };
            let ds = grid(
                parse_km(d_start)?,
                parse_km(d_stop)?,
                args.points,
                super::Scale::Linear,
            )?;
            parameters.push(("d_start".into(), Value::Num(ds[0])));
            parameters.push(("d_stop".into(), Value::Num(*ds.last().unwrap())));
            parameters.push(("points".into(), Value::Int(args.points as i64)));
            let mut table = Table::new(&["distance", "tau_m", "feasible"]);
            for &d in &ds {
                table.push_row(vec![
                    Value::Num(d),
                    Value::Num(total_latency(&profile, d)?),
                    Value::Bool(is_feasible(&profile, d, t_coh)?),
                ]);
            }
            table
        }
        (None, None) => {
            // Table mode: maximum distance per scheme (or the one custom
            // profile) under the given coherence time.
            let mut table = Table::new(&["scheme", "security_level", "t_enc", "d_max", "feasible"]);
            if let Some(profile) = &custom {
                let limit = max_distance(profile, t_coh);
                table.push_row(vec![
                    Value::text("custom"),
                    Value::Int(0),
                    Value::Num(profile.t_pqc()),
                    Value::Num(limit.d_max),
                    Value::Bool(limit.feasible),
                ]);
            } else {
                let rows: Vec<&PqcScheme> = match &args.scheme {
                    Some(name) => vec![lookup(&schemes, name)?],
                    None => schemes.iter().collect(),
                };
                for scheme in rows {
                    let profile =
                        TimingProfile::pqc_only(scheme.t_enc)?.with_v_fiber(args.v_fiber)?;
                    let limit = max_distance(&profile, t_coh);
                    table.push_row(vec![
                        Value::text(scheme.name.clone()),
                        Value::Int(scheme.security_level as i64),
                        Value::Num(scheme.t_enc),
                        Value::Num(limit.d_max),
                        Value::Bool(limit.feasible),
                    ]);
                }
            }
            table
        }
        _ => bail!("--d-start and --d-stop must be given together"),
    };

    let report = Report {
        command: "feasibility",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, true))
}
