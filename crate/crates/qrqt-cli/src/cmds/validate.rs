//! `qrqt validate`: self-checks of the closed-form metrics against
//! brute-force reference implementations. Each check is one output row
//! with its tolerance and the observed deviation; any failure makes the
//! process exit nonzero. The report contains no timing information, so a
//! fixed seed always reproduces it byte for byte.

use crate::output::{Report, Table, Value};
use crate::RunArgs;
use anyhow::{bail, Result};
use clap::Args;
use qrqt::exec;
use qrqt::lattice::{np_success_closed_form, np_success_monte_carlo, np_validation_configs};
use qrqt::qmath::Complex;
use qrqt::rng::CounterRng;
use qrqt::teleport::{
    holevo_closed_form, holevo_oracle, swap_attack_verify, InputState, OutcomeDistribution,
    SwapAttackReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Suite {
    /// Entanglement-swap attack on random input states.
    Swap,
    /// NearestPlanes Monte Carlo versus the error-function product.
    Np,
    /// Holevo closed form versus the density-matrix oracle.
    Holevo,
    /// Everything.
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Swap => "swap",
            Suite::Np => "np",
            Suite::Holevo => "holevo",
            Suite::All => "all",
        }
    }
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Which validation suite to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Monte Carlo trials per NearestPlanes configuration.
    #[arg(long, default_value_t = 100_000)]
    mc: u64,
    /// Number of random input states for the swap suite.
    #[arg(long, default_value_t = 100)]
    states: usize,
    /// Grid resolution per axis for the Holevo suite.
    #[arg(long, default_value_t = 50)]
    grid: usize,
}

struct Check {
    name: String,
    bound: f64,
    observed: f64,
}

impl Check {
    fn passes(&self) -> bool {
        self.observed <= self.bound
    }
}

/// Haar-like random input state from two angles and a uniform population,
/// exactly normalized by construction.
fn random_state(seed: u64, index: u64) -> qrqt::Result<InputState> {
    let mut rng = CounterRng::new(seed, index);
    let pop = rng.uniform_open01();
    let phase_a = std::f64::consts::TAU * rng.uniform_open01();
    let phase_b = std::f64::consts::TAU * rng.uniform_open01();
    let alpha = Complex::from_polar(pop.sqrt(), phase_a);
    let beta = Complex::from_polar((1.0 - pop).sqrt(), phase_b);
    InputState::new(alpha, beta)
}

fn swap_checks(seed: u64, states: usize) -> Result<Vec<Check>> {
    if states == 0 {
        bail!("--states must be at least 1");
    }
    let reports: Vec<qrqt::Result<SwapAttackReport>> = exec::map_indexed(states, |i| {
        let psi = random_state(seed, i as u64)?;
        swap_attack_verify(&psi)
    });
    let mut eve = 0.0f64;
    let mut bob = 0.0f64;
    let mut outcome = 0.0f64;
    for report in reports {
        let report = report?;
        eve = eve.max((1.0 - report.min_eve_fidelity).abs());
        bob = bob.max((1.0 - report.min_bob_ground_population).abs());
        outcome = outcome.max(report.max_outcome_probability_deviation);
    }
    Ok(vec![
        Check {
            name: "swap_eve_fidelity".into(),
            bound: 1e-12,
            observed: eve,
        },
        Check {
            name: "swap_bob_ground_population".into(),
            bound: 1e-12,
            observed: bob,
        },
        Check {
            name: "swap_outcome_probabilities".into(),
            bound: 1e-12,
            observed: outcome,
        },
    ])
}

fn np_checks(seed: u64, trials: u64) -> Result<Vec<Check>> {
    if trials == 0 {
        bail!("--mc must be at least 1");
    }
    let mut checks = Vec::new();
    for (index, (basis, widths, s)) in np_validation_configs().iter().enumerate() {
        let expected = np_success_closed_form(basis, widths, *s)?;
        let rate = np_success_monte_carlo(basis, widths, *s, trials, seed)?;
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        checks.push(Check {
            name: format!("np_config_{}_dim{}", index + 1, basis.dimension()),
            bound: 3.0 * sigma,
            observed: (rate - expected).abs(),
        });
    }
    Ok(checks)
}

fn holevo_checks(grid: usize) -> Result<Vec<Check>> {
    if grid < 2 {
        bail!("--grid must be at least 2");
    }
    let probs = OutcomeDistribution::uniform();
    let diffs: Vec<qrqt::Result<f64>> = exec::map_indexed(grid * grid, |idx| {
        let gamma = (idx / grid) as f64 / (grid - 1) as f64;
        let alpha2 = (idx % grid) as f64 / (grid - 1) as f64;
        let psi = InputState::from_alpha_sq(alpha2)?;
        let closed = holevo_closed_form(&psi, gamma)?;
        let oracle = holevo_oracle(&psi, gamma, &probs)?;
        Ok((closed - oracle).abs())
    });
    let mut worst = 0.0f64;
    for diff in diffs {
        worst = worst.max(diff?);
    }
    Ok(vec![Check {
        name: "holevo_oracle_agreement".into(),
        bound: 1e-10,
        observed: worst,
    }])
}

pub fn run(run: &RunArgs, args: &ValidateArgs) -> Result<(Report, bool)> {
    let mut checks = Vec::new();
    if matches!(args.suite, Suite::Swap | Suite::All) {
        checks.extend(swap_checks(run.seed, args.states)?);
    }
    if matches!(args.suite, Suite::Np | Suite::All) {
        checks.extend(np_checks(run.seed, args.mc)?);
    }
    if matches!(args.suite, Suite::Holevo | Suite::All) {
        checks.extend(holevo_checks(args.grid)?);
    }

    let mut table = Table::new(&["check", "bound", "observed", "result"]);
    let mut failed = 0usize;
    for check in &checks {
        if !check.passes() {
            failed += 1;
        }
        table.push_row(vec![
            Value::text(check.name.clone()),
            Value::Num(check.bound),
            Value::Num(check.observed),
            Value::text(if check.passes() { "PASS" } else { "FAIL" }),
        ]);
    }
    table.push_footer("checks_total", Value::Int(checks.len() as i64));
    table.push_footer("checks_failed", Value::Int(failed as i64));
    if failed > 0 {
        eprintln!("validate: {failed} of {} checks failed", checks.len());
    }

    let parameters = vec![
        ("suite".into(), Value::text(args.suite.name())),
        ("mc".into(), Value::Int(args.mc as i64)),
        ("states".into(), Value::Int(args.states as i64)),
        ("grid".into(), Value::Int(args.grid as i64)),
    ];
    let report = Report {
        command: "validate",
        seed: run.seed,
        parameters,
        table,
    };
    Ok((report, failed == 0))
}
