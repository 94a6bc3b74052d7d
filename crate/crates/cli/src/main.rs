//! `apdyn`: batch front end for the checkers, batteries, gallery and flow demo.
//!
//! Exit codes: 0 success, 1 internal violation or gallery drift, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use apdyn::checkers::{self, BatteryOutcome};
use apdyn::finspace::ENUMERATION_CAP;
use apdyn::flowdemo::{self, FlowConfig, PlanarPoint};
use apdyn::gallery;
use apdyn::instances::{self, RANDOM_POINT_CAP};
use apdyn::io;

#[derive(Parser)]
#[command(name = "apdyn", version, about = "Orbit-closure relations and almost periodicity checks")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a space with a relation, partition or action from a JSON file.
    Check { file: PathBuf },
    /// Run the theorem battery exhaustively or on seeded random instances.
    Enumerate {
        /// Carrier size (exhaustive) or largest carrier (random, default 6).
        #[arg(long)]
        points: Option<usize>,
        /// Number of random instances; exhaustive when absent.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a named fixture and compare it with its committed report.
    Gallery { name: String },
    /// Integrate the disk flow and report conservation, periods and the witness sequence.
    FlowDemo {
        #[arg(long, default_value_t = FlowConfig::default().tolerance_period)]
        tolerance_period: f64,
        #[arg(long, default_value_t = FlowConfig::default().tolerance_drift)]
        tolerance_drift: f64,
        #[arg(long, default_value_t = FlowConfig::default().dt)]
        dt: f64,
        #[arg(long, default_value_t = FlowConfig::default().n_max)]
        n_max: u32,
        /// Write one period of the orbit through (0.5, 0) as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Violation,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn check(format: Format, file: &PathBuf) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let input = io::parse_check(&text)?;
    let report = io::check(&input)?;
    emit(format, &report, || {
        let v = &report.analysis.verdicts;
        let mut out = format!("points: {}\n", report.space.len());
        if let Some(closed) = &report.closed_sets {
            out += &format!("closed sets: {closed:?}\n");
        }
        out += &format!("R: {:?}\n", report.orbit_closure_relation);
        for (name, value) in [
            ("pointwise almost periodic", v.pap_decomposition),
            ("R-closed", v.r_closed),
            ("D-stable", v.d_stable),
            ("L-stable", v.l_stable),
            ("weakly almost periodic", v.weakly_almost_periodic),
            ("minimal", v.minimal),
            ("orbit-class space Hausdorff", v.quotient_hausdorff),
        ] {
            out += &format!("{name}: {value}\n");
        }
        if let Some(s) = &report.syndetic {
            out += &format!("flow almost periodic: {}\n", s.holds);
        }
        for w in &report.analysis.witnesses {
            out += &format!("witness: {}\n", w.explanation);
        }
        out
    });
    if report.violations().is_empty() {
        Ok(())
    } else {
        for v in report.violations() {
            eprintln!("violation: {v}");
        }
        Err(Failure::Violation)
    }
}

#[derive(Serialize)]
struct EnumerateSummary {
    mode: &'static str,
    points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(flatten)]
    outcome: BatteryOutcome,
}

fn enumerate(format: Format, points: Option<usize>, random: Option<usize>, seed: u64) -> Result<(), Failure> {
    let (mode, points, instances) = match random {
        Some(count) => {
            let max = points.unwrap_or(6);
            if !(1..=RANDOM_POINT_CAP).contains(&max) {
                return Err(anyhow!("--points must be in 1..={RANDOM_POINT_CAP} for random instances, got {max}").into());
            }
            ("random", max, instances::random_instances(seed, count, max))
        }
        None => {
            let n = points.context("--points is required without --random")?;
            if !(1..=ENUMERATION_CAP).contains(&n) {
                return Err(anyhow!("--points must be in 1..={ENUMERATION_CAP} for exhaustive enumeration, got {n}").into());
            }
            ("exhaustive", n, instances::exhaustive_instances(n)?)
        }
    };
    let outcome = checkers::theorem_battery(&instances)?;
    let failed = !outcome.violations.is_empty();
    let summary = EnumerateSummary {
        mode,
        points,
        seed: random.map(|_| seed),
        outcome,
    };
    emit(format, &summary, || {
        let o = &summary.outcome;
        let mut out = format!(
            "{} instance{}, {} violation{}\n",
            o.instances,
            if o.instances == 1 { "" } else { "s" },
            o.violations.len(),
            if o.violations.len() == 1 { "" } else { "s" },
        );
        for v in &o.violations {
            out += &format!("instance {}: {}: {}\n", v.instance, v.law, v.detail);
        }
        out
    });
    if failed {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn run_gallery(format: Format, name: &str) -> Result<(), Failure> {
    let Some(outcome) = gallery::run(name, FlowConfig::default()) else {
        return Err(Failure::Input(anyhow!(
            "unknown gallery entry `{name}`; expected one of {}",
            gallery::NAMES.join(", ")
        )));
    };
    match format {
        Format::Json => print!("{}", outcome.rendered),
        Format::Text => println!("{}: {}", name, if outcome.matches { "match" } else { "drift" }),
    }
    match outcome.drift {
        None => Ok(()),
        Some(d) => {
            eprintln!("drift in {name}: {d}");
            Err(Failure::Violation)
        }
    }
}

fn flow_demo(format: Format, config: FlowConfig, csv: Option<&PathBuf>) -> Result<(), Failure> {
    if !(config.dt > 0.0 && config.dt.is_finite()) {
        return Err(anyhow!("--dt must be positive, got {}", config.dt).into());
    }
    let report = flowdemo::flow_report(config)?;
    if let Some(path) = csv {
        let start = PlanarPoint::new(0.5, 0.0)?;
        let steps = (flowdemo::analytic_period(0.5) / config.dt).round() as usize;
        let trajectory = flowdemo::integrate(start, config.dt, steps)?;
        std::fs::write(path, trajectory.to_csv()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(format, &report, || {
        let mut out = String::new();
        for d in &report.drift {
            out += &format!("radius drift over one period at r = {}: {:.3e} ({})\n", d.r, d.drift, ok(d.ok));
        }
        for p in &report.periods {
            let e = &p.estimate;
            out += &format!(
                "period at r = {}: measured {:.6}, analytic {:.6}, relative error {:.2e} ({})\n",
                e.r,
                e.measured,
                e.analytic,
                e.relative_error,
                ok(p.ok)
            );
        }
        out += &format!(
            "drift reduction when halving dt = {}: {:.2} ({})\n",
            report.order.dt,
            report.order.factor,
            ok(report.order_ok)
        );
        for w in &report.witness.entries {
            out += &format!("r_{} = {:.6}: half-period error {:.2e}\n", w.n, w.r_n, w.error);
        }
        out += &format!("{}\n{}\n", report.witness.argument, report.witness.verdict);
        out
    });
    if report.all_ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => check(cli.format, file),
        Command::Enumerate { points, random, seed } => enumerate(cli.format, *points, *random, *seed),
        Command::Gallery { name } => run_gallery(cli.format, name),
        Command::FlowDemo {
            tolerance_period,
            tolerance_drift,
            dt,
            n_max,
            csv,
        } => flow_demo(
            cli.format,
            FlowConfig {
                dt: *dt,
                tolerance_period: *tolerance_period,
                tolerance_drift: *tolerance_drift,
                n_max: *n_max,
                ..FlowConfig::default()
            },
            csv.as_ref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
