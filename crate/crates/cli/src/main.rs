mod output;
mod scenario_file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use uavsec::{
    check_plan, circular_baseline, continuous_relaxation, hover_baseline, minimize_latency, prop1_bound, Association64,
    Error, PlanResult64, Scenario64, SolverOptions64, Trajectory64,
};

use output::{fmt_float, sink, write_plan_files};
use scenario_file::ScenarioFile;

#[derive(Parser, Debug)]
#[command(name = "uavsec", version, about = "Minimum-latency secure UAV content delivery planner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plan a delivery and write plan.json, trace.csv, trajectory.csv and association.csv.
    Plan(PlanArgs),
    /// Check a plan.json against a scenario; exit 0 iff it passes.
    Validate {
        scenario: PathBuf,
        plan: PathBuf,
    },
    /// Tabulate the closed-form bound and the optimized slot count over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(clap::Args, Debug)]
struct PlanArgs {
    scenario: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Run a comparison scheme instead of the optimizer.
    #[arg(long, value_enum)]
    baseline: Option<Baseline>,
    /// Horizon for the fixed-horizon schemes (circular, cr); defaults to the closed-form bound.
    #[arg(long)]
    slots: Option<usize>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(clap::Args, Debug)]
struct SolverArgs {
    /// Penalty weight.
    #[arg(long, default_value_t = 0.1)]
    omega: f64,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Seed for jittering the initial association.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 50)]
    max_iters: usize,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions64 {
        SolverOptions64 {
            omega: self.omega,
            n_min: self.n_min,
            n_max: self.n_max,
            seed: self.seed,
            bcd_max_iters: self.max_iters,
            ..SolverOptions64::default()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Baseline {
    Hover,
    Circular,
    Cr,
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    scenario: PathBuf,
    #[arg(long, value_enum)]
    parameter: SweepParameter,
    /// Comma-separated values: Hz for bandwidth, MB for content, m/s for vmax.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    values: Vec<f64>,
    /// Output CSV; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only compute the closed-form bound.
    #[arg(long)]
    bound_only: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepParameter {
    Bandwidth,
    Content,
    Vmax,
}

impl SweepParameter {
    fn name(self) -> &'static str {
        match self {
            Self::Bandwidth => "bandwidth_hz",
            Self::Content => "content_mb",
            Self::Vmax => "vmax_mps",
        }
    }

    fn apply(self, file: &ScenarioFile, value: f64) -> ScenarioFile {
        let mut f = file.clone();
        match self {
            Self::Bandwidth => f.bandwidth_hz = value,
            Self::Content => f.content_mb = value,
            Self::Vmax => f.vmax_mps = value,
        }
        f
    }
}

/// Failure classes and their exit codes.
#[derive(Debug)]
enum Failure {
    /// Unreadable or invalid input (1).
    Input(String),
    /// The upper end of the slot bracket is not feasible (2).
    Bracket(String),
    /// Solver or output failure (3).
    Solver(String),
    /// A plan was checked and rejected (4).
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::Bracket(_) => 2,
            Self::Solver(_) => 3,
            Self::Rejected(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Bracket(m) | Self::Solver(m) | Self::Rejected(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidScenario(_) | Error::InvalidOptions(_) | Error::DimensionMismatch { .. } => {
                Self::Input(e.to_string())
            }
            Error::InfeasibleBracket { .. } => Self::Bracket(e.to_string()),
            _ => Self::Solver(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Solver(format!("writing output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Solver(format!("writing output: {e}"))
    }
}

fn load_scenario(path: &Path) -> Result<(ScenarioFile, Scenario64), Failure> {
    let file = ScenarioFile::load(path).map_err(Failure::Input)?;
    let scn = file.to_scenario();
    scn.validate()?;
    Ok((file, scn))
}

fn cmd_plan(args: &PlanArgs) -> Result<(), Failure> {
    let (_, scn) = load_scenario(&args.scenario)?;
    let opts = args.solver.options();
    opts.validate()?;
    let horizon = || -> Result<usize, Failure> {
        match args.slots {
            Some(0) => Err(Failure::Input("--slots must be at least 1".into())),
            Some(n) => Ok(n),
            None => Ok(prop1_bound(&scn)?),
        }
    };
    let plan = match args.baseline {
        None => minimize_latency(&scn, &opts)?,
        Some(Baseline::Hover) => hover_baseline(&scn)?,
        Some(Baseline::Circular) => circular_baseline(&scn, horizon()?)?,
        Some(Baseline::Cr) => continuous_relaxation(&scn, horizon()?, &opts)?,
    };
    write_plan_files(&plan, &args.out)?;
    println!(
        "{:?}: {} slots ({} s), complete = {}, λ = {}",
        plan.scheme,
        plan.n_star,
        plan.latency_s,
        plan.complete,
        fmt_float(plan.lambda)
    );
    Ok(())
}

/// The part of `plan.json` that validation needs.
#[derive(Deserialize)]
struct PlanFile {
    trajectory: Trajectory64,
    association: Association64,
}

fn cmd_validate(scenario: &Path, plan: &Path) -> Result<(), Failure> {
    let (_, scn) = load_scenario(scenario)?;
    let text = std::fs::read_to_string(plan).map_err(|e| Failure::Input(format!("{}: {e}", plan.display())))?;
    let file: PlanFile =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", plan.display())))?;
    let report = check_plan(&scn, &file.trajectory, &file.association)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Solver(e.to_string()))?;
    println!("{json}");
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "plan rejected: {} short users, {} speed, {} boundary, {} column violations, {} non-binary entries",
            report.shortfall_users.len(),
            report.speed_violations.len(),
            report.boundary_violations.len(),
            report.column_violations.len(),
            report.non_binary.len()
        )))
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    if args.values.is_empty() {
        return Err(Failure::Input("--values is empty".into()));
    }
    let (file, _) = load_scenario(&args.scenario)?;
    let opts = args.solver.options();
    opts.validate()?;
    let mut rows = Vec::with_capacity(args.values.len());
    for &value in &args.values {
        let scn = args.parameter.apply(&file, value).to_scenario();
        scn.validate()?;
        let bound = prop1_bound(&scn)?;
        let plan: Option<PlanResult64> = if args.bound_only {
            None
        } else {
            Some(minimize_latency(&scn, &opts)?)
        };
        rows.push((value, bound, plan));
    }
    let mut w = csv::Writer::from_writer(sink(args.out.as_deref())?);
    w.write_record(["parameter", "value", "prop1_bound", "n_star", "latency_s"])?;
    for (value, bound, plan) in rows {
        let (n_star, latency) = match plan {
            Some(p) => (p.n_star.to_string(), fmt_float(p.latency_s)),
            None => (String::new(), String::new()),
        };
        w.write_record([args.parameter.name().to_string(), fmt_float(value), bound.to_string(), n_star, latency])?;
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Validate { scenario, plan } => cmd_validate(scenario, plan),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("uavsec: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
