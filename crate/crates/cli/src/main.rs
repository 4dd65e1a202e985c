//! `dit`: runs box-release simulations and writes CSV/JSON tables plus a
//! `run.json` manifest.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dit_core::arrival::ArrivalMethod;
use dit_core::bohmian::SamplingMode;
use dit_core::config;
use dit_core::exec::Execution;
use dit_core::{GridSpec, InitialState, Scenario};

use crate::output::{Format, Manifest};

#[derive(Debug, Parser)]
#[command(name = "dit", version, about = "Diffraction in time after releasing a particle from a box")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability density on the x grid at several times.
    Density(CommonArgs),
    /// Probability current at the detector over the time grid.
    Current(CommonArgs),
    /// Bohmian trajectories from sampled initial positions.
    Trajectories(CommonArgs),
    /// Arrival-time distribution and mean arrival time at the detector.
    Arrival(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Density(_) => "density",
            Command::Current(_) => "current",
            Command::Trajectories(_) => "trajectories",
            Command::Arrival(_) => "arrival",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Density(a) | Command::Current(a) | Command::Trajectories(a) | Command::Arrival(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Quantile,
    Born,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Leavens,
    Cutoff,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Scenario file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `n:<int>`, `gaussian:<x0>,<sigma0>` or `free-gaussian:<x0>,<sigma0>`.
    #[arg(long)]
    state: Option<InitialState>,
    /// Detector position in um.
    #[arg(long, allow_hyphen_values = true)]
    detector_x: Option<f64>,
    /// Final time in ms.
    #[arg(long)]
    t_max: Option<f64>,
    /// First time in ms (must be > 0).
    #[arg(long)]
    t_start: Option<f64>,
    /// Position grid `min:max:count` in um.
    #[arg(long, allow_hyphen_values = true)]
    grid_x: Option<GridSpec>,
    /// Time grid `min:max:count` in ms.
    #[arg(long, allow_hyphen_values = true)]
    grid_t: Option<GridSpec>,
    /// Comma-separated snapshot times in ms (density only).
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<f64>>,
    /// Seed for Born-rule sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of trajectories.
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Quantile)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Leavens)]
    method: MethodArg,
    /// Comma-separated quantum numbers to sweep (arrival only).
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl CommonArgs {
    fn scenario(&self) -> dit_core::Result<Scenario> {
        let mut s = match &self.config {
            Some(path) => config::load(path)?,
            None => Scenario::default(),
        };
        if let Some(state) = self.state {
            s.state = state;
        }
        if let Some(x) = self.detector_x {
            s.detector_x = x;
        }
        if let Some(t) = self.t_start {
            s.t_start = t;
        }
        if let Some(t) = self.t_max {
            s.t_max = t;
        }
        if let Some(g) = self.grid_x {
            s.x_grid = g;
        }
        if let Some(g) = self.grid_t {
            s.t_grid = Some(g);
        }
        Ok(s)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn sampling(&self) -> SamplingMode {
        match self.mode {
            ModeArg::Quantile => SamplingMode::Quantile,
            ModeArg::Born => SamplingMode::Born,
        }
    }

    fn arrival_method(&self) -> ArrivalMethod {
        match self.method {
            MethodArg::Leavens => ArrivalMethod::Leavens,
            MethodArg::Cutoff => ArrivalMethod::Cutoff,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether every requested computation succeeded.
fn run(command: &Command) -> output::Result<bool> {
    let start = Instant::now();
    let args = command.args();
    let scenario = args.scenario()?;
    let warnings = scenario.validate()?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    std::fs::create_dir_all(&args.out).map_err(|e| output::Error::io(&args.out, e))?;

    let report = match command {
        Command::Density(a) => commands::density(&scenario, a)?,
        Command::Current(a) => commands::current(&scenario, a)?,
        Command::Trajectories(a) => commands::trajectories(&scenario, a)?,
        Command::Arrival(a) => commands::arrival(&scenario, a)?,
    };
    for f in &report.failures {
        eprintln!("failed: {f}");
    }
    let ok = report.failures.is_empty();
    let manifest = Manifest {
        command: command.name(),
        version: env!("CARGO_PKG_VERSION"),
        scenario: &scenario,
        config: config::render(&scenario),
        seed: report.seed,
        outputs: report.outputs,
        warnings: warnings.iter().map(ToString::to_string).collect(),
        failures: report.failures,
        duration_s: start.elapsed().as_secs_f64(),
    };
    output::write_json(&args.out.join("run.json"), &manifest)?;
    Ok(ok)
}
