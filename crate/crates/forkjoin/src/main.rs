//! Thin command-line front end over the library; see the crate docs and
//! `examples/` for the underlying calls.
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse error, 3 numeric or
//! simulation failure.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use forkjoin::experiment::{
    self, preset, render_csv, run_experiment, DEFAULT_CYCLES, DEFAULT_SEED,
};
use forkjoin::network::Topology;
use forkjoin::stochastic::{
    cycle_time_lower_bound, cycle_time_upper_bound, estimate_mean_cycle_time, BoundsReport,
    ServiceModel, UpperBoundMethod, UpperBoundOpts,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(
    name = "forkjoin",
    about = "Mean cycle time bounds and simulation for acyclic fork-join queueing networks",
    after_help = "Exit codes: 0 success, 1 usage, 2 parse error, 3 numeric failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the analytic lower/upper bounds for a topology and model.
    Bounds {
        /// Topology file (`nodes N` header, then `edge I J` lines).
        topology: PathBuf,
        /// Model spec words, e.g. `model exponential 1 1 1 1 1`.
        #[arg(num_args = 1.., required = true)]
        model: Vec<String>,
        /// Upper bound evaluation: auto, closed-form, quadrature or monte-carlo.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Monte Carlo draws when sampling is needed.
        #[arg(long, default_value_t = experiment::DEFAULT_MC_DRAWS)]
        mc_draws: u64,
        /// Seed for Monte Carlo upper bounds.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Simulate the mean cycle time and report it with the bounds.
    Simulate {
        topology: PathBuf,
        #[arg(num_args = 1.., required = true)]
        model: Vec<String>,
        /// Service cycles to simulate.
        #[arg(long, default_value_t = DEFAULT_CYCLES)]
        cycles: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the result as a one-row CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in sweep preset (table1, table2 or table3) to CSV.
    Table {
        /// Preset name: table1, table2 or table3.
        name: String,
        /// Tandem length for table3.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLES)]
        cycles: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn parse_failure(message: String) -> CliError {
    CliError { code: EXIT_PARSE, message }
}

fn numeric_failure(message: String) -> CliError {
    CliError { code: EXIT_NUMERIC, message }
}

fn usage_failure(message: String) -> CliError {
    CliError { code: EXIT_USAGE, message }
}

fn load_topology(path: &Path) -> Result<Topology, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_failure(format!("{}: {e}", path.display())))?;
    Topology::parse(&text).map_err(|e| parse_failure(format!("{}: {e}", path.display())))
}

fn parse_model(words: &[String], nodes: usize) -> Result<ServiceModel, CliError> {
    let spec = words.join(" ");
    ServiceModel::parse(&spec, nodes).map_err(|e| parse_failure(e.to_string()))
}

fn parse_method(name: &str) -> Result<UpperBoundMethod, CliError> {
    match name {
        "auto" => Ok(UpperBoundMethod::Auto),
        "closed-form" => Ok(UpperBoundMethod::ClosedForm),
        "quadrature" => Ok(UpperBoundMethod::Quadrature),
        "monte-carlo" => Ok(UpperBoundMethod::MonteCarlo),
        other => Err(usage_failure(format!(
            "unknown method `{other}` (expected auto, closed-form, quadrature or monte-carlo)"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds { topology, model, method, mc_draws, seed } => {
            let topology = load_topology(&topology)?;
            let model = parse_model(&model, topology.node_count())?;
            let method = parse_method(&method)?;
            let opts = UpperBoundOpts { mc_draws, seed, ..UpperBoundOpts::default() };
            let upper = cycle_time_upper_bound(&model, method, &opts)
                .map_err(|e| numeric_failure(e.to_string()))?;
            let report =
                BoundsReport { lower: cycle_time_lower_bound(&model), upper, estimate: None };
            print!("{report}");
            Ok(())
        }
        Command::Simulate { topology, model, cycles, seed, out } => {
            if cycles == 0 {
                return Err(usage_failure("--cycles must be at least 1".into()));
            }
            let topology = load_topology(&topology)?;
            let model = parse_model(&model, topology.node_count())?;
            let report = estimate_mean_cycle_time(&model, &topology, cycles, seed)
                .map_err(|e| numeric_failure(e.to_string()))?;
            print!("{report}");
            if let Some(path) = out {
                let experiment = experiment::Experiment {
                    name: "simulate".into(),
                    topology,
                    topology_desc: "from file".into(),
                    rows: vec![experiment::SweepRow {
                        label: model.family().to_string(),
                        model,
                    }],
                    cycles,
                    seed,
                    upper_method: UpperBoundMethod::Auto,
                    mc_draws: experiment::DEFAULT_MC_DRAWS,
                };
                let rows = vec![experiment::RowReport {
                    label: experiment.rows[0].label.clone(),
                    report,
                }];
                write_out(&path, &render_csv(&experiment, &rows))?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Table { name, n, cycles, seed, out } => {
            if cycles == 0 {
                return Err(usage_failure("--cycles must be at least 1".into()));
            }
            let experiment = preset(&name, cycles, seed, n)
                .map_err(|e| usage_failure(e.to_string()))?;
            let rows = run_experiment(&experiment)
                .map_err(|e| numeric_failure(e.to_string()))?;
            write_out(&out, &render_csv(&experiment, &rows))?;
            println!("wrote {} ({} rows)", out.display(), rows.len());
            Ok(())
        }
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| numeric_failure(format!("{}: {e}", path.display())))
}
