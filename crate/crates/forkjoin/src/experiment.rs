//! Reproducible experiment sweeps and their CSV reports.
//!
//! An [`Experiment`] pairs one topology with a list of service models (one
//! sweep row each) and runs, per row, the analytic bounds plus a γ̂
//! simulation. Rows are independent jobs: row i draws from the replication-i
//! random streams of the master seed, so results do not depend on execution
//! order and identical configurations render byte-identical CSV.
//!
//! Three presets ship with the crate:
//!
//! * `table1` — the 5-node fork-join network under the dependent mixture
//!   family, a ∈ {1, 1/2, 1/3, 1/4, 1/5};
//! * `table2` — the same network with independent exponential services and
//!   one hot node of mean μ ∈ {1..10};
//! * `table3` — a tandem line (10 nodes by default) with scaled-Erlang
//!   services of shape r ∈ {1..10}.

use crate::network::Topology;
use crate::stochastic::{
    cycle_time_lower_bound, cycle_time_upper_bound, simulate_mean_cycle, BoundsReport,
    EstimateError, ModelError, ServiceModel, UpperBoundMethod, UpperBoundOpts,
};
use std::fmt::Write as _;

/// First line of every CSV this module writes.
pub const CSV_SCHEMA: &str = "forkjoin-table-csv-v1";
/// Cycles per simulation unless overridden.
pub const DEFAULT_CYCLES: usize = 100_000;
/// Master seed unless overridden.
pub const DEFAULT_SEED: u64 = 155_203;
/// Monte Carlo draws for upper bounds that need sampling.
pub const DEFAULT_MC_DRAWS: u64 = 10_000_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown table preset `{0}` (expected table1, table2 or table3)")]
    UnknownPreset(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("row {label}: {source}")]
    Row { label: String, source: EstimateError },
}

/// One sweep point: a display label for the parameter column and the model.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub label: String,
    pub model: ServiceModel,
}

/// A fully specified sweep; see the module docs for the seeding rule.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub name: String,
    pub topology: Topology,
    pub topology_desc: String,
    pub rows: Vec<SweepRow>,
    pub cycles: usize,
    pub seed: u64,
    pub upper_method: UpperBoundMethod,
    pub mc_draws: u64,
}

/// Bounds and estimate for one completed sweep row.
#[derive(Debug, Clone)]
pub struct RowReport {
    pub label: String,
    pub report: BoundsReport,
}

/// The 5-node fork-join network used by the table1/table2 presets: sources
/// 1 and 2, a diamond through 3 and 4, sink 5; longest path 2.
pub fn fork_join_5() -> Topology {
    Topology::new(5, &[(1, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
        .expect("the built-in fork-join topology is valid")
}

/// An n-node tandem line 1 → 2 → … → n.
pub fn tandem(nodes: usize) -> Topology {
    let edges: Vec<(usize, usize)> = (1..nodes).map(|i| (i, i + 1)).collect();
    Topology::new(nodes, &edges).expect("a tandem line is valid")
}

/// Dependent-mixture sweep on the fork-join network.
pub fn table1(cycles: usize, seed: u64) -> Experiment {
    let weights = [(1.0, "1"), (0.5, "1/2"), (1.0 / 3.0, "1/3"), (0.25, "1/4"), (0.2, "1/5")];
    let rows = weights
        .into_iter()
        .map(|(a, label)| SweepRow {
            label: label.to_string(),
            model: ServiceModel::mixture_family(5, a).expect("preset weights are in range"),
        })
        .collect();
    Experiment {
        name: "table1".into(),
        topology: fork_join_5(),
        topology_desc: "fork-join, 5 nodes".into(),
        rows,
        cycles,
        seed,
        upper_method: UpperBoundMethod::Auto,
        mc_draws: DEFAULT_MC_DRAWS,
    }
}

/// Hot-node exponential sweep on the fork-join network: node 4 gets mean
/// μ = 1..10, the others stay at mean 1.
pub fn table2(cycles: usize, seed: u64) -> Experiment {
    let rows = (1..=10)
        .map(|mu| {
            let mut means = vec![1.0; 5];
            means[3] = f64::from(mu);
            SweepRow {
                label: format!("{:.1}", f64::from(mu)),
                model: ServiceModel::independent_exponential(means)
                    .expect("preset means are positive"),
            }
        })
        .collect();
    Experiment {
        name: "table2".into(),
        topology: fork_join_5(),
        topology_desc: "fork-join, 5 nodes".into(),
        rows,
        cycles,
        seed,
        upper_method: UpperBoundMethod::Quadrature,
        mc_draws: DEFAULT_MC_DRAWS,
    }
}

/// Scaled-Erlang sweep r = 1..10 on a tandem line of `nodes` queues
/// (10 by default elsewhere).
pub fn table3(cycles: usize, seed: u64, nodes: usize) -> Result<Experiment, ExperimentError> {
    let rows = (1..=10)
        .map(|r| {
            Ok(SweepRow {
                label: r.to_string(),
                model: ServiceModel::scaled_erlang(r, nodes)?,
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(Experiment {
        name: "table3".into(),
        topology: tandem(nodes),
        topology_desc: format!("tandem, {nodes} nodes"),
        rows,
        cycles,
        seed,
        upper_method: UpperBoundMethod::Quadrature,
        mc_draws: DEFAULT_MC_DRAWS,
    })
}

/// Looks a preset up by its CLI name.
pub fn preset(
    name: &str,
    cycles: usize,
    seed: u64,
    tandem_nodes: usize,
) -> Result<Experiment, ExperimentError> {
    match name {
        "table1" => Ok(table1(cycles, seed)),
        "table2" => Ok(table2(cycles, seed)),
        "table3" => table3(cycles, seed, tandem_nodes),
        other => Err(ExperimentError::UnknownPreset(other.to_string())),
    }
}

/// Runs every sweep row: analytic bounds first, then the γ̂ simulation,
/// with row i on replication i of the master seed.
pub fn run_experiment(experiment: &Experiment) -> Result<Vec<RowReport>, ExperimentError> {
    experiment
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            run_row(experiment, row, i as u32)
                .map(|report| RowReport { label: row.label.clone(), report })
                .map_err(|source| ExperimentError::Row { label: row.label.clone(), source })
        })
        .collect()
}

fn run_row(
    experiment: &Experiment,
    row: &SweepRow,
    replication: u32,
) -> Result<BoundsReport, EstimateError> {
    let opts = UpperBoundOpts {
        mc_draws: experiment.mc_draws,
        seed: experiment.seed,
        replication,
        ..UpperBoundOpts::default()
    };
    let upper = cycle_time_upper_bound(&row.model, experiment.upper_method, &opts)?;
    let estimate = simulate_mean_cycle(
        &row.model,
        &experiment.topology,
        experiment.cycles,
        experiment.seed,
        replication,
    )?;
    Ok(BoundsReport {
        lower: cycle_time_lower_bound(&row.model),
        upper,
        estimate: Some(estimate),
    })
}

/// Renders completed rows as CSV: `#` metadata lines, a header row, then
/// one line per sweep row. Contains nothing run-dependent beyond the
/// results themselves, so equal configurations give equal bytes.
pub fn render_csv(experiment: &Experiment, rows: &[RowReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {CSV_SCHEMA}");
    let _ = writeln!(out, "# experiment: {}", experiment.name);
    let _ = writeln!(out, "# topology: {}", experiment.topology_desc);
    let _ = writeln!(out, "# cycles: {}", experiment.cycles);
    let _ = writeln!(out, "# seed: {} (row i simulates on replication i)", experiment.seed);
    let _ = writeln!(
        out,
        "param,lower,gamma_hat,gamma_stderr,upper,upper_method,upper_abs_err,cycles,seed"
    );
    for row in rows {
        let r = &row.report;
        let (gamma, stderr, cycles) = match &r.estimate {
            Some(e) => (
                format!("{:.6}", e.gamma),
                e.std_err.map(|s| format!("{s:.6}")).unwrap_or_default(),
                e.cycles,
            ),
            None => (String::new(), String::new(), 0),
        };
        let _ = writeln!(
            out,
            "{},{:.6},{},{},{:.6},{},{:.3e},{},{}",
            row.label,
            r.lower,
            gamma,
            stderr,
            r.upper.value,
            r.upper.method,
            r.upper.abs_error,
            cycles,
            experiment.seed,
        );
    }
    out
}
