//! Command-line front end for `hamdisc`.
//!
//! Batch subcommands (`dirac-cycle`, `expander-path`, `gnp-cycle`,
//! `tournament-count`) run seeded trials through [`run_experiment`] and write
//! one CSV row per trial. The rest are single-shot tools over graph files.
//!
//! Exit codes: 0 on success, 1 when a structural validation fails or a
//! single-shot search finds nothing, 2 on usage, configuration or I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hamdisc::{Graph, Seed};

mod commands;
mod experiment;
mod input;

pub use experiment::{run_experiment, Experiment, ExperimentConfig, Host, Summary};
pub use input::InputGraph;

#[derive(Parser, Debug)]
#[command(name = "hamdisc", version, about = "Hamilton cycles with many same-direction edges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct IoArgs {
    /// Base seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Graph file in the edge-list text format.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Flags of the batch subcommands.
#[derive(Args, Debug, Clone)]
pub struct BatchArgs {
    /// Number of trials; trial i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph, orientation or linear forest.
    Gen(GenArgs),
    /// Orient every edge of the input graph uniformly at random.
    Orient(OrientArgs),
    /// Exhaustive queries on small inputs.
    Oracle(OracleArgs),
    /// Vertex-disjoint good diamonds and their positive paths.
    Diamonds(DiamondsArgs),
    /// Hamilton cycle through a prescribed linear forest.
    Posa(PosaArgs),
    /// Hamilton cycles with many forward edges in dense graphs.
    DiracCycle(DiracArgs),
    /// Long nearly-forward paths in expanding graphs.
    ExpanderPath(ExpanderArgs),
    /// Oriented Hamilton cycles in random graphs above the threshold.
    GnpCycle(GnpArgs),
    /// Count Hamilton cycles of random tournaments by forward edges.
    TournamentCount(TournamentArgs),
    /// Random-graph property report.
    Props(PropsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// G(n, p); needs --n, --p.
    Gnp,
    /// Uniform graph with --m edges; needs --n, --m.
    Gnm,
    Complete,
    Cycle,
    /// Random graph of minimum degree --degree.
    MinDegree,
    /// Worst-case oriented instance of minimum degree --degree.
    Extremal,
    Tournament,
    /// Random linear forest of --size edges inside the --input graph.
    Forest,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub size: Option<usize>,
    /// Also orient the generated graph at random.
    #[arg(long)]
    pub oriented: bool,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct OrientArgs {
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
#[group(id = "query", required = true, multiple = true)]
pub struct OracleQueries {
    /// Best forward count over all Hamilton cycles.
    #[arg(long)]
    pub max_forward: bool,
    /// Check the β-graph property exactly.
    #[arg(long, value_name = "BETA")]
    pub beta: Option<f64>,
    /// Number of Hamilton cycles.
    #[arg(long)]
    pub count_cycles: bool,
    /// Hamilton cycles whose better direction has at least this many forward edges.
    #[arg(long, value_name = "T")]
    pub min_forward_threshold: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub queries: OracleQueries,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct DiamondsArgs {
    /// Number of disjoint good diamonds to find.
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub find: usize,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct PosaArgs {
    /// Linear forest as an edge-list file on the same vertex set.
    #[arg(long)]
    pub forest: Option<PathBuf>,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct DiracArgs {
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Vertices of the generated host (ignored with --input).
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Sample a random host of this minimum degree per trial instead of K_n.
    #[arg(long)]
    pub min_degree: Option<usize>,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub batch: BatchArgs,
}

#[derive(Args, Debug)]
pub struct ExpanderArgs {
    #[arg(long)]
    pub delta: f64,
    /// Sample G(N, C/N) per trial.
    #[arg(long, num_args = 2, value_names = ["N", "C"], conflicts_with = "input")]
    pub gnp: Option<Vec<f64>>,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub batch: BatchArgs,
}

#[derive(Args, Debug)]
pub struct GnpArgs {
    #[arg(long)]
    pub n: usize,
    /// p = (ln n + ln ln n + slack)/n.
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub slack: f64,
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub batch: BatchArgs,
}

#[derive(Args, Debug)]
pub struct TournamentArgs {
    #[arg(long)]
    pub n: usize,
    /// Minimum forward edges (default n - 1).
    #[arg(long)]
    pub threshold: Option<usize>,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub batch: BatchArgs,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    /// Sample G(N, p) at p = (ln N + ln ln N + SLACK)/N instead of reading --input.
    #[arg(long, num_args = 2, value_names = ["N", "SLACK"], conflicts_with = "input", allow_negative_numbers = true)]
    pub gnp: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.2)]
    pub beta: f64,
    /// Edge probability for the density check (default: the sampling p, or
    /// the edge density of the input).
    #[arg(long)]
    pub p: Option<f64>,
    /// Set pairs sampled for the density check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    pub io: IoArgs,
}

/// Whether a command met its own success criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

fn vertex_count(x: f64) -> anyhow::Result<usize> {
    if x.fract() != 0.0 || x < 0.0 || x > u32::MAX as f64 {
        bail!("vertex count {x} is not a non-negative integer");
    }
    Ok(x as usize)
}

fn batch_config(experiment: Experiment, io: &IoArgs, batch: &BatchArgs) -> ExperimentConfig {
    ExperimentConfig {
        experiment,
        trials: batch.trials,
        base_seed: Seed(io.seed),
        jobs: batch.jobs,
        output: io.output.clone(),
    }
}

/// Builds the experiment for a batch subcommand; `None` for the others.
pub fn experiment_config(command: &Command) -> anyhow::Result<Option<ExperimentConfig>> {
    let no_input = |io: &IoArgs, name: &str| match &io.input {
        Some(_) => bail!("{name} samples its own graphs and takes no --input"),
        None => Ok(()),
    };
    let cfg = match command {
        Command::DiracCycle(a) => {
            let host = match (&a.io.input, a.min_degree) {
                (Some(path), _) => Host::File(InputGraph::load(path)?),
                (None, Some(degree)) => Host::MinDegree { n: a.n, degree },
                (None, None) => Host::Complete(Arc::new(Graph::complete(a.n))),
            };
            batch_config(Experiment::DiracCycle { host, k: a.k }, &a.io, &a.batch)
        }
        Command::ExpanderPath(a) => {
            let host = match (&a.io.input, &a.gnp) {
                (Some(path), _) => Host::File(InputGraph::load(path)?),
                (None, Some(nc)) => {
                    let n = vertex_count(nc[0])?;
                    if nc[1].is_nan() || nc[1] <= 0.0 {
                        bail!("C must be positive");
                    }
                    Host::Gnp { n, p: (nc[1] / n.max(1) as f64).min(1.0) }
                }
                (None, None) => bail!("expander-path needs --input or --gnp N C"),
            };
            batch_config(Experiment::ExpanderPath { host, delta: a.delta }, &a.io, &a.batch)
        }
        Command::GnpCycle(a) => {
            no_input(&a.io, "gnp-cycle")?;
            batch_config(Experiment::GnpCycle { n: a.n, slack: a.slack, delta: a.delta }, &a.io, &a.batch)
        }
        Command::TournamentCount(a) => {
            no_input(&a.io, "tournament-count")?;
            batch_config(
                Experiment::TournamentCount { n: a.n, threshold: a.threshold.unwrap_or(a.n.saturating_sub(1)) },
                &a.io,
                &a.batch,
            )
        }
        _ => return Ok(None),
    };
    Ok(Some(cfg))
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(cfg) = experiment_config(&cli.command)? {
        let summary = run_experiment(&cfg)?;
        return Ok(if summary.all_valid() { Outcome::Success } else { Outcome::Failure });
    }
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Orient(a) => commands::orient(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Diamonds(a) => commands::diamonds(a),
        Command::Posa(a) => commands::posa(a),
        Command::Props(a) => commands::props(a),
        _ => unreachable!("batch subcommands are handled above"),
    }
}

/// Parses `args`, runs the command and maps the result to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
