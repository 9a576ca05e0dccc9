mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use testcomp_core::metrics::Subset;

use config::PipelineConfig;
use output::Run;

#[derive(Parser)]
#[command(name = "testcomp", version, about = "Test statement completion pipeline")]
struct Cli {
    /// TOML pipeline configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JDK or runtime root holding the compiler, JVM and JUnit jars.
    #[arg(long, global = true)]
    toolchain: Option<PathBuf>,
    /// Execute candidates but keep their original order.
    #[arg(long, global = true)]
    no_rerank: bool,
    /// Subsets to report; repeatable.
    #[arg(long, global = true, value_parser = parse_subset)]
    subset: Vec<Subset>,
    #[command(subcommand)]
    command: Command,
}

fn parse_subset(s: &str) -> Result<Subset, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Read project roots into store archives, one per project.
    Collect {
        #[arg(required = true)]
        roots: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build train, val and eval task files from store archives.
    Extract {
        #[arg(long = "store", required = true)]
        stores: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Produce ranked candidates for every task.
    Predict {
        #[arg(long)]
        tasks: PathBuf,
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long = "store")]
        stores: Vec<PathBuf>,
        /// Validate and normalize predictions made elsewhere.
        #[arg(long)]
        external: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Execute candidates and reorder them by outcome.
    Rerank {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        tasks: PathBuf,
        #[arg(long = "store", required = true)]
        stores: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        outcomes: PathBuf,
    },
    /// Score predictions and write a report.
    Eval {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        tasks: PathBuf,
        #[arg(long)]
        outcomes: Option<PathBuf>,
        /// Second system for paired bootstrap comparison.
        #[arg(long)]
        baseline: Option<PathBuf>,
        #[arg(long)]
        baseline_outcomes: Option<PathBuf>,
        /// Multiply similarity metrics by this factor in the report.
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut config = PipelineConfig::load(cli.config.as_deref())?;
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if cli.toolchain.is_some() {
        config.toolchain = cli.toolchain;
    }
    if cli.no_rerank {
        config.rerank = false;
    }
    config.validate()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build_global()?;
    let mut inputs: Vec<PathBuf> = cli.config.iter().cloned().collect();
    let (name, more): (&'static str, Vec<PathBuf>) = match &cli.command {
        Command::Collect { roots, .. } => ("collect", roots.clone()),
        Command::Extract { stores, .. } => ("extract", stores.clone()),
        Command::Predict {
            tasks,
            train,
            stores,
            external,
            ..
        } => (
            "predict",
            [Some(tasks.clone()), train.clone(), external.clone()]
                .into_iter()
                .flatten()
                .chain(stores.clone())
                .collect(),
        ),
        Command::Rerank {
            predictions,
            tasks,
            stores,
            ..
        } => (
            "rerank",
            [predictions.clone(), tasks.clone()]
                .into_iter()
                .chain(stores.clone())
                .collect(),
        ),
        Command::Eval {
            predictions,
            tasks,
            outcomes,
            baseline,
            baseline_outcomes,
            ..
        } => (
            "eval",
            [
                Some(predictions.clone()),
                Some(tasks.clone()),
                outcomes.clone(),
                baseline.clone(),
                baseline_outcomes.clone(),
            ]
            .into_iter()
            .flatten()
            .collect(),
        ),
    };
    inputs.extend(more);
    let run = Run {
        command: name,
        config_hash: config.hash(),
        seed: config.seed,
        inputs,
    };
    match &cli.command {
        Command::Collect { roots, out } => commands::collect(&config, &run, roots, out),
        Command::Extract { stores, out } => commands::extract(&config, &run, stores, out),
        Command::Predict {
            tasks,
            train,
            stores,
            external,
            out,
        } => commands::predict(
            &config,
            &run,
            commands::PredictArgs {
                train: train.as_deref(),
                tasks,
                stores,
                external: external.as_deref(),
                out,
            },
        ),
        Command::Rerank {
            predictions,
            tasks,
            stores,
            out,
            outcomes,
        } => commands::rerank(
            &config,
            &run,
            commands::RerankArgs {
                predictions,
                tasks,
                stores,
                out,
                outcomes,
            },
        ),
        Command::Eval {
            predictions,
            tasks,
            outcomes,
            baseline,
            baseline_outcomes,
            scale,
            out,
        } => {
            let table = commands::eval(
                &config,
                &run,
                commands::EvalArgs {
                    predictions,
                    outcomes: outcomes.as_deref(),
                    baseline: baseline.as_deref(),
                    baseline_outcomes: baseline_outcomes.as_deref(),
                    tasks,
                    subsets: cli.subset.clone(),
                    scale: *scale,
                    out,
                },
            )?;
            print!("{table}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
