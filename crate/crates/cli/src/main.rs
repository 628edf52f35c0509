use std::path::PathBuf;
use std::process::ExitCode;

use citerank::pagerank::PageRankConfig;
use citerank::profile::CONFIG_ENV;
use citerank::synthnet::SynthConfig;
use citerank_cli::{
    cartel, cmd_build, cmd_compare, cmd_pagerank, cmd_pca, cmd_score, cmd_synth, dangling, BuildArgs, CompareArgs,
    PageRankArgs, PcaArgs, PcaInput, ScoreArgs, SynthArgs,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "citerank", version, about = "Citation-network reputation scores and ranking comparisons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output directory, created if absent.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build an institution citation network from JSON Lines records.
    Build {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        subject: String,
        /// Subject profile TOML; the five shipped subjects are used otherwise.
        #[arg(long, env = CONFIG_ENV)]
        config: Option<PathBuf>,
        #[arg(long)]
        threshold: Option<u32>,
        #[arg(long)]
        self_loops: bool,
        /// Abort on the first malformed line instead of skipping it.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Rank institutions of an edge list by PageRank.
    Pagerank {
        #[arg(long)]
        edges: PathBuf,
        /// Node list whose `institution` column adds nodes without edges.
        #[arg(long)]
        nodes: Option<PathBuf>,
        #[arg(long, default_value_t = 0.85)]
        damping: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        /// `uniform` or `teleport`.
        #[arg(long, default_value = "uniform")]
        dangling: String,
        #[arg(long)]
        self_loops: bool,
        #[arg(long)]
        subject: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Compare two score columns of a table.
    Compare {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Control column for a partial correlation; repeatable.
        #[arg(long = "control")]
        controls: Vec<String>,
        #[arg(long)]
        subject: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Principal components with varimax rotation.
    Pca {
        /// Correlation matrix CSV (`variable,<names>...`).
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        corr: Option<PathBuf>,
        /// Score table CSV; its columns are correlated first.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        columns: Vec<String>,
        #[arg(long, default_value_t = 2)]
        retain: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Compress raw indicators and compute the weighted composite score.
    Score {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        subject: String,
        #[arg(long, env = CONFIG_ENV)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a seeded synthetic citation network.
    Synth {
        #[arg(long, default_value_t = 100)]
        nodes: usize,
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        #[arg(long, default_value_t = 10.0)]
        mean_out: f64,
        #[arg(long)]
        cartel_size: Option<usize>,
        #[arg(long, default_value_t = 20.0)]
        cartel_boost: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

fn run(cli: Cli) -> citerank_cli::Result<Vec<PathBuf>> {
    match cli.command {
        Command::Build { records, subject, config, threshold, self_loops, strict, output } => {
            cmd_build(&BuildArgs { records, subject, config, threshold, self_loops, strict, out: output.out })
        }
        Command::Pagerank { edges, nodes, damping, tol, max_iter, dangling: policy, self_loops, subject, output } => {
            let config = PageRankConfig {
                damping,
                tolerance: tol,
                max_iterations: max_iter,
                dangling_policy: dangling(&policy)?,
            };
            cmd_pagerank(&PageRankArgs { edges, nodes, config, self_loops, subject, out: output.out })
        }
        Command::Compare { table, a, b, controls, subject, output } => cmd_compare(&CompareArgs {
            table,
            column_a: a,
            column_b: b,
            controls,
            subject,
            out: output.out,
        }),
        Command::Pca { corr, table, columns, retain, output } => {
            let input = match (corr, table) {
                (Some(c), _) => PcaInput::Correlation(c),
                (None, Some(t)) => PcaInput::Table(t, columns),
                (None, None) => unreachable!("clap requires one input"),
            };
            cmd_pca(&PcaArgs { input, retain, out: output.out })
        }
        Command::Score { table, subject, config, output } => {
            cmd_score(&ScoreArgs { table, subject, config, out: output.out })
        }
        Command::Synth { nodes, exponent, mean_out, cartel_size, cartel_boost, seed, output } => {
            let config = SynthConfig {
                n_nodes: nodes,
                attachment_exponent: exponent,
                mean_out_citations: mean_out,
                cartel: cartel(cartel_size, cartel_boost),
                seed,
            };
            cmd_synth(&SynthArgs { config, out: output.out })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(files)) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("internal error");
            ExitCode::from(2)
        }
    }
}
