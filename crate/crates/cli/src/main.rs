use clap::{Args, Parser, Subcommand};
use recov_cli::commands;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact simulator, analyzer, and optimal solvers for post-disruption
/// repair scheduling.
#[derive(Parser)]
#[command(name = "recov", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArg {
    /// Scenario JSON file ({"nodes":[{"id":1,"v0":"0.8","w":"1","inc":"0.025","dec":"0.02"},...]})
    #[arg(long)]
    scenario: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run a feedback policy or a fixed repair order and record the trace
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// healthiest-first | least-mod-global | least-mod-in-z |
        /// order:LIST | random | random-nonjumping
        #[arg(long, conflicts_with = "order")]
        policy: Option<String>,
        /// Comma-separated repair order, e.g. 1,2,3 (equivalent to
        /// --policy order:LIST)
        #[arg(long)]
        order: Option<String>,
        /// Step cap; defaults to RECOV_MAX_HORIZON or the scenario guard
        #[arg(long)]
        horizon: Option<u64>,
        /// Seed for the random policies
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the trace as CSV to this path
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute an optimal control sequence
    Solve {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// auto | brute | nonjump-enum
        #[arg(long, default_value = "auto")]
        method: String,
        /// Search horizon for --method brute
        #[arg(long)]
        horizon: Option<u64>,
        /// Write the result JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the scenario's regime and print the policy conditions
    Analyze {
        #[command(flatten)]
        scenario: ScenarioArg,
    },
    /// Sample a seeded random baseline and write a repaired-count histogram
    Experiment {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// random | random-nonjumping
        #[arg(long)]
        baseline: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Histogram CSV output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run the built-in case studies and check their frozen results
    Reproduce {
        /// 1 | 2 | tables | all
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "reproduce_out")]
        out_dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<i32, recov_cli::CliError> {
    match cli.command {
        Command::Simulate {
            scenario,
            policy,
            order,
            horizon,
            seed,
            trace,
        } => commands::cmd_simulate(
            &scenario.scenario,
            policy.as_deref(),
            order.as_deref(),
            horizon,
            seed,
            trace.as_deref(),
        ),
        Command::Solve {
            scenario,
            method,
            horizon,
            out,
        } => commands::cmd_solve(&scenario.scenario, &method, horizon, out.as_deref()),
        Command::Analyze { scenario } => commands::cmd_analyze(&scenario.scenario),
        Command::Experiment {
            scenario,
            baseline,
            samples,
            seed,
            out,
        } => commands::cmd_experiment(&scenario.scenario, &baseline, samples, seed, &out),
        Command::Reproduce { case, out_dir } => commands::cmd_reproduce(&case, &out_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
