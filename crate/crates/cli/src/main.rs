use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cornet::cornet::Exec;
use cornet_cli::commands::{cmd_cancel, cmd_hunt, cmd_inspect, cmd_laws, CancelArgs, HuntArgs, InspectArgs, LawsArgs, Suite};
use cornet_cli::instance::read_instance;
use cornet_cli::{CliError, CliResult, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "cornet", version, about = "Law suites, cancellation checks and counterexample hunts for cornets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for case batches; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the law suites of an instance file.
    Laws {
        file: String,
        #[arg(long)]
        cases: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        /// Restrict to these suites (repeatable); default is all that apply.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Include per-law wall-clock times.
        #[arg(long)]
        timings: bool,
    },
    /// Check the cancellation theorem on named elements.
    Cancel {
        file: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Search a finite universe of integer sets for cancellation failures.
    Hunt {
        #[arg(long, default_value = "z1")]
        universe: String,
        #[arg(long, default_value = "0..3")]
        range: String,
        #[arg(long, default_value = "none")]
        ablate: String,
        #[arg(long, default_value_t = 6)]
        max_n: u64,
    },
    /// Apply an operation to a named element.
    Inspect {
        file: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        op: String,
    },
}

fn run(cli: &Cli) -> CliResult<RunReport> {
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    match &cli.command {
        Command::Laws {
            file,
            cases,
            seed,
            max_n,
            suites,
            timings,
        } => cmd_laws(
            &read_instance(file)?,
            &LawsArgs {
                seed: *seed,
                cases: *cases,
                max_n: *max_n,
                suites: suites.clone(),
                timings: *timings,
                exec,
            },
        ),
        Command::Cancel { file, x, y, z, m, horizon } => cmd_cancel(
            &read_instance(file)?,
            &CancelArgs {
                x: x.clone(),
                y: y.clone(),
                z: z.clone(),
                m: *m,
                horizon: *horizon,
            },
        ),
        Command::Hunt {
            universe,
            range,
            ablate,
            max_n,
        } => cmd_hunt(&HuntArgs {
            universe: universe.clone(),
            range: range.clone(),
            ablate: ablate.clone(),
            max_n: *max_n,
        }),
        Command::Inspect { file, element, op } => cmd_inspect(
            &read_instance(file)?,
            &InspectArgs {
                element: element.clone(),
                op: op.clone(),
            },
        ),
    }
}

#[cfg(feature = "parallel")]
fn run_with_jobs(cli: &Cli) -> CliResult<RunReport> {
    match cli.jobs {
        Some(0) => Err(CliError::input("--jobs must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::input(format!("cannot start {n} workers: {e}")))?
            .install(|| run(cli)),
        None => run(cli),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_with_jobs(cli: &Cli) -> CliResult<RunReport> {
    if cli.jobs == Some(0) {
        return Err(CliError::input("--jobs must be positive"));
    }
    run(cli)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_with_jobs(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
                Format::Text => report.text.clone(),
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
