use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qrepeat_cli::commands::{self, StateArgs};
use qrepeat_cli::error::CliError;
use qrepeat_cli::input;
use qrepeat_cli::render::{self, Format};

/// Two-stage repeated prisoners' dilemma on an entangled four-qubit state.
#[derive(Debug, Parser)]
#[command(name = "qrepeat", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance for condition classes and the grid oracle.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct StateOpts {
    /// Amplitudes separated by ';' or spaces, each `re` or `re,im`. Four values
    /// are read as the coefficients of |1111>, |1122>, |2211>, |2222>; sixteen
    /// as the full state in basis order.
    #[arg(long, allow_hyphen_values = true)]
    state: Option<String>,

    /// Restricted-family weights w1,w2,w3,w4 (fractions allowed).
    #[arg(long)]
    weights: Option<String>,

    /// Phases in radians for the four restricted amplitudes.
    #[arg(long, allow_hyphen_values = true)]
    phases: Option<String>,
}

impl From<StateOpts> for StateArgs {
    fn from(o: StateOpts) -> Self {
        StateArgs {
            state: o.state,
            weights: o.weights,
            phases: o.phases,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expected stage payoffs for a state and profile.
    Evaluate {
        #[command(flatten)]
        state: StateOpts,
        /// Cooperation probabilities p,q,p1,q1.
        #[arg(long)]
        profile: String,
    },
    /// Subgame-perfect outcomes by backward induction.
    Sgpo {
        #[command(flatten)]
        state: StateOpts,
        /// Solve in exact rational arithmetic (needs --weights).
        #[arg(long)]
        exact: bool,
        /// Grid resolution of the oracle cross-check.
        #[arg(long, default_value_t = 100)]
        grid_n: usize,
    },
    /// Cooperate-then-defect conditions for restricted weights.
    Conditions {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        exact: bool,
    },
    /// Conditions and outcomes over the simplex grid with step 1/R.
    Sweep {
        #[arg(long)]
        resolution: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Seeded consistency checks against the classical game.
    VerifyClassical {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, hide = true)]
        corrupt_matrix: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    let mut failure = None;
    let text = match cli.command {
        Command::Evaluate { state, profile } => {
            let profile = input::parse_profile(&profile)?;
            render::evaluate(&commands::evaluate(&state.into(), &profile)?, format)?
        }
        Command::Sgpo {
            state,
            exact,
            grid_n,
        } => {
            if grid_n == 0 {
                return Err(CliError::Usage("--grid-n must be at least 1".into()));
            }
            render::sgpo(&commands::sgpo_command(&state.into(), exact, grid_n, cli.tol)?, format)?
        }
        Command::Conditions { weights, exact } => {
            render::conditions(&commands::conditions(&weights, exact, cli.tol)?, format)?
        }
        Command::Sweep { resolution, exact } => {
            render::sweep(&commands::sweep(resolution, exact, cli.tol)?, format)?
        }
        Command::VerifyClassical {
            seed,
            samples,
            corrupt_matrix,
        } => {
            let rep = commands::verify(seed, samples, cli.tol, corrupt_matrix)?;
            if !rep.all_passed {
                let failed: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                failure = Some(CliError::Verification(failed.join(", ")));
            }
            render::verify(&rep, format)?
        }
    };
    match cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.kind().to_string();
            let detail = e.to_string();
            let first = detail
                .lines()
                .find(|l| l.starts_with("error:"))
                .map(|l| l.trim_start_matches("error:").trim().to_string())
                .unwrap_or(msg);
            eprintln!("error: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
