//! Command-line front end: analyze bipartite state fixtures, emit
//! conserving-generator families, mask message unitaries, verify
//! conservation, and run masking simulations. All documents are JSON; all
//! commands are deterministic given their inputs and seed flags.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 output
//! I/O error.

mod commands;
mod documents;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::opt_path;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or inconsistent input (exit 2).
    Input(String),
    /// The verification predicate failed (exit 1).
    Verification { residual: f64, tolerance: f64 },
    /// Output could not be written (exit 3).
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Verification { residual, tolerance } => write!(
                f,
                "verification failed: outcome residual {residual:.3e} exceeds {tolerance:.3e}"
            ),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "densemask",
    version,
    about = "Conserving unitary families for bipartite states: analysis, masking, and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report component rank, dense-coding capability, and the size of the
    /// conserving family for a state fixture
    Analyze {
        state_file: PathBuf,
        /// Rank tolerance (0 = library default)
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the orthonormal conserving-generator family for a state
    Generators {
        state_file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply a message unitary by a conserving unitary and report the
    /// outcome-invariance residual
    Mask {
        state_file: PathBuf,
        message_file: PathBuf,
        /// Explicit masking parameters, comma-separated, one per generator
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        gamma: Option<Vec<f64>>,
        /// Draw the masking parameters uniformly from [-pi, pi] with this seed
        #[arg(long, conflicts_with = "gamma")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a unitary conserves a state (exit 0 yes, 1 no)
    Verify {
        state_file: PathBuf,
        unitary_file: PathBuf,
        /// Residual tolerance (0 = library default 1e-8)
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample random maskings and report station/outcome distance statistics
    Simulate {
        state_file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Message unitary to mask (default: identity)
        #[arg(long)]
        message_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a reproducible random state fixture
    RandomState {
        /// Sender dimension
        #[arg(long, requires = "p", conflicts_with = "qubits")]
        n: Option<usize>,
        /// Receiver dimension
        #[arg(long, requires = "n")]
        p: Option<usize>,
        /// Qudit register shape d,m,q giving n = d^m, p = d^q
        #[arg(long, value_delimiter = ',')]
        qubits: Option<Vec<usize>>,
        /// Component rank (default: min(n, p), the dense-coding-capable case)
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { state_file, tol, out } => {
            commands::analyze(&state_file, tol, opt_path(&out))
        }
        Command::Generators { state_file, tol, out } => {
            commands::generators(&state_file, tol, opt_path(&out))
        }
        Command::Mask {
            state_file,
            message_file,
            gamma,
            seed,
            tol,
            out,
        } => commands::mask(&state_file, &message_file, gamma, seed, tol, opt_path(&out)),
        Command::Verify {
            state_file,
            unitary_file,
            tol,
            out,
        } => commands::verify(&state_file, &unitary_file, tol, opt_path(&out)),
        Command::Simulate {
            state_file,
            trials,
            seed,
            message_file,
            tol,
            out,
        } => commands::simulate(
            &state_file,
            trials,
            seed,
            message_file.as_deref(),
            tol,
            opt_path(&out),
        ),
        Command::RandomState {
            n,
            p,
            qubits,
            rank,
            seed,
            out,
        } => commands::random_state(n, p, qubits, rank, seed, opt_path(&out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
