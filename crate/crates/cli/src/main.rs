//! Command-line front end: classify activity regimes, solve for boundary
//! laws, verify the measures they generate, and scan activity lists.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input,
//! 3 undecidable at the working precision, 4 enumeration or tree cap hit.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hcgibbs::HcError;
use padic::PadicError;

mod input;
mod report;
mod run;

#[derive(Parser)]
#[command(
    name = "hcgibbs",
    version,
    about = "p-adic Gibbs measures for the three-state hard-core model on Cayley trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the translation-invariant regime of an activity.
    Classify(CommonArgs),
    /// Construct a boundary law (translation-invariant or period-2).
    Solve {
        #[command(subcommand)]
        which: SolveTarget,
    },
    /// Verify compatibility, consistency, the partition recursion and the
    /// norm profile of a selected law.
    Verify(VerifyArgs),
    /// Classify every activity listed in a file, one per line.
    Scan(ScanArgs),
}

#[derive(Subcommand)]
enum SolveTarget {
    /// Translation-invariant solutions (diagonal, plus the off-diagonal pair
    /// when the activity lies in the three-solution region).
    Ti(CommonArgs),
    /// The period-2 cycle.
    Periodic(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Prime base of the p-adic field.
    #[arg(long, env = "HCGIBBS_P")]
    p: u64,

    /// Tree order: every non-root vertex has k children.
    #[arg(long, default_value_t = 2, env = "HCGIBBS_K")]
    k: u32,

    /// Relative precision in base-p digits (at least 16).
    #[arg(long, default_value_t = 64, env = "HCGIBBS_PRECISION")]
    precision: u32,

    /// Activity: a rational "n/d" (or "n") or a digit list "[x0,x1,...]@v".
    #[arg(long, env = "HCGIBBS_LAMBDA", allow_hyphen_values = true)]
    lambda: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, env = "HCGIBBS_FORMAT")]
    format: Format,

    /// Largest ball size exhaustive enumeration may cover.
    #[arg(long, default_value_t = 16, env = "HCGIBBS_CAP")]
    cap: usize,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, env = "HCGIBBS_SEED")]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Law to verify: ti-diagonal | ti-offdiag | periodic | ti-trivial | table:FILE.
    #[arg(long, default_value = "ti-diagonal", env = "HCGIBBS_LAW")]
    law: String,

    /// Outermost volume to check.
    #[arg(long, default_value_t = 2, env = "HCGIBBS_N")]
    n: u32,

    /// Multiply one boundary value by (1 + p) before verifying; the checks
    /// are then expected to fail.
    #[arg(long)]
    perturb: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// File with one activity per line ("#" starts a comment).
    #[arg(long)]
    file: std::path::PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Maps error classes onto the documented exit codes.
fn exit_code_for(err: &HcError) -> u8 {
    match err {
        HcError::Padic(PadicError::InsufficientPrecision(_)) | HcError::Undecidable(_) => 3,
        HcError::CapExceeded { .. } | HcError::TreeTooLarge { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(args) => run::classify(&args),
        Command::Solve { which } => match which {
            SolveTarget::Ti(args) => run::solve_ti(&args),
            SolveTarget::Periodic(args) => run::solve_periodic(&args),
        },
        Command::Verify(args) => run::verify(&args),
        Command::Scan(args) => run::scan(&args),
    };
    match outcome {
        Ok(run::Outcome::AllPass) => ExitCode::SUCCESS,
        Ok(run::Outcome::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
