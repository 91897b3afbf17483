//! `discrim`: compute higher-order discriminants, verify their factorization,
//! sample strata numerically and check stored closed forms.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error.

mod commands;
mod golden;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "discrim", version, about = "Higher-order discriminants: exact construction and factorization checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// `derivative`, `generic`, or a comma-separated list of n-m+1 rationals `p/q`.
    #[arg(long, default_value = "derivative")]
    pub b: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute D_m = Res(P, P★) and optionally D_{m,k}.
    Compute {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: Option<usize>,
        /// Print JSON instead of canonical text.
        #[arg(long)]
        json: bool,
        /// Directory for `.txt` and `.json` outputs.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor D_{m,k} and check the multiplicities, divisibility and reconstruction.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated list; all of 1..=n when omitted.
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a stratum numerically and evaluate the exact factors there.
    Sample {
        #[arg(long, value_enum)]
        stratum: StratumArg,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = discrim_core::strata::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the stored closed-form identities and diff against golden files.
    Golden {
        #[arg(long, default_value = golden::DEFAULT_DIR)]
        dir: PathBuf,
        /// Rewrite the golden files from the closed forms.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StratumArg {
    Maxwell,
    Theta,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { family, k, json, out } => commands::compute(&family, k, json, out.as_deref()),
        Command::Verify { family, k, out } => commands::verify(&family, k, out.as_deref()),
        Command::Sample { stratum, family, k, count, seed, tol, out } => {
            commands::sample(stratum, &family, k, count, seed, tol, out.as_deref())
        }
        Command::Golden { dir, bless } => golden::run(&dir, bless),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
