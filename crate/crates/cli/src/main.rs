//! `jantzen`: verification suites, module actions, filtrations and figures.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage errors, 3 for internal errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jantzen_core::jantzen::DEFAULT_ORDER;

#[derive(Parser, Debug)]
#[command(
    name = "jantzen",
    version,
    about = "Exact Jantzen filtrations for sl2 D-modules on base affine space"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Apply one operator to a monomial.
    Act(ActArgs),
    /// List monomial bases of weight spaces.
    Weights(WeightsArgs),
    /// Monodromy filtration of s on the maximal extension.
    Monodromy(MonodromyArgs),
    /// Algebraic Jantzen filtration, optionally compared with the geometric one.
    Jantzen(JantzenArgs),
    /// Emit a diagram as DOT, ASCII or JSON.
    Figure(FigureArgs),
    /// Parse an operator expression and print its normal-ordered form.
    NormalOrder(NormalOrderArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run every suite.
    #[arg(long)]
    pub all: bool,
    /// Commutation relations and the Casimir identity.
    #[arg(long)]
    pub relations: bool,
    /// Resolutions are complexes.
    #[arg(long)]
    pub resolutions: bool,
    /// Cokernel of s1(n) stabilizes in n.
    #[arg(long)]
    pub stabilization: bool,
    /// Monodromy filtration axioms on random nilpotent matrices.
    #[arg(long)]
    pub random: bool,
    /// Truncation order for the deformed checks.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
    /// Seed for randomized suites; `JANTZEN_SEED` takes precedence.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Number of random matrices.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct WindowArgs {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub slice: i64,
    /// Lowest weight; defaults to 12 below the slice.
    #[arg(long, allow_negative_numbers = true)]
    pub wmin: Option<i64>,
    /// Highest weight; defaults to the slice.
    #[arg(long, allow_negative_numbers = true)]
    pub wmax: Option<i64>,
}

#[derive(Args, Debug)]
pub struct ActArgs {
    /// plus, shriek, defplus, defshriek or maxext.
    #[arg(long)]
    pub family: String,
    /// Le, Lf, Lh, Rh, Omega or S.
    #[arg(long)]
    pub op: String,
    /// Monomial as k,l,m.
    #[arg(long, allow_hyphen_values = true)]
    pub monomial: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Args, Debug)]
pub struct JantzenArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
    /// Compare with the geometric filtration on the maximal extension.
    #[arg(long)]
    pub compare: bool,
    /// Check the sum formula (slice >= 0).
    #[arg(long)]
    pub sum_formula: bool,
    /// Check the two-step composition series (slice >= 0).
    #[arg(long)]
    pub composition: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutFormat {
    Dot,
    Ascii,
    Json,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Figure number 1..8; other flags override its defaults.
    #[arg(long)]
    pub which: Option<u8>,
    /// Diagram kind, e.g. dual-verma, monodromy, comparison.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "slices")]
    pub slice: Option<i64>,
    /// Slice range as a..b.
    #[arg(long, allow_hyphen_values = true)]
    pub slices: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub wmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub wmax: Option<i64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutFormat::Dot)]
    pub format: OutFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NormalOrderArgs {
    /// Expression in x1, x2, d1, d2, s with +, -, *, ^ and parentheses.
    pub expr: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
