//! `sphp`: evaluate `A^τ` programs, issue and check prefix-series certificates, and run
//! pigeonhole and hypothesis scans.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "sphp", version, about = "Bounded-recursion algebras, complexity certificates and block-count pigeonhole checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct TermArgs {
    /// Program file of `(def NAME term)` forms.
    #[arg(long)]
    program: Option<PathBuf>,
    /// A definition name from the program, a base symbol, or a term in s-expression syntax.
    #[arg(long)]
    term: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term.
    Eval {
        #[command(flatten)]
        term: TermArgs,
        /// Comma-separated decimal arguments.
        #[arg(long, default_value = "")]
        inputs: String,
    },
    /// Synthesize and check a certificate for a term's value.
    Certify {
        #[command(flatten)]
        term: TermArgs,
        #[arg(long, default_value = "")]
        inputs: String,
        /// Scale `n`; every input must be below it.
        #[arg(long)]
        scale: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file against a term.
    Verify {
        #[command(flatten)]
        term: TermArgs,
        certificate: PathBuf,
    },
    /// Convert a certificate to a bit series and compare its block count with `2k + 1`.
    Bits {
        #[command(flatten)]
        term: TermArgs,
        #[arg(long, default_value = "")]
        inputs: String,
        #[arg(long)]
        scale: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the hole `⌊(n#n ∸ 1)/3⌋` is missed, for `n` doubling from `--n-from` to `--n-to`.
    Php {
        #[command(flatten)]
        term: TermArgs,
        #[arg(long, default_value = "4")]
        n_from: String,
        #[arg(long, default_value = "256")]
        n_to: String,
        /// Strategy name: `exhaustive` or `block-gap`.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Apply non-unary terms to the diagonal `(x, …, x)`.
        #[arg(long)]
        diagonal: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 16)]
        max_exhaustive: u64,
        /// Random input vectors per scale when inputs are sampled.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Record wall time per verdict.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check `|n|₃ · |n|_m^b ≤ ⌊||n||/2⌋` at every power of two with length `|n|` in the range.
    TauCheck {
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        /// Least `|n|`.
        #[arg(long, default_value = "2")]
        n_from: String,
        /// Largest `|n|`.
        #[arg(long, default_value = "65537")]
        n_to: String,
        /// Closure laws are checked for exponents up to this value.
        #[arg(long, default_value_t = 4)]
        closure_b: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run worked examples and seeded randomized checks.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { term, inputs } => commands::eval(&term, &inputs),
        Command::Certify { term, inputs, scale, out } => commands::certify(&term, &inputs, &scale, out.as_deref()),
        Command::Verify { term, certificate } => commands::verify(&term, &certificate),
        Command::Bits { term, inputs, scale, out } => commands::bits(&term, &inputs, &scale, out.as_deref()),
        Command::Php { term, n_from, n_to, mode, diagonal, seed, max_exhaustive, samples, timings, out } => {
            let opts = commands::PhpOptions { mode, diagonal, seed, max_exhaustive, samples, timings };
            commands::php(&term, &n_from, &n_to, &opts, out.as_deref())
        }
        Command::TauCheck { m, b, n_from, n_to, closure_b, out } => {
            commands::tau_check(m, b, &n_from, &n_to, closure_b, out.as_deref())
        }
        Command::Selftest { seed } => commands::selftest(seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sphp: {e}");
            ExitCode::from(e.code())
        }
    }
}
