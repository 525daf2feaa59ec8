//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns its exit code with the JSON report.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use emc_core::{parse_natural, Error, Natural, DEFAULT_ORACLE_CAP};

pub use report::{Report, Verdict};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

fn natural(s: &str) -> Result<Natural, String> {
    parse_natural(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "emc", version, about = "Checks the power-sum congruences of the Erdős–Moser equation")]
pub struct Cli {
    /// Maximum number of terms any brute-force evaluation may iterate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub cap: u64,

    /// Records data file (defaults to $EMC_RECORDS, then the bundled table).
    #[arg(long, global = true)]
    pub records: Option<PathBuf>,

    /// Print a one-line summary to standard error.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct CheckMode {
    /// Sum all k terms only.
    #[arg(long)]
    pub direct: bool,
    /// Per-prime conditions only.
    #[arg(long)]
    pub conditions: bool,
    /// Both, and insist they agree (default).
    #[arg(long)]
    pub both: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// 1^n + ... + k^n ≡ (k+1)^n (mod k).
    Check {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        k: Natural,
        /// Comma-separated prime factors of k, for k beyond trial division.
        #[arg(long, value_parser = natural, value_delimiter = ',')]
        primes: Option<Vec<Natural>>,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// 1^n + ... + k^n ≡ (k+1)^n (mod k^power).
    Super {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        k: Natural,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        power: u32,
    },
    /// Per-prime conditions (i) (p-1) | n and (ii) k/p + 1 ≡ 0 (mod p).
    Conditions {
        #[arg(long, value_parser = natural)]
        k: Natural,
        #[arg(long, value_parser = natural, conflicts_with = "exponent_class")]
        n: Option<Natural>,
        /// Test every multiple of this exponent.
        #[arg(long, value_parser = natural)]
        exponent_class: Option<Natural>,
        #[arg(long, value_parser = natural, value_delimiter = ',')]
        primes: Option<Vec<Natural>>,
    },
    /// k | 1 + Σ_{p|k} k/p.
    Egyptian {
        #[arg(long, value_parser = natural)]
        k: Natural,
        #[arg(long, value_parser = natural, value_delimiter = ',')]
        primes: Option<Vec<Natural>>,
    },
    /// lcm{p-1 : p | k} for a congruence solution k.
    MinimalExponent {
        #[arg(long, value_parser = natural)]
        k: Natural,
        #[arg(long, value_parser = natural, value_delimiter = ',')]
        primes: Option<Vec<Natural>>,
    },
    /// Congruence solutions k ≤ bound with exactly r prime factors.
    Search {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = natural)]
        bound: Natural,
    },
    /// Primary pseudoperfect numbers up to a limit.
    #[command(alias = "ppc-search")]
    PppSearch {
        #[arg(long, value_parser = natural)]
        limit: Natural,
    },
    /// Verify a primary pseudoperfect number from its factor list.
    VerifyRecord {
        #[arg(long, value_parser = natural)]
        k: Natural,
        #[arg(long, value_parser = natural, value_delimiter = ',')]
        primes: Vec<Natural>,
        #[arg(long, value_parser = natural)]
        exponent: Option<Natural>,
    },
    /// Zagier's three characterizations of 1, 2, 6, 42, 1806.
    Zagier {
        #[arg(long, value_parser = natural, required_unless_present = "limit", conflicts_with = "limit")]
        k: Option<Natural>,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Lerch's formula for every odd prime up to pmax.
    Lerch {
        #[arg(long)]
        pmax: u64,
    },
    /// Eisenstein's relation for every prime up to pmax and all a, b < p.
    Eisenstein {
        #[arg(long)]
        pmax: u64,
    },
    /// Σ_n(k) against (k/p)·Σ_n(p) modulo p^3 (conjectural; exploration only).
    ExploreP3 {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        k: Natural,
    },
    /// Whether 49 | Σ_{n-1}(7) for n = 6, 12, ... ≤ nmax.
    Remark7 {
        #[arg(long, value_parser = natural)]
        nmax: Natural,
    },
    /// 1 + 2^n ≡ 3^n (mod 2^d).
    Family2 {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long)]
        d: u32,
    },
    /// Table reproduction.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum TablesAction {
    /// Verify every record and cross-check against a sieve search.
    Reproduce {
        #[arg(long, value_parser = natural, default_value = "1000000")]
        limit: Natural,
    },
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OracleRange { .. } | Error::Resource(_) | Error::IncompleteFactorization { .. } => {
            EXIT_RESOURCE
        }
        Error::TheoremViolation(_) => EXIT_VIOLATION,
        Error::InvalidModulus | Error::Domain(_) | Error::Records(_) => EXIT_USAGE,
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: report.render(),
            stderr: if cli.verbose { format!("{}\n", report.summary()) } else { String::new() },
        },
        Err(err) => Outcome {
            code: exit_code_for(&err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}
