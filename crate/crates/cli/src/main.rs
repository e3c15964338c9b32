use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use aszeta::lfun::{Config, DEFAULT_DIM_CEILING};
use aszeta_cli::commands::{self, CliError, CmdResult, DEFAULT_CLI_BRUTE_BOUND};
use clap::{Args, Parser, Subcommand};

/// Zeta functions of the curves y^2 + y = x R(x) over F_(2^m).
#[derive(Parser)]
#[command(name = "aszeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limits {
    /// largest mn enumerated by the brute-force oracles
    #[arg(long, default_value_t = DEFAULT_CLI_BRUTE_BOUND)]
    brute_bound: usize,
    /// largest quadratic-form dimension mn that is classified
    #[arg(long, default_value_t = DEFAULT_DIM_CEILING)]
    dim_ceiling: usize,
}

impl Limits {
    fn config(&self) -> Config {
        Config {
            dim_ceiling: self.dim_ceiling,
            brute_bound: self.brute_bound,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Splitting degree, radical dimensions, invariants and period.
    Analyze {
        /// spec file, or - for standard input
        spec: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Full factorization of L* and L with a table of point counts.
    Lfunction {
        spec: PathBuf,
        /// point counts for n = 1..=N_MAX
        #[arg(long, default_value_t = 8)]
        n_max: u64,
        #[command(flatten)]
        limits: Limits,
    },
    /// Point counts over F_(2^(mn)).
    Count {
        spec: PathBuf,
        /// a single degree `k` or an inclusive range `a..b`
        #[arg(long)]
        n: Option<String>,
        /// all degrees 1..=N_MAX
        #[arg(long)]
        n_max: Option<u64>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Compares the closed forms with brute-force and classification oracles.
    Verify {
        spec: PathBuf,
        /// caps the range of predicted invariants checked
        #[arg(long)]
        n_max: Option<u64>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long, hide = true)]
        corrupt_multiplicity: bool,
    },
    /// Closed forms for the Suzuki curves, optionally against the generic pipeline.
    Suzuki {
        /// q0 = 2^h, q = 2^(2h+1)
        #[arg(long)]
        h: u32,
        /// a single degree `k` or an inclusive range `a..b`
        #[arg(long)]
        n: Option<String>,
        /// all degrees 1..=N_MAX
        #[arg(long)]
        n_max: Option<u64>,
        /// also run the generic pipeline on y^2 + y = x^(q0+1) + x^(2q0+1)
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Random valid spec files as a JSON array.
    SeedCorpus {
        /// comma-separated base degrees
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<usize>,
        /// comma-separated 2-degrees of R
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        d: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        corpus_size: usize,
    },
}

fn read_spec(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::input(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Analyze { spec, limits } => {
            let curve = commands::load_curve(&read_spec(&spec)?)?;
            commands::analyze(&curve, &limits.config())
        }
        Command::Lfunction { spec, n_max, limits } => {
            if n_max == 0 {
                return Err(CliError::input("--n-max must be >= 1"));
            }
            let curve = commands::load_curve(&read_spec(&spec)?)?;
            commands::lfunction(&curve, &limits.config(), n_max)
        }
        Command::Count { spec, n, n_max, limits } => {
            let (lo, hi) = commands::n_range(n.as_deref(), n_max, 1)?;
            let curve = commands::load_curve(&read_spec(&spec)?)?;
            commands::count(&curve, &limits.config(), lo, hi)
        }
        Command::Verify {
            spec,
            n_max,
            limits,
            corrupt_multiplicity,
        } => {
            let curve = commands::load_curve(&read_spec(&spec)?)?;
            commands::verify(&curve, &limits.config(), n_max, corrupt_multiplicity)
        }
        Command::Suzuki {
            h,
            n,
            n_max,
            cross_check,
            limits,
        } => {
            let (lo, hi) = commands::n_range(n.as_deref(), n_max, 12)?;
            commands::suzuki(h, lo, hi, cross_check, &limits.config())
        }
        Command::SeedCorpus {
            m,
            d,
            seed,
            corpus_size,
        } => commands::seed_corpus(seed, corpus_size, &m, &d),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.json);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
