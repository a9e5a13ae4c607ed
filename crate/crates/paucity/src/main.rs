use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paucity::commands::{self, Method, Prepared};
use paucity::error::{CliError, Result};
use paucity::format::read_system;
use paucity::report::{self, Column, OutputFormat};
use paucity::{parallel, verify};
use paucity_core::{Int, DEFAULT_BUDGET};

/// Exact census and verification tools for symmetric Diophantine systems.
#[derive(Parser)]
#[command(name = "paucity", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangular form of a system: k, degrees, R, w and A.
    Normalize {
        #[arg(long)]
        system: PathBuf,
    },
    /// Count solutions in [1, X]^{2k}, one row per X.
    Census(CensusArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
    /// Fit a growth exponent to a census CSV and compare it with the bound.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        /// System the census was run on; supplies the exponent bound.
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value = "tdagger")]
        column: Column,
    },
    /// Generate a system file or a parametrized solution.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, conflicts_with = "x_list", required_unless_present = "x_list")]
    x: Option<Int>,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    x_list: Option<Vec<Int>>,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    /// Accepted for a uniform interface; the census is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum work per X, in equation evaluations or search points.
    #[arg(long, env = "PAUCITY_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Shorthand for --format csv.
    #[arg(long)]
    csv: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 20)]
    systems: usize,
    #[arg(long, default_value_t = 4)]
    max_k: usize,
    #[arg(long = "x", default_value_t = 8)]
    x_max: Int,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Equations σ_j + Σ_{l ≤ k-r} a_jl σ_l for j = k-r+1..k; weight (k-r)(k-r+1)/2.
    Corollary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// One value for every entry, or the r × (k-r) matrix row by row.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<Int>,
    },
    /// The equations ∏(x_i + θ) = ∏(y_i + θ) for a root θ of a monic polynomial.
    Theta {
        /// Coefficients from the leading one down, e.g. 1,0,1 for t²+1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        minpoly: Vec<Int>,
        #[arg(long)]
        k: usize,
    },
    /// Solution of x_1⋯x_k = y_1⋯y_k from a k × k matrix: rows give x, columns y.
    ProductSolution {
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        matrix: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(cli.out.as_deref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Err((e, partial)) => {
            if let Some(text) = partial {
                let _ = emit(cli.out.as_deref(), &text);
            }
            fail(&e)
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io { path: path.to_owned(), source: e }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
        }
    }
}

/// On failure, also returns output that should still be shown (the verify
/// report of a failing suite).
fn run(cli: &Cli) -> std::result::Result<String, (CliError, Option<String>)> {
    match &cli.command {
        Command::Verify(args) => {
            let config = verify::VerifyConfig {
                seed: args.seed,
                cases: args.cases,
                systems: args.systems,
                max_k: args.max_k,
                x_max: args.x_max,
                inject_fault: args.inject_fault,
            };
            let results = verify::run(&config);
            let mut text = format!("seed={}\n", args.seed);
            for r in &results {
                text += &r.render();
                text.push('\n');
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed == 0 {
                Ok(text)
            } else {
                Err((CliError::SuiteFailed { failed }, Some(text)))
            }
        }
        other => run_simple(other).map_err(|e| (e, None)),
    }
}

fn run_simple(command: &Command) -> Result<String> {
    match command {
        Command::Normalize { system } => {
            let prepared = Prepared::new(read_system(system)?)?;
            Ok(commands::summary(prepared.shape()) + "\n")
        }
        Command::Census(args) => census(args),
        Command::Fit { csv, system, column } => {
            let text = fs::read_to_string(csv).map_err(|e| CliError::Io { path: csv.clone(), source: e })?;
            let rows = report::parse_csv(&text)?;
            let prepared = Prepared::new(read_system(system)?)?;
            Ok(commands::fit(&rows, *column, prepared.exponent_bound())?.render())
        }
        Command::Gen(GenCommand::Corollary { k, r, coeffs }) => {
            Ok(commands::gen_corollary(*k, *r, coeffs)?.to_json() + "\n")
        }
        Command::Gen(GenCommand::Theta { minpoly, k }) => {
            Ok(commands::gen_theta(minpoly, *k)?.to_json() + "\n")
        }
        Command::Gen(GenCommand::ProductSolution { matrix }) => {
            commands::gen_product_solution(&parse_matrix(matrix)?)
        }
        Command::Verify(_) => unreachable!("handled by run"),
    }
}

fn census(args: &CensusArgs) -> Result<String> {
    let xs = match (&args.x_list, args.x) {
        (Some(list), _) => list.clone(),
        (None, Some(x)) => vec![x],
        (None, None) => return Err(CliError::Input("one of --x or --x-list is required".into())),
    };
    if xs.is_empty() || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Input("X values must be strictly increasing".into()));
    }
    if let Some(&x) = xs.iter().find(|&&x| x < 1) {
        return Err(CliError::Input(format!("X must be positive, got {x}")));
    }
    let prepared = Prepared::new(read_system(&args.system)?)?;
    let pool = parallel::pool(args.workers)?;
    let rows = xs
        .iter()
        .map(|&x| commands::census_row(&prepared, x, args.method, args.budget, &pool))
        .collect::<Result<Vec<_>>>()?;
    let format = if args.csv { OutputFormat::Csv } else { args.format };
    Ok(report::render(&rows, format))
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<Int>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<Int>()
                        .map_err(|e| CliError::Input(format!("bad matrix entry {s:?}: {e}")))
                })
                .collect()
        })
        .collect()
}
