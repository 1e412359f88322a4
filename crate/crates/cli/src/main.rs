use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mzero_core::interior::InteriorFormula;
use mzero_core::schema::Basis;
use mzero_core::trees::census;
use mzero_core::Error;
use mzero_cli::cache::Cache;
use mzero_cli::compute::{batch, check_request, pairs_up_to, Kind, MAX_WEIGHT};
use mzero_cli::render::{render_rows, Format, Options, Row};
use mzero_cli::verify::{self, Oracle};

#[derive(Parser, Debug)]
#[command(
    name = "mzero",
    version,
    about = "Equivariant Poincaré polynomials of M_{0,m|n} and its compactification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Basis for printed characteristics.
    #[arg(long, value_enum, default_value_t = BasisArg::Schur, global = true)]
    basis: BasisArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,

    /// Drop terms with a power of t above this.
    #[arg(long, global = true)]
    tmax: Option<i32>,

    /// Largest m+n for table output or verification.
    #[arg(long, global = true)]
    max_weight: Option<usize>,

    /// Directory of the result cache; caching is off unless one is given.
    #[arg(long, env = "MZERO_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads for tables (0 picks the number of cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,

    /// Print only Poincaré polynomials.
    #[arg(long, global = true)]
    poincare_only: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ch_t of the cohomology of the open moduli space M_{0,m|n}.
    Interior {
        m: Option<usize>,
        n: Option<usize>,
        /// Description of the S_n action on the configuration-space factor.
        #[arg(long, value_enum, default_value_t = FormulaArg::Printed)]
        formula: FormulaArg,
    },
    /// ch_t of the cohomology of the compactification, with its Poincaré polynomial.
    Compactified { m: Option<usize>, n: Option<usize> },
    /// Strata counts and Poincaré polynomial from stable trees, as JSON.
    Census { m: usize, n: usize },
    /// Cross-check the pipeline against independent oracles.
    Verify {
        #[arg(long, value_enum)]
        oracle: Vec<OracleArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Schur,
    Powersum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    Printed,
    Geometric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Trees,
    EquivariantTrees,
    Properties,
}

/// Failures mapped to exit codes: usage problems exit 2, the rest 1.
enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Range(msg) => Failure::Usage(msg),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn pairs(m: Option<usize>, n: Option<usize>, max_weight: Option<usize>) -> Result<Vec<(usize, usize)>, Failure> {
    match (m, n, max_weight) {
        (Some(m), Some(n), None) => {
            check_request(m, n)?;
            Ok(vec![(m, n)])
        }
        (None, None, Some(w)) => {
            if w < 3 {
                return Err(Failure::Usage("m+n ≥ 3 required: max-weight admits no component".into()));
            }
            if w > MAX_WEIGHT {
                return Err(Failure::Usage(format!("max-weight ≤ {MAX_WEIGHT} required")));
            }
            Ok(pairs_up_to(w))
        }
        _ => Err(Failure::Usage("give either M N or --max-weight".into())),
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let basis = match cli.basis {
        BasisArg::Schur => Basis::Schur,
        BasisArg::Powersum => Basis::PowerSum,
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Latex => Format::Latex,
    };
    let cache = if cli.no_cache { None } else { cli.cache_dir.map(Cache::new) };
    let (kind, m, n) = match cli.command {
        Command::Interior { m, n, formula } => {
            let formula = match formula {
                FormulaArg::Printed => InteriorFormula::Printed,
                FormulaArg::Geometric => InteriorFormula::Geometric,
            };
            (Kind::Interior(formula), m, n)
        }
        Command::Compactified { m, n } => (Kind::Compactified, m, n),
        Command::Census { m, n } => {
            let c = census(m, n)?;
            let s = serde_json::to_string(&c).map_err(|e| Failure::Other(e.to_string()))?;
            return Ok((s + "\n", true));
        }
        Command::Verify { oracle } => {
            let w = cli
                .max_weight
                .ok_or_else(|| Failure::Usage("verify needs --max-weight".into()))?;
            let mut oracles: Vec<Oracle> = oracle
                .into_iter()
                .map(|o| match o {
                    OracleArg::Trees => Oracle::Trees,
                    OracleArg::EquivariantTrees => Oracle::EquivariantTrees,
                    OracleArg::Properties => Oracle::Properties,
                })
                .collect();
            if oracles.is_empty() {
                oracles = vec![Oracle::Trees, Oracle::Properties];
            }
            let report = verify::run(w, &oracles)?;
            let out = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| Failure::Other(e.to_string()))? + "\n"
                }
                _ => report.text(),
            };
            return Ok((out, report.passed));
        }
    };
    let pairs = pairs(m, n, cli.max_weight)?;
    let rows: Vec<Row> = batch(kind, &pairs, cli.jobs, cache.as_ref())?
        .into_iter()
        .map(|((m, n), value)| Row { m, n, value })
        .collect();
    let opts = Options {
        basis,
        format,
        tmax: cli.tmax,
        poincare_only: cli.poincare_only,
        with_poincare: kind == Kind::Compactified,
    };
    Ok((render_rows(&rows, &opts), true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
