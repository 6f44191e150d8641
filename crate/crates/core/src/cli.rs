//! Batch command-line interface. Every report is printed as `key = value`
//! lines; `--pretty` adds a human-readable table.

use crate::catalog::{self, CatalogError, FanoRecord};
use crate::dseries::{fit_operator, solve_series, verify_weak_lg, DOperator, OperatorError};
use crate::laurent::{constant_term_series, LaurentError, LaurentPoly, PowerSeries};
use crate::polytope::{invariant_report, newton_polytope, LatticePolytope, PolytopeError};
use crate::search::{search, SearchConfig, SearchError, SupportAnsatz};
use crate::text::{KvDocument, ParseError};
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_EMPTY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "weaklg",
    version,
    about = "Constant-term series, D3 operators and toric checks for weak Landau-Ginzburg models"
)]
pub struct Cli {
    /// Append a human-readable table to reports.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the constant-term series of a Laurent polynomial.
    Series {
        /// Polynomial file, or `@NAME` for a catalog model.
        #[arg(short = 'f')]
        poly: String,
        #[arg(short = 'N')]
        order: usize,
    },
    /// Print the normalized power-series solution of an operator.
    Solve {
        /// Operator file, or `@NAME` / `@NAME:derived` from the catalog.
        #[arg(short = 'L')]
        operator: String,
        #[arg(short = 'N')]
        order: usize,
    },
    /// Compare a polynomial's constant-term series with an operator's solution.
    Verify {
        #[arg(short = 'f')]
        poly: String,
        #[arg(short = 'L')]
        operator: String,
        #[arg(short = 'N')]
        order: usize,
    },
    /// Fit operators of bounded order and t-degree annihilating a series.
    Fit {
        #[arg(short = 's')]
        series: PathBuf,
        #[arg(short = 'm')]
        order: usize,
        #[arg(short = 'r')]
        tdeg: usize,
    },
    /// Search a parametrized support for polynomials matching a series.
    Search {
        #[arg(short = 'a')]
        ansatz: PathBuf,
        /// Target series file, or `@NAME` / `@NAME:derived` to solve a catalog operator.
        #[arg(short = 't', long)]
        target: String,
        #[arg(long = "prime", required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        height: i64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long = "verify-depth", default_value_t = 8)]
        verify_depth: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Toric invariants of a lattice polytope.
    Polytope {
        /// Vertex file (one point per line).
        #[arg(short = 'p', required_unless_present = "newton", conflicts_with = "newton")]
        polytope: Option<PathBuf>,
        /// Use the Newton polytope of a polynomial file or `@NAME` model.
        #[arg(long)]
        newton: Option<String>,
        /// Record file or `@NAME` to compare against.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Built-in Fano records.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("catalog entry `{0}` has no model")]
    NoModel(String),
    #[error("catalog entry `{0}` has no derived operator")]
    NoDerived(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(SearchError::HeightBoundExceeded { .. }) => EXIT_EMPTY,
            _ => EXIT_INPUT,
        }
    }
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn with_context<T, E: Into<CliError>>(path: &str, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| match e.into() {
        CliError::Laurent(LaurentError::Parse(source)) | CliError::Operator(OperatorError::Parse(source)) => {
            CliError::Parse { context: path.to_string(), source }
        }
        other => other,
    })
}

fn builtin_ref(arg: &str) -> Option<(&str, bool)> {
    let name = arg.strip_prefix('@')?;
    Some(match name.strip_suffix(":derived") {
        Some(n) => (n, true),
        None => (name, false),
    })
}

fn load_poly(arg: &str) -> Result<LaurentPoly, CliError> {
    if let Some((name, _)) = builtin_ref(arg) {
        return catalog::builtin(name)?.model.ok_or_else(|| CliError::NoModel(name.to_string()));
    }
    with_context(arg, LaurentPoly::parse(&read(arg.as_ref())?))
}

fn load_operator(arg: &str) -> Result<DOperator, CliError> {
    if let Some((name, derived)) = builtin_ref(arg) {
        let rec = catalog::builtin(name)?;
        return if derived {
            rec.derived_operator.ok_or_else(|| CliError::NoDerived(name.to_string()))
        } else {
            Ok(rec.operator)
        };
    }
    with_context(arg, DOperator::parse(&read(arg.as_ref())?))
}

fn load_series(arg: &str, order: usize) -> Result<PowerSeries, CliError> {
    if builtin_ref(arg).is_some() {
        return Ok(solve_series(&load_operator(arg)?, order)?);
    }
    PowerSeries::parse(&read(arg.as_ref())?)
        .map_err(|source| CliError::Parse { context: arg.to_string(), source })
}

fn load_record(arg: &str) -> Result<FanoRecord, CliError> {
    match arg.strip_prefix('@') {
        Some(name) => Ok(catalog::builtin(name)?),
        None => Ok(catalog::load(arg)?),
    }
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) {
    let _ = write!(out, "{text}");
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Series { poly, order } => {
            let f = load_poly(poly)?;
            emit(out, constant_term_series(&f, *order));
            Ok(EXIT_OK)
        }
        Command::Solve { operator, order } => {
            let op = load_operator(operator)?;
            emit(out, solve_series(&op, *order)?);
            Ok(EXIT_OK)
        }
        Command::Verify { poly, operator, order } => {
            let f = load_poly(poly)?;
            let op = load_operator(operator)?;
            let report = verify_weak_lg(&f, &op, *order)?;
            emit(out, report.to_kv());
            if cli.pretty {
                emit(out, format!("\n{}", report.to_table()));
            }
            if let Some(i) = report.first_mismatch {
                let _ = writeln!(err, "mismatch at index {i}");
                return Ok(EXIT_MISMATCH);
            }
            Ok(EXIT_OK)
        }
        Command::Fit { series, order, tdeg } => {
            let s = PowerSeries::parse(&read(series)?)
                .map_err(|source| CliError::Parse { context: series.display().to_string(), source })?;
            let basis = fit_operator(&s, *order, *tdeg)?;
            let _ = writeln!(out, "# basis dimension {}", basis.len());
            for (i, op) in basis.iter().enumerate() {
                let _ = writeln!(out, "# basis element {}", i + 1);
                emit(out, op);
            }
            Ok(EXIT_OK)
        }
        Command::Search { ansatz, target, primes, height, depth, verify_depth, threads } => {
            if *threads == Some(0) {
                let _ = writeln!(err, "error: --threads must be positive");
                return Ok(EXIT_USAGE);
            }
            let ansatz = SupportAnsatz::parse(&read(ansatz)?).map_err(|e| match e {
                SearchError::Parse(source) => {
                    CliError::Parse { context: ansatz.display().to_string(), source }
                }
                other => other.into(),
            })?;
            let config = SearchConfig {
                target: load_series(target, *verify_depth)?,
                primes: primes.clone(),
                height: *height,
                depth: *depth,
                verify_depth: *verify_depth,
                threads: *threads,
            };
            let outcome = search(&ansatz, &config)?;
            for (i, f) in outcome.solutions.iter().enumerate() {
                let _ = writeln!(out, "# candidate {}", i + 1);
                emit(out, f);
            }
            let mut doc = KvDocument::new();
            doc.push("candidates", outcome.solutions.len());
            for (k, v) in outcome.stats.to_kv().entries() {
                doc.push(k.clone(), v);
            }
            let stats = doc.to_string();
            for line in stats.lines() {
                let _ = writeln!(out, "# {line}");
            }
            if outcome.solutions.is_empty() {
                let _ = writeln!(err, "search found no candidates");
                return Ok(EXIT_EMPTY);
            }
            Ok(EXIT_OK)
        }
        Command::Polytope { polytope, newton, expect } => {
            let p = match (polytope, newton) {
                (Some(path), _) => LatticePolytope::parse(&read(path)?).map_err(|e| match e {
                    PolytopeError::Parse(source) => {
                        CliError::Parse { context: path.display().to_string(), source }
                    }
                    other => other.into(),
                })?,
                (None, Some(arg)) => newton_polytope(&load_poly(arg)?)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let record = expect.as_deref().map(load_record).transpose()?;
            let report = invariant_report(&p, record.as_ref())?;
            emit(out, report.to_kv());
            if cli.pretty {
                emit(out, format!("\n{}", report.to_table()));
            }
            if !report.all_match() {
                let _ = writeln!(err, "invariants differ from the record");
                return Ok(EXIT_MISMATCH);
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::BUILTIN_NAMES {
                    let rec = catalog::builtin(name)?;
                    let _ = writeln!(out, "{name} genus={} degree={} h0={}", rec.genus, rec.degree, rec.h0);
                }
                Ok(EXIT_OK)
            }
            CatalogAction::Show { name } => {
                let rec = catalog::builtin(name)?;
                emit(out, rec.to_text());
                for w in rec.consistency_warnings() {
                    let _ = writeln!(err, "warning: {w}");
                }
                Ok(EXIT_OK)
            }
        },
    }
}
