use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use scalars::{qi, Complex64, Rational};

use crate::CliError;

/// Largest truncation accepted by `kz` and `check`.
pub const MAX_KZ_ORDER: usize = 10;
/// Largest truncation accepted by `interp`.
pub const MAX_INTERP_ORDER: usize = 7;
/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "ASSOCLAB_CACHE";
const DEFAULT_CACHE: &str = ".assoclab-cache";

#[derive(Parser, Debug, Clone)]
#[command(
    name = "assoclab",
    version,
    about = "Drinfeld associators, graph cocycles and their weights"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Truncation N (word length).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Frobenius series order M for the KZ solutions.
    #[arg(long, global = true)]
    pub series_order: Option<usize>,
    /// Tolerance for residual checks (relative quadrature target for `weights`).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Interpolation parameter, as a decimal or a fraction `p/q`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Built-in graph name or path to a graph JSON file.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    /// Input file (associator or graph JSON).
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file for the report JSON.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory for KZ associators.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Node budget for quadratures.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Print the report JSON instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Compute Φ_KZ and check the associator axioms.
    Kz,
    /// Interpolate from Φ_KZ towards its anti-KZ mirror.
    Interp,
    /// Exact coefficients of the strong-form test.
    Etingof,
    /// Graph complex operations.
    Gc {
        action: GcAction,
        /// Graph (built-in name or JSON path); `--graph` or `--in` also work.
        #[arg(id = "operand", value_name = "GRAPH")]
        graph: Option<String>,
        /// Second operand for `bracket`.
        #[arg(long)]
        with: Option<String>,
    },
    /// Configuration-space integrals.
    Weights {
        #[arg(default_value = "tetrahedron")]
        target: String,
        /// Base point `re,im` for the `at` target.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Check the associator axioms for `--in` or the cached Φ_KZ.
    Check,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcAction {
    Delta,
    Cocycle,
    Divergence,
    Bracket,
    Psi,
    Phi,
}

/// Resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub order: usize,
    pub series_order: usize,
    pub tol: f64,
    pub t: Rational,
    pub t_text: String,
    pub graph: Option<String>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub cache_dir: PathBuf,
    pub budget: Option<usize>,
    pub json: bool,
}

/// `--cache-dir`, else `$ASSOCLAB_CACHE`, else `.assoclab-cache`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_CACHE),
    }
}

/// Parses `p/q` or a finite decimal such as `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Input(format!("cannot read {s:?} as a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(qi(n) / qi(d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let digits: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let mut r = qi(digits) / qi(10i64.pow(frac.len() as u32));
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Parses `re,im` into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Input(format!("cannot read {s:?} as re,im"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

impl JobConfig {
    /// Applies per-subcommand defaults and validates the flags.
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let c = &cli.common;
        let (default_order, max_order, default_tol) = match cli.command {
            Command::Kz | Command::Check => (5, MAX_KZ_ORDER, 1e-9),
            Command::Interp => (5, MAX_INTERP_ORDER, 1e-8),
            Command::Weights { .. } => (5, MAX_KZ_ORDER, 1e-8),
            Command::Etingof | Command::Gc { .. } => (5, MAX_KZ_ORDER, 0.0),
        };
        let order = c.order.unwrap_or(default_order);
        if order == 0 || order > max_order {
            return Err(CliError::Input(format!(
                "--order must lie in 1..={max_order}, got {order}"
            )));
        }
        let series_order = c.series_order.unwrap_or(64);
        if !(4..=4096).contains(&series_order) {
            return Err(CliError::Input(format!(
                "--series-order must lie in 4..=4096, got {series_order}"
            )));
        }
        let tol = c.tol.unwrap_or(default_tol);
        if c.tol.is_some() && !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Input(format!(
                "--tol must be positive, got {tol}"
            )));
        }
        let t_text = c.t.clone().unwrap_or_else(|| match cli.command {
            Command::Interp => "1".into(),
            _ => "1/2".into(),
        });
        let t = parse_rational(&t_text)?;
        if let Some(b) = c.budget {
            if b == 0 {
                return Err(CliError::Input("--budget must be positive".into()));
            }
        }
        Ok(JobConfig {
            command: cli.command.clone(),
            order,
            series_order,
            tol,
            t,
            t_text,
            graph: c.graph.clone(),
            input: c.input.clone(),
            output: c.out.clone(),
            cache_dir: resolve_cache_dir(c.cache_dir.as_deref()),
            budget: c.budget,
            json: c.json,
        })
    }
}
