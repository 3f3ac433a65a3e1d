//! Command-line surface for the projective Reed-Muller weight-hierarchy
//! library: hierarchies by any route, the shortening schedule, generator
//! matrix export, the Reed-Muller comparison, and the cross-validation
//! suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or range error,
//! 3 budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use prm_ghw::error::Error as LibError;
use prm_ghw::ghw::{
    block_length, dimension, ghw_canonical, ghw_closed, ghw_sigma, shorten_table,
};
use prm_ghw::oracle::{ghw_oracle, rm_prm_gap, OracleResult, DEFAULT_ORACLE_BUDGET};
use prm_ghw::prm::{CodeFamily, CodeSpec};
use prm_ghw::subsets::DEFAULT_FAMILY_BUDGET;
use prm_ghw::verify::run_all;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Environment override for the default oracle budget.
const BUDGET_ENV: &str = "GHW_ORACLE_BUDGET";

#[derive(Parser)]
#[command(
    name = "prmghw",
    about = "Generalized Hamming weight hierarchies of binary projective Reed-Muller codes",
    version
)]
struct Cli {
    /// Worker threads for oracle enumeration (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single weight or the full hierarchy.
    Ghw {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        /// Weight index; omit for the full hierarchy.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        /// Subspace budget for the oracle method.
        #[arg(long)]
        oracle_budget: Option<u64>,
    },
    /// Emit the shortening schedule (one row per shortened symbol count).
    Shorten {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Write a generator matrix in the plain-text exchange format.
    Genmatrix {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        /// Output path, or "-" for stdout.
        #[arg(long)]
        out: String,
    },
    /// Run the cross-validation suites up to a ground-set bound.
    Verify {
        #[arg(long)]
        max_m: u32,
        /// Subspace budget for the oracle-equivalence suite.
        #[arg(long)]
        oracle_budget: Option<u64>,
    },
    /// Compare Reed-Muller and projective Reed-Muller weights by oracle.
    Gap {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        /// Largest subcode dimension to compare (default: the projective
        /// code's dimension).
        #[arg(long)]
        max_nu: Option<usize>,
        /// Node budget (pruned search) or subspace budget (--no-prune).
        #[arg(long)]
        oracle_budget: Option<u64>,
        /// Use exhaustive enumeration instead of branch-and-bound; the
        /// report then truncates at the first over-budget dimension.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Canonical,
    Sigma,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Prm,
    Rm,
}

impl From<Family> for CodeFamily {
    fn from(f: Family) -> CodeFamily {
        match f {
            Family::Prm => CodeFamily::Prm,
            Family::Rm => CodeFamily::Rm,
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFICATION, message: message.into() }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        let code = match &e {
            LibError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // A failure here means a pool already exists, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Flag value, else environment override, else the library default.
fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| CliError::usage(format!("{BUDGET_ENV} must be an integer, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_ORACLE_BUDGET),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ghw { r, m, k, method, format, oracle_budget } => {
            cmd_ghw(r, m, k, method, format, resolve_budget(oracle_budget)?)
        }
        Command::Shorten { r, m, format } => cmd_shorten(r, m, format),
        Command::Genmatrix { family, r, m, out } => cmd_genmatrix(family, r, m, &out),
        Command::Verify { max_m, oracle_budget } => {
            cmd_verify(max_m, resolve_budget(oracle_budget)?)
        }
        Command::Gap { r, m, max_nu, oracle_budget, no_prune, format } => cmd_gap(
            r,
            m,
            max_nu,
            resolve_budget(oracle_budget)?,
            !no_prune,
            format,
        ),
    }
}

/// Values computed for one weight index; `None` marks a method that was not
/// run (canonical is the block length at full dimension by convention, and
/// the oracle is skipped in `--method all` when over budget).
struct MethodValues {
    k: u64,
    closed: Option<u64>,
    canonical: Option<u64>,
    sigma: Option<u64>,
    oracle: Option<u64>,
    oracle_skipped: bool,
}

impl MethodValues {
    fn computed(&self) -> Vec<(&'static str, u64)> {
        let mut out = Vec::new();
        if let Some(v) = self.closed {
            out.push(("closed", v));
        }
        if let Some(v) = self.canonical {
            out.push(("canonical", v));
        }
        if let Some(v) = self.sigma {
            out.push(("sigma", v));
        }
        if let Some(v) = self.oracle {
            out.push(("oracle", v));
        }
        out
    }

    fn agree(&self) -> bool {
        let values = self.computed();
        values.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

fn cmd_ghw(
    r: u32,
    m: u32,
    k: Option<u64>,
    method: Method,
    format: Format,
    budget: u64,
) -> Result<(), CliError> {
    CodeSpec::prm(r, m)?;
    let dim = dimension(r, m);
    if let Some(k) = k {
        if k < 1 || k > dim {
            return Err(CliError::usage(format!(
                "k={k} out of range; the code has dimension {dim}"
            )));
        }
    }
    let ks: Vec<u64> = match k {
        Some(k) => vec![k],
        None => (1..=dim).collect(),
    };

    // Canonical form is defined below full dimension; the final hierarchy
    // entry is the block length.
    let canonical_or_endpoint = |k: u64| -> Result<u64, CliError> {
        if k == dim {
            Ok(block_length(r, m))
        } else {
            Ok(ghw_canonical(k, r, m)?)
        }
    };

    let oracle_code = if matches!(method, Method::Oracle | Method::All) {
        Some(CodeSpec::prm(r, m)?.build())
    } else {
        None
    };

    let mut rows: Vec<MethodValues> = Vec::with_capacity(ks.len());
    for &k in &ks {
        let mut values = MethodValues {
            k,
            closed: None,
            canonical: None,
            sigma: None,
            oracle: None,
            oracle_skipped: false,
        };
        match method {
            Method::Closed => values.closed = Some(ghw_closed(k, r, m)?),
            Method::Canonical => values.canonical = Some(canonical_or_endpoint(k)?),
            Method::Sigma => values.sigma = Some(ghw_sigma(k, r, m)?),
            Method::Oracle => {
                let code = oracle_code.as_ref().expect("built for oracle method");
                let result: OracleResult = ghw_oracle(code, k as usize, budget)?;
                values.oracle = Some(result.min_support);
            }
            Method::All => {
                values.closed = Some(ghw_closed(k, r, m)?);
                values.canonical = Some(canonical_or_endpoint(k)?);
                values.sigma = Some(ghw_sigma(k, r, m)?);
                let code = oracle_code.as_ref().expect("built for all methods");
                match ghw_oracle(code, k as usize, budget) {
                    Ok(result) => values.oracle = Some(result.min_support),
                    Err(LibError::BudgetExceeded { .. }) => values.oracle_skipped = true,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        rows.push(values);
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Pretty => {
            if method == Method::All {
                for values in &rows {
                    let mut parts: Vec<String> = values
                        .computed()
                        .into_iter()
                        .map(|(name, v)| format!("{name}={v}"))
                        .collect();
                    if values.oracle_skipped {
                        parts.push("oracle=skipped".into());
                    }
                    parts.push(format!("agree={}", values.agree()));
                    if k.is_some() {
                        writeln!(out, "{}", parts.join(", "))?;
                    } else {
                        writeln!(out, "k={}: {}", values.k, parts.join(", "))?;
                    }
                }
            } else if k.is_some() {
                let values = &rows[0];
                let (_, v) = values.computed()[0];
                writeln!(out, "{v}")?;
            } else {
                let joined: Vec<String> = rows
                    .iter()
                    .map(|values| values.computed()[0].1.to_string())
                    .collect();
                writeln!(out, "{}", joined.join(","))?;
            }
        }
        Format::Csv => {
            writeln!(out, "r,m,k,d,method")?;
            for values in &rows {
                for (name, v) in values.computed() {
                    writeln!(out, "{r},{m},{},{v},{name}", values.k)?;
                }
            }
        }
        Format::Json => {
            let mut array = Vec::new();
            for values in &rows {
                for (name, v) in values.computed() {
                    array.push(json!({ "r": r, "m": m, "k": values.k, "d": v, "method": name }));
                }
            }
            writeln!(out, "{}", serde_json::Value::Array(array))?;
        }
    }

    if method == Method::All {
        if let Some(bad) = rows.iter().find(|values| !values.agree()) {
            return Err(CliError::verification(format!(
                "methods disagree at k={}: {:?}",
                bad.k,
                bad.computed()
            )));
        }
    }
    Ok(())
}

fn cmd_shorten(r: u32, m: u32, format: Format) -> Result<(), CliError> {
    let rows = shorten_table(r, m)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Pretty => {
            let set_width = rows
                .iter()
                .map(|row| row.picked.to_string().len())
                .max()
                .unwrap_or(2)
                .max("S".len());
            writeln!(out, "{:>4} {:>6} {:<set_width$} {:>6} {:>5}", "k", "gamma", "S", "Gamma", "n")?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>4} {:>6} {:<set_width$} {:>6} {:>5}",
                    row.k,
                    row.gamma,
                    row.picked.to_string(),
                    row.reduction,
                    row.n
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,gamma,S,Gamma,n")?;
            for row in &rows {
                let elements: Vec<String> =
                    row.picked.elements().iter().map(u32::to_string).collect();
                writeln!(
                    out,
                    "{},{},\"{}\",{},{}",
                    row.k,
                    row.gamma,
                    elements.join(","),
                    row.reduction,
                    row.n
                )?;
            }
        }
        Format::Json => {
            let array: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "r": r,
                        "m": m,
                        "k": row.k,
                        "gamma": row.gamma,
                        "set": row.picked.elements(),
                        "Gamma": row.reduction,
                        "n": row.n,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(array))?;
        }
    }
    Ok(())
}

fn cmd_genmatrix(family: Family, r: u32, m: u32, out_path: &str) -> Result<(), CliError> {
    let code = CodeSpec::new(family.into(), r, m)?.build();
    let text = code.export_text();
    if out_path == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(out_path, text)?;
    }
    Ok(())
}

fn cmd_verify(max_m: u32, oracle_budget: u64) -> Result<(), CliError> {
    if max_m == 0 {
        println!("warning: --max-m is 0; no suites run");
        return Ok(());
    }
    let reports = run_all(max_m, oracle_budget, DEFAULT_FAMILY_BUDGET);
    let mut first_failure: Option<String> = None;
    for report in &reports {
        println!(
            "{}: pass={} fail={} skip={}",
            report.name, report.passed, report.failed, report.skipped
        );
        if first_failure.is_none() {
            if let Some(detail) = &report.first_failure {
                first_failure = Some(format!("{}: {}", report.name, detail));
            }
        }
    }
    match first_failure {
        None => {
            let total: u64 = reports.iter().map(|r| r.passed).sum();
            println!("all suites passed ({total} checks)");
            Ok(())
        }
        Some(detail) => Err(CliError::verification(format!("counterexample: {detail}"))),
    }
}

fn cmd_gap(
    r: u32,
    m: u32,
    max_nu: Option<usize>,
    budget: u64,
    prune: bool,
    format: Format,
) -> Result<(), CliError> {
    let spec = CodeSpec::prm(r, m)?;
    let max_nu = max_nu.unwrap_or(spec.dimension() as usize);
    let report = rm_prm_gap(r, m, max_nu, budget, prune)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Pretty => {
            writeln!(out, "{:>4} {:>8} {:>9} {:>8} {:>10}", "nu", "rm", "rm_exact", "prm", "prm_exact")?;
            for row in &report.rows {
                writeln!(
                    out,
                    "{:>4} {:>8} {:>9} {:>8} {:>10}",
                    row.nu, row.rm, row.rm_exact, row.prm, row.prm_exact
                )?;
            }
            if let Some(nu) = report.truncated_at {
                writeln!(out, "# truncated at nu={nu}: subspace count exceeds budget {budget}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "nu,rm,rm_exact,prm,prm_exact")?;
            for row in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.nu, row.rm, row.rm_exact, row.prm, row.prm_exact
                )?;
            }
            if let Some(nu) = report.truncated_at {
                writeln!(out, "# truncated at nu={nu}: subspace count exceeds budget {budget}")?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = report
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "nu": row.nu,
                        "rm": row.rm,
                        "rm_exact": row.rm_exact,
                        "prm": row.prm,
                        "prm_exact": row.prm_exact,
                    })
                })
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "rows": rows, "truncated_at": report.truncated_at })
            )?;
        }
    }
    Ok(())
}
