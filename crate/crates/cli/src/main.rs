use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eulersum_core::identities::{
    self, matches_filter, registry, IdentityRecord, Params, VerifyOptions,
};
use eulersum_core::oracle::{evaluate, parse_sum_spec, EvalConfig};
use eulersum_core::report::{render_table, ReportConfig, ReportDocument};

#[derive(Parser)]
#[command(name = "eulersum", version, about = "Evaluate Euler-type sums and verify closed-form identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered identities.
    List {
        /// Shell-style id pattern, e.g. `eq-2.*`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Evaluate one sum, e.g. `S[2;0;p=6]` or `K[m=1,k=1,r=0,type=zeta]`.
    Eval {
        spec: String,
        #[command(flatten)]
        trunc: Truncation,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify one identity over its parameter grid, or all of them.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Truncation {
    /// Base truncation (terms for n^-2 series); overrides EULERSUM_DEFAULT_N.
    #[arg(long = "N", value_name = "N", value_parser = parse_n)]
    n: Option<u64>,
}

impl Truncation {
    fn config(&self) -> EvalConfig {
        self.n.map(EvalConfig::new).unwrap_or_else(EvalConfig::from_env)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, e.g. `eq-2.12`.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    id: Option<String>,
    /// Verify every registered identity.
    #[arg(long)]
    all: bool,
    /// Parameter override `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    params: Vec<(String, String)>,
    /// Tolerance for every record instead of its default.
    #[arg(long, value_parser = parse_tol)]
    tol: Option<f64>,
    #[command(flatten)]
    trunc: Truncation,
    /// With --all, only ids matching this pattern.
    #[arg(long, requires = "all")]
    filter: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Output order does not depend on it.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

fn parse_n(s: &str) -> Result<u64, String> {
    let v: f64 = s.replace('_', "").parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() || v < 1.0 || v.fract() != 0.0 || v > 1e12 {
        return Err(format!("N must be a positive integer up to 1e12, got {s}"));
    }
    Ok(v as u64)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("tolerance must be a positive number, got {s}")),
    }
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    Params::parse_assignment(s).map_err(|e| e.to_string())?;
    let (k, v) = s.split_once('=').expect("checked above");
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Usage or domain failure: exit 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::List { filter, format } => list(filter.as_deref(), format),
        Command::Eval { spec, trunc, format } => eval(&spec, &trunc, format),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    id: &'a str,
    statement: &'a str,
    family: &'static str,
    domain: String,
    default_tol: f64,
    grid_points: usize,
    quoted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl<'a> From<&'a IdentityRecord> for ListEntry<'a> {
    fn from(r: &'a IdentityRecord) -> Self {
        ListEntry {
            id: r.id,
            statement: r.statement,
            family: r.family.name(),
            domain: r.domain.to_string(),
            default_tol: r.default_tol,
            grid_points: r.grid.len(),
            quoted: r.quoted,
            note: r.note,
        }
    }
}

fn list(filter: Option<&str>, format: Format) -> Result<ExitCode, UsageError> {
    let entries: Vec<ListEntry> = registry()
        .iter()
        .filter(|r| filter.map_or(true, |f| matches_filter(r.id, f)))
        .map(ListEntry::from)
        .collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&entries)? + "\n",
        Format::Csv => {
            let mut s = String::from("id,family,default_tol,grid_points,domain\n");
            for e in &entries {
                s.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    e.id,
                    e.family,
                    e.default_tol,
                    e.grid_points,
                    e.domain.replace('"', "\"\"")
                ));
            }
            s
        }
        Format::Table => {
            let header = ["id", "family", "tol", "points", "domain"].map(String::from);
            let rows: Vec<[String; 5]> = entries
                .iter()
                .map(|e| {
                    [
                        e.id.to_string(),
                        e.family.to_string(),
                        format!("{:.0e}", e.default_tol),
                        e.grid_points.to_string(),
                        e.domain.clone(),
                    ]
                })
                .collect();
            render_table(&header, &rows)
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn eval(spec: &str, trunc: &Truncation, format: Format) -> Result<ExitCode, UsageError> {
    let desc = parse_sum_spec(spec).map_err(|e| UsageError(format!("{e}\n  {spec}\n  {}", caret(&e))))?;
    let config = trunc.config();
    let v = evaluate(&desc, &config)?;
    let terms = config.terms_for(&desc);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "spec": spec, "sum": desc.to_string(), "value": v.value, "err": v.err, "N": terms })
        ),
        Format::Csv => println!("spec,value,err,N\n\"{spec}\",{},{},{terms}", v.value, v.err),
        Format::Table => println!("{desc}\nvalue = {:.16}\nerr   = {:.2e}\nN     = {terms}", v.value, v.err),
    }
    Ok(ExitCode::SUCCESS)
}

/// A marker under the offending character of a parse error.
fn caret(e: &eulersum_core::Error) -> String {
    match e {
        eulersum_core::Error::Parse { position, .. } => format!("{}^", " ".repeat(*position)),
        _ => String::new(),
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let mut overrides = Params::new();
    for (k, v) in &args.params {
        let (_, value) = Params::parse_assignment(&format!("{k}={v}"))?;
        overrides.set(k, value);
    }
    let config = args.trunc.config();
    let opts = VerifyOptions { config, tol: args.tol };
    let plan = match &args.id {
        Some(id) => identities::plan_one(id, &overrides)?,
        None => identities::plan_all(args.filter.as_deref(), &overrides),
    };
    if plan.is_empty() {
        return Err(UsageError("no identities match".into()));
    }
    let jobs = if args.jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        args.jobs
    };
    let start = Instant::now();
    let results = identities::run_plan(&plan, &opts, jobs);
    let doc = ReportDocument::new(
        ReportConfig { n: config.n, tol: args.tol },
        results,
        start.elapsed().as_secs_f64(),
    );
    let text = match args.format {
        Format::Json => doc.to_json() + "\n",
        Format::Csv => doc.to_csv(),
        Format::Table => doc.to_table(),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
            let s = doc.summary;
            eprintln!(
                "{} total, {} passed, {} failed, {} unconfirmed; report written to {}",
                s.total,
                s.passed,
                s.failed,
                s.unconfirmed,
                path.display()
            );
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(if doc.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
