//! `coercive-kit`: run the coercivity scenario catalog from the command line.
//!
//! Exit codes: 0 verified, 2 violated, 3 hypothesis failed, 1 usage or
//! internal error.

mod args;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coercive_kit::inequalities::{
    catalog, convergence_sweep, filter, lookup, run_scenario, CatalogEntry, ScenarioConfig, ScenarioResult, Verdict,
};

#[derive(Parser, Debug)]
#[command(
    name = "coercive-kit",
    version,
    about = "Numerical coercivity and Poincare-inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more scenarios and write a report.
    Run(RunArgs),
    /// List the scenario catalog.
    List {
        /// Only ids containing this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run a scenario over increasing degrees.
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Overrides {
    /// Box as lo:hi[,lo:hi...]; the dimension follows the number of intervals.
    #[arg(long = "box")]
    domain: Option<String>,
    /// full | face:<id> | face:<id>:<fraction>
    #[arg(long)]
    gamma_region: Option<String>,
    /// Points x[;y...], coordinates separated by commas.
    #[arg(long)]
    points: Option<String>,
    /// Identity residual and kernel tolerance.
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Scenario id, a comma-separated list, or `all`.
    #[arg(long)]
    scenario: String,
    /// Basis degree (Legendre) or mode cutoff (Fourier).
    #[arg(long)]
    degree: Option<usize>,
    /// Scenarios run concurrently; output order is fixed by id.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    scenario: String,
    /// Strictly ascending, comma-separated degrees.
    #[arg(long)]
    degrees: String,
    #[command(flatten)]
    overrides: Overrides,
}

/// A usage or internal failure, reported with exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    // clap's own usage exit code (2) would read as "violated"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::List { filter } => cmd_list(filter.as_deref()),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn exit_code(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    let mut code = 0;
    for v in verdicts {
        match v {
            Verdict::Violated => return 2,
            Verdict::HypothesisFailed => code = 3,
            Verdict::Verified => {}
        }
    }
    code
}

fn select(spec: &str) -> Result<Vec<CatalogEntry>, Failure> {
    if spec == "all" {
        return Ok(catalog());
    }
    let mut out: Vec<CatalogEntry> = spec
        .split(',')
        .map(|id| lookup(id.trim()).ok_or_else(|| Failure(format!("scenario: unknown id `{id}` (see `list`)"))))
        .collect::<Result<_, _>>()?;
    out.sort_by(|a, b| a.id.cmp(b.id));
    out.dedup_by(|a, b| a.id == b.id);
    Ok(out)
}

/// Applies command-line overrides. With several scenarios, an override is
/// skipped for scenarios that do not take it; it is an error only if none do.
fn configure(entries: &[CatalogEntry], degree: Option<usize>, o: &Overrides) -> Result<Vec<ScenarioConfig>, Failure> {
    let single = entries.len() == 1;
    let mut used_gamma = false;
    let mut used_points = false;
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let mut c = e.config.clone();
        if let Some(b) = &o.domain {
            let domain = args::parse_box(b).map_err(|m| Failure(format!("box: {m}")))?;
            c = c.with_box(domain).map_err(|m| Failure(format!("box: {m}")))?;
        }
        if let Some(d) = degree {
            c = c.with_degree(d).map_err(|m| Failure(format!("degree: {m}")))?;
        }
        if let Some(t) = o.tol {
            c = c.with_tol(t).map_err(|m| Failure(format!("tol: {m}")))?;
        }
        let d = c.spec.dim();
        if let Some(g) = &o.gamma_region {
            if c.kind.gamma().is_some() {
                let region = args::parse_region(g, d).map_err(|m| Failure(format!("gamma-region: {m}")))?;
                c = c
                    .with_gamma(region)
                    .map_err(|m| Failure(format!("gamma-region: {m}")))?;
                used_gamma = true;
            } else if single {
                return Err(Failure(format!(
                    "gamma-region: scenario {} takes no boundary region",
                    e.id
                )));
            }
        }
        if let Some(p) = &o.points {
            if c.kind.points().is_some() {
                let points = args::parse_points(p, d).map_err(|m| Failure(format!("points: {m}")))?;
                c = c.with_points(points).map_err(|m| Failure(format!("points: {m}")))?;
                used_points = true;
            } else if single {
                return Err(Failure(format!("points: scenario {} takes no points", e.id)));
            }
        }
        out.push(c);
    }
    if o.gamma_region.is_some() && !used_gamma {
        return Err(Failure(
            "gamma-region: none of the selected scenarios takes a boundary region".into(),
        ));
    }
    if o.points.is_some() && !used_points {
        return Err(Failure("points: none of the selected scenarios takes points".into()));
    }
    Ok(out)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("output: {}: {e}", path.display()))),
        None => write_stdout(text),
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn run_all(configs: &[ScenarioConfig], jobs: usize) -> Result<Vec<ScenarioResult>, Failure> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ScenarioResult, String>>>> = Mutex::new(vec![None; configs.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, configs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = configs.get(i) else { break };
                let r = run_scenario(c).map_err(|e| format!("{}: {e}", c.id));
                slots.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("threads joined")
        .into_iter()
        .map(|s| s.expect("every slot filled").map_err(Failure))
        .collect()
}

fn cmd_run(a: RunArgs) -> Result<u8, Failure> {
    let entries = select(&a.scenario)?;
    let configs = configure(&entries, a.degree, &a.overrides)?;
    let results = run_all(&configs, a.jobs)?;
    for r in &results {
        eprintln!(
            "{:<52} degree {:>3}  {:<17} {}",
            r.id,
            r.degree,
            r.verdict.to_string(),
            summary(r)
        );
    }
    let text = match a.overrides.format.unwrap_or(Format::Json) {
        Format::Csv => report::run_csv(&results),
        Format::Json => {
            let reports: Vec<report::Report> = results
                .iter()
                .zip(&entries)
                .map(|(r, e)| report::Report::new(r, e.claim))
                .collect();
            if reports.len() == 1 {
                report::to_json(&reports[0])
            } else {
                report::to_json(&reports)
            }
        }
    };
    emit(&text, a.overrides.output.as_ref())?;
    Ok(exit_code(results.iter().map(|r| r.verdict)))
}

fn summary(r: &ScenarioResult) -> String {
    let mut parts = Vec::new();
    if let Some(c) = r.primary_constant() {
        let name = if r.kind.estimates_upper_constant() {
            "C"
        } else {
            "gamma"
        };
        parts.push(format!("{name} = {c:.10}"));
    }
    if let Some(res) = r.residual {
        parts.push(format!("residual = {res:.3e}"));
    }
    parts.join("  ")
}

fn cmd_list(pattern: Option<&str>) -> Result<u8, Failure> {
    let entries = match pattern {
        Some(p) => filter(p),
        None => catalog(),
    };
    let mut text = String::new();
    for e in entries {
        text.push_str(&format!("{:<52} {:<24} {}\n", e.id, e.config.kind.base_name(), e.claim));
    }
    write_stdout(&text)?;
    Ok(0)
}

fn cmd_sweep(a: SweepArgs) -> Result<u8, Failure> {
    let entries = select(&a.scenario)?;
    if entries.len() != 1 {
        return Err(Failure("scenario: sweep takes exactly one scenario".into()));
    }
    let degrees = args::parse_degrees(&a.degrees).map_err(|m| Failure(format!("degrees: {m}")))?;
    let first = *degrees.first().ok_or_else(|| Failure("degrees: empty list".into()))?;
    let configs = configure(&entries, Some(first), &a.overrides)?;
    let rows = convergence_sweep(&configs[0], &degrees).map_err(|e| Failure(format!("degrees: {e}")))?;
    for r in &rows {
        eprintln!(
            "degree {:>3}  {:<17} constant {}  residual {}",
            r.degree,
            r.verdict.to_string(),
            r.constant.map_or("-".into(), |c| format!("{c:.12}")),
            r.residual.map_or("-".into(), |c| format!("{c:.3e}"))
        );
    }
    let text = match a.overrides.format.unwrap_or(Format::Csv) {
        Format::Csv => report::sweep_csv(&rows),
        Format::Json => report::to_json(&report::SweepReport {
            scenario: entries[0].id,
            parameters: &configs[0].parameters(),
            rows: rows.iter().map(report::SweepJsonRow::from).collect(),
        }),
    };
    emit(&text, a.overrides.output.as_ref())?;
    Ok(exit_code(rows.iter().map(|r| r.verdict)))
}
