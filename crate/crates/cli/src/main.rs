//! Command-line front end: validate diagrams, analyze them, and run the
//! verification suite over census files.

mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use kstate::{Error, DEFAULT_STATE_CAP};
use report::{
    analyze_record, parse_census, parse_diagram_text, AnalyzeOptions, CensusRecord, RecordOutcome,
    RunReport,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kstate",
    version,
    about = "Kauffman states, delta-gradings, and dealternating bounds for knot diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram (PD or Gauss code) and run structural checks.
    Validate {
        /// Input file, or `-` for stdin.
        input: String,
    },
    /// Analyze diagrams: states, gradings, spreads, dealternating data,
    /// and both Alexander polynomial routes.
    Analyze(AnalyzeArgs),
    /// Run the verification suite over a census and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Diagram file (PD/Gauss text) or census file (CSV/JSON).
    input: PathBuf,
    /// Restrict to a single marked edge label.
    #[arg(long, conflicts_with = "all_edges")]
    edge: Option<usize>,
    /// Analyze every eligible marked edge (the default).
    #[arg(long)]
    all_edges: bool,
    /// Emit the JSON report.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the human-readable report (the default).
    #[arg(long)]
    text: bool,
    /// Abort enumeration beyond this many states
    /// [env KSTATE_MAX_STATES, default 10^7].
    #[arg(long)]
    max_states: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Census file (CSV with `name,pd` header, or JSON array).
    census: PathBuf,
    /// Also run the quadratic all-pairs proof-decomposition checks.
    #[arg(long)]
    deep: bool,
    /// Skip census records with more crossings than this.
    #[arg(long)]
    max_crossings: Option<usize>,
    /// Abort enumeration beyond this many states
    /// [env KSTATE_MAX_STATES, default 10^7].
    #[arg(long)]
    max_states: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { input } => cmd_validate(&input),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn state_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("KSTATE_MAX_STATES")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_STATE_CAP)
}

fn exit_for(err: &Error) -> ExitCode {
    let code = match err {
        Error::Malformed { .. }
        | Error::DuplicateLabel { .. }
        | Error::NonPlanar { .. }
        | Error::NonRealizable(_) => EXIT_PARSE,
        Error::LinkUnsupported { .. } => EXIT_UNSUPPORTED,
        Error::StateCapExceeded { .. } => EXIT_RESOURCE,
        Error::NoEligibleEdge | Error::GradingContract(_) | Error::Internal(_) => EXIT_VIOLATION,
    };
    ExitCode::from(code)
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
    }
}

fn cmd_validate(input: &str) -> ExitCode {
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {input}: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match parse_diagram_text(&text) {
        Ok(d) => {
            println!("parse: ok");
            println!("crossings: {}", d.n());
            println!("edges: {}", d.edges().len());
            println!("faces: {}", d.faces().len());
            println!("euler check (faces = crossings + 2): ok");
            println!("label multiplicity: ok");
            println!("single component: ok");
            println!("writhe: {}", d.writhe());
            println!("alternating: {}", d.is_alternating());
            println!("bad edges: {}", d.bad_edges().len());
            println!("bad domains: {}", d.bad_domain_count());
            println!("reduced: {}", d.is_reduced());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}

/// Interpret the input as a census if it looks like one, else as a single
/// diagram named after the file.
fn load_records(path: &PathBuf) -> Result<Vec<CensusRecord>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::malformed(format!("cannot read {}: {e}", path.display()), None))?;
    let head = text.trim_start();
    if head.starts_with('[') || head.starts_with("name,") {
        parse_census(&text)
    } else {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into());
        Ok(vec![CensusRecord {
            name,
            input: text,
            expected_det: None,
            expected_alternating: None,
        }])
    }
}

fn run_batch(records: &[CensusRecord], opts: &AnalyzeOptions) -> Vec<RecordOutcome> {
    records
        .par_iter()
        .map(|rec| match analyze_record(rec, opts) {
            Ok(report) => RecordOutcome::Ok(Box::new(report)),
            Err(err) => RecordOutcome::Failed {
                name: rec.name.clone(),
                error: err.to_string(),
            },
        })
        .collect()
}

fn severity(code: u8) -> u8 {
    match code {
        EXIT_VIOLATION => 4,
        EXIT_PARSE => 3,
        EXIT_UNSUPPORTED => 2,
        EXIT_RESOURCE => 1,
        _ => 0,
    }
}

/// Exit code for a batch: violations dominate, then parse errors, then
/// unsupported inputs, then resource caps.
fn batch_exit(outcomes: &[RecordOutcome]) -> ExitCode {
    let mut worst = 0u8;
    for outcome in outcomes {
        let code = match outcome {
            RecordOutcome::Ok(rep) => {
                if rep.all_ok() {
                    0
                } else {
                    EXIT_VIOLATION
                }
            }
            RecordOutcome::Failed { error, .. } => {
                if error.starts_with("state cap") {
                    EXIT_RESOURCE
                } else if error.starts_with("links unsupported") {
                    EXIT_UNSUPPORTED
                } else {
                    EXIT_PARSE
                }
            }
        };
        if severity(code) > severity(worst) {
            worst = code;
        }
    }
    ExitCode::from(worst)
}

fn cmd_analyze(args: &AnalyzeArgs) -> ExitCode {
    let records = match load_records(&args.input) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    };
    let opts = AnalyzeOptions {
        edge: args.edge,
        all_edges: args.edge.is_none(),
        deep: false,
        state_cap: state_cap(args.max_states),
    };
    let started = std::time::Instant::now();
    let outcomes = run_batch(&records, &opts);
    let report = RunReport {
        version: env!("CARGO_PKG_VERSION"),
        diagrams: outcomes,
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable report")
        );
    } else {
        print_text_report(&report);
        eprintln!(
            "analyzed {} record(s) in {:?}",
            records.len(),
            started.elapsed()
        );
    }
    batch_exit(&report.diagrams)
}

fn print_text_report(report: &RunReport) {
    for outcome in &report.diagrams {
        match outcome {
            RecordOutcome::Ok(rep) => {
                println!("{}:", rep.name);
                println!(
                    "  crossings {}  faces {}  writhe {}  alternating {}  reduced {}",
                    rep.crossings, rep.faces, rep.writhe, rep.alternating, rep.reduced
                );
                println!(
                    "  beta {}  dalt(D) {}  fixable {:?}",
                    rep.report.beta, rep.report.dalt_diagram, rep.report.fixable
                );
                println!(
                    "  states {}  (matrix-tree oracle {}, match: {})",
                    rep.report
                        .spreads
                        .first()
                        .and_then(|s| s.state_count)
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "?".into()),
                    rep.tree_count,
                    rep.oracle_match
                );
                let spreads: Vec<String> = rep
                    .report
                    .spreads
                    .iter()
                    .map(|s| match s.spread {
                        Some(v) => format!("{}:{v}", s.edge),
                        None => format!("{}:{}", s.edge, s.error.as_deref().unwrap_or("?")),
                    })
                    .collect();
                println!("  spread per marked edge: {}", spreads.join(" "));
                println!(
                    "  max spread {:?}  theorem_ok {}  decomposition_ok {}",
                    rep.report.max_spread, rep.report.theorem_ok, rep.report.decomposition_ok
                );
                let hist: Vec<String> = rep
                    .delta_histogram
                    .iter()
                    .map(|(d, c)| format!("{d}:{c}"))
                    .collect();
                println!(
                    "  delta histogram (edge {}): {}",
                    rep.gradings_edge,
                    hist.join(" ")
                );
                println!(
                    "  Alexander: {}  det {}  state-sum match: {}",
                    rep.alexander.fox_string, rep.alexander.determinant, rep.alexander.equal
                );
                if let Some(ok) = rep.expected.det_ok {
                    println!(
                        "  expected determinant: {}",
                        if ok { "ok" } else { "MISMATCH" }
                    );
                }
                if let Some(ok) = rep.expected.alternating_ok {
                    println!(
                        "  expected alternating: {}",
                        if ok { "ok" } else { "MISMATCH" }
                    );
                }
            }
            RecordOutcome::Failed { name, error } => {
                println!("{name}: ERROR {error}");
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.census) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.census.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let records = match parse_census(&text) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    };
    let (selected, skipped): (Vec<_>, Vec<_>) = records.into_iter().partition(|r| {
        args.max_crossings.is_none_or(|max| {
            // Token count equals the crossing count; avoids parsing
            // records that will be skipped anyway.
            r.input.split_whitespace().count() <= max
        })
    });
    for rec in &skipped {
        println!("{}: skipped (over --max-crossings)", rec.name);
    }
    let opts = AnalyzeOptions {
        edge: None,
        all_edges: true,
        deep: args.deep,
        state_cap: state_cap(args.max_states),
    };
    let outcomes = run_batch(&selected, &opts);
    let mut failures = 0usize;
    for outcome in &outcomes {
        match outcome {
            RecordOutcome::Ok(rep) => {
                let checks = [
                    ("theorem", rep.report.theorem_ok),
                    ("decomposition", rep.report.decomposition_ok),
                    ("count-oracle", rep.oracle_match),
                    ("euler-vs-fox", rep.alexander.equal),
                    ("expected-det", rep.expected.det_ok.unwrap_or(true)),
                    ("expected-alt", rep.expected.alternating_ok.unwrap_or(true)),
                ];
                let bad: Vec<&str> = checks
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(name, _)| *name)
                    .collect();
                if bad.is_empty() {
                    let deep_note = rep
                        .report
                        .deep
                        .as_ref()
                        .map(|d| format!(" ({} pairs)", d.pairs_checked))
                        .unwrap_or_default();
                    println!(
                        "{}: ok  spread<=dalt {}<={}{}",
                        rep.name,
                        rep.report.max_spread.unwrap_or(0),
                        rep.report.dalt_diagram,
                        deep_note
                    );
                } else {
                    failures += 1;
                    println!(
                        "{}: FAIL [{}] {:?}",
                        rep.name,
                        bad.join(", "),
                        rep.report.errors
                    );
                }
            }
            RecordOutcome::Failed { name, error } => {
                failures += 1;
                println!("{name}: ERROR {error}");
            }
        }
    }
    println!(
        "verified {} record(s), {} failure(s), {} skipped",
        outcomes.len(),
        failures,
        skipped.len()
    );
    batch_exit(&outcomes)
}
