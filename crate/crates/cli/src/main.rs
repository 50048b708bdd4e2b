//! `haarwalk` command line: classify, simulate, verify, benford, sweep.
//!
//! Exit codes: 0 pass, 1 statistical failure, 2 usage or validation error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use haarwalk::experiment::{self, apply_overrides, ExperimentConfig, RunOptions, RunOutcome};

/// Environment variable capping the number of replica threads in a sweep.
const THREADS_VAR: &str = "HAARWALK_THREADS";

#[derive(Parser)]
#[command(name = "haarwalk", version, about = "Levy processes and random walks on compact groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the limit of the occupation measure from the process data.
    Classify(Common),
    /// Simulate and write occupation, series and path files.
    Simulate(Common),
    /// Simulate and test against the predicted limit.
    Verify(Common),
    /// Benford test for geometric processes and products.
    Benford(Common),
    /// Replicated verify runs with seeds seed, seed+1, ...
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// Experiment config (JSON).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Overrides the seed of the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: the config's out_dir, else the current directory).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Override a config field, e.g. `--set horizon=1e5` or `--set process.rate=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Also write path.csv.
    #[arg(long)]
    emit_path: bool,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::Classify(c) => ("classify", c),
            Command::Simulate(c) => ("simulate", c),
            Command::Verify(c) => ("verify", c),
            Command::Benford(c) => ("benford", c),
            Command::Sweep(c) => ("sweep", c),
        }
    }
}

fn load_config(kind: &str, args: &Common) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read config {}", args.config.display()))?;
    let mut doc: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("config {} is not JSON", args.config.display()))?;
    apply_overrides(&mut doc, &args.set)?;
    let obj = doc
        .as_object_mut()
        .context("config must be a JSON object")?;
    obj.insert("experiment".into(), kind.into());
    if let Some(seed) = args.seed {
        obj.insert("seed".into(), seed.into());
    }
    Ok(ExperimentConfig::from_value(doc)?)
}

fn threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("{THREADS_VAR}={v:?} is not a thread count"))?;
            anyhow::ensure!(n >= 1, "{THREADS_VAR} must be at least 1");
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn print_summary(outcome: &RunOutcome) {
    if let Some(v) = outcome.report.get("verdict").filter(|v| !v.is_null()) {
        let kind = v["kind"].as_str().unwrap_or("?");
        let why = v["provenance"].as_str().unwrap_or("");
        println!("verdict: {kind} ({why})");
        if let Some(b) = v.get("benford") {
            println!("benford: {b}");
        }
        if let Some(note) = v.get("average_note").and_then(|n| n.as_str()) {
            println!("average: {note}");
        }
    }
    if let Some(agg) = outcome.report.get("aggregate").and_then(|a| a.as_array()) {
        for a in agg {
            println!(
                "{}: mean={} max={} passes={}/{}",
                a["test"].as_str().unwrap_or("?"),
                a["mean"],
                a["max"],
                a["passes"],
                a["replicas"]
            );
        }
    } else {
        for t in &outcome.tests {
            let op = match t.comparison {
                haarwalk::uniformity::Comparison::AtMost => "<=",
                haarwalk::uniformity::Comparison::AtLeast => ">=",
            };
            println!(
                "{}: {:.6e} {op} {:.6e} {}",
                t.test,
                t.statistic,
                t.threshold,
                if t.pass { "pass" } else { "FAIL" }
            );
        }
    }
    println!("{}", if outcome.pass { "PASS" } else { "FAIL" });
}

fn run(cli: Cli) -> Result<RunOutcome> {
    let (kind, args) = cli.command.parts();
    let config = load_config(kind, args)?;
    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| config.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let opts = RunOptions {
        out_dir: Some(out_dir),
        emit_path: args.emit_path,
        threads: threads()?,
    };
    Ok(experiment::run(&config, &opts)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print_summary(&outcome);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
