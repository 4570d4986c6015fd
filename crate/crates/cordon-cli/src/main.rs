//! `cordon` — deterministic crowd-control simulation runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cordon_core::{build_world, run_with_trace};

use cordon_cli::batch::{
    compare, parse_seed_range, render_batch, render_batch_records, render_compare, run_batch_for,
};
use cordon_cli::error::CliError;
use cordon_cli::report::{render_record, render_table};
use cordon_cli::scenarios;
use cordon_cli::snapshot::render_snapshot;
use cordon_cli::trace::{parse_trace, render_trace};

#[derive(Parser)]
#[command(
    name = "cordon",
    about = "Agent-based crowd-control simulation with behavior-weight steering",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario under one seed and print the outcome table.
    Run(RunArgs),
    /// Run one scenario across a seed range and aggregate the outcomes.
    Batch(BatchArgs),
    /// Run two scenarios across the same seeds and compare them pairwise.
    Compare(CompareArgs),
    /// Render one tick of a trace file as an SVG image.
    Snapshot(SnapshotArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario: a file path or a bundled name (case1, case2).
    #[arg(long)]
    scenario: String,
    /// Defaults to the scenario's run.default_seed when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario's max_ticks.
    #[arg(long)]
    ticks: Option<u32>,
    /// Write a trace file of the run.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the flat machine record.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long)]
    scenario: String,
    /// Inclusive seed range, e.g. 1..100, or a single seed.
    #[arg(long)]
    seeds: String,
    #[arg(long)]
    ticks: Option<u32>,
    /// Write per-seed machine records.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// First scenario (path or bundled name).
    #[arg(long)]
    a: String,
    /// Second scenario (path or bundled name).
    #[arg(long)]
    b: String,
    #[arg(long)]
    seeds: String,
    #[arg(long)]
    ticks: Option<u32>,
}

#[derive(Args)]
struct SnapshotArgs {
    #[arg(long)]
    trace: PathBuf,
    #[arg(long)]
    tick: u32,
    #[arg(long)]
    out: PathBuf,
}

/// Load a scenario source and apply a tick override before re-digesting.
fn load_with_ticks(
    source: &str,
    ticks: Option<u32>,
) -> Result<(cordon_core::ValidatedScenario, String), CliError> {
    let loaded = scenarios::load(source)?;
    match ticks {
        None => Ok((loaded.scenario, loaded.text)),
        Some(max_ticks) => {
            let mut inner = loaded.scenario.into_inner();
            inner.max_ticks = max_ticks;
            let doc = cordon_cli::document::ScenarioDocument::from_scenario(&inner);
            let text = cordon_cli::document::emit(&doc);
            let validated = cordon_cli::document::parse_scenario_str(&text)?;
            Ok((validated, text))
        }
    }
}

fn resolve_seed(explicit: Option<u64>, source: &str) -> Result<u64, CliError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    if let Some(seed) = scenarios::load(source)?.default_seed {
        return Ok(seed);
    }
    Err(CliError::Usage(
        "no --seed given and the scenario has no run.default_seed".to_string(),
    ))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed, &args.scenario)?;
    let (scenario, text) = load_with_ticks(&args.scenario, args.ticks)?;
    let (report, trace_records) = run_with_trace(&scenario, seed).map_err(CliError::Build)?;

    if let Some(path) = &args.trace {
        let digest = scenarios::digest(&text)?;
        let world0 = build_world(&scenario, seed).map_err(CliError::Build)?;
        let rendered = render_trace(&world0, &scenario, &trace_records, &digest, seed);
        write_file(path, &rendered)?;
    }
    if let Some(path) = &args.report {
        write_file(path, &render_record(&report))?;
    }
    print!("{}", render_table(&report));
    Ok(())
}

fn cmd_batch(args: &BatchArgs) -> Result<(), CliError> {
    let (scenario, _) = load_with_ticks(&args.scenario, args.ticks)?;
    let seeds = parse_seed_range(&args.seeds)?;
    let result = run_batch_for(&scenario, &seeds)?;
    if let Some(path) = &args.out {
        write_file(path, &render_batch_records(&result))?;
    }
    print!("{}", render_batch(&result));
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let (a, _) = load_with_ticks(&args.a, args.ticks)?;
    let (b, _) = load_with_ticks(&args.b, args.ticks)?;
    let seeds = parse_seed_range(&args.seeds)?;
    let result = compare(&a, &b, &seeds)?;
    print!("{}", render_compare(&result));
    Ok(())
}

fn cmd_snapshot(args: &SnapshotArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.trace).map_err(|e| CliError::io(&args.trace, e))?;
    let trace = parse_trace(&text)?;
    let svg = render_snapshot(&trace, args.tick)?;
    write_file(&args.out, &svg)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Batch(args) => cmd_batch(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Snapshot(args) => cmd_snapshot(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
