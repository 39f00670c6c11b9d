use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use enlarge::cli::{batch_exit_code, parse_job_file, render_table, run_batch, Settings, DEFAULT_BUDGET};
use enlarge::ultrapower::DEFAULT_HORIZON;

/// Run galaxy, distance and invariant-suite jobs over enlarged graphs.
#[derive(Parser, Debug)]
#[command(name = "enlarge", version)]
struct Args {
    /// JSON job file (an array of jobs); `-` or omitted reads stdin
    #[arg(long)]
    job: Option<PathBuf>,
    /// Emit one JSON report per line instead of a table
    #[arg(long)]
    json: bool,
    /// Seed for every sampling step
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Breadth-first search budget in visited nodes
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Indices checked when validating hypernode literals
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    horizon: u64,
}

fn read_jobs(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn run(args: &Args) -> Result<i32> {
    let docs = parse_job_file(&read_jobs(args.job.as_ref())?)?;
    let settings = Settings { seed: args.seed, budget: args.budget, horizon: args.horizon };
    let reports = run_batch(&docs, &settings);
    if args.json {
        for r in &reports {
            println!("{}", serde_json::to_string(r)?);
        }
    } else {
        print!("{}", render_table(&reports));
    }
    Ok(batch_exit_code(&reports))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
