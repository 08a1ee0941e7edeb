mod anchors;
mod common;
mod diag;
mod median;
mod poly;
mod racg;
mod report;
mod sc;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser, Subcommand};

use report::{Inputs, Outcome, Report};

/// Default node budget for exhaustive searches.
const DEFAULT_SEED_CAP: u64 = 20_000_000;

/// Bad input: unreadable file, syntax error, or data a command refuses.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub struct Ctx {
    pub seed_cap: u64,
}

#[derive(Parser)]
#[command(name = "cubecone", about = "Median graphs, hyperbolicity diagnostics, RACGs, small cancellation and polygonal cubulation", disable_version_flag = true)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for exhaustive searches; capped results are marked lower bounds.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED_CAP)]
    seed_cap: u64,
    /// Print the version and the statement behind each command.
    #[arg(short = 'V', long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Median graphs: recognition, hyperplanes, metrics, convexity.
    #[command(subcommand)]
    Median(median::MedianCmd),
    /// Hyperbolicity diagnostics.
    #[command(subcommand)]
    Diag(diag::DiagCmd),
    /// Cone off a family of convex subcomplexes.
    Coneoff(diag::ConeoffArgs),
    /// Right-angled Coxeter groups.
    #[command(subcommand)]
    Racg(racg::RacgCmd),
    /// Small cancellation for presentations.
    #[command(subcommand)]
    Sc(sc::ScCmd),
    /// Polygonal complexes and their cubulation.
    #[command(subcommand)]
    Poly(poly::PolyCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        print!("{}", anchors::manifest());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        let _ = Cli::command().print_help();
        return ExitCode::from(2);
    };
    let ctx = Ctx { seed_cap: cli.seed_cap };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result: Result<(&str, Outcome), CliError> = match command {
        Command::Median(c) => median::run(c, &ctx, &mut inputs),
        Command::Diag(c) => diag::run(c, &ctx, &mut inputs),
        Command::Coneoff(a) => diag::coneoff(a, &ctx, &mut inputs),
        Command::Racg(c) => racg::run(c, &ctx, &mut inputs),
        Command::Sc(c) => sc::run(c, &mut inputs),
        Command::Poly(c) => poly::run(c, &ctx, &mut inputs),
    };
    match result {
        Ok((name, outcome)) => {
            let negative = outcome.negative;
            let mut params = outcome.params;
            params.insert("seed_cap".into(), ctx.seed_cap.into());
            let report = Report {
                command: name.to_string(),
                inputs: inputs.digests,
                params,
                results: outcome.results,
                anchors: anchors::for_command(name),
                duration_ms: start.elapsed().as_millis() as u64,
            };
            let text = if cli.json { report::to_json(&report) + "\n" } else { report::to_text(&report) };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.0 }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
