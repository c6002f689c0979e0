//! `vancoh`: first cohomology, restriction maps, vanishing lattices and
//! certification runs from JSON task files.
//!
//! Exit status: 0 all checks pass, 1 a check failed (the report carries the
//! witness), 2 inconclusive within the bounds, 3 input error.

mod commands;
mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vancoh::{Bounds, Status, VerificationReport};

use commands::Flavor;
use input::{load_task, parse_bounds, InputError, TaskInput};

const EXIT_INPUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "vancoh", version, about = "Exact first cohomology and restriction-map certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Task file: {"lattice", "presentation", "representation", "seeds", "cocycle", ...}.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Search limits, e.g. depth=6,size=5000,exp=64,wordlen=3.
    #[arg(long, global = true, value_parser = parse_bounds)]
    bounds: Option<Bounds>,
    /// Seed for randomized commands; recorded in every report it is given to.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensions of Z¹, B¹, H¹ and a basis of H¹.
    H1,
    /// Restriction classes of the cocycle at the given or enumerated words.
    Restrict,
    /// Properties (1)-(3) of a vanishing lattice for the seeds.
    CheckVanishingLattice,
    /// Membership of `element` in Sp♯ or Sp♯₂.
    Spsharp,
    /// An independent frame of orbit vectors and power certificates.
    Frame,
    /// Certifies a reflection-group cocycle as a coboundary, or flags it.
    CertifyOdd,
    /// Certifies a transvection-group cocycle as a coboundary, or flags it.
    CertifyEven,
    /// Reproduces the commuting-pair counterexample.
    VerifyPaper,
    /// Seeded randomized certification trials.
    RandomExperiment {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Flavor::Both)]
        flavor: Flavor,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.json.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(match report.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Inconclusive => 2,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<VerificationReport, InputError> {
    let bounds = cli.bounds.unwrap_or_default();
    let task = || -> Result<TaskInput, InputError> {
        let path = cli.input.as_ref().ok_or_else(|| InputError::at("--input", "this command needs a task file"))?;
        load_task(path)
    };
    let report = match &cli.command {
        Command::H1 => commands::h1(&task()?)?,
        Command::Restrict => commands::restrict(&task()?, &bounds)?,
        Command::CheckVanishingLattice => commands::check_vanishing(&task()?, &bounds)?,
        Command::Spsharp => commands::spsharp(&task()?)?,
        Command::Frame => commands::frame(&task()?, &bounds)?,
        Command::CertifyOdd => commands::certify_odd(&task()?)?,
        Command::CertifyEven => commands::certify_even(&task()?, &bounds)?,
        Command::VerifyPaper => commands::verify_paper(),
        Command::RandomExperiment { trials, flavor } => {
            let seed = cli.seed.ok_or_else(|| InputError::at("--seed", "random-experiment requires a seed"))?;
            return Ok(commands::random_experiment(seed, *trials, *flavor, &bounds));
        }
    };
    Ok(match cli.seed {
        Some(s) => report.with_seed(s),
        None => report,
    })
}

/// Text lines longer than this are elided; the JSON report keeps everything.
const TEXT_WIDTH: usize = 160;

fn emit(report: &VerificationReport, json: Option<&Path>) -> Result<(), InputError> {
    let value = commands::decimal_strings(serde_json::to_value(report).expect("reports serialize"));
    // A closed stdout (e.g. piped into `head`) must not turn into a panic.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{report}");
    if let Some(w) = value.get("witnesses").and_then(|w| w.as_object()) {
        for (k, v) in w {
            let text = v.to_string();
            let _ = if text.len() > TEXT_WIDTH {
                writeln!(out, "  {k}: ({} bytes, see --json)", text.len())
            } else {
                writeln!(out, "  {k}: {text}")
            };
        }
    }
    if let Some(path) = json {
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| InputError::at(path.display().to_string(), e))?;
    }
    Ok(())
}
