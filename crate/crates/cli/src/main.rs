//! `latentbr`: run belief-change scenarios and check the postulates.
//!
//! Exit status: 0 on success, 1 when `check` finds postulate failures,
//! 2 on validation errors (bad scenario, bad arguments, I/O), 3 when
//! remainder enumeration exceeds the work limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use latentbr_core::scenario::{self, render_trace, snapshot, RunReport, Scenario};
use latentbr_core::suite::{self, Bounds};
use latentbr_core::Error;

#[derive(Parser)]
#[command(name = "latentbr", version, about = "Belief revision with latent beliefs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print the final belief set.
    Run {
        file: PathBuf,
        /// Write the final snapshot and the trace as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print what each event made believed and which triplets fired.
        #[arg(long)]
        trace: bool,
    },
    /// Check the postulates on randomly generated instances.
    Check {
        /// Number of seeds.
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Atoms per instance (1 to 4).
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=4))]
        atoms: u64,
        /// Write the full report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search for instances exhibiting the counterexample observations and
    /// write them as scenario files.
    Witnesses {
        /// Seeds to search.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=4))]
        atoms: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn run_scenario(file: &Path, json: Option<&Path>, trace: bool) -> Result<u8, Failure> {
    let text = fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let sc = Scenario::parse(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", file.display()),
    })?;
    let outcome = match scenario::run(&sc) {
        Ok(o) => o,
        Err(aborted) => {
            if trace {
                print!("{}", render_trace(&aborted.trace));
            }
            return Err(Failure {
                code: aborted.error.exit_code() as u8,
                message: aborted.to_string(),
            });
        }
    };
    if trace {
        print!("{}", render_trace(&outcome.trace));
        println!();
    }
    let snap = snapshot(&outcome.result, &sc.print_basis);
    print!("{}", snap.to_text());
    if let Some(path) = json {
        let report = RunReport {
            snapshot: snap,
            trace: outcome.trace,
        };
        write_file(path, &report.to_json())?;
    }
    Ok(0)
}

fn check(seeds: u64, start: u64, atoms: u64, report: Option<&Path>) -> Result<u8, Failure> {
    let bounds = Bounds::with_atoms(atoms as usize);
    let result = suite::run(start..start + seeds, bounds);
    print!("{}", result.summary());
    if let Some(path) = report {
        let json = serde_json::to_string_pretty(&result).expect("report serializes");
        write_file(path, &json)?;
    }
    let failures = result.total_failures();
    if failures > 0 {
        println!("{failures} postulate failure(s); witnesses in the JSON report");
        Ok(1)
    } else {
        Ok(0)
    }
}

fn witnesses(budget: u64, atoms: u64, out: &Path) -> Result<u8, Failure> {
    let report = suite::find_observation_witnesses(Bounds::with_atoms(atoms as usize), budget);
    fs::create_dir_all(out).map_err(|e| io_failure(out, e))?;
    let found = [
        ("no_gratuitous_recovery", &report.no_gratuitous_recovery),
        ("no_levi_identity", &report.no_levi_identity),
        ("no_consistency", &report.no_consistency),
    ];
    for (name, witness) in found {
        match witness {
            Some(w) => {
                let path = out.join(format!("{name}.scn"));
                write_file(&path, &w.scenario)?;
                let seed = w.seed.map_or("known instance".to_string(), |s| format!("seed {s}"));
                println!("{name}: {seed} -> {}", path.display());
            }
            None => println!("{name}: not found in {} seeds", report.searched),
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { file, json, trace } => run_scenario(file, json.as_deref(), *trace),
        Command::Check {
            seeds,
            start,
            atoms,
            report,
        } => check(*seeds, *start, *atoms, report.as_deref()),
        Command::Witnesses { budget, atoms, out } => witnesses(*budget, *atoms, out),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
