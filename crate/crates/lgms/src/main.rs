use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lgms::config::{Outputs, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "lgms", version, about = "Checks exceptional collections of toric surfaces against LG monodromy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve, map and track the requested surfaces and report pass/fail.
    Verify {
        /// Catalog names separated by commas, e.g. p2,bl3,projbundle:s=1,a=1.
        #[arg(long, required = true)]
        surface: Vec<String>,
        #[arg(long, value_enum, default_value = "all", value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Deformation parameter (default: 8 for damped potentials, else 0).
        #[arg(long)]
        t: Option<f64>,
        /// Sign of the coefficient phase loops, +1 or -1.
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        orientation: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg_dir: Option<PathBuf>,
        #[arg(long)]
        trace_csv: Option<PathBuf>,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timings: bool,
        /// Floor raw arguments instead of snapping them to small rationals first.
        #[arg(long)]
        raw_args: bool,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long)]
        snap_tol: Option<f64>,
    },
}

fn main() -> ExitCode {
    // Nothing is stochastic yet; the seed is accepted so scripts can pin it.
    if let Ok(seed) = std::env::var("LGMS_SEED") {
        if seed.parse::<u64>().is_err() {
            eprintln!("error: LGMS_SEED must be an unsigned integer");
            return ExitCode::from(2);
        }
    }
    let Command::Verify { surface, suite, t, orientation, json, svg_dir, trace_csv, timings, raw_args, max_step, snap_tol } =
        Cli::parse().command;
    let orientation = match orientation.trim_start_matches('+') {
        "1" => 1,
        "-1" => -1,
        other => {
            eprintln!("error: orientation must be +1 or -1, got {other}");
            return ExitCode::from(2);
        }
    };
    let defaults = RunConfig::default();
    let config = RunConfig {
        surfaces: surface.iter().flat_map(|s| split_surfaces(s)).collect(),
        suites: suite,
        t,
        orientation,
        raw_args,
        timings,
        max_step: max_step.unwrap_or(defaults.max_step),
        snap_tol: snap_tol.unwrap_or(defaults.snap_tol),
        ..defaults
    };
    let outputs = Outputs { json, svg_dir, trace_csv };
    match lgms::run(&config, &outputs) {
        Ok(report) => {
            for run in &report.surfaces {
                println!("{} {} (t = {})", if run.pass { "PASS" } else { "FAIL" }, run.name, run.t);
                for d in &run.diagnostics {
                    println!("    {d}");
                }
            }
            if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Splits a comma separated list of names that may themselves contain commas
/// (`product:p1,p1`): tokens are joined until they form a catalog name.
fn split_surfaces(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut acc = String::new();
    for token in list.split(',') {
        if !acc.is_empty() {
            acc.push(',');
        }
        acc.push_str(token.trim());
        if lgms_core::build_variety(&acc).is_ok() {
            out.push(std::mem::take(&mut acc));
        }
    }
    if !acc.is_empty() {
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::split_surfaces;

    #[test]
    fn names_with_commas_survive_splitting() {
        assert_eq!(split_surfaces("p2,projbundle:s=1,a=1,bl3"), ["p2", "projbundle:s=1,a=1", "bl3"]);
        assert_eq!(split_surfaces("product:p1,p1"), ["product:p1,p1"]);
        assert_eq!(split_surfaces("p2,nope"), ["p2", "nope"]);
    }
}
