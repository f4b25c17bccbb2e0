pub mod config;
pub mod report;
pub mod svg;
pub mod trace;

use std::fs;
use std::io::BufWriter;

use anyhow::{Context, Result};

use config::{Outputs, RunConfig};
use report::{run_surface, Report};

/// Runs every requested suite and writes the requested artifacts.
pub fn run(config: &RunConfig, outputs: &Outputs) -> Result<Report> {
    config.validate()?;
    let surfaces = config.surfaces.iter().map(|name| run_surface(name, config)).collect();
    let report = Report { config: config.clone(), surfaces };
    if let Some(path) = &outputs.json {
        fs::write(path, report.to_string_pretty()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = &outputs.svg_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for run in &report.surfaces {
            let path = dir.join(format!("{}.svg", file_stem(&run.name)));
            fs::write(&path, svg::render(run)).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let Some(path) = &outputs.trace_csv {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        trace::write_trace(&report, BufWriter::new(file))?;
    }
    Ok(report)
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}
