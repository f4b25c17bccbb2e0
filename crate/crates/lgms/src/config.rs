use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::ValueEnum;
use lgms_core::critsolve::SolveOptions;
use lgms_core::hmscheck::{ArgRounding, CheckOptions};
use lgms_core::laurent::Orientation;
use lgms_core::monodromy::TrackOptions;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Solve,
    Ew,
    TheoremA,
    Collection,
    All,
}

/// Everything that influences the computed report. Output paths are kept
/// separately so they do not leak into the JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub surfaces: Vec<String>,
    pub suites: Vec<Suite>,
    /// Deformation parameter; `None` uses each surface's default.
    pub t: Option<f64>,
    pub orientation: i32,
    pub dedup_radius: f64,
    pub cert_tol: f64,
    pub snap_tol: f64,
    pub max_step: f64,
    pub raw_args: bool,
    pub timings: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub json: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
    pub trace_csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let solve = SolveOptions::default();
        Self {
            surfaces: Vec::new(),
            suites: vec![Suite::All],
            t: None,
            orientation: -1,
            dedup_radius: solve.dedup_radius,
            cert_tol: solve.cert_tol,
            snap_tol: CheckOptions::default().snap_tol,
            max_step: TrackOptions::default().max_step,
            raw_args: false,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.surfaces.is_empty() {
            bail!("no surface given");
        }
        for (name, v) in [
            ("dedup radius", self.dedup_radius),
            ("certification tolerance", self.cert_tol),
            ("snap tolerance", self.snap_tol),
            ("max step", self.max_step),
        ] {
            if !(v.is_finite() && v > 0.0) {
                bail!("{name} must be positive, got {v}");
            }
        }
        if let Some(t) = self.t {
            if !t.is_finite() {
                bail!("t must be finite");
            }
        }
        if self.orientation != 1 && self.orientation != -1 {
            bail!("orientation must be +1 or -1");
        }
        for s in &self.surfaces {
            if let Err(e) = lgms_core::build_variety(s) {
                bail!("unknown surface {s}: {e}");
            }
        }
        Ok(())
    }

    pub fn runs(&self, suite: Suite) -> bool {
        self.suites.contains(&Suite::All) || self.suites.contains(&suite)
    }

    pub fn check_options(&self) -> CheckOptions {
        let defaults = CheckOptions::default();
        CheckOptions {
            solve: SolveOptions { dedup_radius: self.dedup_radius, cert_tol: self.cert_tol, ..defaults.solve },
            track: TrackOptions { max_step: self.max_step, ..defaults.track },
            snap_tol: self.snap_tol,
            rounding: if self.raw_args { ArgRounding::Raw } else { ArgRounding::Snap },
            orientation: Orientation::from_sign(self.orientation).unwrap_or_default(),
            ..defaults
        }
    }
}
