//! Verification runs and their JSON form. Keys come out sorted (serde_json's
//! default map) and floats are rounded to 12 significant digits, so equal
//! configurations give byte-identical reports.

use std::time::Instant;

use lgms_core::critsolve::{solve_critical, CriticalSet};
use lgms_core::hmscheck::{certify_collection, critical_classes, order_collection, verify_theorem_a, TheoremAReport};
use lgms_core::laurent::{default_deformation, lg_potential, lg_system, unit_arg};
use lgms_core::{build_variety, PicClass};
use serde_json::{json, Map, Value};

use crate::config::{RunConfig, Suite};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_PATH_SAMPLES: usize = 512;

/// Rounds to 12 significant digits.
pub fn fixed(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    if v == 0.0 {
        return json!(0.0);
    }
    let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    json!(if r == 0.0 { 0.0 } else { r })
}

fn class(c: &PicClass) -> Value {
    json!(c.coords)
}

pub struct SurfaceRun {
    pub name: String,
    pub t: f64,
    pub pass: bool,
    pub diagnostics: Vec<String>,
    pub crit: Option<CriticalSet>,
    pub ew: Option<Vec<PicClass>>,
    pub theorem_a: Option<TheoremAReport>,
    pub collection: Option<Value>,
    pub timings_ms: Vec<(Suite, f64)>,
    pub labels: Vec<String>,
    pub dim: usize,
}

pub struct Report {
    pub config: RunConfig,
    pub surfaces: Vec<SurfaceRun>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.surfaces.iter().all(|s| s.pass)
    }

    pub fn to_json(&self) -> Value {
        let surfaces: Vec<Value> = self.surfaces.iter().map(|s| s.to_json(self.config.timings)).collect();
        json!({
            "version": SCHEMA_VERSION,
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "pass": self.pass(),
            "surfaces": surfaces,
        })
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

fn timed<T>(timings: &mut Vec<(Suite, f64)>, suite: Suite, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((suite, start.elapsed().as_secs_f64() * 1e3));
    out
}

pub fn run_surface(name: &str, config: &RunConfig) -> SurfaceRun {
    let mut run = SurfaceRun {
        name: name.to_string(),
        t: 0.0,
        pass: true,
        diagnostics: Vec::new(),
        crit: None,
        ew: None,
        theorem_a: None,
        collection: None,
        timings_ms: Vec::new(),
        labels: Vec::new(),
        dim: 0,
    };
    let x = match build_variety(name) {
        Ok(x) => x,
        Err(e) => {
            run.fail(format!("catalog: {e}"));
            return run;
        }
    };
    run.labels = x.cone_labels.clone();
    run.dim = x.dim;
    run.t = config.t.unwrap_or_else(|| default_deformation(&x));
    let opts = config.check_options();

    if config.runs(Suite::Solve) {
        let sys = lg_system(&lg_potential(&x).with_orientation(opts.orientation));
        match timed(&mut run.timings_ms, Suite::Solve, || solve_critical(&x, &sys, run.t, &[], &opts.solve)) {
            Ok(crit) => {
                let expected = x.normalized_volume() as usize;
                if crit.len() != expected {
                    run.fail(format!("solve: {} critical points, expected {expected}", crit.len()));
                }
                run.crit = Some(crit);
            }
            Err(e) => run.fail(format!("solve: {e}")),
        }
    }

    let needs_ew = config.runs(Suite::Ew) || config.runs(Suite::Collection);
    if needs_ew {
        match timed(&mut run.timings_ms, Suite::Ew, || critical_classes(&x, run.t, &opts)) {
            Ok((_, crit, ew)) => {
                if config.runs(Suite::Ew) {
                    if let Err(e) = order_collection(&x, &ew) {
                        run.fail(format!("ew: {e}"));
                    }
                }
                run.crit.get_or_insert(crit);
                run.ew = Some(ew);
            }
            Err(e) => run.fail(format!("ew: {e}")),
        }
    }

    if config.runs(Suite::TheoremA) {
        match timed(&mut run.timings_ms, Suite::TheoremA, || verify_theorem_a(&x, run.t, &opts)) {
            Ok(report) => {
                for row in report.rows.iter().filter(|r| !r.pass) {
                    let why = row.failure.clone().unwrap_or_default();
                    run.fail(format!("theorem-a: z{} {}: {why}", row.z_index, x.cone_labels[row.sigma]));
                }
                run.crit.get_or_insert_with(|| report.crit.clone());
                run.ew.get_or_insert_with(|| report.ew.clone());
                run.theorem_a = Some(report);
            }
            Err(e) => run.fail(format!("theorem-a: {e}")),
        }
    }

    if config.runs(Suite::Collection) {
        if let Some(ew) = run.ew.clone() {
            let result = timed(&mut run.timings_ms, Suite::Collection, || {
                order_collection(&x, &ew).and_then(|order| certify_collection(&x, &order))
            });
            match result {
                Ok(cert) => {
                    if !(cert.verdicts.strong && cert.verdicts.rank_full) {
                        run.fail(format!("collection: {:?}", cert.verdicts));
                    }
                    run.collection = Some(json!({
                        "order": cert.order.iter().map(class).collect::<Vec<_>>(),
                        "h0": cert.h(0),
                        "h1": cert.h(1),
                        "h2": cert.h(2),
                        "verdicts": serde_json::to_value(&cert.verdicts).expect("verdicts serialize"),
                    }));
                }
                Err(e) => run.fail(format!("collection: {e}")),
            }
        }
    }
    run
}

impl SurfaceRun {
    fn fail(&mut self, diagnostic: String) {
        self.pass = false;
        self.diagnostics.push(diagnostic);
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("t".into(), fixed(self.t));
        m.insert("pass".into(), json!(self.pass));
        m.insert("diagnostics".into(), json!(self.diagnostics));
        if let Some(crit) = &self.crit {
            let points: Vec<Value> = crit
                .points
                .iter()
                .zip(&crit.residuals)
                .enumerate()
                .map(|(i, (z, r))| {
                    json!({
                        "index": i,
                        "z": z.iter().map(|c| json!([fixed(c.re), fixed(c.im)])).collect::<Vec<_>>(),
                        "arg": z.iter().map(|c| fixed(unit_arg(*c))).collect::<Vec<_>>(),
                        "residual": fixed(*r),
                        "base": i == crit.base_index,
                    })
                })
                .collect();
            m.insert("crit".into(), json!(points));
        }
        if let Some(ew) = &self.ew {
            let rows: Vec<Value> = ew.iter().enumerate().map(|(i, c)| json!({"z": i, "class": class(c)})).collect();
            m.insert("ew".into(), json!(rows));
        }
        if let Some(report) = &self.theorem_a {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    let path: Vec<Value> = r
                        .path
                        .downsampled(MAX_PATH_SAMPLES)
                        .iter()
                        .map(|s| json!(s.lifted.iter().map(|v| fixed(*v)).collect::<Vec<_>>()))
                        .collect();
                    json!({
                        "z": r.z_index,
                        "sigma": self.labels[r.sigma],
                        "class": class(&r.class),
                        "windings": r.windings,
                        "m_w": r.m_w,
                        "m_x": r.m_x,
                        "end": r.end_index,
                        "pass": r.pass,
                        "failure": r.failure,
                        "path": path,
                    })
                })
                .collect();
            m.insert("theorem_a".into(), json!(rows));
        }
        if let Some(c) = &self.collection {
            m.insert("collection".into(), c.clone());
        }
        if timings {
            let t: Map<String, Value> = self
                .timings_ms
                .iter()
                .map(|(s, ms)| (serde_json::to_value(s).unwrap().as_str().unwrap().to_string(), fixed(*ms)))
                .collect();
            m.insert("timings_ms".into(), Value::Object(t));
        }
        Value::Object(m)
    }
}
