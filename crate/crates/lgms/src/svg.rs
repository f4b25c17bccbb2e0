//! Universal-cover diagrams: integer grid, critical-point arguments and the
//! lifted argument path of every tracked loop.

use std::fmt::Write;

use lgms_core::laurent::unit_arg;

use crate::report::{SurfaceRun, MAX_PATH_SAMPLES};

const UNIT: f64 = 120.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

struct Frame {
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0 as f64) * UNIT, MARGIN + (self.y1 as f64 - y) * UNIT)
    }
}

/// Polylines `(source index, points)` for every non-constant path.
fn polylines(run: &SurfaceRun) -> Vec<(usize, Vec<(f64, f64)>)> {
    let Some(report) = &run.theorem_a else { return Vec::new() };
    report
        .rows
        .iter()
        .filter(|r| r.windings.iter().any(|&w| w != 0))
        .map(|r| (r.z_index, r.path.downsampled(MAX_PATH_SAMPLES).iter().map(|s| (s.lifted[0], s.lifted[1])).collect()))
        .collect()
}

fn markers(run: &SurfaceRun) -> Vec<(usize, f64, f64)> {
    let Some(crit) = &run.crit else { return Vec::new() };
    if run.dim != 2 {
        return Vec::new();
    }
    crit.points.iter().enumerate().map(|(i, z)| (i, unit_arg(z[0]), unit_arg(z[1]))).collect()
}

/// SVG document for one surface run. Runs without two-dimensional data give
/// the unit grid only.
pub fn render(run: &SurfaceRun) -> String {
    let lines = if run.dim == 2 { polylines(run) } else { Vec::new() };
    let marks = markers(run);
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    for (x, y) in lines.iter().flat_map(|(_, p)| p.iter().copied()).chain(marks.iter().map(|&(_, x, y)| (x, y))) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let f = Frame { x0: x0.floor() as i64, x1: x1.ceil() as i64, y0: y0.floor() as i64, y1: y1.ceil() as i64 };
    let width = 2.0 * MARGIN + (f.x1 - f.x0) as f64 * UNIT;
    let height = 2.0 * MARGIN + (f.y1 - f.y0) as f64 * UNIT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<title>{} lifted argument paths</title>"#, run.name);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#bbbbbb" stroke-width="1">"##);
    for gx in f.x0..=f.x1 {
        let (a, b) = (f.px(gx as f64, f.y0 as f64), f.px(gx as f64, f.y1 as f64));
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
    }
    for gy in f.y0..=f.y1 {
        let (a, b) = (f.px(f.x0 as f64, gy as f64), f.px(f.x1 as f64, gy as f64));
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g font-family="sans-serif" font-size="11" fill="#555555">"##);
    for gx in f.x0..=f.x1 {
        for gy in f.y0..=f.y1 {
            let (px, py) = f.px(gx as f64, gy as f64);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">({gx},{gy})</text>"#, px + 3.0, py - 3.0);
        }
    }
    let _ = writeln!(s, "</g>");
    for (src, pts) in &lines {
        let colour = PALETTE[src % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (px, py) = f.px(x, y);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.6" data-source="{src}" points="{}"/>"#,
            coords.join(" ")
        );
    }
    for &(i, x, y) in &marks {
        let (px, py) = f.px(x, y);
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="4" fill="{colour}" data-index="{i}"/>"#);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10">z{i}</text>"#, px + 5.0, py + 12.0);
    }
    s.push_str("</svg>\n");
    s
}
