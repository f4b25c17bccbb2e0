//! CSV dump of every tracked sample: one row per (surface, z, σ, sample).

use std::io::Write;

use anyhow::Result;

use crate::report::Report;

pub fn write_trace<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dim = report.surfaces.iter().map(|r| r.dim).max().unwrap_or(0);
    let mut header: Vec<String> = ["surface", "z", "sigma", "sample", "theta"].map(String::from).to_vec();
    header.extend((1..=dim).map(|j| format!("lift_{j}")));
    w.write_record(&header)?;
    for run in &report.surfaces {
        let Some(ta) = &run.theorem_a else { continue };
        for row in &ta.rows {
            for (k, sample) in row.path.samples.iter().enumerate() {
                let mut rec = vec![
                    run.name.clone(),
                    row.z_index.to_string(),
                    run.labels[row.sigma].clone(),
                    k.to_string(),
                    format!("{:.12e}", sample.theta),
                ];
                for j in 0..dim {
                    rec.push(sample.lifted.get(j).map(|v| format!("{v:.12e}")).unwrap_or_default());
                }
                w.write_record(&rec)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
