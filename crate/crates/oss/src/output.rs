//! CSV grids, tables and PNG heat maps.
//!
//! Every CSV starts with a `# config_sha256=<hex>` line followed by the
//! column header.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use image::{Rgb, RgbImage};
use oss_core::epep::POWER_FLOOR_DBM;
use oss_core::{CoverageGrid, PowerStats, Vec3};

use crate::error::{OssError, Result};

pub const HASH_PREFIX: &str = "# config_sha256=";

fn writer(path: &Path, hash: &str) -> Result<csv::Writer<File>> {
    let mut f = File::create(path).map_err(|e| OssError::io(path, e))?;
    writeln!(f, "{HASH_PREFIX}{hash}").map_err(|e| OssError::io(path, e))?;
    Ok(csv::Writer::from_writer(f))
}

fn finish(mut w: csv::Writer<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| OssError::io(path, e))
}

/// `x,y,z,<column>` rows, one per probe.
pub fn write_grid_csv(path: &Path, hash: &str, probes: &[Vec3], column: &str, values: &[f64]) -> Result<()> {
    let mut w = writer(path, hash)?;
    w.write_record(["x", "y", "z", column])?;
    for (p, v) in probes.iter().zip(values) {
        w.write_record([p.x, p.y, p.z, *v].map(|x| x.to_string()))?;
    }
    finish(w, path)
}

pub fn write_coverage_csv(path: &Path, hash: &str, grid: &CoverageGrid) -> Result<()> {
    write_grid_csv(path, hash, &grid.probes, "power_dbm", &grid.power_dbm)
}

/// Reads a grid written by [`write_grid_csv`]; returns the hash, probes and
/// values.
pub fn read_grid_csv(path: &Path) -> Result<(String, Vec<Vec3>, Vec<f64>)> {
    let text = std::fs::read_to_string(path).map_err(|e| OssError::io(path, e))?;
    let (first, rest) = text.split_once('\n').unwrap_or((&text, ""));
    let hash = first
        .strip_prefix(HASH_PREFIX)
        .ok_or_else(|| OssError::Format(format!("{}: missing config hash line", path.display())))?
        .trim()
        .to_string();
    let mut probes = Vec::new();
    let mut values = Vec::new();
    for rec in csv::Reader::from_reader(rest.as_bytes()).deserialize::<(f64, f64, f64, f64)>() {
        let (x, y, z, v) = rec?;
        probes.push(Vec3::new(x, y, z));
        values.push(v);
    }
    Ok((hash, probes, values))
}

/// Global-best cost per iteration.
pub fn write_convergence_csv(path: &Path, hash: &str, history: &[f64], uniform_cost: f64) -> Result<()> {
    let mut w = writer(path, hash)?;
    w.write_record(["iteration", "cost", "normalized_cost"])?;
    for (i, c) in history.iter().enumerate() {
        let norm = if uniform_cost > 0.0 { c / uniform_cost } else { f64::NAN };
        w.write_record([i.to_string(), c.to_string(), norm.to_string()])?;
    }
    finish(w, path)
}

/// Received-power statistics, one row per distribution.
pub fn write_stats_csv(path: &Path, hash: &str, rows: &[(&str, PowerStats)]) -> Result<()> {
    let mut w = writer(path, hash)?;
    w.write_record(["distribution", "min_dbm", "max_dbm", "avg_dbm"])?;
    for (name, s) in rows {
        w.write_record([
            name.to_string(),
            format!("{:.2}", s.min_dbm),
            format!("{:.2}", s.max_dbm),
            format!("{:.2}", s.avg_dbm),
        ])?;
    }
    finish(w, path)
}

/// Arbitrary table with the provenance line.
pub fn write_table_csv(path: &Path, hash: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = writer(path, hash)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    finish(w, path)
}

/// Text rendering of a statistics table.
pub fn format_stats(rows: &[(&str, PowerStats)]) -> String {
    let mut s = format!("{:<10} {:>10} {:>10} {:>10}\n", "", "min [dBm]", "max [dBm]", "avg [dBm]");
    for (name, st) in rows {
        s += &format!(
            "{:<10} {:>10.2} {:>10.2} {:>10.2}\n",
            name, st.min_dbm, st.max_dbm, st.avg_dbm
        );
    }
    s
}

const PALETTE: [[u8; 3]; 5] = [
    [48, 18, 59],
    [40, 120, 240],
    [60, 200, 120],
    [250, 200, 40],
    [180, 20, 20],
];

fn color(t: f64) -> Rgb<u8> {
    let t = t.clamp(0.0, 1.0) * (PALETTE.len() - 1) as f64;
    let i = (t.floor() as usize).min(PALETTE.len() - 2);
    let f = t - i as f64;
    let (a, b) = (PALETTE[i], PALETTE[i + 1]);
    Rgb(std::array::from_fn(|k| (a[k] as f64 + f * (b[k] as f64 - a[k] as f64)).round() as u8))
}

fn axis(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    v
}

/// Renders probe values on their regular grid, north up; probes at the
/// power floor or missing cells are grey. Returns the color range used.
pub fn render_heatmap(probes: &[Vec3], values: &[f64], pixels_per_cell: u32) -> (RgbImage, f64, f64) {
    let xs = axis(probes.iter().map(|p| p.x));
    let ys = axis(probes.iter().map(|p| p.y));
    let live = values.iter().copied().filter(|v| v.is_finite() && *v > POWER_FLOOR_DBM);
    let (lo, hi) = live.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (0.0, 0.0) };
    let s = pixels_per_cell.max(1);
    let mut img = RgbImage::from_pixel(xs.len() as u32 * s, ys.len() as u32 * s, Rgb([128, 128, 128]));
    let find = |axis: &[f64], v: f64| axis.partition_point(|a| *a < v - 1e-9);
    for (p, v) in probes.iter().zip(values) {
        if !(v.is_finite() && *v > POWER_FLOOR_DBM) {
            continue;
        }
        let cx = find(&xs, p.x) as u32;
        let cy = (ys.len() - 1 - find(&ys, p.y)) as u32;
        let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
        let c = color(t);
        for dy in 0..s {
            for dx in 0..s {
                img.put_pixel(cx * s + dx, cy * s + dy, c);
            }
        }
    }
    (img, lo, hi)
}

pub fn write_heatmap(path: &Path, probes: &[Vec3], values: &[f64]) -> Result<()> {
    let (img, _, _) = render_heatmap(probes, values, 8);
    img.save(path)?;
    Ok(())
}
