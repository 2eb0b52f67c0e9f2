//! CSV and SVG writers. Floats use the shortest round-trip representation,
//! so equal results give byte-identical files.

use std::fmt::Write as _;
use std::io::Write;

use super::{LatticePoint, SurfaceResult};
use crate::divergence::GapRecord;
use crate::error::{Error, Result};

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidParameter(format!("csv: {other:?}")),
    }
}

/// `sample`, then the [`GapRecord`] columns.
pub fn write_gap_csv<W: Write>(out: W, records: &[GapRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["sample"];
    header.extend(GapRecord::CSV_HEADER);
    w.write_record(&header).map_err(csv_error)?;
    for (i, r) in records.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(r.csv_fields());
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// `j, k, l`, then the [`GapRecord`] columns.
pub fn write_lattice_csv<W: Write>(out: W, points: &[LatticePoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["j", "k", "l"];
    header.extend(GapRecord::CSV_HEADER);
    w.write_record(&header).map_err(csv_error)?;
    for p in points {
        let mut row: Vec<String> = p.index.iter().map(|v| v.to_string()).collect();
        row.extend(p.record.csv_fields());
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// `x, y, gap` with an empty gap outside the admissible region.
pub fn write_surface_csv<W: Write>(out: W, surface: &SurfaceResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "gap"]).map_err(csv_error)?;
    for p in &surface.points {
        let gap = p.gap.map(|g| g.to_string()).unwrap_or_default();
        w.write_record([p.x.to_string(), p.y.to_string(), gap]).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Linear blue-to-yellow ramp.
fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(48.0, 250.0), lerp(18.0, 230.0), lerp(160.0, 40.0))
}

/// Self-contained SVG heatmap of a gap surface with labeled axes.
pub fn write_surface_svg<W: Write>(mut out: W, surface: &SurfaceResult) -> Result<()> {
    let n = surface.spec.resolution;
    let cell = (480 / n.max(1)).max(2);
    let (left, top) = (60, 40);
    let side = cell * n;
    let width = left + side + 120;
    let height = top + side + 60;
    let gaps: Vec<f64> = surface.points.iter().filter_map(|p| p.gap).collect();
    let lo = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle">gap, {}</text>"#,
        left + side / 2,
        surface.spec.scenario.name()
    );
    for (idx, p) in surface.points.iter().enumerate() {
        let (row, col) = (idx / n, idx % n);
        let fill = match p.gap {
            Some(g) => color((g - lo) / span),
            None => "#eeeeee".to_string(),
        };
        // y grows upward.
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="{fill}"/>"#,
            left + col * cell,
            top + (n - 1 - row) * cell
        );
    }
    let axis = surface.spec.axis();
    let (first, last) = (axis.first().copied().unwrap_or(0.0), axis.last().copied().unwrap_or(0.0));
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{side}" height="{side}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">x</text>"#, left + side / 2, top + side + 40);
    let _ = writeln!(s, r#"<text x="20" y="{}" text-anchor="middle">y</text>"#, top + side / 2);
    let _ = writeln!(s, r#"<text x="{left}" y="{}" text-anchor="middle">{first:.3}</text>"#, top + side + 18);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{last:.3}</text>"#, left + side, top + side + 18);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{first:.3}</text>"#, left - 6, top + side);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{last:.3}</text>"#, left - 6, top + 10);
    // Color bar.
    let bar_x = left + side + 30;
    for i in 0..side {
        let t = 1.0 - i as f64 / side.max(1) as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{bar_x}" y="{}" width="16" height="1" fill="{}"/>"#,
            top + i,
            color(t)
        );
    }
    if !gaps.is_empty() {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{hi:.4}</text>"#, bar_x + 22, top + 10);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{lo:.4}</text>"#, bar_x + 22, top + side);
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())?;
    Ok(())
}
