//! Plot-data emission: a CSV of polygon vertices per orbit, and for
//! planar manifolds an SVG overlay of the curve outline with the found
//! polygons drawn on top.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::experiment::{ExperimentError, OrbitRecord, ResultRecord};
use crate::manifold::ChartPoint;

const SVG_SAMPLES: usize = 512;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io { path: path.to_path_buf(), source }
}

fn coordinate_names(dim: usize) -> Vec<String> {
    match dim {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

fn ambient_dim(record: &ResultRecord) -> usize {
    record
        .orbits
        .first()
        .map(|o| o.vertices.first().map(Vec::len).unwrap_or(0))
        .or_else(|| {
            record
                .families
                .first()
                .map(|f| f.representative.vertices.first().map(Vec::len).unwrap_or(0))
        })
        .unwrap_or_else(|| record.manifold.as_ref().map(|m| m.intrinsic_dim() + 1).unwrap_or(2))
}

/// Writes `trajectories.csv`: one row per polygon vertex, per orbit (both
/// isolated orbits and family representatives).
pub fn write_vertex_csv(record: &ResultRecord, path: &Path) -> Result<(), ExperimentError> {
    let dim = ambient_dim(record);
    let mut out = String::new();
    let names = coordinate_names(dim).join(",");
    let _ = writeln!(out, "orbit,kind,vertex,{names}");
    let mut write_orbit = |index: usize, kind: &str, orbit: &OrbitRecord| {
        for (v, vertex) in orbit.vertices.iter().enumerate() {
            let coords = vertex.iter().map(|c| format!("{c:.17}")).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "{index},{kind},{v},{coords}");
        }
    };
    for (i, orbit) in record.orbits.iter().enumerate() {
        write_orbit(i, "isolated", orbit);
    }
    for (i, family) in record.families.iter().enumerate() {
        write_orbit(record.orbits.len() + i, "family", &family.representative);
    }
    std::fs::write(path, out).map_err(io_err(path))
}

/// Writes `overlay.svg` for planar manifolds: the curve outline plus the
/// found polygons. Valid (outline-only) even for an empty report.
pub fn write_overlay_svg(record: &ResultRecord, path: &Path) -> Result<(), ExperimentError> {
    let Some(kind) = &record.manifold else {
        return Err(ExperimentError::Config("svg output needs a manifold in the record".into()));
    };
    let manifold = kind.build()?;
    if manifold.ambient_dim() != 2 {
        return Err(ExperimentError::Config(
            "svg output is only defined for curves in the plane".into(),
        ));
    }
    let radius = manifold.diameter() / 2.0 * 1.15;
    let mut body = String::new();

    // manifold outline
    let mut outline = String::new();
    for k in 0..=SVG_SAMPLES {
        let phi = std::f64::consts::TAU * k as f64 / SVG_SAMPLES as f64;
        let x = manifold.embed(&ChartPoint::at(vec![phi]))?;
        let _ = write!(outline, "{}{:.6},{:.6} ", if k == 0 { "M" } else { "L" }, x[0], -x[1]);
    }
    let _ = writeln!(
        body,
        r##"  <path d="{outline}Z" fill="none" stroke="#333333" stroke-width="{:.5}"/>"##,
        radius / 200.0
    );

    let mut polygon = |vertices: &[Vec<f64>], color: &str| {
        let mut d = String::new();
        for (k, v) in vertices.iter().enumerate() {
            let _ = write!(d, "{}{:.6},{:.6} ", if k == 0 { "M" } else { "L" }, v[0], -v[1]);
        }
        let _ = writeln!(
            body,
            r##"  <path d="{d}Z" fill="none" stroke="{color}" stroke-width="{:.5}"/>"##,
            radius / 120.0
        );
    };
    for (i, orbit) in record.orbits.iter().enumerate() {
        polygon(&orbit.vertices, PALETTE[i % PALETTE.len()]);
    }
    for (i, family) in record.families.iter().enumerate() {
        polygon(
            &family.representative.vertices,
            PALETTE[(record.orbits.len() + i) % PALETTE.len()],
        );
    }

    let svg = format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
            "\n{}</svg>\n"
        ),
        -radius,
        -radius,
        2.0 * radius,
        2.0 * radius,
        body
    );
    std::fs::write(path, svg).map_err(io_err(path))
}

/// Emits the plot files for a record: always the CSV, plus the SVG when
/// requested and the manifold is planar.
pub fn emit_plot_data(
    record: &ResultRecord,
    dir: &Path,
    with_svg: bool,
) -> Result<Vec<PathBuf>, ExperimentError> {
    let mut written = Vec::new();
    let csv_path = dir.join("trajectories.csv");
    write_vertex_csv(record, &csv_path)?;
    written.push(csv_path);
    let planar = record.manifold.as_ref().map(|m| m.intrinsic_dim() == 1).unwrap_or(false);
    if with_svg && planar {
        let svg_path = dir.join("overlay.svg");
        write_overlay_svg(record, &svg_path)?;
        written.push(svg_path);
    }
    Ok(written)
}
