use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use plotters::prelude::*;

use super::experiment::Method;
use super::record::ExperimentRecord;
use crate::error::{Error, Result};

const SIZE: (u32, u32) = (640, 480);

fn colour(m: Method) -> RGBColor {
    match m {
        Method::Subgraph => RGBColor(31, 119, 180),
        Method::Walk => RGBColor(214, 39, 40),
        Method::Random => RGBColor(44, 160, 44),
    }
}

fn plot_err<E: std::error::Error>(e: E) -> Error {
    Error::Plot(e.to_string())
}

fn file_name(family: &str, params: &str, d: usize) -> String {
    let params: String = params
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{family}-{params}-d{d}.svg")
}

/// Writes one SVG per (graph, d) into `dir`, with a curve per method and
/// error bars of half-width `1/sqrt(trials)`. An empty record set gives a
/// single empty-axes image named `empty.svg`. Returns the written paths.
pub fn emit_plot(records: &[ExperimentRecord], dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    if records.is_empty() {
        let path = dir.join("empty.svg");
        draw(&path, "no records", &BTreeMap::new())?;
        return Ok(vec![path]);
    }
    let mut groups: BTreeMap<(&str, &str, usize), BTreeMap<Method, Vec<&ExperimentRecord>>> = BTreeMap::new();
    for r in records {
        groups
            .entry((&r.family, &r.params, r.d))
            .or_default()
            .entry(r.method)
            .or_default()
            .push(r);
    }
    let mut paths = Vec::new();
    for ((family, params, d), mut curves) in groups {
        for points in curves.values_mut() {
            points.sort_by_key(|r| r.tau);
        }
        let path = dir.join(file_name(family, params, d));
        draw(&path, &format!("{family} ({params}), d = {d}"), &curves)?;
        paths.push(path);
    }
    Ok(paths)
}

fn draw(path: &Path, title: &str, curves: &BTreeMap<Method, Vec<&ExperimentRecord>>) -> Result<()> {
    let root = SVGBackend::new(path, SIZE).into_drawing_area();
    root.fill(&WHITE).map_err(plot_err)?;
    let max_tau = curves
        .values()
        .flatten()
        .map(|r| r.tau)
        .max()
        .unwrap_or(1)
        .max(1);
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 20))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(50)
        .build_cartesian_2d(0f64..max_tau as f64 * 1.05, -0.05f64..1.05)
        .map_err(plot_err)?;
    chart
        .configure_mesh()
        .x_desc("number of tests")
        .y_desc("success probability")
        .draw()
        .map_err(plot_err)?;

    // BTreeMap order over Method is subgraph, walk, random
    for (&method, points) in curves {
        let c = colour(method);
        let xy: Vec<(f64, f64)> = points.iter().map(|r| (r.tau as f64, r.p_hat)).collect();
        chart
            .draw_series(LineSeries::new(xy.iter().copied(), c.stroke_width(2)))
            .map_err(plot_err)?
            .label(method.name())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], c.stroke_width(2)));
        chart
            .draw_series(points.iter().map(|r| {
                let x = r.tau as f64;
                let (lo, hi) = ((r.p_hat - r.band()).max(0.0), (r.p_hat + r.band()).min(1.0));
                ErrorBar::new_vertical(x, lo, r.p_hat, hi, c.filled().stroke_width(1), 6)
            }))
            .map_err(plot_err)?;
    }
    if !curves.is_empty() {
        chart
            .configure_series_labels()
            .position(SeriesLabelPosition::LowerRight)
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
    }
    root.present().map_err(plot_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn empty_records_give_empty_axes() {
        let dir = tempfile::tempdir().unwrap();
        let paths = emit_plot(&[], dir.path()).unwrap();
        assert_eq!(paths.len(), 1);
        let svg = std::fs::read_to_string(&paths[0]).unwrap();
        assert!(svg.contains("<svg"));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn one_image_per_graph_and_d_with_legend_order() {
        let f = Family::Complete { n: 23 };
        let g = Family::FatTree { k: 8, hosts: false };
        let mut records = Vec::new();
        for method in [Method::Random, Method::Walk, Method::Subgraph] {
            for tau in (1..=10).map(|i| i * 20) {
                records.push(ExperimentRecord::new(&f, method, 1, tau, 100, tau as u64 / 3, 1));
            }
        }
        records.push(ExperimentRecord::new(&g, Method::Walk, 2, 50, 100, 10, 1));
        let dir = tempfile::tempdir().unwrap();
        let paths = emit_plot(&records, dir.path()).unwrap();
        assert_eq!(paths.len(), 2);
        let svg = std::fs::read_to_string(&paths[0]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 30);
        let at = |s: &str| svg.find(&format!("\n{s}\n")).unwrap();
        assert!(at("subgraph") < at("walk") && at("walk") < at("random"));
        let single = std::fs::read_to_string(&paths[1]).unwrap();
        assert_eq!(single.matches("<circle").count(), 1);
    }
}
