use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::harness::run::{csv_string, write_atomic, ResultSet};
use crate::oracle::Ratio;
use crate::rational::to_f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub regime: String,
    pub rule: String,
    pub n: usize,
    pub instance_id: String,
    pub param: String,
    pub ratio: String,
    pub approx: f64,
}

const HEADER: [&str; 7] = [
    "regime",
    "rule",
    "n",
    "instance_id",
    "param",
    "ratio",
    "approx",
];

/// Distortion-vs-n points of every successful row, sorted by regime, rule,
/// `n`, then instance id. Unbounded ratios have `approx = inf`.
pub fn series_points(set: &ResultSet) -> Vec<SeriesPoint> {
    let mut points: Vec<SeriesPoint> = set
        .rows
        .iter()
        .filter(|r| r.status == "ok")
        .filter_map(|r| {
            let ratio = r.parsed_ratio()?;
            Some(SeriesPoint {
                regime: r.regime.clone(),
                rule: r.rule.clone(),
                n: r.n,
                instance_id: r.instance_id.clone(),
                param: r.param.clone(),
                approx: match &ratio {
                    Ratio::Finite(v) => to_f64(v),
                    Ratio::Unbounded => f64::INFINITY,
                },
                ratio: ratio.to_string(),
            })
        })
        .collect();
    points.sort_by(|a, b| {
        (&a.regime, &a.rule, a.n, &a.instance_id).cmp(&(&b.regime, &b.rule, b.n, &b.instance_id))
    });
    points
}

/// Writes `series.csv` with every point plus one `series-<regime>-<rule>.csv`
/// per group into `dir`, and returns the paths written. An empty set still
/// gets a `series.csv` with its header.
pub fn emit_plot_data(set: &ResultSet, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let points = series_points(set);
    let mut written = vec![dir.join("series.csv")];
    write_atomic(&written[0], &csv_string(&points, &HEADER)?)?;
    for group in points.chunk_by(|a, b| a.regime == b.regime && a.rule == b.rule) {
        let path = dir.join(format!("series-{}-{}.csv", group[0].regime, group[0].rule));
        write_atomic(&path, &csv_string(group, &HEADER)?)?;
        written.push(path);
    }
    Ok(written)
}
