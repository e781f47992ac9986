//! Record and aggregate serialization: versioned CSV schemas, markdown
//! tables in the benchmark layout, and SVG accuracy-vs-noise plots.
//!
//! Every row of a CSV file carries its schema tag in the first column
//! (`gssl.records.v1` / `gssl.aggregate.v1`), so files stay self-describing
//! under naive tools and the reader can reject mismatched inputs.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::grid::{compare_records, ExperimentRecord};
use crate::stats::AggregateRow;
use crate::{Error, Result};

pub const RECORDS_SCHEMA: &str = "gssl.records.v1";
pub const AGGREGATE_SCHEMA: &str = "gssl.aggregate.v1";

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
    Svg,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "svg" | "svg-plot" => Ok(ReportFormat::Svg),
            other => Err(Error::config(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RecordRow {
    schema: String,
    dataset: String,
    algorithm: String,
    alpha: Option<f64>,
    mu: Option<f64>,
    p: Option<f64>,
    seed: u64,
    label_fraction: f64,
    noise_rate: f64,
    accuracy: Option<f64>,
    error: Option<String>,
    wall_time_s: f64,
    iterations: Option<usize>,
    isolated: usize,
}

/// Write per-cell records. Note the wall-time column is the one
/// non-deterministic field; aggregate reports exclude it.
pub fn write_records(records: &[ExperimentRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    for r in records {
        writer.serialize(RecordRow {
            schema: RECORDS_SCHEMA.into(),
            dataset: r.dataset.clone(),
            algorithm: r.algorithm.clone(),
            alpha: r.alpha,
            mu: r.mu,
            p: r.p,
            seed: r.seed,
            label_fraction: r.label_fraction,
            noise_rate: r.noise_rate,
            accuracy: r.accuracy,
            error: r.error.clone(),
            wall_time_s: r.wall_time_s,
            iterations: r.iterations,
            isolated: r.isolated,
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    let mut records = Vec::new();
    for row in reader.deserialize::<RecordRow>() {
        let row = row?;
        if row.schema != RECORDS_SCHEMA {
            return Err(Error::config(format!(
                "expected schema {RECORDS_SCHEMA}, found {:?}",
                row.schema
            )));
        }
        records.push(ExperimentRecord {
            dataset: row.dataset,
            algorithm: row.algorithm,
            alpha: row.alpha,
            mu: row.mu,
            p: row.p,
            seed: row.seed,
            label_fraction: row.label_fraction,
            noise_rate: row.noise_rate,
            accuracy: row.accuracy,
            error: row.error,
            wall_time_s: row.wall_time_s,
            iterations: row.iterations,
            isolated: row.isolated,
        });
    }
    records.sort_by(compare_records);
    Ok(records)
}

#[derive(Debug, Serialize, Deserialize)]
struct AggregateCsvRow {
    schema: String,
    dataset: String,
    algorithm: String,
    alpha: Option<f64>,
    mu: Option<f64>,
    p: Option<f64>,
    label_fraction: f64,
    noise_rate: f64,
    seed_count: usize,
    error_count: usize,
    mean_accuracy: Option<f64>,
    std_accuracy: Option<f64>,
}

/// Serialize aggregate rows to CSV bytes (stable column order, deterministic
/// shortest-round-trip float formatting).
pub fn aggregate_csv_bytes(rows: &[AggregateRow]) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in rows {
        writer.serialize(AggregateCsvRow {
            schema: AGGREGATE_SCHEMA.into(),
            dataset: r.dataset.clone(),
            algorithm: r.algorithm.clone(),
            alpha: r.alpha,
            mu: r.mu,
            p: r.p,
            label_fraction: r.label_fraction,
            noise_rate: r.noise_rate,
            seed_count: r.seed_count,
            error_count: r.error_count,
            mean_accuracy: r.mean_accuracy,
            std_accuracy: r.std_accuracy,
        })?;
    }
    writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv buffer error: {e}")))
}

pub fn read_aggregates(path: impl AsRef<Path>) -> Result<Vec<AggregateRow>> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    let mut rows = Vec::new();
    for row in reader.deserialize::<AggregateCsvRow>() {
        let row = row?;
        if row.schema != AGGREGATE_SCHEMA {
            return Err(Error::config(format!(
                "expected schema {AGGREGATE_SCHEMA}, found {:?}",
                row.schema
            )));
        }
        rows.push(AggregateRow {
            dataset: row.dataset,
            algorithm: row.algorithm,
            alpha: row.alpha,
            mu: row.mu,
            p: row.p,
            label_fraction: row.label_fraction,
            noise_rate: row.noise_rate,
            seed_count: row.seed_count,
            error_count: row.error_count,
            mean_accuracy: row.mean_accuracy,
            std_accuracy: row.std_accuracy,
        });
    }
    Ok(rows)
}

/// Emit one report file.
pub fn emit_report(rows: &[AggregateRow], format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::config("cannot emit a report from zero aggregate rows"));
    }
    let bytes = match format {
        ReportFormat::Csv => aggregate_csv_bytes(rows)?,
        ReportFormat::Markdown => markdown_tables(rows).into_bytes(),
        ReportFormat::Svg => svg_plot(rows).into_bytes(),
    };
    std::fs::write(path.as_ref(), bytes)?;
    Ok(())
}

fn trim_float(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    let s = s.trim_end_matches('0');
    let s = s.trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn percent_label(rate: f64) -> String {
    format!("{}%", trim_float(rate * 100.0, 3))
}

fn hyper_cell(v: Option<f64>) -> String {
    match v {
        // The benchmark's table convention for an absent hyperparameter.
        None => "---".to_string(),
        Some(x) => trim_float(x, 6),
    }
}

fn acc_cell(row: &AggregateRow) -> String {
    match (row.mean_accuracy, row.std_accuracy) {
        (Some(mean), Some(std)) => {
            format!("{}±{}", trim_float(mean, 5), trim_float(std, 5))
        }
        _ => "NA".to_string(),
    }
}

/// Markdown tables, one per dataset, in the benchmark layout: one row per
/// (algorithm, hyperparameters, noise rate), one accuracy column per label
/// fraction, with noise rates grouped in ascending blocks.
pub fn markdown_tables(rows: &[AggregateRow]) -> String {
    let mut datasets: Vec<&str> = rows.iter().map(|r| r.dataset.as_str()).collect();
    datasets.sort_unstable();
    datasets.dedup();

    let mut out = String::new();
    for dataset in datasets {
        let subset: Vec<&AggregateRow> =
            rows.iter().filter(|r| r.dataset == dataset).collect();
        let mut fractions: Vec<f64> = subset.iter().map(|r| r.label_fraction).collect();
        fractions.sort_by(|a, b| b.total_cmp(a));
        fractions.dedup();
        let mut rates: Vec<f64> = subset.iter().map(|r| r.noise_rate).collect();
        rates.sort_by(f64::total_cmp);
        rates.dedup();

        // Row identity: algorithm + hyperparameters, in canonical order.
        let mut configs: Vec<(&str, Option<f64>, Option<f64>, Option<f64>)> = subset
            .iter()
            .map(|r| (r.algorithm.as_str(), r.alpha, r.mu, r.p))
            .collect();
        configs.sort_by(|a, b| {
            a.0.cmp(b.0)
                .then_with(|| cmp_opt(a.1, b.1))
                .then_with(|| cmp_opt(a.2, b.2))
                .then_with(|| cmp_opt(a.3, b.3))
        });
        configs.dedup();

        let _ = writeln!(out, "## {dataset}");
        out.push('\n');
        let mut header = String::from("| Algorithm | α | μ | p | Noise |");
        let mut rule = String::from("|---|---|---|---|---|");
        for f in &fractions {
            let _ = write!(header, " Acc. ({} labeled) |", percent_label(*f));
            rule.push_str("---|");
        }
        out.push_str(&header);
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');

        for &rate in &rates {
            for &(alg, alpha, mu, p) in &configs {
                let mut line = format!(
                    "| {alg} | {} | {} | {} | {} |",
                    hyper_cell(alpha),
                    hyper_cell(mu),
                    hyper_cell(p),
                    percent_label(rate)
                );
                for &fraction in &fractions {
                    let cell = subset
                        .iter()
                        .find(|r| {
                            r.algorithm == alg
                                && r.alpha == alpha
                                && r.mu == mu
                                && r.p == p
                                && r.noise_rate == rate
                                && r.label_fraction == fraction
                        })
                        .map_or_else(|| "NA".to_string(), |r| acc_cell(r));
                    let _ = write!(line, " {cell} |");
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
        out.push('\n');
    }
    out
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(&y),
    }
}

fn config_label(alg: &str, alpha: Option<f64>, mu: Option<f64>, p: Option<f64>) -> String {
    let mut label = alg.to_string();
    if let Some(a) = alpha {
        let _ = write!(label, " α={}", trim_float(a, 6));
    }
    if let Some(m) = mu {
        let _ = write!(label, " μ={}", trim_float(m, 6));
    }
    if let Some(pp) = p {
        let _ = write!(label, " p={}", trim_float(pp, 6));
    }
    label
}

const SVG_COLORS: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"];

/// Accuracy versus noise rate: one panel per (dataset, label fraction), one
/// line per algorithm configuration, error bars of one standard deviation.
pub fn svg_plot(rows: &[AggregateRow]) -> String {
    const PANEL_W: f64 = 320.0;
    const PANEL_H: f64 = 240.0;
    const MARGIN: f64 = 48.0;
    const LEGEND_W: f64 = 180.0;

    let mut datasets: Vec<&str> = rows.iter().map(|r| r.dataset.as_str()).collect();
    datasets.sort_unstable();
    datasets.dedup();

    let mut configs: Vec<(String, &str, Option<f64>, Option<f64>, Option<f64>)> = rows
        .iter()
        .map(|r| {
            (
                config_label(&r.algorithm, r.alpha, r.mu, r.p),
                r.algorithm.as_str(),
                r.alpha,
                r.mu,
                r.p,
            )
        })
        .collect();
    configs.sort_by(|a, b| a.0.cmp(&b.0));
    configs.dedup_by(|a, b| a.0 == b.0);

    let mut panels: Vec<(String, f64)> = Vec::new();
    for dataset in &datasets {
        let mut fractions: Vec<f64> = rows
            .iter()
            .filter(|r| r.dataset == *dataset)
            .map(|r| r.label_fraction)
            .collect();
        fractions.sort_by(|a, b| b.total_cmp(a));
        fractions.dedup();
        for f in fractions {
            panels.push((dataset.to_string(), f));
        }
    }

    let cols = panels.len().min(4).max(1);
    let rows_count = panels.len().div_ceil(cols);
    let width = cols as f64 * (PANEL_W + MARGIN) + MARGIN + LEGEND_W;
    let height = rows_count as f64 * (PANEL_H + MARGIN) + MARGIN;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    );
    let _ = writeln!(svg, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");

    let max_rate = rows.iter().map(|r| r.noise_rate).fold(0.0f64, f64::max).max(1e-9);

    for (idx, (dataset, fraction)) in panels.iter().enumerate() {
        let px = MARGIN + (idx % cols) as f64 * (PANEL_W + MARGIN);
        let py = MARGIN + (idx / cols) as f64 * (PANEL_H + MARGIN);
        let x_of = |rate: f64| px + rate / max_rate * PANEL_W;
        let y_of = |acc: f64| py + (1.0 - acc) * PANEL_H;

        // Frame and axis labels.
        let _ = writeln!(
            svg,
            "<rect x=\"{px}\" y=\"{py}\" width=\"{PANEL_W}\" height=\"{PANEL_H}\" \
             fill=\"none\" stroke=\"#444\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-weight=\"bold\">{}, {} labeled</text>",
            px + PANEL_W / 2.0,
            py - 8.0,
            dataset,
            percent_label(*fraction)
        );
        for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let y = y_of(tick);
            let _ = writeln!(
                svg,
                "<line x1=\"{px}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#ddd\"/>",
                px + PANEL_W
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{tick}</text>",
                px - 4.0,
                y + 4.0
            );
        }
        let mut rates: Vec<f64> = rows
            .iter()
            .filter(|r| r.dataset == *dataset && r.label_fraction == *fraction)
            .map(|r| r.noise_rate)
            .collect();
        rates.sort_by(f64::total_cmp);
        rates.dedup();
        for rate in &rates {
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                x_of(*rate),
                py + PANEL_H + 16.0,
                percent_label(*rate)
            );
        }

        for (ci, (label, alg, alpha, mu, p)) in configs.iter().enumerate() {
            let color = SVG_COLORS[ci % SVG_COLORS.len()];
            let series: Vec<&AggregateRow> = rows
                .iter()
                .filter(|r| {
                    r.dataset == *dataset
                        && r.label_fraction == *fraction
                        && r.algorithm == *alg
                        && r.alpha == *alpha
                        && r.mu == *mu
                        && r.p == *p
                        && r.mean_accuracy.is_some()
                })
                .collect();
            if series.is_empty() {
                continue;
            }
            let mut points: Vec<(f64, f64, f64)> = series
                .iter()
                .map(|r| (r.noise_rate, r.mean_accuracy.unwrap(), r.std_accuracy.unwrap_or(0.0)))
                .collect();
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            let path: Vec<String> = points
                .iter()
                .map(|(rate, acc, _)| format!("{:.2},{:.2}", x_of(*rate), y_of(*acc)))
                .collect();
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                path.join(" ")
            );
            for (rate, acc, std) in &points {
                let x = x_of(*rate);
                let _ = writeln!(
                    svg,
                    "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"{color}\"/>",
                    y_of((acc - std).max(0.0)),
                    y_of((acc + std).min(1.0))
                );
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{x:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>",
                    y_of(*acc)
                );
            }
            let _ = label;
        }
    }

    // Legend.
    let lx = width - LEGEND_W + 8.0;
    for (ci, (label, ..)) in configs.iter().enumerate() {
        let color = SVG_COLORS[ci % SVG_COLORS.len()];
        let y = MARGIN + ci as f64 * 18.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 20.0
        );
        let _ = writeln!(svg, "<text x=\"{}\" y=\"{}\">{label}</text>", lx + 26.0, y + 4.0);
    }
    svg.push_str("</svg>\n");
    svg
}
