//! CSV tables and SVG curves for sweep results.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use msglex_core::{MeasureKind, MetricsRow, OperatingPoint, SweepResult};

pub const CSV_HEADER: &str =
    "measure,threshold,precision,recall,f_measure,fallout,extracted_size,true_positives,universe_size,gold_size";

pub const SUMMARY_HEADER: &str = "selection,measure,threshold,precision,recall,f_measure,fallout,extracted_size,true_positives,universe_size,gold_size,fallout_cap";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("cannot plot a sweep with {0} row(s); at least 2 are needed")]
    TooFewRows(usize),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

fn csv_fields(row: &MetricsRow) -> String {
    format!(
        "{},{},{:.4},{:.4},{:.4},{:.4},{},{},{},{}",
        row.kind.code(),
        row.threshold,
        row.precision,
        row.recall,
        row.f_measure,
        row.fallout,
        row.extracted_size,
        row.true_positives,
        row.universe_size,
        row.gold_size
    )
}

/// Writes the per-measure table and returns the number of data rows.
pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<usize> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in &result.rows {
        writeln!(out, "{}", csv_fields(row))?;
    }
    out.flush()?;
    Ok(result.rows.len())
}

/// Parses a table written by [`write_csv`]. Reals come back rounded to
/// four decimals.
pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<MetricsRow>, ReportError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let err = |message: String| ReportError::Csv { line: i + 1, message };
        if i == 0 {
            if line != CSV_HEADER {
                return Err(err(format!("unexpected header `{line}`")));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(err(format!("expected 10 fields, found {}", fields.len())));
        }
        let kind: MeasureKind = fields[0].parse().map_err(|e| err(format!("{e}")))?;
        let real = |j: usize| fields[j].parse::<f64>().map_err(|e| err(format!("field {}: {e}", j + 1)));
        let count = |j: usize| fields[j].parse::<usize>().map_err(|e| err(format!("field {}: {e}", j + 1)));
        let extracted_size = count(6)?;
        rows.push(MetricsRow {
            kind,
            threshold: fields[1].parse().map_err(|e| err(format!("field 2: {e}")))?,
            precision: real(2)?,
            recall: real(3)?,
            f_measure: real(4)?,
            fallout: real(5)?,
            extracted_size,
            true_positives: count(7)?,
            universe_size: count(8)?,
            gold_size: count(9)?,
            precision_by_convention: extracted_size == 0,
        });
    }
    Ok(rows)
}

/// Best operating points per measure and across all measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub per_measure: Vec<(MeasureKind, OperatingPoint, Option<OperatingPoint>)>,
    pub best_f: (MeasureKind, OperatingPoint),
    pub best_f_under_cap: Option<(MeasureKind, OperatingPoint)>,
    pub fallout_cap: f64,
}

fn pick_best(candidates: impl Iterator<Item = (MeasureKind, OperatingPoint)>) -> Option<(MeasureKind, OperatingPoint)> {
    // Earlier measures in the input win ties.
    candidates.fold(None, |best, c| match best {
        Some(b) if b.1.row.f_measure >= c.1.row.f_measure => Some(b),
        _ => Some(c),
    })
}

impl Summary {
    /// `None` when `results` is empty.
    pub fn from_results(results: &[SweepResult]) -> Option<Summary> {
        let per_measure: Vec<_> = results
            .iter()
            .map(|r| (r.kind, r.best_f, r.best_f_under_cap))
            .collect();
        let best_f = pick_best(per_measure.iter().map(|&(k, b, _)| (k, b)))?;
        let best_f_under_cap = pick_best(per_measure.iter().filter_map(|&(k, _, c)| c.map(|c| (k, c))));
        Some(Summary {
            per_measure,
            best_f,
            best_f_under_cap,
            fallout_cap: results[0].fallout_cap,
        })
    }
}

pub fn write_summary_csv<W: Write>(summary: &Summary, mut out: W) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    let cap = summary.fallout_cap;
    let mut line = |selection: &str, point: &OperatingPoint| {
        writeln!(out, "{selection},{},{cap:.4}", csv_fields(&point.row))
    };
    for (_, best, under_cap) in &summary.per_measure {
        line("best_f", best)?;
        if let Some(p) = under_cap {
            line("best_f_under_cap", p)?;
        }
    }
    line("overall_best_f", &summary.best_f.1)?;
    if let Some((_, p)) = &summary.best_f_under_cap {
        line("overall_best_f_under_cap", p)?;
    }
    out.flush()
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 56.0;

const SERIES: [(&str, &str); 4] = [
    ("Precision", "#1f77b4"),
    ("Recall", "#2ca02c"),
    ("F-measure", "#d62728"),
    ("Fallout", "#7f7f7f"),
];

fn series_value(row: &MetricsRow, i: usize) -> f64 {
    match i {
        0 => row.precision,
        1 => row.recall,
        2 => row.f_measure,
        _ => row.fallout,
    }
}

fn nice_step(span: f64) -> u32 {
    [1, 2, 5, 10, 20, 25, 50, 100, 200, 500, 1000]
        .into_iter()
        .find(|&s| span / f64::from(s) <= 10.0)
        .unwrap_or(1000)
}

/// Draws precision, recall, F-measure and fallout against the threshold,
/// with the best-F threshold marked by a dashed vertical line.
pub fn render_svg<W: Write>(result: &SweepResult, mut out: W) -> Result<(), ReportError> {
    let rows = &result.rows;
    if rows.len() < 2 {
        return Err(ReportError::TooFewRows(rows.len()));
    }
    let x_min = f64::from(rows[0].threshold);
    let x_max = f64::from(rows[rows.len() - 1].threshold);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |t: f64| LEFT + (t - x_min) / (x_max - x_min) * plot_w;
    let sy = |v: f64| TOP + (1.0 - v) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{} statistics</text>"#,
        LEFT + plot_w / 2.0,
        result.kind.label()
    );

    let _ = writeln!(svg, r##"<g class="grid" stroke="#e0e0e0">"##);
    for i in 0..=5 {
        let v = f64::from(i) / 5.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#,
            LEFT + plot_w,
            y = sy(v)
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r#"<g class="axes" stroke="black">"#);
    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        sy(0.0),
        LEFT + plot_w,
        sy(0.0)
    );
    let _ = writeln!(svg, r#"<line x1="{LEFT:.2}" y1="{:.2}" x2="{LEFT:.2}" y2="{:.2}"/>"#, sy(0.0), sy(1.0));
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r#"<g class="ticks" fill="black">"#);
    for i in 0..=5 {
        let v = f64::from(i) / 5.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.1}</text>"#,
            LEFT - 6.0,
            sy(v) + 4.0
        );
    }
    let step = nice_step(x_max - x_min);
    let first = rows[0].threshold;
    let last = rows[rows.len() - 1].threshold;
    let mut t = first;
    while t <= last {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#,
            sx(f64::from(t)),
            sy(0.0) + 18.0
        );
        t = if t == first && !first.is_multiple_of(step) { step * (first / step + 1) } else { t + step };
    }
    let x_label = if result.kind.is_percent() { "threshold (%)" } else { "threshold (documents)" };
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(svg, "</g>");

    for (i, (name, color)) in SERIES.iter().enumerate() {
        let points: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", sx(f64::from(r.threshold)), sy(series_value(r, i))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline data-metric="{name}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
    }

    let bx = sx(f64::from(result.best_f.threshold));
    let _ = writeln!(
        svg,
        r#"<line class="best-f" x1="{bx:.2}" y1="{:.2}" x2="{bx:.2}" y2="{:.2}" stroke="black" stroke-dasharray="4 3"/>"#,
        sy(1.0),
        sy(0.0)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="11">best F @ {}</text>"#,
        bx + 4.0,
        sy(1.0) + 12.0,
        result.best_f.threshold
    );

    let lx = LEFT + plot_w + 20.0;
    let _ = writeln!(svg, r#"<g class="legend">"#);
    for (i, (name, color)) in SERIES.iter().enumerate() {
        let y = TOP + 10.0 + 22.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            lx + 24.0,
            lx + 30.0,
            y + 4.0
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");

    out.write_all(svg.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Files written for one set of sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub csv_paths: Vec<PathBuf>,
    pub svg_paths: Vec<PathBuf>,
    pub summary_path: PathBuf,
    pub summary: Summary,
    /// Measures whose sweep had a single threshold and so no plot.
    pub skipped_svgs: Vec<MeasureKind>,
}

/// Writes `<measure>.csv`, `<measure>.svg` and `summary.csv` into `dir`,
/// creating it if needed.
pub fn write_bundle(results: &[SweepResult], dir: &Path) -> Result<ReportBundle, ReportError> {
    fs::create_dir_all(dir)?;
    let summary = Summary::from_results(results)
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "no sweep results to report"))?;
    let mut csv_paths = Vec::new();
    let mut svg_paths = Vec::new();
    let mut skipped_svgs = Vec::new();
    for result in results {
        let path = dir.join(format!("{}.csv", result.kind.code()));
        write_csv(result, io::BufWriter::new(fs::File::create(&path)?))?;
        csv_paths.push(path);
        if result.rows.len() < 2 {
            skipped_svgs.push(result.kind);
            continue;
        }
        let path = dir.join(format!("{}.svg", result.kind.code()));
        render_svg(result, io::BufWriter::new(fs::File::create(&path)?))?;
        svg_paths.push(path);
    }
    let summary_path = dir.join("summary.csv");
    write_summary_csv(&summary, io::BufWriter::new(fs::File::create(&summary_path)?))?;
    Ok(ReportBundle {
        csv_paths,
        svg_paths,
        summary_path,
        summary,
        skipped_svgs,
    })
}
