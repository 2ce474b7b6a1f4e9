//! Report documents and their JSON, plain-table and CSV renderings.
//!
//! JSON layout (schema version 1):
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "metadata": { "tool_version", "input", "config", "generator", "timestamp" },
//!   "report": { "kind": "decomposition" | "ranking" | "baseline"
//!                       | "simulation" | "robustness" | "histogram",
//!               "payload": { ... } }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::decompose::DecompositionResult;
use crate::error::{Error, Result};
use crate::experiments::{is_identity, is_single_adjacent_swap, BaselineReport, SimulationReport};
use crate::io::histogram::Histogram;
use crate::soo::{RobustnessReport, SooRanking};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum ReportBody {
    Decomposition(DecompositionResult),
    Ranking(SooRanking),
    Baseline(BaselineReport),
    Simulation(SimulationReport),
    Robustness(RobustnessReport),
    Histogram(Histogram),
}

impl ReportBody {
    pub fn kind(&self) -> &'static str {
        match self {
            ReportBody::Decomposition(_) => "decomposition",
            ReportBody::Ranking(_) => "ranking",
            ReportBody::Baseline(_) => "baseline",
            ReportBody::Simulation(_) => "simulation",
            ReportBody::Robustness(_) => "robustness",
            ReportBody::Histogram(_) => "histogram",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub input: Option<String>,
    /// Echo of the options the report was produced with.
    pub config: BTreeMap<String, serde_json::Value>,
    pub generator: Option<String>,
    /// Only filled when explicitly requested; reports are otherwise byte-stable.
    pub timestamp: Option<String>,
}

impl Default for Metadata {
    fn default() -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            input: None,
            config: BTreeMap::new(),
            generator: None,
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub report: ReportBody,
}

impl ReportDocument {
    pub fn new(report: ReportBody, metadata: Metadata) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            metadata,
            report,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

pub fn write_report(doc: &ReportDocument, format: Format, destination: &Destination) -> Result<()> {
    let text = render(doc, format)?;
    match destination {
        Destination::Stdout => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Destination::File(path) => {
            let mut file = File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            file.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

pub fn render(doc: &ReportDocument, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(doc)?;
            text.push('\n');
            Ok(text)
        }
        Format::Table => Ok(render_table(doc)),
        Format::Csv => render_csv(&doc.report),
    }
}

fn percent(part: f64, whole: f64) -> String {
    if whole > 0.0 {
        format!("{:.1}%", 100.0 * part / whole)
    } else {
        "n/a".to_owned()
    }
}

fn decomposition_table(out: &mut String, d: &DecompositionResult) {
    let v = d.total_variance;
    let _ = writeln!(out, "total variance: {v}");
    let _ = writeln!(
        out,
        "{:>4}  {:<16} {:>8}  {:>24} {:>8}  {:>24} {:>8}",
        "step", "character", "classes", "component", "% of V", "residual", "c_k"
    );
    for (i, s) in d.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<16} {:>8}  {:>24} {:>8}  {:>24} {:>8}",
            i + 1,
            s.character,
            s.classes_after,
            s.component,
            percent(s.component, v),
            s.residual_after,
            percent(s.residual_after, v),
        );
    }
    let _ = writeln!(
        out,
        "explained: {} ({} of the variance)",
        d.explained(),
        percent(d.explained(), v)
    );
    let _ = writeln!(
        out,
        "residual: {} ({})",
        d.final_residual,
        percent(d.final_residual, v)
    );
}

fn render_table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} report (schema {})",
        doc.report.kind(),
        doc.schema_version
    );
    if let Some(input) = &doc.metadata.input {
        let _ = writeln!(out, "# input: {input}");
    }
    match &doc.report {
        ReportBody::Decomposition(d) => decomposition_table(&mut out, d),
        ReportBody::Ranking(r) => {
            let _ = writeln!(out, "order: {}", r.order.join(", "));
            if r.degenerate {
                let _ = writeln!(out, "warning: zero total variance, order is column order");
            }
            decomposition_table(&mut out, &r.result);
        }
        ReportBody::Baseline(b) => {
            let v = b.total_variance;
            let _ = writeln!(out, "total variance: {v}");
            let _ = writeln!(
                out,
                "subset size: {}  trials: {}  seed: {}",
                b.config.subset_size, b.config.trials, b.config.seed
            );
            let _ = writeln!(
                out,
                "greedy subset: {}  residual: {} ({})",
                b.soo_subset.join(", "),
                b.soo_residual,
                percent(b.soo_residual, v)
            );
            match b.min_random {
                Some(min) => {
                    let _ = writeln!(out, "lowest random residual: {min} ({})", percent(min, v));
                }
                None => {
                    let _ = writeln!(out, "lowest random residual: none (no trials)");
                }
            }
            let _ = writeln!(out, "{:>6}  {:>24} {:>8}  subset", "trial", "residual", "% of V");
            for (i, (r, s)) in b.residuals.iter().zip(&b.subsets).enumerate() {
                let _ = writeln!(out, "{:>6}  {:>24} {:>8}  {}", i, r, percent(*r, v), s.join(" "));
            }
        }
        ReportBody::Simulation(s) => {
            let _ = writeln!(
                out,
                "trials: {}  exact: {}  one inversion: {}",
                s.per_trial_orders.len(),
                s.exact_matches,
                s.one_inversion
            );
            for (i, order) in s.per_trial_orders.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:>6}  {:<8} {}",
                    i,
                    trial_label(order),
                    join_numbers(order, " ")
                );
            }
        }
        ReportBody::Robustness(r) => {
            let _ = writeln!(out, "full order: {}", r.full_order.join(", "));
            let _ = writeln!(out, "stable: {}", r.stable);
            for o in &r.omissions {
                let _ = writeln!(
                    out,
                    "without {:<16} {:<9} {}",
                    o.omitted,
                    if o.preserved { "preserved" } else { "changed" },
                    o.order.join(", ")
                );
            }
        }
        ReportBody::Histogram(h) => {
            let _ = writeln!(out, "{:>14} {:>14} {:>8}", "lower", "upper", "count");
            for (i, c) in h.counts.iter().enumerate() {
                let _ = writeln!(out, "{:>14} {:>14} {:>8}", h.bin_edges[i], h.bin_edges[i + 1], c);
            }
            let _ = writeln!(
                out,
                "below range: {}  above range: {}",
                h.below_range, h.above_range
            );
        }
    }
    out
}

fn trial_label(order: &[usize]) -> &'static str {
    if is_identity(order) {
        "exact"
    } else if is_single_adjacent_swap(order) {
        "swap"
    } else {
        "other"
    }
}

fn join_numbers(order: &[usize], sep: &str) -> String {
    order.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

fn fraction_cell(value: f64, total: f64) -> String {
    if total > 0.0 {
        (value / total).to_string()
    } else {
        String::new()
    }
}

fn render_csv(report: &ReportBody) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    match report {
        ReportBody::Decomposition(d) | ReportBody::Ranking(SooRanking { result: d, .. }) => {
            wtr.write_record([
                "step",
                "character",
                "classes",
                "component",
                "residual_after",
                "residual_fraction",
            ])?;
            for (i, s) in d.steps.iter().enumerate() {
                wtr.write_record([
                    (i + 1).to_string(),
                    s.character.clone(),
                    s.classes_after.to_string(),
                    s.component.to_string(),
                    s.residual_after.to_string(),
                    fraction_cell(s.residual_after, d.total_variance),
                ])?;
            }
        }
        ReportBody::Baseline(b) => {
            wtr.write_record(["trial", "subset", "residual", "residual_fraction"])?;
            for (i, (r, s)) in b.residuals.iter().zip(&b.subsets).enumerate() {
                wtr.write_record([
                    i.to_string(),
                    s.join(" "),
                    r.to_string(),
                    fraction_cell(*r, b.total_variance),
                ])?;
            }
            wtr.write_record([
                "soo".to_owned(),
                b.soo_subset.join(" "),
                b.soo_residual.to_string(),
                fraction_cell(b.soo_residual, b.total_variance),
            ])?;
        }
        ReportBody::Simulation(s) => {
            wtr.write_record(["trial", "order", "outcome"])?;
            for (i, order) in s.per_trial_orders.iter().enumerate() {
                wtr.write_record([
                    i.to_string(),
                    join_numbers(order, " "),
                    trial_label(order).to_owned(),
                ])?;
            }
        }
        ReportBody::Robustness(r) => {
            wtr.write_record(["omitted", "order", "preserved"])?;
            for o in &r.omissions {
                wtr.write_record([o.omitted.clone(), o.order.join(" "), o.preserved.to_string()])?;
            }
        }
        ReportBody::Histogram(h) => {
            wtr.write_record(["bin", "lower", "upper", "count"])?;
            for (i, c) in h.counts.iter().enumerate() {
                wtr.write_record([
                    i.to_string(),
                    h.bin_edges[i].to_string(),
                    h.bin_edges[i + 1].to_string(),
                    c.to_string(),
                ])?;
            }
            wtr.write_record([
                "below".to_owned(),
                String::new(),
                String::new(),
                h.below_range.to_string(),
            ])?;
            wtr.write_record([
                "above".to_owned(),
                String::new(),
                String::new(),
                h.above_range.to_string(),
            ])?;
        }
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Write(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
