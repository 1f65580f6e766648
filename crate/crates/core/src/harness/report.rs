//! Summary table rendering: CSV or JSON, floats at 4 decimal places.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::records::{RimSummaryRow, SummaryRow};

/// A finished table: per-model best/mean/variance rows for Max-Cut runs, or
/// per-model mean-gap rows for Ising campaigns.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    MaxCut(Vec<SummaryRow>),
    Rim(Vec<RimSummaryRow>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!(
                "unknown report format '{other}' (expected csv or json)"
            ))),
        }
    }
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// Render a report to text. Refuses empty tables.
pub fn render_report(report: &Report, format: ReportFormat) -> Result<String> {
    let empty = match report {
        Report::MaxCut(rows) => rows.is_empty(),
        Report::Rim(rows) => rows.is_empty(),
    };
    if empty {
        return Err(Error::Input("refusing to emit an empty report".into()));
    }
    let text = match (report, format) {
        (Report::MaxCut(rows), ReportFormat::Csv) => {
            let mut out = String::from("model,best,mean,var\n");
            for row in rows {
                out.push_str(&format!(
                    "{},{:.4},{:.4},{:.4}\n",
                    row.model, row.best, row.mean, row.var
                ));
            }
            out
        }
        (Report::Rim(rows), ReportFormat::Csv) => {
            let mut out = String::from("model,mean_diff\n");
            for row in rows {
                out.push_str(&format!("{},{:.4}\n", row.model, row.mean_diff));
            }
            out
        }
        (Report::MaxCut(rows), ReportFormat::Json) => {
            let rounded: Vec<SummaryRow> = rows
                .iter()
                .map(|r| SummaryRow {
                    model: r.model.clone(),
                    best: round4(r.best),
                    mean: round4(r.mean),
                    var: round4(r.var),
                })
                .collect();
            serde_json::to_string_pretty(&rounded)
                .map_err(|e| Error::Input(format!("report serialization failed: {e}")))?
        }
        (Report::Rim(rows), ReportFormat::Json) => {
            let rounded: Vec<RimSummaryRow> = rows
                .iter()
                .map(|r| RimSummaryRow {
                    model: r.model.clone(),
                    mean_diff: round4(r.mean_diff),
                })
                .collect();
            serde_json::to_string_pretty(&rounded)
                .map_err(|e| Error::Input(format!("report serialization failed: {e}")))?
        }
    };
    Ok(text)
}

/// Render and write a report file.
pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    let text = render_report(report, format)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Parse a rendered report back; the table kind is detected from the header
/// (CSV) or the row fields (JSON).
pub fn parse_report(text: &str, format: ReportFormat) -> Result<Report> {
    match format {
        ReportFormat::Csv => {
            let mut lines = text.lines().filter(|l| !l.is_empty());
            let header = lines
                .next()
                .ok_or_else(|| Error::Input("empty report".into()))?;
            match header {
                "model,best,mean,var" => {
                    let rows = lines
                        .map(|line| {
                            let fields: Vec<&str> = line.split(',').collect();
                            if fields.len() != 4 {
                                return Err(Error::Input(format!("bad report row '{line}'")));
                            }
                            let parse = |s: &str| {
                                s.parse::<f64>()
                                    .map_err(|_| Error::Input(format!("bad number in '{line}'")))
                            };
                            Ok(SummaryRow {
                                model: fields[0].to_string(),
                                best: parse(fields[1])?,
                                mean: parse(fields[2])?,
                                var: parse(fields[3])?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Report::MaxCut(rows))
                }
                "model,mean_diff" => {
                    let rows = lines
                        .map(|line| {
                            let (model, value) = line.split_once(',').ok_or_else(|| {
                                Error::Input(format!("bad report row '{line}'"))
                            })?;
                            Ok(RimSummaryRow {
                                model: model.to_string(),
                                mean_diff: value.parse().map_err(|_| {
                                    Error::Input(format!("bad number in '{line}'"))
                                })?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Report::Rim(rows))
                }
                other => Err(Error::Input(format!("unknown report header '{other}'"))),
            }
        }
        ReportFormat::Json => {
            if let Ok(rows) = serde_json::from_str::<Vec<SummaryRow>>(text) {
                return Ok(Report::MaxCut(rows));
            }
            serde_json::from_str::<Vec<RimSummaryRow>>(text)
                .map(Report::Rim)
                .map_err(|e| Error::Input(format!("unparseable JSON report: {e}")))
        }
    }
}
