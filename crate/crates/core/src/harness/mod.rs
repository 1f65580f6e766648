//! Experiment runner: configures (problem x ansatz x optimizer) cells, runs
//! independent trials on deterministic per-trial RNG streams, persists raw
//! trial records incrementally, and aggregates them into summary tables.

mod config;
mod raw;
mod records;
mod report;
mod runner;

pub use config::{ExperimentConfig, OptimizerKind};
pub use raw::{format_record, parse_record, read_raw_records, RawWriter, TraceWriter};
pub use records::{
    model_label_of, model_specs, summarize, RimSummaryRow, SummaryRow, TrialRecord, MODEL_ORDER,
};
pub use report::{emit_report, parse_report, render_report, Report, ReportFormat};
pub use runner::{rim_campaign, run_experiment};
