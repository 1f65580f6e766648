//! Raw trial file: append-only CSV, one row per completed trial.
//!
//! Columns: `config_id,trial,best_eev,evals,duration_ms,param_0,...`.
//! Floats are written in shortest round-trip form, so a parsed file
//! reproduces the in-memory records exactly.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::records::TrialRecord;

const FIXED_COLUMNS: usize = 5;

/// Append-only writer for trial records; flushes after every row so a
/// killed run leaves a clean prefix behind.
#[derive(Debug)]
pub struct RawWriter {
    out: BufWriter<File>,
    path: PathBuf,
}

impl RawWriter {
    /// Open `path` for appending, writing the header first when the file is
    /// new or empty. Fails before any trial work if the path is unwritable.
    pub fn open(path: &Path, param_count: usize) -> Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        let is_empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
        let mut writer = RawWriter {
            out: BufWriter::new(file),
            path: path.to_path_buf(),
        };
        if is_empty {
            let mut header = String::from("config_id,trial,best_eev,evals,duration_ms");
            for i in 0..param_count {
                header.push_str(&format!(",param_{i}"));
            }
            header.push('\n');
            writer.write_str(&header)?;
        }
        Ok(writer)
    }

    pub fn append(&mut self, record: &TrialRecord) -> Result<()> {
        self.write_str(&format_record(record))
    }

    fn write_str(&mut self, s: &str) -> Result<()> {
        self.out
            .write_all(s.as_bytes())
            .and_then(|_| self.out.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}

/// Companion writer for optimizer traces:
/// `config_id,trial,outer_iter,best_value`.
#[derive(Debug)]
pub struct TraceWriter {
    out: BufWriter<File>,
    path: PathBuf,
}

impl TraceWriter {
    pub fn open(path: &Path) -> Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        let is_empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
        let mut writer = TraceWriter {
            out: BufWriter::new(file),
            path: path.to_path_buf(),
        };
        if is_empty {
            writer.write_str("config_id,trial,outer_iter,best_value\n")?;
        }
        Ok(writer)
    }

    pub fn append(&mut self, config_id: &str, trial: usize, trace: &[f64]) -> Result<()> {
        let mut block = String::new();
        for (iter, value) in trace.iter().enumerate() {
            block.push_str(&format!("{config_id},{trial},{iter},{value}\n"));
        }
        self.write_str(&block)
    }

    fn write_str(&mut self, s: &str) -> Result<()> {
        self.out
            .write_all(s.as_bytes())
            .and_then(|_| self.out.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}

pub fn format_record(r: &TrialRecord) -> String {
    let mut line = format!(
        "{},{},{},{},{}",
        r.config_id, r.trial, r.best_eev, r.evals, r.duration_ms
    );
    for p in &r.best_params {
        line.push_str(&format!(",{p}"));
    }
    line.push('\n');
    line
}

pub fn parse_record(line: &str) -> Result<TrialRecord> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() < FIXED_COLUMNS {
        return Err(Error::Input(format!(
            "raw record has {} fields, expected at least {FIXED_COLUMNS}: '{line}'",
            fields.len()
        )));
    }
    let bad = |what: &str| Error::Input(format!("unparseable {what} in raw record '{line}'"));
    Ok(TrialRecord {
        config_id: fields[0].to_string(),
        trial: fields[1].parse().map_err(|_| bad("trial index"))?,
        best_eev: fields[2].parse().map_err(|_| bad("best_eev"))?,
        evals: fields[3].parse().map_err(|_| bad("evals"))?,
        duration_ms: fields[4].parse().map_err(|_| bad("duration_ms"))?,
        best_params: fields[FIXED_COLUMNS..]
            .iter()
            .map(|f| f.parse().map_err(|_| bad("parameter")))
            .collect::<Result<Vec<f64>>>()?,
    })
}

/// Read every record from a raw trial file, skipping the header.
pub fn read_raw_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .filter(|line| !line.is_empty() && !line.starts_with("config_id,"))
        .map(parse_record)
        .collect()
}
