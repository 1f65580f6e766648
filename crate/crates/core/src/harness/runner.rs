//! Trial execution: per-trial RNG streams, optional parallelism, in-order
//! incremental persistence, and the Ising campaign over instance sets.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use crate::ansatz::AnsatzSpec;
use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, OptimizerKind};
use crate::harness::raw::{read_raw_records, RawWriter, TraceWriter};
use crate::harness::records::{RimSummaryRow, TrialRecord};
use crate::objective::{CostTable, Evaluator};
use crate::optimizers::{Budget, RngStream};
use crate::problems::{ProblemInstance, ProblemKind};

/// Run `cfg.trials` independent trials of one configuration.
///
/// Trial `t` draws from `RngStream(master_seed, config_id, t)`, so results do
/// not depend on execution order or worker count. Records are appended to
/// `cfg.out_path` in trial order as they complete; an interrupted run leaves
/// a clean prefix behind and re-running skips the already-recorded trials,
/// reproducing the remaining ones exactly.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let config_id = cfg.config_id();

    let existing = if cfg.out_path.exists() {
        read_raw_records(&cfg.out_path)?
    } else {
        Vec::new()
    };
    for record in &existing {
        if record.config_id != config_id {
            return Err(Error::Input(format!(
                "output file {} already holds records for '{}'",
                cfg.out_path.display(),
                record.config_id
            )));
        }
        if record.trial >= cfg.trials {
            return Err(Error::Input(format!(
                "output file has trial {} but the experiment runs {} trials",
                record.trial, cfg.trials
            )));
        }
    }
    let done: HashSet<usize> = existing.iter().map(|r| r.trial).collect();

    // open outputs up front so an unwritable path fails before any work
    let mut writer = RawWriter::open(&cfg.out_path, cfg.ansatz.param_count())?;
    let mut trace_writer = if cfg.dump_traces {
        Some(TraceWriter::open(&trace_path(cfg))?)
    } else {
        None
    };

    let table = Arc::new(CostTable::new(&cfg.instance)?);
    let remaining: Vec<usize> = (0..cfg.trials).filter(|t| !done.contains(t)).collect();

    let mut new_records: Vec<TrialRecord> = Vec::with_capacity(remaining.len());
    let mut write =
        |record: TrialRecord, trace: Option<Vec<f64>>, out: &mut Vec<TrialRecord>| -> Result<()> {
            if let (Some(tw), Some(trace)) = (trace_writer.as_mut(), trace) {
                tw.append(&record.config_id, record.trial, &trace)?;
            }
            writer.append(&record)?;
            out.push(record);
            Ok(())
        };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let (tx, rx) = std::sync::mpsc::channel();
        // Trials run on the rayon pool; a plain OS thread drains completions
        // and flushes them in trial order (a blocking recv must not occupy a
        // pool worker, or a single-threaded pool deadlocks).
        let failure: Option<Error> = std::thread::scope(|threads| {
            let drain = threads.spawn(|| {
                let mut failure: Option<Error> = None;
                let mut pending: BTreeMap<usize, (TrialRecord, Option<Vec<f64>>)> =
                    BTreeMap::new();
                let mut next = remaining.iter().copied().peekable();
                for (t, outcome) in rx {
                    match outcome {
                        Ok(done) => {
                            pending.insert(t, done);
                        }
                        Err(e) => {
                            failure.get_or_insert(e);
                            continue;
                        }
                    }
                    while let Some(&upcoming) = next.peek() {
                        match pending.remove(&upcoming) {
                            Some((record, trace)) => {
                                if let Err(e) = write(record, trace, &mut new_records) {
                                    failure.get_or_insert(e);
                                }
                                next.next();
                            }
                            None => break,
                        }
                    }
                }
                failure
            });
            remaining.par_iter().for_each_with(tx, |tx, &t| {
                let outcome = run_trial(cfg, &config_id, Arc::clone(&table), t);
                let _ = tx.send((t, outcome));
            });
            drain.join().expect("trial writer thread panicked")
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }

    #[cfg(not(feature = "parallel"))]
    for &t in &remaining {
        let (record, trace) = run_trial(cfg, &config_id, Arc::clone(&table), t)?;
        write(record, trace, &mut new_records)?;
    }

    let mut all = existing;
    all.extend(new_records);
    all.sort_by_key(|r| r.trial);
    Ok(all)
}

/// Path of the optional trace dump next to the raw file.
pub fn trace_path(cfg: &ExperimentConfig) -> std::path::PathBuf {
    let mut name = cfg
        .out_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trials".into());
    name.push_str(".traces.csv");
    cfg.out_path.with_file_name(name)
}

fn run_trial(
    cfg: &ExperimentConfig,
    config_id: &str,
    table: Arc<CostTable>,
    trial: usize,
) -> Result<(TrialRecord, Option<Vec<f64>>)> {
    let mut rng = RngStream::for_config(cfg.master_seed, config_id, trial as u64).rng();
    let mut evaluator = Evaluator::with_table(table, &cfg.instance, cfg.ansatz)?;
    let dim = cfg.ansatz.param_count();
    let started = Instant::now();
    let run = {
        let mut objective = |params: &[f64]| evaluator.evaluate(params);
        cfg.optimizer.run(&mut objective, dim, cfg.budget, &mut rng)
    };
    let duration_ms = started.elapsed().as_secs_f64() * 1e3;
    debug_assert_eq!(run.evals, evaluator.evals_consumed());
    let record = TrialRecord {
        config_id: config_id.to_string(),
        trial,
        best_eev: run.best_value,
        best_params: run.best_params,
        evals: run.evals,
        duration_ms,
    };
    Ok((record, cfg.dump_traces.then_some(run.trace)))
}

/// Optimize every (instance, model) cell once and report, per model, the
/// mean gap between the achieved expectation and the exhaustive optimum.
/// Cells run independently on streams keyed by instance index and model.
pub fn rim_campaign(
    instances: &[ProblemInstance],
    models: &[AnsatzSpec],
    optimizer: OptimizerKind,
    budget: Budget,
    master_seed: u64,
) -> Result<Vec<RimSummaryRow>> {
    if instances.is_empty() {
        return Err(Error::Input("campaign needs at least one instance".into()));
    }
    if models.is_empty() {
        return Err(Error::Input("campaign needs at least one model".into()));
    }
    for (index, instance) in instances.iter().enumerate() {
        if instance.kind != ProblemKind::Rim {
            return Err(Error::Input(format!(
                "campaign instance {index} is {}, expected rim",
                instance.kind.tag()
            )));
        }
        instance.validate()?;
    }

    let tables: Vec<Arc<CostTable>> = instances
        .iter()
        .map(|inst| CostTable::new(inst).map(Arc::new))
        .collect::<Result<_>>()?;
    let oracles: Vec<f64> = instances
        .iter()
        .map(|inst| inst.brute_force_optimum().map(|o| o.opt_value))
        .collect::<Result<_>>()?;

    let cells: Vec<(usize, usize)> = (0..models.len())
        .flat_map(|m| (0..instances.len()).map(move |i| (m, i)))
        .collect();

    let run_cell = |&(m, i): &(usize, usize)| -> Result<f64> {
        let spec = models[m];
        let cell_id = format!("rim_i{i:03}__{}__{}", spec.label(), optimizer.tag());
        let mut rng = RngStream::for_config(master_seed, &cell_id, 0).rng();
        let mut evaluator = Evaluator::with_table(Arc::clone(&tables[i]), &instances[i], spec)?;
        let run = {
            let mut objective = |params: &[f64]| evaluator.evaluate(params);
            optimizer.run(&mut objective, spec.param_count(), budget, &mut rng)
        };
        Ok(run.best_value - oracles[i])
    };

    #[cfg(feature = "parallel")]
    let diffs: Vec<f64> = {
        use rayon::prelude::*;
        cells.par_iter().map(run_cell).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let diffs: Vec<f64> = cells.iter().map(run_cell).collect::<Result<_>>()?;

    let per_instance = instances.len();
    Ok(models
        .iter()
        .enumerate()
        .map(|(m, spec)| RimSummaryRow {
            model: spec.label(),
            mean_diff: diffs[m * per_instance..(m + 1) * per_instance]
                .iter()
                .sum::<f64>()
                / per_instance as f64,
        })
        .collect())
}
