//! Experiment configuration and optimizer selection.

use rand::Rng;
use std::path::PathBuf;
use std::str::FromStr;

use crate::ansatz::AnsatzSpec;
use crate::error::{Error, Result};
use crate::optimizers::{
    local_search, shc_rr, Budget, OptRun, PerturbMode, DEFAULT_PERTURB_BOUND, DEFAULT_STEP_SCALE,
};
use crate::problems::ProblemInstance;

/// The three strategies under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerKind {
    ShcRr,
    LsMult,
    LsSum,
}

impl OptimizerKind {
    pub fn all() -> [OptimizerKind; 3] {
        [
            OptimizerKind::ShcRr,
            OptimizerKind::LsMult,
            OptimizerKind::LsSum,
        ]
    }

    pub fn tag(self) -> &'static str {
        match self {
            OptimizerKind::ShcRr => "shc-rr",
            OptimizerKind::LsMult => "ls",
            OptimizerKind::LsSum => "ls-sum",
        }
    }

    /// One optimization run with the shared default step scales.
    pub fn run<F, R>(self, evaluate: &mut F, dim: usize, budget: Budget, rng: &mut R) -> OptRun
    where
        F: FnMut(&[f64]) -> f64,
        R: Rng + ?Sized,
    {
        match self {
            OptimizerKind::ShcRr => shc_rr(evaluate, dim, budget, DEFAULT_STEP_SCALE, rng),
            OptimizerKind::LsMult => {
                local_search(evaluate, dim, budget, PerturbMode::Mult, DEFAULT_PERTURB_BOUND, rng)
            }
            OptimizerKind::LsSum => {
                local_search(evaluate, dim, budget, PerturbMode::Sum, DEFAULT_PERTURB_BOUND, rng)
            }
        }
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shc-rr" => Ok(OptimizerKind::ShcRr),
            "ls" => Ok(OptimizerKind::LsMult),
            "ls-sum" => Ok(OptimizerKind::LsSum),
            other => Err(Error::Config(format!(
                "unknown optimizer '{other}' (expected shc-rr, ls or ls-sum)"
            ))),
        }
    }
}

impl std::fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// One (instance, ansatz, optimizer) cell plus its trial/budget/seed
/// settings and output location.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub instance: ProblemInstance,
    /// Short label identifying the instance in config ids and file names,
    /// e.g. `maxcut_cyclic_n4`.
    pub instance_tag: String,
    pub ansatz: AnsatzSpec,
    pub optimizer: OptimizerKind,
    pub budget: Budget,
    pub trials: usize,
    pub master_seed: u64,
    /// Raw trial records are appended here as trials complete.
    pub out_path: PathBuf,
    /// Also persist the per-iteration best-so-far trace of every trial.
    pub dump_traces: bool,
}

impl ExperimentConfig {
    /// Default instance label: kind plus node count.
    pub fn default_tag(instance: &ProblemInstance) -> String {
        format!("{}_n{}", instance.kind.tag(), instance.n)
    }

    /// Identifier embedded in every record: `<tag>__<model>__<optimizer>`.
    pub fn config_id(&self) -> String {
        format!(
            "{}__{}__{}",
            self.instance_tag,
            self.ansatz.label(),
            self.optimizer.tag()
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("experiment needs at least one trial".into()));
        }
        if self.instance_tag.is_empty()
            || self.instance_tag.contains(',')
            || self.instance_tag.contains('\n')
            || self.instance_tag.contains("__")
        {
            return Err(Error::Config(format!(
                "instance tag '{}' must be nonempty and free of commas, newlines and '__'",
                self.instance_tag
            )));
        }
        if self.ansatz.entangled() && self.instance.n < 2 {
            return Err(Error::Config(
                "entangled ansatz needs at least 2 nodes".into(),
            ));
        }
        self.instance.validate()
    }
}
