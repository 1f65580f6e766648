//! Exact expectation of the classical score against a prepared state, plus
//! the compiled per-instance evaluator that the optimizer loop runs on.
//!
//! The expectation is `sum_x |amps[x]|^2 * score(x)` -- exact, no sampling.
//! Scores are memoized into a `2^n` table per instance so each evaluation is
//! one fused dot product; the same table drives the diagonal phase operator,
//! since the phase weight per basis state is an affine function of the score
//! (`|E| - 2 * cut` for Max-Cut, the raw energy for Ising instances).

use num_complex::Complex64;
use std::sync::Arc;

use crate::ansatz::{cnot_ladder, AnsatzSpec, ParameterVector};
use crate::error::{Error, Result};
use crate::problems::{OracleResult, ProblemInstance, ProblemKind};
use crate::statevector::{mat2_mul, rx_matrix, ry_matrix, StateVector};

/// Exact expected score of a prepared state. Direct path, no memoization.
pub fn eev(state: &StateVector, instance: &ProblemInstance) -> Result<f64> {
    if state.num_qubits() != instance.n {
        return Err(Error::Input(format!(
            "state has {} qubits but instance has {} nodes",
            state.num_qubits(),
            instance.n
        )));
    }
    Ok(state
        .amps()
        .iter()
        .enumerate()
        .map(|(x, a)| a.norm_sqr() * instance.cost_of_index(x))
        .sum())
}

/// Gap between an achieved expectation and the exhaustive optimum. Never
/// positive beyond rounding, since the expectation is bounded by the best
/// attainable score.
pub fn eev_diff(achieved: f64, oracle: &OracleResult) -> f64 {
    achieved - oracle.opt_value
}

/// Memoized per-basis-state scores for one instance.
#[derive(Debug, Clone)]
pub struct CostTable {
    n: usize,
    costs: Vec<f64>,
    min: f64,
    max: f64,
}

impl CostTable {
    pub fn new(instance: &ProblemInstance) -> Result<Self> {
        instance.validate()?;
        let size = 1usize << instance.n;

        #[cfg(feature = "parallel")]
        let costs: Vec<f64> = {
            use rayon::prelude::*;
            (0..size)
                .into_par_iter()
                .map(|x| instance.cost_of_index(x))
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let costs: Vec<f64> = (0..size).map(|x| instance.cost_of_index(x)).collect();

        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for &c in &costs {
            min = min.min(c);
            max = max.max(c);
        }
        Ok(CostTable {
            n: instance.n,
            costs,
            min,
            max,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// Fused expectation: one dot product over the probability weights.
    pub fn eev(&self, state: &StateVector) -> Result<f64> {
        if state.num_qubits() != self.n {
            return Err(Error::Input(format!(
                "state has {} qubits but cost table covers {}",
                state.num_qubits(),
                self.n
            )));
        }
        Ok(state
            .amps()
            .iter()
            .zip(&self.costs)
            .map(|(a, &c)| a.norm_sqr() * c)
            .sum())
    }
}

/// Diagonal phase weights are deduplicated into classes only while the
/// distinct-value count stays small (Max-Cut weights are small integers);
/// past this bound a direct sin/cos sweep is cheaper than building a
/// state-sized lookup table per layer.
const PHASE_LUT_MAX: usize = 1024;

/// A circuit spec compiled against one instance: runs the whole ansatz on an
/// internal scratch state and returns the exact expectation. This is the
/// kernel the optimizers hammer (~10^5..10^6 calls per table cell), so the
/// diagonal layer is applied in one sweep and the CNOT ladder as one
/// precomputed basis permutation.
#[derive(Debug, Clone)]
pub struct Evaluator {
    spec: AnsatzSpec,
    table: Arc<CostTable>,
    /// phase weight per basis state (affine in the stored cost)
    diag: Arc<Vec<f64>>,
    /// class index per basis state plus distinct weights, when few enough
    phase_classes: Option<Arc<(Vec<u16>, Vec<f64>)>>,
    /// basis permutation realizing the CNOT ladder, for the entangled mixer
    ladder_perm: Option<Arc<Vec<u32>>>,
    state: StateVector,
    scratch: Vec<Complex64>,
    lut: Vec<Complex64>,
    plus_amp: Complex64,
    evals: u64,
}

impl Evaluator {
    pub fn new(instance: &ProblemInstance, spec: AnsatzSpec) -> Result<Self> {
        let table = Arc::new(CostTable::new(instance)?);
        Self::with_table(table, instance, spec)
    }

    /// Build around an existing cost table (shared across parallel trials).
    pub fn with_table(
        table: Arc<CostTable>,
        instance: &ProblemInstance,
        spec: AnsatzSpec,
    ) -> Result<Self> {
        if table.num_qubits() != instance.n {
            return Err(Error::Input(
                "cost table does not match the instance".into(),
            ));
        }
        if spec.entangled() && instance.n < 2 {
            return Err(Error::Config(
                "entangled mixer needs at least 2 qubits".into(),
            ));
        }
        let n = instance.n;
        let edge_count = instance.edges.len() as f64;
        let diag: Vec<f64> = match instance.kind {
            ProblemKind::MaxcutCyclic | ProblemKind::MaxcutComplete => table
                .costs()
                .iter()
                .map(|&cut| edge_count - 2.0 * cut)
                .collect(),
            ProblemKind::Rim => table.costs().iter().map(|&score| -score).collect(),
        };

        let mut distinct: Vec<f64> = Vec::new();
        let mut class: Vec<u16> = Vec::with_capacity(diag.len());
        let mut index_of = std::collections::HashMap::new();
        for &d in &diag {
            let idx = *index_of.entry(d.to_bits()).or_insert_with(|| {
                distinct.push(d);
                distinct.len() - 1
            });
            if distinct.len() > PHASE_LUT_MAX {
                break;
            }
            class.push(idx as u16);
        }
        let phase_classes = if distinct.len() <= PHASE_LUT_MAX && class.len() == diag.len() {
            Some(Arc::new((class, distinct)))
        } else {
            None
        };

        let ladder_perm = if spec.entangled() {
            let perm: Vec<u32> = (0..1usize << n)
                .map(|x| {
                    let mut y = x;
                    for (control, target) in cnot_ladder(n) {
                        if (y >> control) & 1 == 1 {
                            y ^= 1 << target;
                        }
                    }
                    y as u32
                })
                .collect();
            Some(Arc::new(perm))
        } else {
            None
        };

        Ok(Evaluator {
            spec,
            table,
            diag: Arc::new(diag),
            phase_classes,
            ladder_perm,
            state: StateVector::new_plus_state(n)?,
            scratch: Vec::new(),
            lut: Vec::new(),
            plus_amp: Complex64::new(0.5f64.powf(n as f64 / 2.0), 0.0),
            evals: 0,
        })
    }

    pub fn spec(&self) -> AnsatzSpec {
        self.spec
    }

    pub fn param_count(&self) -> usize {
        self.spec.param_count()
    }

    /// Objective-side evaluation counter, for budget audits.
    pub fn evals_consumed(&self) -> u64 {
        self.evals
    }

    /// State left behind by the last `evaluate` call.
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Run the circuit for `params` (layout `[g, b1, b2] * layers`) and
    /// return the exact expected score.
    pub fn evaluate(&mut self, params: &[f64]) -> f64 {
        assert_eq!(
            params.len(),
            self.spec.param_count(),
            "parameter count mismatch"
        );
        self.evals += 1;
        self.state.fill(self.plus_amp);
        for layer in 0..self.spec.layers() {
            let gamma = params[3 * layer];
            let beta1 = params[3 * layer + 1];
            let beta2 = params[3 * layer + 2];

            match &self.phase_classes {
                Some(classes) => {
                    let (class, distinct) = classes.as_ref();
                    self.lut.clear();
                    self.lut.extend(distinct.iter().map(|&d| {
                        let (s, c) = (gamma * d).sin_cos();
                        Complex64::new(c, -s)
                    }));
                    self.state
                        .apply_phase_lut(class, &self.lut)
                        .expect("class table matches state");
                }
                None => self
                    .state
                    .apply_diag_exp(&self.diag, gamma)
                    .expect("diagonal matches state"),
            }

            match &self.ladder_perm {
                Some(perm) => {
                    self.state.apply_rx_all(beta1);
                    self.state
                        .apply_index_permutation(perm, &mut self.scratch)
                        .expect("permutation matches state");
                    self.state.apply_ry_all(beta2);
                }
                None => {
                    // RX then RY per qubit; columns over distinct qubits
                    // commute, so the fused 2x2 product is the same circuit.
                    let fused = mat2_mul(ry_matrix(beta2), rx_matrix(beta1));
                    self.state.apply_one_qubit_all(fused);
                }
            }
        }
        self.table.eev(&self.state).expect("table matches state")
    }

    /// Validated wrapper around [`Evaluator::evaluate`].
    pub fn evaluate_params(&mut self, theta: &ParameterVector) -> Result<f64> {
        if theta.len() != self.spec.param_count() {
            return Err(Error::Input(format!(
                "expected {} parameters, got {}",
                self.spec.param_count(),
                theta.len()
            )));
        }
        Ok(self.evaluate(theta.values()))
    }
}
