//! Layered ansatz: alternating diagonal phase operator and RX/RY mixer,
//! with an optional CNOT entanglement stage inside the mixer.
//!
//! Each layer carries three parameters `(gamma, beta1, beta2)`; the phase
//! operator applies `exp(-i gamma Z_j Z_k)` per edge (plus per-node
//! `exp(-i gamma h_j Z_j)` field terms for Ising instances), the mixer
//! applies an RX column then an RY column. The entangled variant inserts a
//! full CNOT ladder over all pairs `(j, k)`, `j < k`, in lexicographic order
//! between the two rotation columns; it carries no extra parameters.
//!
//! Both mixer equations share one sign convention here: a flipped exponent
//! sign is absorbed by `beta -> -beta` and is invisible to an optimizer
//! searching the full period.

use crate::error::{Error, Result};
use crate::problems::ProblemInstance;
use crate::statevector::{GateAngle, StateVector};

/// Circuit shape: depth (1..=3 layers) and whether the mixer entangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    layers: usize,
    entangled: bool,
}

impl AnsatzSpec {
    pub fn new(layers: usize, entangled: bool) -> Result<Self> {
        if !(1..=3).contains(&layers) {
            return Err(Error::Config(format!(
                "ansatz depth must be 1, 2 or 3, got {layers}"
            )));
        }
        Ok(AnsatzSpec { layers, entangled })
    }

    pub fn layers(self) -> usize {
        self.layers
    }

    pub fn entangled(self) -> bool {
        self.entangled
    }

    pub fn param_count(self) -> usize {
        3 * self.layers
    }

    /// Table label: "3p", "3p ent", "6p", "6p ent", "9p", "9p ent".
    pub fn label(self) -> String {
        if self.entangled {
            format!("{}p ent", self.param_count())
        } else {
            format!("{}p", self.param_count())
        }
    }
}

/// Flat parameter vector, laid out `[g_1, b1_1, b2_1, g_2, b1_2, b2_2, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() % 3 != 0 {
            return Err(Error::Input(format!(
                "parameter count must be a positive multiple of 3, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Input(format!("non-finite parameter {bad}")));
        }
        Ok(ParameterVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gamma(&self, layer: usize) -> f64 {
        self.0[3 * layer]
    }

    pub fn beta1(&self, layer: usize) -> f64 {
        self.0[3 * layer + 1]
    }

    pub fn beta2(&self, layer: usize) -> f64 {
        self.0[3 * layer + 2]
    }
}

/// All pairs `(j, k)` with `j < k` in lexicographic order; the CNOT ladder
/// applies them as control `j`, target `k`. CNOTs do not all commute, so
/// this order is part of the circuit contract.
pub fn cnot_ladder(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |j| (j + 1..n).map(move |k| (j, k)))
}

/// Diagonal phase operator: `exp(-i gamma Z_j Z_k)` over the instance edges
/// in stored (lexicographic) order, then `exp(-i gamma h_j Z_j)` per node
/// when the instance carries fields. All terms commute, so the order only
/// matters for bit-for-bit reproducibility.
pub fn apply_phase_operator(
    state: &mut StateVector,
    instance: &ProblemInstance,
    gamma: GateAngle,
) -> Result<()> {
    if state.num_qubits() != instance.n {
        return Err(Error::Input(format!(
            "state has {} qubits but instance has {} nodes",
            state.num_qubits(),
            instance.n
        )));
    }
    for &(j, k) in &instance.edges {
        state.apply_zz_phase(j, k, gamma)?;
    }
    if instance.fields.iter().any(|&h| h != 0.0) {
        for (j, &h) in instance.fields.iter().enumerate() {
            state.apply_z_phase(j, GateAngle::new(h * gamma.radians())?)?;
        }
    }
    Ok(())
}

/// Plain mixer: an RX(beta1) column followed by an RY(beta2) column.
pub fn apply_mixer(state: &mut StateVector, beta1: GateAngle, beta2: GateAngle) -> Result<()> {
    for q in 0..state.num_qubits() {
        state.apply_rx(q, beta1)?;
    }
    for q in 0..state.num_qubits() {
        state.apply_ry(q, beta2)?;
    }
    Ok(())
}

/// Entangled mixer: RX column, full CNOT ladder, RY column.
pub fn apply_entangled_mixer(
    state: &mut StateVector,
    beta1: GateAngle,
    beta2: GateAngle,
) -> Result<()> {
    let n = state.num_qubits();
    if n < 2 {
        return Err(Error::Config(
            "entangled mixer needs at least 2 qubits".into(),
        ));
    }
    for q in 0..n {
        state.apply_rx(q, beta1)?;
    }
    for (control, target) in cnot_ladder(n) {
        state.apply_cnot(control, target)?;
    }
    for q in 0..n {
        state.apply_ry(q, beta2)?;
    }
    Ok(())
}

/// Run the full circuit: `|+>^n`, then per layer the phase operator followed
/// by the (optionally entangled) mixer.
pub fn prepare_state(
    instance: &ProblemInstance,
    spec: AnsatzSpec,
    theta: &ParameterVector,
) -> Result<StateVector> {
    if theta.len() != spec.param_count() {
        return Err(Error::Input(format!(
            "expected {} parameters for {} layers, got {}",
            spec.param_count(),
            spec.layers(),
            theta.len()
        )));
    }
    let mut state = StateVector::new_plus_state(instance.n)?;
    for layer in 0..spec.layers() {
        apply_phase_operator(&mut state, instance, GateAngle::new(theta.gamma(layer))?)?;
        let beta1 = GateAngle::new(theta.beta1(layer))?;
        let beta2 = GateAngle::new(theta.beta2(layer))?;
        if spec.entangled() {
            apply_entangled_mixer(&mut state, beta1, beta2)?;
        } else {
            apply_mixer(&mut state, beta1, beta2)?;
        }
    }
    Ok(state)
}
