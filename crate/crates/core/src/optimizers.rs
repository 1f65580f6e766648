//! Derivative-free parameter search: stochastic hill climbing with random
//! restarts, and local search with multiplicative or additive perturbations.
//!
//! All three strategies maximize a black-box `f(&[f64]) -> f64` under the
//! same evaluation budget, `outer * (1 + inner)` calls exactly. Restart
//! points are drawn uniformly from `[0, 2pi)` per coordinate; hill-climbing
//! moves may leave that box, which is harmless because the circuit ansatz is
//! periodic in each coordinate.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Inner-step and perturbation half-width shared by all strategies, so
/// inner moves are comparable across them.
pub const DEFAULT_STEP_SCALE: f64 = 0.2;
pub const DEFAULT_PERTURB_BOUND: f64 = 0.2;

/// Upper edge of the sampling box `[0, 2pi)`.
pub const DOMAIN_MAX: f64 = std::f64::consts::TAU;

/// Evaluation budget: `outer` restarts (or perturbations), each followed by
/// `inner` hill-climbing steps. Total evaluations: `outer * (1 + inner)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    outer: usize,
    inner: usize,
}

impl Budget {
    pub fn new(outer: usize, inner: usize) -> Result<Self> {
        if outer < 1 {
            return Err(Error::Config("budget needs at least one outer iteration".into()));
        }
        Ok(Budget { outer, inner })
    }

    pub fn outer(self) -> usize {
        self.outer
    }

    pub fn inner(self) -> usize {
        self.inner
    }

    pub fn total_evals(self) -> u64 {
        self.outer as u64 * (1 + self.inner as u64)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            outer: 100,
            inner: 50,
        }
    }
}

/// Result of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptRun {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    /// Best-so-far value after each outer iteration; nondecreasing.
    pub trace: Vec<f64>,
    pub evals: u64,
}

/// How local search moves one coordinate of the incumbent.
///
/// The multiplicative rule rescales the coordinate by the draw itself
/// (`theta_d <- theta_d * delta`), which contracts it toward zero and makes
/// the walk strongly start-dependent; the additive rule nudges the
/// coordinate by the draw. The two rules are deliberately the only
/// difference between the `ls` and `ls-sum` strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbMode {
    /// `theta_d <- theta_d * delta`
    Mult,
    /// `theta_d <- theta_d + delta`
    Sum,
}

impl PerturbMode {
    pub fn apply(self, value: f64, delta: f64) -> f64 {
        match self {
            PerturbMode::Mult => value * delta,
            PerturbMode::Sum => value + delta,
        }
    }
}

/// Greedy hill climb from `start`: each step perturbs one randomly chosen
/// coordinate by `U(-step_scale, step_scale)` and keeps the move only on
/// strict improvement. Consumes exactly `inner + 1` evaluations (one for the
/// start). Returns the best point found, which by construction is the
/// current point.
pub fn shc_inner<F, R>(
    evaluate: &mut F,
    start: &[f64],
    inner: usize,
    step_scale: f64,
    rng: &mut R,
) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    let mut current = start.to_vec();
    let mut value = evaluate(&current);
    for _ in 0..inner {
        let d = rng.random_range(0..current.len());
        let delta = rng.random_range(-step_scale..step_scale);
        let previous = current[d];
        current[d] = previous + delta;
        let candidate = evaluate(&current);
        if candidate > value {
            value = candidate;
        } else {
            current[d] = previous;
        }
    }
    (current, value)
}

/// Stochastic hill climbing with random restarts: every outer iteration
/// resamples a fresh point uniformly from `[0, 2pi)^dim` and climbs from it;
/// the best endpoint across restarts wins.
pub fn shc_rr<F, R>(
    evaluate: &mut F,
    dim: usize,
    budget: Budget,
    step_scale: f64,
    rng: &mut R,
) -> OptRun
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    assert!(dim >= 1, "dimension must be positive");
    let mut best_params = Vec::new();
    let mut best_value = f64::NEG_INFINITY;
    let mut trace = Vec::with_capacity(budget.outer());
    for _ in 0..budget.outer() {
        let start: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..DOMAIN_MAX)).collect();
        let (params, value) = shc_inner(evaluate, &start, budget.inner(), step_scale, rng);
        if value > best_value {
            best_value = value;
            best_params = params;
        }
        trace.push(best_value);
    }
    OptRun {
        best_params,
        best_value,
        trace,
        evals: budget.total_evals(),
    }
}

/// Local search: a single greedy trajectory whose proposals are the
/// perturbation rule itself. Starting from one uniform sample of
/// `[0, 2pi)^dim`, every step perturbs one randomly chosen coordinate with a
/// draw from `U(-perturb_bound, perturb_bound)` (applied per
/// [`PerturbMode`]) and keeps the move only on strict improvement, so the
/// explored region shifts with each accepted perturbation. There are no
/// restarts; the walk is strongly tied to its starting point, which is the
/// behavioral contrast with [`shc_rr`].
///
/// Consumes exactly `budget.total_evals()` evaluations (one for the start,
/// the rest one per proposal) and records the best-so-far value once per
/// outer block, so budgets and traces line up with `shc_rr`.
pub fn local_search<F, R>(
    evaluate: &mut F,
    dim: usize,
    budget: Budget,
    mode: PerturbMode,
    perturb_bound: f64,
    rng: &mut R,
) -> OptRun
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    assert!(dim >= 1, "dimension must be positive");
    assert!(perturb_bound > 0.0, "perturbation bound must be positive");
    let mut current: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..DOMAIN_MAX)).collect();
    let mut value = evaluate(&current);
    let mut trace = Vec::with_capacity(budget.outer());
    let per_block = 1 + budget.inner();
    for block in 0..budget.outer() {
        // the start-point evaluation counts against the first block
        let proposals = if block == 0 { per_block - 1 } else { per_block };
        for _ in 0..proposals {
            let d = rng.random_range(0..dim);
            let delta = rng.random_range(-perturb_bound..perturb_bound);
            let previous = current[d];
            current[d] = mode.apply(previous, delta);
            let candidate = evaluate(&current);
            if candidate > value {
                value = candidate;
            } else {
                current[d] = previous;
            }
        }
        trace.push(value);
    }
    OptRun {
        best_params: current,
        best_value: value,
        trace,
        evals: budget.total_evals(),
    }
}

/// Deterministic per-trial RNG stream: the tuple `(seed, experiment, trial)`
/// fixes the full draw sequence, so trials can run in any order (or in
/// parallel) and still reproduce bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub experiment: u64,
    pub trial: u64,
}

impl RngStream {
    pub fn new(seed: u64, experiment: u64, trial: u64) -> Self {
        RngStream {
            seed,
            experiment,
            trial,
        }
    }

    /// Stream keyed by a configuration id string.
    pub fn for_config(seed: u64, config_id: &str, trial: u64) -> Self {
        RngStream::new(seed, fnv1a64(config_id.as_bytes()), trial)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.experiment.to_le_bytes());
        key[16..24].copy_from_slice(&self.trial.to_le_bytes());
        key[24..32].copy_from_slice(&0x9e37_79b9_7f4a_7c15u64.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }
}

/// FNV-1a over bytes; stable across platforms and runs.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
