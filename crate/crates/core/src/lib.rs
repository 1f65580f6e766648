//! Exact statevector benchmark for layered variational circuits on Max-Cut
//! and random-field Ising instances, optimized with three derivative-free
//! strategies (hill climbing with random restarts, multiplicative local
//! search, additive local search) under identical evaluation budgets.
//!
//! The crate is organized around the experiment pipeline:
//!
//! - [`statevector`]: dense `2^n` amplitude register with in-place gates
//! - [`problems`]: instance construction, classical scores, exhaustive optima
//! - [`ansatz`]: the layered circuit (phase operator + RX/RY mixer, with an
//!   optional CNOT entanglement stage)
//! - [`objective`]: exact expectations and the compiled per-instance
//!   evaluator driving the optimizer loop
//! - [`optimizers`]: the three search strategies and deterministic RNG
//!   streams
//! - [`harness`]: experiment configs, trial persistence, campaign runs, and
//!   summary tables
//!
//! With the default `parallel` feature, independent trials and campaign
//! cells run on a rayon pool; results are identical to the sequential build
//! because every trial draws from its own keyed RNG stream.

pub mod ansatz;
pub mod error;
pub mod harness;
pub mod objective;
pub mod optimizers;
pub mod problems;
pub mod statevector;

pub use error::{Error, Result};
