//! Max-Cut and random-field Ising instances, classical costs, and the
//! exhaustive optimum used as the reference for every reported gap.
//!
//! Every problem kind is scored in the maximization direction: Max-Cut
//! returns the cut size, the Ising kind returns the negated energy
//! `-(sum_{(j,k)} z_j z_k + sum_j h_j z_j)` with spins `z_i = 1 - 2 x_i`
//! (bit 0 maps to spin +1).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::statevector::MAX_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    MaxcutCyclic,
    MaxcutComplete,
    Rim,
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::MaxcutCyclic => "maxcut_cyclic",
            ProblemKind::MaxcutComplete => "maxcut_complete",
            ProblemKind::Rim => "rim",
        }
    }
}

/// An optimization instance: a graph on `n` nodes plus per-node fields.
/// Fields are all zero for the Max-Cut kinds. Edges are stored sorted
/// lexicographically with `j < k`; this is also the JSON interchange shape:
/// `{"kind": "...", "n": ..., "edges": [[j,k],...], "fields": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub kind: ProblemKind,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub fields: Vec<f64>,
}

/// Exhaustive-scan result: the best attainable score and every bitstring
/// (as a basis index) attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub opt_value: f64,
    pub argmax: Vec<usize>,
}

impl ProblemInstance {
    /// Ring graph C_n with zero fields.
    pub fn cyclic_maxcut(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!(
                "cyclic Max-Cut needs at least 3 nodes, got {n}"
            )));
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Ok(ProblemInstance {
            kind: ProblemKind::MaxcutCyclic,
            n,
            edges,
            fields: vec![0.0; n],
        })
    }

    /// Complete graph K_n with zero fields.
    pub fn complete_maxcut(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!(
                "complete Max-Cut needs at least 2 nodes, got {n}"
            )));
        }
        Ok(ProblemInstance {
            kind: ProblemKind::MaxcutComplete,
            n,
            edges: all_pairs(n),
            fields: vec![0.0; n],
        })
    }

    /// Random-field Ising instance: a path backbone `(i, i+1)`, `m` extra
    /// distinct non-backbone edges with `m` uniform in `1..=n`, and fields
    /// drawn i.i.d. from `U(-1, 1)`. Deterministic for a fixed seed.
    pub fn random_ising(seed: u64, n: usize) -> Result<Self> {
        if !(5..=15).contains(&n) {
            return Err(Error::Config(format!(
                "Ising instances support 5..=15 particles, got {n}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let backbone: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let candidates: Vec<(usize, usize)> = all_pairs(n)
            .into_iter()
            .filter(|&(j, k)| k != j + 1)
            .collect();
        let m = rng.random_range(1..=n);
        let mut edges = backbone;
        for idx in rand::seq::index::sample(&mut rng, candidates.len(), m) {
            edges.push(candidates[idx]);
        }
        edges.sort_unstable();
        let fields = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        Ok(ProblemInstance {
            kind: ProblemKind::Rim,
            n,
            edges,
            fields,
        })
    }

    /// Check the structural invariants of the stored instance. Run on every
    /// instance loaded from disk.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > MAX_QUBITS {
            return Err(Error::Config(format!(
                "instance node count {} out of range 2..={MAX_QUBITS}",
                self.n
            )));
        }
        if self.fields.len() != self.n {
            return Err(Error::Input(format!(
                "instance has {} fields for {} nodes",
                self.fields.len(),
                self.n
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(j, k) in &self.edges {
            if j >= k || k >= self.n {
                return Err(Error::Input(format!(
                    "edge ({j}, {k}) violates 0 <= j < k < n"
                )));
            }
            if !seen.insert((j, k)) {
                return Err(Error::Input(format!("duplicate edge ({j}, {k})")));
            }
        }
        match self.kind {
            ProblemKind::MaxcutCyclic => {
                let expect = ProblemInstance::cyclic_maxcut(self.n)?.edges;
                if self.edges != expect {
                    return Err(Error::Input(
                        "cyclic instance edges are not the ring".into(),
                    ));
                }
                self.require_zero_fields()?;
            }
            ProblemKind::MaxcutComplete => {
                if self.edges != all_pairs(self.n) {
                    return Err(Error::Input(
                        "complete instance edges are not all pairs".into(),
                    ));
                }
                self.require_zero_fields()?;
            }
            ProblemKind::Rim => {
                if !(5..=15).contains(&self.n) {
                    return Err(Error::Config(format!(
                        "Ising instance has {} particles, supported range is 5..=15",
                        self.n
                    )));
                }
                for i in 0..self.n - 1 {
                    if !seen.contains(&(i, i + 1)) {
                        return Err(Error::Input(format!(
                            "Ising instance is missing backbone edge ({i}, {})",
                            i + 1
                        )));
                    }
                }
                if self.fields.iter().any(|h| !(-1.0..=1.0).contains(h)) {
                    return Err(Error::Input("Ising field outside [-1, 1]".into()));
                }
            }
        }
        Ok(())
    }

    fn require_zero_fields(&self) -> Result<()> {
        if self.fields.iter().any(|&h| h != 0.0) {
            return Err(Error::Input("Max-Cut instance has nonzero fields".into()));
        }
        Ok(())
    }

    /// Score of the bitstring packed as a basis index (bit `i` = node `i`).
    /// Max-Cut: number of cut edges. Ising: negated energy.
    pub fn cost_of_index(&self, x: usize) -> f64 {
        match self.kind {
            ProblemKind::MaxcutCyclic | ProblemKind::MaxcutComplete => self
                .edges
                .iter()
                .filter(|&&(j, k)| ((x >> j) ^ (x >> k)) & 1 == 1)
                .count() as f64,
            ProblemKind::Rim => {
                let spin = |i: usize| 1.0 - 2.0 * ((x >> i) & 1) as f64;
                let mut energy = 0.0;
                for &(j, k) in &self.edges {
                    energy += spin(j) * spin(k);
                }
                for (j, &h) in self.fields.iter().enumerate() {
                    energy += h * spin(j);
                }
                -energy
            }
        }
    }

    /// Score of an explicit bitstring; `bits[i]` is node `i`.
    pub fn cost_of_bitstring(&self, bits: &[bool]) -> Result<f64> {
        if bits.len() != self.n {
            return Err(Error::Input(format!(
                "bitstring length {} does not match {} nodes",
                bits.len(),
                self.n
            )));
        }
        let x = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
        Ok(self.cost_of_index(x))
    }

    /// Exhaustive scan of all `2^n` bitstrings. Returns the maximum score
    /// and the complete (sorted) list of maximizers.
    pub fn brute_force_optimum(&self) -> Result<OracleResult> {
        if self.n > MAX_QUBITS {
            return Err(Error::Config(format!(
                "refusing exhaustive scan for n = {} (> {MAX_QUBITS})",
                self.n
            )));
        }
        let size = 1usize << self.n;

        #[cfg(feature = "parallel")]
        let (opt_value, mut argmax) = {
            use rayon::prelude::*;
            (0..size)
                .into_par_iter()
                .fold(
                    || (f64::NEG_INFINITY, Vec::new()),
                    |(mut best, mut arg), x| {
                        let v = self.cost_of_index(x);
                        if v > best {
                            best = v;
                            arg.clear();
                            arg.push(x);
                        } else if v == best {
                            arg.push(x);
                        }
                        (best, arg)
                    },
                )
                .reduce(
                    || (f64::NEG_INFINITY, Vec::new()),
                    |(b1, mut a1), (b2, mut a2)| {
                        if b1 > b2 {
                            (b1, a1)
                        } else if b2 > b1 {
                            (b2, a2)
                        } else {
                            a1.append(&mut a2);
                            (b1, a1)
                        }
                    },
                )
        };

        #[cfg(not(feature = "parallel"))]
        let (opt_value, mut argmax) = {
            let mut best = f64::NEG_INFINITY;
            let mut arg = Vec::new();
            for x in 0..size {
                let v = self.cost_of_index(x);
                if v > best {
                    best = v;
                    arg.clear();
                    arg.push(x);
                } else if v == best {
                    arg.push(x);
                }
            }
            (best, arg)
        };

        argmax.sort_unstable();
        Ok(OracleResult { opt_value, argmax })
    }

    pub fn to_json(&self) -> String {
        // serialization of this shape cannot fail
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let instance: ProblemInstance = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("malformed instance JSON: {e}")))?;
        instance.validate()?;
        Ok(instance)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect()
}

/// Render a basis index as the bitstring `x_0 x_1 ... x_{n-1}` (node 0 first).
pub fn format_bitstring(x: usize, n: usize) -> String {
    (0..n)
        .map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}
