//! Shared test helpers: a dense-matrix circuit oracle (independent of the
//! statevector kernels) and small statistics utilities.

#![allow(dead_code)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense column-major-free representation: `m[row][col]` over basis indices
/// with qubit 0 as the least significant bit.
#[derive(Clone)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Vec<Complex64>>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![vec![c(0.0, 0.0); dim]; dim];
        for (i, row) in data.iter_mut().enumerate() {
            row[i] = c(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    pub fn from_2x2(m: [Complex64; 4]) -> Self {
        DenseMatrix {
            dim: 2,
            data: vec![vec![m[0], m[1]], vec![m[2], m[3]]],
        }
    }

    /// Kronecker-lift a single-qubit gate onto `qubit` of an `n`-qubit
    /// register.
    pub fn one_qubit_gate(n: usize, qubit: usize, m: [Complex64; 4]) -> Self {
        let dim = 1 << n;
        let mut data = vec![vec![c(0.0, 0.0); dim]; dim];
        let mask = 1usize << qubit;
        for col in 0..dim {
            let bit = (col >> qubit) & 1;
            for out_bit in 0..2 {
                let row = (col & !mask) | (out_bit << qubit);
                data[row][col] = match (out_bit, bit) {
                    (0, 0) => m[0],
                    (0, 1) => m[1],
                    (1, 0) => m[2],
                    _ => m[3],
                };
            }
        }
        DenseMatrix { dim, data }
    }

    /// CNOT as a permutation matrix.
    pub fn cnot(n: usize, control: usize, target: usize) -> Self {
        let dim = 1 << n;
        let mut data = vec![vec![c(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let row = if (col >> control) & 1 == 1 {
                col ^ (1 << target)
            } else {
                col
            };
            data[row][col] = c(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    /// Diagonal phase `exp(-i gamma w(x))` from per-basis weights.
    pub fn diagonal_phase(weights: &[f64], gamma: f64) -> Self {
        let dim = weights.len();
        let mut data = vec![vec![c(0.0, 0.0); dim]; dim];
        for (i, &w) in weights.iter().enumerate() {
            let (s, cos) = (gamma * w).sin_cos();
            data[i][i] = c(cos, -s);
        }
        DenseMatrix { dim, data }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut data = vec![vec![c(0.0, 0.0); dim]; dim];
        for (row, out) in data.iter_mut().enumerate() {
            for (k, &lhs) in self.data[row].iter().enumerate() {
                if lhs == c(0.0, 0.0) {
                    continue;
                }
                for (col, value) in out.iter_mut().enumerate() {
                    *value += lhs * other.data[k][col];
                }
            }
        }
        DenseMatrix { dim, data }
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len());
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }
}

/// One-sided Welch two-sample t-test: returns `(t, t_crit)` for rejecting
/// `mean(a) <= mean(b)` at the given one-sided confidence level.
pub fn welch_one_sided(a: &[f64], b: &[f64], confidence: f64) -> (f64, f64) {
    use statrs::distribution::{ContinuousCDF, StudentsT};
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let var = |s: &[f64], m: f64| {
        s.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (s.len() as f64 - 1.0)
    };
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (var(a, ma), var(b, mb));
    let se = (va / na + vb / nb).sqrt();
    let t = (ma - mb) / se;
    let df = (va / na + vb / nb).powi(2)
        / ((va / na).powi(2) / (na - 1.0) + (vb / nb).powi(2) / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid t distribution");
    (t, dist.inverse_cdf(confidence))
}

/// One-sided paired t-test: returns `(t, t_crit)` for rejecting
/// `mean(diff) <= 0` at the given one-sided confidence level.
pub fn paired_one_sided(diffs: &[f64], confidence: f64) -> (f64, f64) {
    use statrs::distribution::{ContinuousCDF, StudentsT};
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0);
    let t = mean / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("valid t distribution");
    (t, dist.inverse_cdf(confidence))
}
