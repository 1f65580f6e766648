//! Dense complex statevector with in-place gate application.
//!
//! Amplitudes are indexed so that bit `q` of the basis index is the state of
//! qubit `q` (qubit 0 is the least significant bit). All rotations use the
//! full-angle convention `exp(-i * theta * P)` for a Pauli `P`; the hardware
//! half-angle gate `RP(2 * theta)` is the same operator.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the simulated register size (2^20 amplitudes, 16 MiB).
pub const MAX_QUBITS: usize = 20;

/// A rotation angle in radians. Guaranteed finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateAngle(f64);

impl GateAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() {
            Ok(GateAngle(theta))
        } else {
            Err(Error::Input(format!(
                "gate angle must be finite, got {theta}"
            )))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for GateAngle {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        GateAngle::new(theta)
    }
}

/// `exp(-i theta X)` as a row-major 2x2 matrix.
pub(crate) fn rx_matrix(theta: f64) -> [Complex64; 4] {
    let (s, c) = theta.sin_cos();
    [
        Complex64::new(c, 0.0),
        Complex64::new(0.0, -s),
        Complex64::new(0.0, -s),
        Complex64::new(c, 0.0),
    ]
}

/// `exp(-i theta Y)` as a row-major 2x2 matrix (purely real).
pub(crate) fn ry_matrix(theta: f64) -> [Complex64; 4] {
    let (s, c) = theta.sin_cos();
    [
        Complex64::new(c, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(c, 0.0),
    ]
}

/// Row-major product `a * b` of two 2x2 matrices.
pub(crate) fn mat2_mul(a: [Complex64; 4], b: [Complex64; 4]) -> [Complex64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// Dense state of an `n`-qubit register: `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition `|+>^n`: every amplitude equals `2^(-n/2)`.
    pub fn new_plus_state(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let amp = Complex64::new(0.5f64.powf(n as f64 / 2.0), 0.0);
        Ok(StateVector {
            n,
            amps: vec![amp; 1 << n],
        })
    }

    /// Computational basis state `|x>`.
    pub fn basis_state(n: usize, x: usize) -> Result<Self> {
        Self::check_size(n)?;
        if x >= 1 << n {
            return Err(Error::Index(format!(
                "basis index {x} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[x] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Wrap raw amplitudes. The length must be a power of two in range.
    pub fn from_amps(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::Input(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        Self::check_size(n)?;
        Ok(StateVector { n, amps })
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Config(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n}"
            )));
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::Index(format!(
                "qubit {q} out of range for {}-qubit state",
                self.n
            )));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Reset every amplitude to `value` (used to re-prepare `|+>^n`).
    pub(crate) fn fill(&mut self, value: Complex64) {
        self.amps.fill(value);
    }

    /// `sqrt(sum |amp|^2)`.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Measurement probability of basis state `x`.
    pub fn probability(&self, x: usize) -> f64 {
        self.amps[x].norm_sqr()
    }

    /// Apply an arbitrary 2x2 matrix (row-major) to qubit `q`.
    pub fn apply_one_qubit(&mut self, q: usize, m: [Complex64; 4]) -> Result<()> {
        self.check_qubit(q)?;
        let stride = 1 << q;
        for chunk in self.amps.chunks_exact_mut(stride * 2) {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m[0] * x + m[1] * y;
                *b = m[2] * x + m[3] * y;
            }
        }
        Ok(())
    }

    /// Apply the same 2x2 matrix to every qubit in the register,
    /// cache-blocked like the rotation columns.
    pub fn apply_one_qubit_all(&mut self, m: [Complex64; 4]) {
        let pass = |amps: &mut [Complex64], stride: usize| {
            for chunk in amps.chunks_exact_mut(stride * 2) {
                let (lo, hi) = chunk.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = m[0] * x + m[1] * y;
                    *b = m[2] * x + m[3] * y;
                }
            }
        };
        self.column_sweep(pass);
    }

    /// `exp(-i theta X)` on every qubit. The column is applied cache-blocked
    /// (single-qubit gates on distinct qubits commute): all low qubits are
    /// swept inside one L1-sized block before moving on, then the remaining
    /// high qubits sweep the full register. Exploits the real-diagonal,
    /// imaginary-offdiagonal structure of the rotation.
    pub fn apply_rx_all(&mut self, theta: f64) {
        let (s, c) = theta.sin_cos();
        let pass = |amps: &mut [Complex64], stride: usize| {
            for chunk in amps.chunks_exact_mut(stride * 2) {
                let (lo, hi) = chunk.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (ar, ai, br, bi) = (a.re, a.im, b.re, b.im);
                    *a = Complex64::new(c * ar + s * bi, c * ai - s * br);
                    *b = Complex64::new(s * ai + c * br, c * bi - s * ar);
                }
            }
        };
        self.column_sweep(pass);
    }

    /// `exp(-i theta Y)` on every qubit; same blocking, real matrix.
    pub fn apply_ry_all(&mut self, theta: f64) {
        let (s, c) = theta.sin_cos();
        let pass = |amps: &mut [Complex64], stride: usize| {
            for chunk in amps.chunks_exact_mut(stride * 2) {
                let (lo, hi) = chunk.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = Complex64::new(c * x.re - s * y.re, c * x.im - s * y.im);
                    *b = Complex64::new(s * x.re + c * y.re, s * x.im + c * y.im);
                }
            }
        };
        self.column_sweep(pass);
    }

    /// Run a per-stride pass for every qubit, keeping low-qubit passes inside
    /// 32 KiB blocks so they stay L1-resident.
    fn column_sweep(&mut self, mut pass: impl FnMut(&mut [Complex64], usize)) {
        const BLOCK_BITS: usize = 11;
        let block_bits = self.n.min(BLOCK_BITS);
        for block in self.amps.chunks_exact_mut(1 << block_bits) {
            for q in 0..block_bits {
                pass(block, 1 << q);
            }
        }
        for q in block_bits..self.n {
            pass(&mut self.amps, 1 << q);
        }
    }

    /// `exp(-i theta X)` on qubit `q`.
    pub fn apply_rx(&mut self, q: usize, theta: GateAngle) -> Result<()> {
        self.apply_one_qubit(q, rx_matrix(theta.radians()))
    }

    /// `exp(-i theta Y)` on qubit `q`.
    pub fn apply_ry(&mut self, q: usize, theta: GateAngle) -> Result<()> {
        self.apply_one_qubit(q, ry_matrix(theta.radians()))
    }

    /// `exp(-i theta Z)` on qubit `q`: multiplies amplitudes by `exp(-i theta)`
    /// where bit `q` is clear and by `exp(+i theta)` where it is set.
    pub fn apply_z_phase(&mut self, q: usize, theta: GateAngle) -> Result<()> {
        self.check_qubit(q)?;
        let (s, c) = theta.radians().sin_cos();
        let p0 = Complex64::new(c, -s);
        let p1 = Complex64::new(c, s);
        let stride = 1 << q;
        for chunk in self.amps.chunks_exact_mut(stride * 2) {
            let (lo, hi) = chunk.split_at_mut(stride);
            for a in lo {
                *a *= p0;
            }
            for b in hi {
                *b *= p1;
            }
        }
        Ok(())
    }

    /// CNOT: where bit `control` is set, swap the amplitude pair that differs
    /// only in bit `target`.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Index(format!(
                "CNOT control and target must differ, both were {control}"
            )));
        }
        let cm = 1usize << control;
        let tm = 1usize << target;
        for x in 0..self.amps.len() {
            if x & cm != 0 && x & tm == 0 {
                self.amps.swap(x, x | tm);
            }
        }
        Ok(())
    }

    /// Fused `exp(-i gamma Z_j Z_k)`: multiplies by `exp(-i gamma)` where bits
    /// `j` and `k` agree and by `exp(+i gamma)` where they differ. Identical
    /// (including global phase) to `CNOT(j,k) . Zphase(k, gamma) . CNOT(j,k)`.
    pub fn apply_zz_phase(&mut self, j: usize, k: usize, gamma: GateAngle) -> Result<()> {
        self.check_qubit(j)?;
        self.check_qubit(k)?;
        if j == k {
            return Err(Error::Index(format!(
                "ZZ phase qubits must differ, both were {j}"
            )));
        }
        let (s, c) = gamma.radians().sin_cos();
        let phases = [Complex64::new(c, -s), Complex64::new(c, s)];
        for (x, a) in self.amps.iter_mut().enumerate() {
            *a *= phases[((x >> j) ^ (x >> k)) & 1];
        }
        Ok(())
    }

    /// Diagonal phase sweep through a class table: amplitude `x` is multiplied
    /// by `lut[class[x]]`. Used to apply a whole commuting ZZ/Z layer at once.
    pub fn apply_phase_lut(&mut self, class: &[u16], lut: &[Complex64]) -> Result<()> {
        if class.len() != self.amps.len() {
            return Err(Error::Input(format!(
                "phase class table length {} does not match state length {}",
                class.len(),
                self.amps.len()
            )));
        }
        for (a, &c) in self.amps.iter_mut().zip(class) {
            *a *= lut[c as usize];
        }
        Ok(())
    }

    /// Diagonal sweep `amps[x] *= exp(-i gamma diag[x])`.
    pub fn apply_diag_exp(&mut self, diag: &[f64], gamma: f64) -> Result<()> {
        if diag.len() != self.amps.len() {
            return Err(Error::Input(format!(
                "diagonal length {} does not match state length {}",
                diag.len(),
                self.amps.len()
            )));
        }
        for (a, &d) in self.amps.iter_mut().zip(diag) {
            let (s, c) = (gamma * d).sin_cos();
            *a *= Complex64::new(c, -s);
        }
        Ok(())
    }

    /// Basis relabeling `new[perm[x]] = old[x]`; `perm` must be a bijection
    /// on the index range (a sequence of CNOTs is one, so a fixed ladder can
    /// be applied in a single pass).
    pub fn apply_index_permutation(
        &mut self,
        perm: &[u32],
        scratch: &mut Vec<Complex64>,
    ) -> Result<()> {
        if perm.len() != self.amps.len() {
            return Err(Error::Input(format!(
                "permutation length {} does not match state length {}",
                perm.len(),
                self.amps.len()
            )));
        }
        // a bijection overwrites every slot, so no clearing is needed
        scratch.resize(self.amps.len(), Complex64::new(0.0, 0.0));
        for (&p, &a) in perm.iter().zip(self.amps.iter()) {
            scratch[p as usize] = a;
        }
        std::mem::swap(&mut self.amps, scratch);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Truncated series for exp(-i theta P), independent of the closed forms
    /// used by the implementation.
    fn mat_exp_2x2(p: [Complex64; 4], theta: f64) -> [Complex64; 4] {
        let mut result = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let mut term = result;
        let a = -I * theta;
        for k in 1..=40 {
            term = mat2_mul(term, p.map(|e| e * a / k as f64));
            for (r, t) in result.iter_mut().zip(term) {
                *r += t;
            }
        }
        result
    }

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amps(amps).unwrap()
    }

    fn assert_states_close(a: &StateVector, b: &StateVector, tol: f64) {
        for (x, (u, v)) in a.amps().iter().zip(b.amps()).enumerate() {
            assert!(
                (u - v).norm() < tol,
                "amplitude {x} differs: {u} vs {v}"
            );
        }
    }

    #[test]
    fn plus_state_amplitudes() {
        let s = StateVector::new_plus_state(1).unwrap();
        assert_abs_diff_eq!(s.amps()[0].re, 0.70710678, epsilon = 1e-8);
        assert_abs_diff_eq!(s.amps()[1].re, 0.70710678, epsilon = 1e-8);

        let s = StateVector::new_plus_state(2).unwrap();
        for a in s.amps() {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        }

        let s = StateVector::new_plus_state(4).unwrap();
        assert_eq!(s.amps().len(), 16);
        for a in s.amps() {
            assert_abs_diff_eq!(a.re, 0.25, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn plus_state_rejects_bad_sizes() {
        assert!(StateVector::new_plus_state(0).is_err());
        assert!(StateVector::new_plus_state(21).is_err());
    }

    #[test]
    fn rx_examples() {
        // theta = 0 is the identity
        let mut s = random_state(3, 1);
        let before = s.clone();
        s.apply_rx(1, GateAngle::new(0.0).unwrap()).unwrap();
        assert_states_close(&s, &before, 1e-15);

        // exp(-i pi/2 X)|0> = -i|1>
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply_rx(0, GateAngle::new(std::f64::consts::FRAC_PI_2).unwrap())
            .unwrap();
        assert!((s.amps()[0] - c(0.0, 0.0)).norm() < 1e-12);
        assert!((s.amps()[1] - c(0.0, -1.0)).norm() < 1e-12);

        // theta = pi/4 against the series-exponential oracle
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply_rx(0, GateAngle::new(std::f64::consts::FRAC_PI_4).unwrap())
            .unwrap();
        assert!((s.amps()[0] - c(0.70710678, 0.0)).norm() < 1e-8);
        assert!((s.amps()[1] - c(0.0, -0.70710678)).norm() < 1e-8);
        let x = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let m = mat_exp_2x2(x, std::f64::consts::FRAC_PI_4);
        assert!((s.amps()[0] - m[0]).norm() < 1e-13);
        assert!((s.amps()[1] - m[2]).norm() < 1e-13);
    }

    #[test]
    fn ry_examples() {
        let mut s = random_state(2, 2);
        let before = s.clone();
        s.apply_ry(0, GateAngle::new(0.0).unwrap()).unwrap();
        assert_states_close(&s, &before, 1e-15);

        // exp(-i pi/2 Y)|0> = |1>
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply_ry(0, GateAngle::new(std::f64::consts::FRAC_PI_2).unwrap())
            .unwrap();
        assert!((s.amps()[0]).norm() < 1e-12);
        assert!((s.amps()[1] - c(1.0, 0.0)).norm() < 1e-12);

        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply_ry(0, GateAngle::new(std::f64::consts::FRAC_PI_4).unwrap())
            .unwrap();
        assert!((s.amps()[0] - c(0.70710678, 0.0)).norm() < 1e-8);
        assert!((s.amps()[1] - c(0.70710678, 0.0)).norm() < 1e-8);
        let y = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let m = mat_exp_2x2(y, std::f64::consts::FRAC_PI_4);
        assert!((s.amps()[0] - m[0]).norm() < 1e-13);
        assert!((s.amps()[1] - m[2]).norm() < 1e-13);
    }

    #[test]
    fn z_phase_examples() {
        let mut s = random_state(2, 3);
        let before = s.clone();
        s.apply_z_phase(1, GateAngle::new(0.0).unwrap()).unwrap();
        assert_states_close(&s, &before, 1e-15);

        // theta = pi/2 on (|0> + |1>)/sqrt(2) -> (-i|0> + i|1>)/sqrt(2)
        let mut s = StateVector::new_plus_state(1).unwrap();
        s.apply_z_phase(0, GateAngle::new(std::f64::consts::FRAC_PI_2).unwrap())
            .unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amps()[0] - c(0.0, -r)).norm() < 1e-12);
        assert!((s.amps()[1] - c(0.0, r)).norm() < 1e-12);

        // diagonal: probabilities untouched
        let mut s = random_state(3, 4);
        let probs: Vec<f64> = s.amps().iter().map(|a| a.norm_sqr()).collect();
        s.apply_z_phase(2, GateAngle::new(0.3).unwrap()).unwrap();
        for (x, p) in probs.iter().enumerate() {
            assert_abs_diff_eq!(s.probability(x), *p, epsilon = 1e-14);
        }
    }

    #[test]
    fn cnot_truth_table() {
        // |10> (qubit 1 set) with control 1, target 0 -> |11>
        let mut s = StateVector::basis_state(2, 0b10).unwrap();
        s.apply_cnot(1, 0).unwrap();
        assert!((s.amps()[0b11] - c(1.0, 0.0)).norm() < 1e-15);

        // control clear: |00> unchanged
        let mut s = StateVector::basis_state(2, 0b00).unwrap();
        s.apply_cnot(1, 0).unwrap();
        assert!((s.amps()[0b00] - c(1.0, 0.0)).norm() < 1e-15);

        // involution on a random state
        let mut s = random_state(4, 5);
        let before = s.clone();
        s.apply_cnot(2, 0).unwrap();
        s.apply_cnot(2, 0).unwrap();
        assert_states_close(&s, &before, 1e-12);
    }

    #[test]
    fn cnot_rejects_equal_wires() {
        let mut s = StateVector::new_plus_state(2).unwrap();
        assert!(matches!(s.apply_cnot(1, 1), Err(Error::Index(_))));
        assert!(matches!(s.apply_cnot(0, 2), Err(Error::Index(_))));
    }

    #[test]
    fn zz_phase_examples() {
        let mut s = random_state(3, 6);
        let before = s.clone();
        s.apply_zz_phase(0, 2, GateAngle::new(0.0).unwrap()).unwrap();
        assert_states_close(&s, &before, 1e-15);

        // gamma = pi on |00>: equal bits pick up exp(-i pi) = -1
        let mut s = StateVector::basis_state(2, 0).unwrap();
        s.apply_zz_phase(0, 1, GateAngle::new(std::f64::consts::PI).unwrap())
            .unwrap();
        assert!((s.amps()[0] - c(-1.0, 0.0)).norm() < 1e-12);

        assert!(matches!(
            s.apply_zz_phase(1, 1, GateAngle::new(0.5).unwrap()),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn zz_phase_equals_cnot_z_cnot() {
        // The decomposition itself is the oracle.
        let gamma = GateAngle::new(0.7).unwrap();
        let mut fused = random_state(3, 7);
        let mut decomposed = fused.clone();
        fused.apply_zz_phase(0, 2, gamma).unwrap();
        decomposed.apply_cnot(0, 2).unwrap();
        decomposed.apply_z_phase(2, gamma).unwrap();
        decomposed.apply_cnot(0, 2).unwrap();
        assert_states_close(&fused, &decomposed, 1e-12);
    }

    #[test]
    fn phase_lut_matches_per_edge_gates() {
        // One LUT pass over (parity classes) == explicit ZZ gates.
        let n = 4;
        let edges = [(0usize, 1usize), (1, 2), (2, 3), (0, 3)];
        let gamma = 0.37;
        let mut direct = random_state(n, 8);
        let mut fused = direct.clone();
        for &(j, k) in &edges {
            direct
                .apply_zz_phase(j, k, GateAngle::new(gamma).unwrap())
                .unwrap();
        }
        // weight = (#equal - #differ) over edges, per basis state
        let mut class = Vec::new();
        let mut values = Vec::new();
        for x in 0..1usize << n {
            let mut w = 0i32;
            for &(j, k) in &edges {
                w += if ((x >> j) ^ (x >> k)) & 1 == 0 { 1 } else { -1 };
            }
            let idx = match values.iter().position(|&v| v == w) {
                Some(i) => i,
                None => {
                    values.push(w);
                    values.len() - 1
                }
            };
            class.push(idx as u16);
        }
        let lut: Vec<Complex64> = values
            .iter()
            .map(|&w| {
                let (s, c) = (gamma * w as f64).sin_cos();
                Complex64::new(c, -s)
            })
            .collect();
        fused.apply_phase_lut(&class, &lut).unwrap();
        assert_states_close(&fused, &direct, 1e-12);

        let mut diag_path = random_state(n, 8);
        let diag: Vec<f64> = (0..1usize << n)
            .map(|x| {
                edges
                    .iter()
                    .map(|&(j, k)| if ((x >> j) ^ (x >> k)) & 1 == 0 { 1.0 } else { -1.0 })
                    .sum()
            })
            .collect();
        diag_path.apply_diag_exp(&diag, gamma).unwrap();
        assert_states_close(&diag_path, &direct, 1e-12);
    }

    #[test]
    fn index_permutation_matches_cnot_chain() {
        let n = 4;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
            .collect();
        let mut serial = random_state(n, 9);
        let mut permuted = serial.clone();
        for &(c0, t) in &pairs {
            serial.apply_cnot(c0, t).unwrap();
        }
        let perm: Vec<u32> = (0..1usize << n)
            .map(|x| {
                let mut y = x;
                for &(c0, t) in &pairs {
                    if (y >> c0) & 1 == 1 {
                        y ^= 1 << t;
                    }
                }
                y as u32
            })
            .collect();
        let mut scratch = Vec::new();
        permuted.apply_index_permutation(&perm, &mut scratch).unwrap();
        assert_states_close(&permuted, &serial, 1e-15);
    }

    #[test]
    fn specialized_columns_match_general_kernel() {
        let theta = -1.234;
        let mut fast = random_state(5, 21);
        let mut general = fast.clone();
        fast.apply_rx_all(theta);
        general.apply_one_qubit_all(rx_matrix(theta));
        assert_states_close(&fast, &general, 1e-15);

        let mut fast = random_state(5, 22);
        let mut general = fast.clone();
        fast.apply_ry_all(theta);
        general.apply_one_qubit_all(ry_matrix(theta));
        assert_states_close(&fast, &general, 1e-15);
    }

    #[test]
    fn pauli_commutators() {
        let x = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let y = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let z = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];

        let comm = |a: [Complex64; 4], b: [Complex64; 4]| {
            let ab = mat2_mul(a, b);
            let ba = mat2_mul(b, a);
            [ab[0] - ba[0], ab[1] - ba[1], ab[2] - ba[2], ab[3] - ba[3]]
        };
        let close = |m: [Complex64; 4], e: [Complex64; 4]| {
            m.iter().zip(e).all(|(a, b)| (a - b).norm() < 1e-12)
        };

        // [Z,X] = 2iY, [Z,Y] = -2iX, [X,Y] = 2iZ, [Z,Z] = 0
        assert!(close(comm(z, x), y.map(|e| e * 2.0 * I)));
        assert!(close(comm(z, y), x.map(|e| e * -2.0 * I)));
        assert!(close(comm(x, y), z.map(|e| e * 2.0 * I)));
        assert!(close(comm(z, z), [c(0.0, 0.0); 4]));
    }

    #[test]
    fn gate_angle_rejects_non_finite() {
        assert!(GateAngle::new(f64::NAN).is_err());
        assert!(GateAngle::new(f64::INFINITY).is_err());
        assert!(GateAngle::new(-1.5).is_ok());
    }

    #[test]
    fn norm_preserved_over_random_gate_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 10;
        let mut s = StateVector::new_plus_state(n).unwrap();
        for _ in 0..1000 {
            let theta = GateAngle::new(rng.random_range(-std::f64::consts::TAU..std::f64::consts::TAU)).unwrap();
            match rng.random_range(0..5) {
                0 => s.apply_rx(rng.random_range(0..n), theta).unwrap(),
                1 => s.apply_ry(rng.random_range(0..n), theta).unwrap(),
                2 => s.apply_z_phase(rng.random_range(0..n), theta).unwrap(),
                3 => {
                    let a = rng.random_range(0..n);
                    let b = (a + rng.random_range(1..n)) % n;
                    s.apply_cnot(a, b).unwrap();
                }
                _ => {
                    let a = rng.random_range(0..n);
                    let b = (a + rng.random_range(1..n)) % n;
                    s.apply_zz_phase(a, b, theta).unwrap();
                }
            }
        }
        assert!((s.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn linearity_on_superpositions() {
        // Gate applied to a superposition == superposition of gate applied to
        // the basis parts.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let w0 = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let w1 = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let x0 = rng.random_range(0..4usize);
            let x1 = (x0 + rng.random_range(1..4usize)) % 4;
            let theta = GateAngle::new(rng.random_range(-3.0..3.0)).unwrap();
            let q = rng.random_range(0..2usize);

            let mut combined = StateVector::from_amps({
                let mut amps = vec![c(0.0, 0.0); 4];
                amps[x0] = w0;
                amps[x1] = w1;
                amps
            })
            .unwrap();
            combined.apply_rx(q, theta).unwrap();

            let mut part0 = StateVector::basis_state(2, x0).unwrap();
            part0.apply_rx(q, theta).unwrap();
            let mut part1 = StateVector::basis_state(2, x1).unwrap();
            part1.apply_rx(q, theta).unwrap();

            for i in 0..4 {
                let expect = w0 * part0.amps()[i] + w1 * part1.amps()[i];
                assert!((combined.amps()[i] - expect).norm() < 1e-12);
            }
        }
    }
}
