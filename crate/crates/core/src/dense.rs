//! Exact state-vector simulation used as an oracle at small qubit counts.
//!
//! Qubit `q` is bit `q` of the basis-state index.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::backend::{check_observable, Backend, Outcome, Prep};
use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::pauli::PauliOperator;
use crate::tableau::StabilizerState;

pub const DEFAULT_DENSE_CAP: usize = 14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn phase_factor(k: u32) -> Complex64 {
    [ONE, I, -ONE, -I][(k & 3) as usize]
}

impl DenseState {
    /// `|0…0>` with the default cap.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_DENSE_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if n > cap {
            return Err(Error::DenseCapExceeded { requested: n, cap });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(Self { n, amps })
    }

    /// Run a Clifford preparation circuit from `|0…0>`.
    pub fn from_circuit(n: usize, gates: &[CliffordGate]) -> Result<Self> {
        let mut s = Self::new(n)?;
        for g in gates {
            s.apply_gate(g)?;
        }
        Ok(s)
    }

    /// Vector for a normalised list of amplitudes.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameters(format!("{len} amplitudes is not 2^n")));
        }
        let n = len.trailing_zeros() as usize;
        if n > DEFAULT_DENSE_CAP {
            return Err(Error::DenseCapExceeded { requested: n, cap: DEFAULT_DENSE_CAP });
        }
        let mut s = Self { n, amps };
        let norm = s.norm_sqr();
        if norm <= 0.0 {
            return Err(Error::InvalidParameters("zero vector".into()));
        }
        s.scale(1.0 / norm.sqrt());
        Ok(s)
    }

    /// State vector of a stabilizer state (global phase arbitrary).
    pub fn from_stabilizer(state: &StabilizerState) -> Result<Self> {
        let n = state.n_qubits();
        if n > DEFAULT_DENSE_CAP {
            return Err(Error::DenseCapExceeded { requested: n, cap: DEFAULT_DENSE_CAP });
        }
        // Find a computational basis state in the support, then project onto
        // the stabilizer group.
        let mut probe = state.clone();
        let mut index = 0usize;
        for q in 0..n {
            let z = PauliOperator::single(n, q, crate::pauli::Pauli::Z)?;
            if probe.project(&z, Outcome::Plus)? == 0.0 {
                probe.project(&z, Outcome::Minus)?;
                index |= 1 << q;
            }
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        let mut dense = Self { n, amps };
        for g in state.stabilizers() {
            let prob = dense.project(g, Outcome::Plus)?;
            debug_assert!(prob > 0.0);
        }
        Ok(dense)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn scale(&mut self, k: f64) {
        for a in &mut self.amps {
            *a *= k;
        }
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange { index: q, n_qubits: self.n });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.validate(self.n)?;
        match *gate {
            CliffordGate::Hadamard { qubit } => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                let bit = 1usize << qubit;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | bit]);
                        self.amps[i] = (a + b) * r;
                        self.amps[i | bit] = (a - b) * r;
                    }
                }
            }
            CliffordGate::Phase { qubit } => {
                let bit = 1usize << qubit;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a *= I;
                    }
                }
            }
            CliffordGate::ControlledNot { control, target } => {
                let (c, t) = (1usize << control, 1usize << target);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply a 2x2 unitary `u` (row-major) to qubit `q`.
    pub fn apply_unitary(&mut self, q: usize, u: &[[Complex64; 2]; 2]) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[0][0] * a + u[0][1] * b;
                self.amps[i | bit] = u[1][0] * a + u[1][1] * b;
            }
        }
        Ok(())
    }

    /// `P|psi>` as a fresh vector.
    fn pauli_image(&self, p: &PauliOperator) -> Vec<Complex64> {
        let (xm, zm) = p.masks();
        let (xm, zm) = (xm as usize, zm as usize);
        let ys = (xm & zm).count_ones();
        let base = phase_factor(p.phase() as u32 + ys);
        let mut out = vec![ZERO; self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (b & zm).count_ones() & 1 == 1 { -base } else { base };
            out[b ^ xm] = sign * a;
        }
        out
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n_qubits() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: p.n_qubits() });
        }
        self.amps = self.pauli_image(p);
        Ok(())
    }

    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        check_observable(p, self.n)?;
        let img = self.pauli_image(p);
        Ok(self.amps.iter().zip(&img).map(|(a, b)| (a.conj() * b).re).sum())
    }

    pub fn project(&mut self, p: &PauliOperator, outcome: Outcome) -> Result<f64> {
        check_observable(p, self.n)?;
        let img = self.pauli_image(p);
        let s = outcome.value() as f64;
        let projected: Vec<Complex64> =
            self.amps.iter().zip(&img).map(|(a, b)| (a + b * s) * 0.5).collect();
        let prob: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
        if prob > 1e-300 {
            self.amps = projected;
            self.scale(1.0 / prob.sqrt());
        }
        Ok(if prob < 1e-14 { 0.0 } else { prob.min(1.0) })
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: other.n });
        }
        let ip: Complex64 = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        Ok(ip.norm_sqr())
    }

    /// Reduced density matrix on `subset`; row index bit `j` ↔ `subset[j]`.
    pub fn reduced_density_matrix(&self, subset: &[usize]) -> Result<DMatrix<Complex64>> {
        let mut mask = 0usize;
        for &q in subset {
            self.check_qubit(q)?;
            if mask & (1 << q) != 0 {
                return Err(Error::InvalidParameters(format!("qubit {q} repeated in subset")));
            }
            mask |= 1 << q;
        }
        let m = subset.len();
        let dim = 1usize << m;
        let mut rho = DMatrix::from_element(dim, dim, ZERO);
        let local = |b: usize| -> usize {
            subset.iter().enumerate().fold(0, |acc, (j, &q)| acc | (((b >> q) & 1) << j))
        };
        // group amplitudes by environment configuration
        let mut by_env: std::collections::HashMap<usize, Vec<(usize, Complex64)>> = Default::default();
        for (b, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() > 0.0 {
                by_env.entry(b & !mask).or_default().push((local(b), *a));
            }
        }
        for entries in by_env.values() {
            for &(i, ai) in entries {
                for &(j, aj) in entries {
                    rho[(i, j)] += ai * aj.conj();
                }
            }
        }
        Ok(rho)
    }

    /// Von Neumann entropy of the reduced state on `subset`, in bits.
    pub fn entropy(&self, subset: &[usize]) -> Result<f64> {
        if subset.is_empty() {
            return Ok(0.0);
        }
        let rho = self.reduced_density_matrix(subset)?;
        let eig = rho.symmetric_eigenvalues();
        Ok(eig
            .iter()
            .filter(|&&l| l > 1e-14)
            .map(|&l| -l * l.log2())
            .sum::<f64>()
            .max(0.0))
    }

    /// `<phi| rho_q |phi>` for the single-qubit reduced state of `q`.
    pub fn qubit_fidelity(&self, q: usize, target: &[Complex64; 2]) -> Result<f64> {
        let rho = self.reduced_density_matrix(&[q])?;
        let mut f = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                f += target[i].conj() * rho[(i, j)] * target[j];
            }
        }
        Ok(f.re)
    }
}

impl Backend for DenseState {
    fn new_register(n: usize) -> Result<Self> {
        DenseState::new(n)
    }

    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: &CliffordGate) -> Result<()> {
        DenseState::apply_gate(self, gate)
    }

    fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        DenseState::apply_pauli(self, p)
    }

    fn prepare(&mut self, qubit: usize, prep: &Prep) -> Result<()> {
        prep.validate()?;
        match prep {
            Prep::Gates(gates) => {
                for g in gates {
                    self.apply_gate(&g.remap(&[qubit])?)?;
                }
                Ok(())
            }
            Prep::State { .. } => self.apply_unitary(qubit, &prep.unitary()),
        }
    }

    fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        DenseState::expectation(self, p)
    }

    fn project(&mut self, p: &PauliOperator, outcome: Outcome) -> Result<f64> {
        DenseState::project(self, p, outcome)
    }
}
