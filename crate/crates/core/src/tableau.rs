//! Stabilizer states in the destabilizer/stabilizer tableau form.
//!
//! Rows `0..n` are destabilizers and rows `n..2n` are stabilizers. Row `i` of
//! the destabilizer half anticommutes with row `i` of the stabilizer half and
//! commutes with every other stabilizer. Each row is a Hermitian
//! [`PauliOperator`] whose phase is 0 or 2 (the sign bit).

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::backend::{check_observable, Backend, Measurement, Outcome, OutcomeSource, Prep, RngSource};
use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::gf2::{self, BitVec};
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    rows: Vec<PauliOperator>,
}

impl StabilizerState {
    /// `|0…0>`: stabilizers `Z_i`, destabilizers `X_i`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        let mut rows = Vec::with_capacity(2 * n);
        for q in 0..n {
            rows.push(PauliOperator::single(n, q, crate::pauli::Pauli::X)?);
        }
        for q in 0..n {
            rows.push(PauliOperator::single(n, q, crate::pauli::Pauli::Z)?);
        }
        Ok(Self { n, rows })
    }

    /// Build from explicit rows; the tableau invariants are checked.
    pub fn from_rows(destabilizers: Vec<PauliOperator>, stabilizers: Vec<PauliOperator>) -> Result<Self> {
        let n = stabilizers.len();
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if destabilizers.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: destabilizers.len() });
        }
        for r in destabilizers.iter().chain(&stabilizers) {
            if r.n_qubits() != n {
                return Err(Error::LengthMismatch { expected: n, actual: r.n_qubits() });
            }
            if !r.is_hermitian() {
                return Err(Error::NonHermitian(r.phase()));
            }
        }
        let mut rows = destabilizers;
        rows.extend(stabilizers);
        let s = Self { n, rows };
        s.check_invariants().map_err(Error::InvalidParameters)?;
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.rows[self.n..]
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.rows[..self.n]
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
                for r in &mut self.rows {
                    let (x, z) = (r.x_bit(qubit), r.z_bit(qubit));
                    if x && z {
                        r.negate();
                    }
                    r.set_bits(qubit, z, x);
                }
            }
            CliffordGate::Phase { qubit } => {
                for r in &mut self.rows {
                    let (x, z) = (r.x_bit(qubit), r.z_bit(qubit));
                    if x && z {
                        r.negate();
                    }
                    if x {
                        r.flip_z(qubit);
                    }
                }
            }
            CliffordGate::ControlledNot { control, target } => {
                for r in &mut self.rows {
                    let (xc, zc) = (r.x_bit(control), r.z_bit(control));
                    let (xt, zt) = (r.x_bit(target), r.z_bit(target));
                    if xc && zt && (xt == zc) {
                        r.negate();
                    }
                    if xc {
                        r.flip_x(target);
                    }
                    if zt {
                        r.flip_z(control);
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugate the state by a Pauli: rows anticommuting with `p` flip sign.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n_qubits() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: p.n_qubits() });
        }
        for r in &mut self.rows {
            if r.symplectic_unchecked(p) {
                r.negate();
            }
        }
        Ok(())
    }

    fn first_anticommuting_stabilizer(&self, p: &PauliOperator) -> Option<usize> {
        (self.n..2 * self.n).find(|&i| self.rows[i].symplectic_unchecked(p))
    }

    /// For `p` in the stabilizer group up to sign, the group element `±p`.
    fn group_element(&self, p: &PauliOperator) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for i in 0..self.n {
            if self.rows[i].symplectic_unchecked(p) {
                acc.mul_assign_unchecked(&self.rows[self.n + i]);
            }
        }
        debug_assert!(acc.eq_up_to_phase(p));
        acc
    }

    /// `Some(outcome)` when measuring `p` is deterministic.
    pub fn deterministic_outcome(&self, p: &PauliOperator) -> Result<Option<Outcome>> {
        check_observable(p, self.n)?;
        if self.first_anticommuting_stabilizer(p).is_some() {
            return Ok(None);
        }
        let g = self.group_element(p);
        Ok(Some(if g.phase() == p.phase() { Outcome::Plus } else { Outcome::Minus }))
    }

    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        Ok(match self.deterministic_outcome(p)? {
            None => 0.0,
            Some(o) => o.value() as f64,
        })
    }

    /// Projective measurement update for a random outcome.
    fn collapse(&mut self, k: usize, p: &PauliOperator, outcome: Outcome) {
        let pivot = self.rows[k].clone();
        for i in 0..2 * self.n {
            if i != k && self.rows[i].symplectic_unchecked(p) {
                self.rows[i].mul_assign_unchecked(&pivot);
            }
        }
        self.rows[k - self.n] = pivot;
        let mut new_row = p.clone();
        if outcome == Outcome::Minus {
            new_row.negate();
        }
        self.rows[k] = new_row;
    }

    pub fn project(&mut self, p: &PauliOperator, outcome: Outcome) -> Result<f64> {
        check_observable(p, self.n)?;
        match self.first_anticommuting_stabilizer(p) {
            Some(k) => {
                self.collapse(k, p, outcome);
                Ok(0.5)
            }
            None => {
                let g = self.group_element(p);
                let det = if g.phase() == p.phase() { Outcome::Plus } else { Outcome::Minus };
                Ok(if det == outcome { 1.0 } else { 0.0 })
            }
        }
    }

    pub fn measure(&mut self, p: &PauliOperator, src: &mut dyn OutcomeSource) -> Result<Measurement> {
        check_observable(p, self.n)?;
        match self.first_anticommuting_stabilizer(p) {
            Some(k) => {
                let outcome = src.choose(0.5);
                self.collapse(k, p, outcome);
                Ok(Measurement { outcome, deterministic: false })
            }
            None => {
                let g = self.group_element(p);
                let outcome = if g.phase() == p.phase() { Outcome::Plus } else { Outcome::Minus };
                Ok(Measurement { outcome, deterministic: true })
            }
        }
    }

    /// Measure with a seeded generator.
    pub fn measure_pauli<R: Rng + ?Sized>(&mut self, p: &PauliOperator, rng: &mut R) -> Result<Measurement> {
        self.measure(p, &mut RngSource(rng))
    }

    /// Von Neumann entropy (bits) of the reduced state on `subset`:
    /// the GF(2) rank of the stabilizers restricted to `subset`, minus `|subset|`.
    pub fn reduced_entropy(&self, subset: &[usize]) -> Result<f64> {
        let mut seen = vec![false; self.n];
        for &q in subset {
            self.check_qubit(q)?;
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidParameters(format!("qubit {q} repeated in subset")));
            }
        }
        if subset.is_empty() {
            return Ok(0.0);
        }
        let m = subset.len();
        let rows: Vec<BitVec> = self
            .stabilizers()
            .iter()
            .map(|s| {
                let mut v = BitVec::zeros(2 * m);
                for (j, &q) in subset.iter().enumerate() {
                    v.set(j, s.x_bit(q));
                    v.set(m + j, s.z_bit(q));
                }
                v
            })
            .collect();
        Ok((gf2::rank(&rows) - m) as f64)
    }

    /// Mutual commutation, destabilizer pairing and full rank.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.n;
        let stab = &self.rows[n..];
        let destab = &self.rows[..n];
        for i in 0..n {
            for j in 0..n {
                if i < j && stab[i].symplectic_unchecked(&stab[j]) {
                    return Err(format!("stabilizers {i} and {j} anticommute"));
                }
                if destab[i].symplectic_unchecked(&stab[j]) != (i == j) {
                    return Err(format!("destabilizer {i} pairs wrongly with stabilizer {j}"));
                }
            }
            if !stab[i].is_hermitian() || !destab[i].is_hermitian() {
                return Err(format!("row {i} is not Hermitian"));
            }
        }
        let bits: Vec<BitVec> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = BitVec::zeros(2 * n);
                for q in 0..n {
                    v.set(q, r.x_bit(q));
                    v.set(n + q, r.z_bit(q));
                }
                v
            })
            .collect();
        if gf2::rank(&bits) != 2 * n {
            return Err("tableau rows are not independent".into());
        }
        Ok(())
    }
}

impl Backend for StabilizerState {
    fn new_register(n: usize) -> Result<Self> {
        StabilizerState::new(n)
    }

    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: &CliffordGate) -> Result<()> {
        StabilizerState::apply_gate(self, gate)
    }

    fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        StabilizerState::apply_pauli(self, p)
    }

    fn prepare(&mut self, qubit: usize, prep: &Prep) -> Result<()> {
        self.check_qubit(qubit)?;
        prep.validate()?;
        match prep {
            Prep::Gates(gates) => {
                for g in gates {
                    self.apply_gate(&g.remap(&[qubit])?)?;
                }
                Ok(())
            }
            Prep::State { .. } => Err(Error::NonStabilizerPrep(
                "arbitrary pure states need the dense backend".into(),
            )),
        }
    }

    fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        StabilizerState::expectation(self, p)
    }

    fn project(&mut self, p: &PauliOperator, outcome: Outcome) -> Result<f64> {
        StabilizerState::project(self, p, outcome)
    }

    fn measure(&mut self, p: &PauliOperator, src: &mut dyn OutcomeSource) -> Result<Measurement> {
        StabilizerState::measure(self, p, src)
    }
}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "destabilizers:")?;
        for r in self.destabilizers() {
            writeln!(f, "  {}{}", if r.is_negative() { "-" } else { "+" }, r.label())?;
        }
        writeln!(f, "stabilizers:")?;
        for r in self.stabilizers() {
            writeln!(f, "  {}{}", if r.is_negative() { "-" } else { "+" }, r.label())?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerState({} qubits)\n{self}", self.n)
    }
}

/// One tableau row in JSON: sign and the concatenated x|z bit string.
#[derive(Serialize, Deserialize)]
struct RowJson {
    sign: char,
    xz: String,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    n_qubits: usize,
    destabilizers: Vec<RowJson>,
    stabilizers: Vec<RowJson>,
}

fn row_to_json(r: &PauliOperator) -> RowJson {
    RowJson { sign: if r.is_negative() { '-' } else { '+' }, xz: r.to_bit_string() }
}

fn row_from_json(r: &RowJson) -> std::result::Result<PauliOperator, String> {
    let phase = match r.sign {
        '+' => 0,
        '-' => 2,
        c => return Err(format!("bad sign {c:?}")),
    };
    PauliOperator::from_bit_string(&r.xz, phase).map_err(|e| e.to_string())
}

impl Serialize for StabilizerState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            n_qubits: self.n,
            destabilizers: self.destabilizers().iter().map(row_to_json).collect(),
            stabilizers: self.stabilizers().iter().map(row_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StabilizerState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let t = TableauJson::deserialize(d)?;
        let parse = |rows: &[RowJson]| -> std::result::Result<Vec<PauliOperator>, D::Error> {
            rows.iter().map(|r| row_from_json(r).map_err(D::Error::custom)).collect()
        };
        let state = StabilizerState::from_rows(parse(&t.destabilizers)?, parse(&t.stabilizers)?)
            .map_err(D::Error::custom)?;
        if state.n != t.n_qubits {
            return Err(D::Error::custom("n_qubits does not match row count"));
        }
        Ok(state)
    }
}
