//! Syndrome extraction, lookup-table correction and logical readout on a
//! block of qubits inside a larger register.
//!
//! A *block* is a slice mapping code position `i` to a physical qubit of the
//! register. Every routine here is generic over [`Backend`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::StabilizerCode;
use crate::backend::{Backend, Outcome, OutcomeSource, Prep};
use crate::error::{Error, Result};
use crate::pauli::{all_masks, masks_anticommute, Pauli, PauliOperator};

/// One bit per generator, in generator order; `true` is a `-1` outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Syndrome {
    pub bits: Vec<bool>,
}

impl Syndrome {
    pub fn zero(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Syndrome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Serialization(format!("bad syndrome bit {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self { bits })
    }
}

impl Serialize for Syndrome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Syndrome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `bit i = 1` iff `e` anticommutes with generator `i`.
pub fn syndrome_of_pauli(code: &StabilizerCode, e: &PauliOperator) -> Result<Syndrome> {
    if e.n_qubits() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), actual: e.n_qubits() });
    }
    let bits = code.generators().iter().map(|g| g.symplectic_unchecked(e)).collect();
    Ok(Syndrome { bits })
}

/// Minimum-weight correction for every syndrome produced by an error of
/// weight at most `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeTable {
    n: usize,
    t: usize,
    entries: HashMap<Syndrome, PauliOperator>,
}

impl DecodeTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lookup(&self, s: &Syndrome) -> Option<&PauliOperator> {
        self.entries.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Syndrome, &PauliOperator)> {
        self.entries.iter()
    }

    /// Correction for `s`, or [`Error::Uncorrectable`].
    pub fn correction(&self, s: &Syndrome) -> Result<&PauliOperator> {
        self.entries
            .get(s)
            .ok_or_else(|| Error::Uncorrectable(format!("syndrome {s} is outside the weight-{} table", self.t)))
    }
}

/// Table for all errors of weight `≤ t`. Requires `t ≤ ⌊(d−1)/2⌋`.
pub fn build_decode_table(code: &StabilizerCode, t: usize) -> Result<DecodeTable> {
    if t > code.correctable_weight() {
        return Err(Error::InvalidParameters(format!(
            "t = {t} exceeds ⌊(d−1)/2⌋ = {} for {}",
            code.correctable_weight(),
            code.name()
        )));
    }
    let n = code.n();
    if n > 16 {
        return Err(Error::TooLarge { what: "decode table", n, max: 16 });
    }
    let gens: Vec<(u64, u64)> = code.generators().iter().map(|g| g.masks()).collect();
    let mut errors: Vec<(u64, u64)> = all_masks(n).filter(|&(x, z)| (x | z).count_ones() as usize <= t).collect();
    errors.sort_by_key(|&(x, z)| ((x | z).count_ones(), x, z));
    let mut entries = HashMap::new();
    for (x, z) in errors {
        let bits = gens.iter().map(|&(gx, gz)| masks_anticommute(x, z, gx, gz)).collect();
        entries.entry(Syndrome { bits }).or_insert_with(|| PauliOperator::from_masks(n, x, z));
    }
    Ok(DecodeTable { n, t, entries })
}

fn check_block<B: Backend>(state: &B, code: &StabilizerCode, block: &[usize]) -> Result<()> {
    if block.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), actual: block.len() });
    }
    let total = state.num_qubits();
    let mut seen = vec![false; total];
    for &q in block {
        if q >= total {
            return Err(Error::IndexOutOfRange { index: q, n_qubits: total });
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::InvalidParameters(format!("block maps two positions to qubit {q}")));
        }
    }
    Ok(())
}

/// Encode `prep` (a single-qubit preparation of `|0>`) onto `block`. Every
/// block qubit must hold `|0>`.
pub fn encode_logical<B: Backend>(state: &mut B, code: &StabilizerCode, block: &[usize], prep: &Prep) -> Result<()> {
    check_block(state, code, block)?;
    let total = state.num_qubits();
    for &q in block {
        let z = PauliOperator::single(total, q, Pauli::Z)?;
        if state.expectation(&z)? < 1.0 - 1e-9 {
            return Err(Error::NonFreshQubit(q));
        }
    }
    state.prepare(block[0], prep)?;
    for g in code.encoder() {
        state.apply_gate(&g.remap(block)?)?;
    }
    Ok(())
}

/// Measure each generator in order.
pub fn measure_syndrome<B: Backend>(
    state: &mut B,
    code: &StabilizerCode,
    block: &[usize],
    src: &mut dyn OutcomeSource,
) -> Result<Syndrome> {
    check_block(state, code, block)?;
    let total = state.num_qubits();
    let mut bits = Vec::with_capacity(code.generators().len());
    for g in code.generators() {
        let m = state.measure(&g.embed(total, block)?, src)?;
        bits.push(m.outcome.bit());
    }
    Ok(Syndrome { bits })
}

/// Apply the table correction for `s` and return it (in code coordinates).
pub fn correct<B: Backend>(
    state: &mut B,
    code: &StabilizerCode,
    block: &[usize],
    s: &Syndrome,
    table: &DecodeTable,
) -> Result<PauliOperator> {
    check_block(state, code, block)?;
    if table.n != code.n() || s.len() != code.generators().len() {
        return Err(Error::LengthMismatch { expected: code.generators().len(), actual: s.len() });
    }
    let c = table.correction(s)?.clone();
    if !c.is_identity_up_to_phase() {
        state.apply_pauli(&c.embed(state.num_qubits(), block)?)?;
    }
    Ok(c)
}

/// The physical qubit carrying a decoded logical state.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredQubit {
    pub qubit: usize,
}

impl RecoveredQubit {
    /// Single-qubit observable `kind` on the recovered qubit.
    pub fn observable(&self, n_qubits: usize, kind: Pauli) -> Result<PauliOperator> {
        PauliOperator::single(n_qubits, self.qubit, kind)
    }

    pub fn expectation<B: Backend>(&self, state: &B, kind: Pauli) -> Result<f64> {
        state.expectation(&self.observable(state.num_qubits(), kind)?)
    }

    pub fn measure<B: Backend>(&self, state: &mut B, kind: Pauli, src: &mut dyn OutcomeSource) -> Result<Outcome> {
        let p = self.observable(state.num_qubits(), kind)?;
        Ok(state.measure(&p, src)?.outcome)
    }
}

/// Undo the encoder on a block in the codespace. Refuses when any generator
/// is not a deterministic `+1`. Afterwards block position 0 carries the
/// logical state and the other positions hold `|0>`.
pub fn decode_logical<B: Backend>(state: &mut B, code: &StabilizerCode, block: &[usize]) -> Result<RecoveredQubit> {
    check_block(state, code, block)?;
    let total = state.num_qubits();
    for (i, g) in code.generators().iter().enumerate() {
        if state.expectation(&g.embed(total, block)?)? < 1.0 - 1e-9 {
            return Err(Error::NotInCodespace(format!("generator {i} ({g}) is not +1; correct first")));
        }
    }
    for g in crate::gate::inverse_circuit(code.encoder()) {
        state.apply_gate(&g.remap(block)?)?;
    }
    Ok(RecoveredQubit { qubit: block[0] })
}

/// Measure the encoded spin flip `X̄` on the block.
pub fn measure_logical_x<B: Backend>(
    state: &mut B,
    code: &StabilizerCode,
    block: &[usize],
    src: &mut dyn OutcomeSource,
) -> Result<Outcome> {
    check_block(state, code, block)?;
    Ok(state.measure(&code.logical_x().embed(state.num_qubits(), block)?, src)?.outcome)
}

pub fn measure_logical_z<B: Backend>(
    state: &mut B,
    code: &StabilizerCode,
    block: &[usize],
    src: &mut dyn OutcomeSource,
) -> Result<Outcome> {
    check_block(state, code, block)?;
    Ok(state.measure(&code.logical_z().embed(state.num_qubits(), block)?, src)?.outcome)
}
