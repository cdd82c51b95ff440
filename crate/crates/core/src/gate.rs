use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generators of the Clifford group used by every circuit in the crate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum CliffordGate {
    #[serde(rename = "h")]
    Hadamard { qubit: usize },
    #[serde(rename = "s")]
    Phase { qubit: usize },
    #[serde(rename = "cx")]
    ControlledNot { control: usize, target: usize },
}

impl CliffordGate {
    pub fn h(qubit: usize) -> Self {
        CliffordGate::Hadamard { qubit }
    }

    pub fn s(qubit: usize) -> Self {
        CliffordGate::Phase { qubit }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        CliffordGate::ControlledNot { control, target }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            CliffordGate::Hadamard { qubit } | CliffordGate::Phase { qubit } => vec![qubit],
            CliffordGate::ControlledNot { control, target } => vec![control, target],
        }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap_or(0)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::IndexOutOfRange { index: q, n_qubits });
            }
        }
        if let CliffordGate::ControlledNot { control, target } = *self {
            if control == target {
                return Err(Error::InvalidGate(format!("cx with control == target == {control}")));
            }
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `map`.
    pub fn remap(&self, map: &[usize]) -> Result<Self> {
        let look = |q: usize| {
            map.get(q)
                .copied()
                .ok_or(Error::IndexOutOfRange { index: q, n_qubits: map.len() })
        };
        Ok(match *self {
            CliffordGate::Hadamard { qubit } => CliffordGate::h(look(qubit)?),
            CliffordGate::Phase { qubit } => CliffordGate::s(look(qubit)?),
            CliffordGate::ControlledNot { control, target } => {
                CliffordGate::cx(look(control)?, look(target)?)
            }
        })
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::Hadamard { qubit } => write!(f, "H({qubit})"),
            CliffordGate::Phase { qubit } => write!(f, "S({qubit})"),
            CliffordGate::ControlledNot { control, target } => write!(f, "CX({control},{target})"),
        }
    }
}

/// Inverse of a circuit: reversed order, `S` replaced by `S·S·S`.
pub fn inverse_circuit(gates: &[CliffordGate]) -> Vec<CliffordGate> {
    let mut out = Vec::with_capacity(gates.len());
    for g in gates.iter().rev() {
        match g {
            CliffordGate::Phase { .. } => out.extend([*g, *g, *g]),
            _ => out.push(*g),
        }
    }
    out
}

/// Pauli `X` on `q` written with the generator set.
pub fn x_gates(q: usize) -> [CliffordGate; 4] {
    [CliffordGate::h(q), CliffordGate::s(q), CliffordGate::s(q), CliffordGate::h(q)]
}

/// Pauli `Z` on `q`.
pub fn z_gates(q: usize) -> [CliffordGate; 2] {
    [CliffordGate::s(q), CliffordGate::s(q)]
}
