//! Encoder synthesis for `[[n,1]]` stabilizer codes.
//!
//! The encoder is the Clifford `U` with `U X_0 U† = X̄`, `U Z_0 U† = Z̄`,
//! `U Z_j U† = g_{j-1}` and `U X_j U† = d_{j-1}` for `j ≥ 1`, where the `d`s are
//! destabilizers completing the symplectic basis. `U` is found by reducing its
//! tableau to the identity one qubit at a time and inverting the gate list.

use crate::error::{Error, Result};
use crate::gate::{inverse_circuit, x_gates, z_gates, CliffordGate};
use crate::gf2::{self, BitVec};
use crate::pauli::PauliOperator;
use crate::tableau::StabilizerState;

/// Symplectic dual row: `<v, w> = dual(w) · v`.
fn dual(w: &PauliOperator) -> BitVec {
    let n = w.n_qubits();
    let mut v = BitVec::zeros(2 * n);
    for q in 0..n {
        v.set(q, w.z_bit(q));
        v.set(n + q, w.x_bit(q));
    }
    v
}

/// Destabilizers `d_i` with `{d_i, g_j} = δ_ij`, commuting with both logicals
/// and with each other.
pub(crate) fn complete_destabilizers(
    generators: &[PauliOperator],
    logical_x: &PauliOperator,
    logical_z: &PauliOperator,
) -> Result<Vec<PauliOperator>> {
    let n = logical_x.n_qubits();
    let mut constraints: Vec<BitVec> = generators.iter().map(dual).collect();
    constraints.push(dual(logical_x));
    constraints.push(dual(logical_z));
    let mut out: Vec<PauliOperator> = Vec::with_capacity(generators.len());
    for i in 0..generators.len() {
        let mut rhs = vec![false; constraints.len()];
        rhs[i] = true;
        let sol = gf2::solve(&constraints, &rhs, 2 * n)
            .ok_or_else(|| Error::InvalidCode("generators and logicals are dependent".into()))?;
        let bits = sol.to_bools();
        let mut d = PauliOperator::from_bits(&bits[..n], &bits[n..], 0)?;
        for (j, prev) in out.iter().enumerate() {
            if d.symplectic_unchecked(prev) {
                d.mul_assign_unchecked(&generators[j]);
            }
        }
        d.set_phase(0);
        out.push(d);
    }
    Ok(out)
}

struct Reducer {
    work: StabilizerState,
    gates: Vec<CliffordGate>,
}

impl Reducer {
    fn apply(&mut self, g: CliffordGate) {
        self.work.apply_gate(&g).expect("reducer gates are in range");
        self.gates.push(g);
    }

    fn row(&self, i: usize) -> &PauliOperator {
        let n = self.work.n_qubits();
        if i < n {
            &self.work.destabilizers()[i]
        } else {
            &self.work.stabilizers()[i - n]
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.apply(CliffordGate::cx(a, b));
        self.apply(CliffordGate::cx(b, a));
        self.apply(CliffordGate::cx(a, b));
    }

    fn reduce_qubit(&mut self, q: usize) -> Result<()> {
        let n = self.work.n_qubits();
        // destabilizer row q → X_q
        if !(q..n).any(|j| self.row(q).x_bit(j)) {
            let j = (q..n)
                .find(|&j| self.row(q).z_bit(j))
                .ok_or_else(|| Error::InvalidCode("degenerate tableau row".into()))?;
            self.apply(CliffordGate::h(j));
        }
        let j = (q..n).find(|&j| self.row(q).x_bit(j)).expect("x support exists");
        if j != q {
            self.swap(q, j);
        }
        for j in q + 1..n {
            if self.row(q).x_bit(j) {
                self.apply(CliffordGate::cx(q, j));
            }
        }
        if (q + 1..n).any(|j| self.row(q).z_bit(j)) {
            if !self.row(q).z_bit(q) {
                self.apply(CliffordGate::s(q));
            }
            for j in q + 1..n {
                if self.row(q).z_bit(j) {
                    self.apply(CliffordGate::cx(j, q));
                }
            }
        }
        if self.row(q).z_bit(q) {
            self.apply(CliffordGate::s(q));
        }

        // stabilizer row q → Z_q, keeping X_q fixed
        let s = n + q;
        for j in q + 1..n {
            if self.row(s).z_bit(j) {
                self.apply(CliffordGate::cx(j, q));
            }
        }
        for j in q + 1..n {
            if self.row(s).x_bit(j) {
                self.apply(CliffordGate::h(j));
                self.apply(CliffordGate::cx(j, q));
            }
        }
        if self.row(s).x_bit(q) {
            self.apply(CliffordGate::h(q));
            self.apply(CliffordGate::s(q));
            self.apply(CliffordGate::h(q));
        }
        Ok(())
    }
}

/// Circuit whose tableau maps `X_j → destabilizers[j]`, `Z_j → stabilizers[j]`
/// exactly, signs included.
pub fn synthesize_clifford(
    destabilizers: Vec<PauliOperator>,
    stabilizers: Vec<PauliOperator>,
) -> Result<Vec<CliffordGate>> {
    let target = StabilizerState::from_rows(destabilizers, stabilizers)?;
    let n = target.n_qubits();
    for i in 0..n {
        for j in 0..i {
            if target.destabilizers()[i].symplectic_unchecked(&target.destabilizers()[j]) {
                return Err(Error::InvalidCode(format!("destabilizers {i} and {j} anticommute")));
            }
        }
    }
    let mut r = Reducer { work: target.clone(), gates: Vec::new() };
    for q in 0..n {
        r.reduce_qubit(q)?;
    }
    for q in 0..n {
        if r.row(q).is_negative() {
            for g in z_gates(q) {
                r.apply(g);
            }
        }
        if r.row(n + q).is_negative() {
            for g in x_gates(q) {
                r.apply(g);
            }
        }
    }
    debug_assert_eq!(r.work, StabilizerState::new(n)?);
    let circuit = inverse_circuit(&r.gates);

    let mut check = StabilizerState::new(n)?;
    for g in &circuit {
        check.apply_gate(g)?;
    }
    if check != target {
        return Err(Error::InvalidCode("encoder synthesis failed to reproduce the tableau".into()));
    }
    Ok(circuit)
}

/// Encoder for a code with the given generators and logical operators.
pub(crate) fn synthesize_encoder(
    generators: &[PauliOperator],
    logical_x: &PauliOperator,
    logical_z: &PauliOperator,
) -> Result<Vec<CliffordGate>> {
    let destab = complete_destabilizers(generators, logical_x, logical_z)?;
    let mut xs = vec![logical_x.clone()];
    xs.extend(destab);
    let mut zs = vec![logical_z.clone()];
    zs.extend(generators.iter().cloned());
    synthesize_clifford(xs, zs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_cliffords_resynthesize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let mut s = StabilizerState::new(n).unwrap();
            for _ in 0..rng.gen_range(0..40) {
                let q = rng.gen_range(0..n);
                let g = match rng.gen_range(0..3) {
                    0 => CliffordGate::h(q),
                    1 => CliffordGate::s(q),
                    _ if n > 1 => {
                        let mut t = rng.gen_range(0..n - 1);
                        if t >= q {
                            t += 1;
                        }
                        CliffordGate::cx(q, t)
                    }
                    _ => CliffordGate::h(q),
                };
                s.apply_gate(&g).unwrap();
            }
            let circuit =
                synthesize_clifford(s.destabilizers().to_vec(), s.stabilizers().to_vec()).unwrap();
            let mut again = StabilizerState::new(n).unwrap();
            for g in &circuit {
                again.apply_gate(g).unwrap();
            }
            assert_eq!(again, s);
        }
    }
}
