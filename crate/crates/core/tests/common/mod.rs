#![allow(dead_code)]

use std::collections::BTreeMap;

use qseal::backend::{enumerate_branches, Backend};
use qseal::gate::CliffordGate;
use qseal::pauli::{Pauli, PauliOperator};
use rand::Rng;

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> CliffordGate {
    let q = rng.gen_range(0..n);
    match rng.gen_range(0..3) {
        0 => CliffordGate::h(q),
        1 => CliffordGate::s(q),
        _ if n > 1 => {
            let t = (q + rng.gen_range(1..n)) % n;
            CliffordGate::cx(q, t)
        }
        _ => CliffordGate::h(q),
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<CliffordGate> {
    (0..len).map(|_| random_gate(rng, n)).collect()
}

/// A random non-identity Pauli with phase `+1` or `−1`.
pub fn random_observable<R: Rng>(rng: &mut R, n: usize) -> PauliOperator {
    loop {
        let mut p = PauliOperator::identity(n);
        for q in 0..n {
            p.set(q, Pauli::ALL[rng.gen_range(0..4)]).unwrap();
        }
        if !p.is_identity_up_to_phase() {
            return if rng.gen() { p.negated() } else { p };
        }
    }
}

/// Exact joint distribution of the outcomes of measuring `observables` in order.
pub fn outcome_distribution<B: Backend>(state: &B, observables: &[PauliOperator]) -> BTreeMap<Vec<i8>, f64> {
    let branches = enumerate_branches(|src| {
        let mut s = state.clone();
        observables.iter().map(|p| Ok(s.measure(p, src)?.outcome.value())).collect::<qseal::error::Result<Vec<i8>>>()
    })
    .unwrap();
    let mut out = BTreeMap::new();
    for b in branches {
        *out.entry(b.value).or_insert(0.0) += b.probability;
    }
    out
}

pub fn distributions_match(a: &BTreeMap<Vec<i8>, f64>, b: &BTreeMap<Vec<i8>, f64>, tol: f64) -> bool {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter().all(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs() <= tol)
}
