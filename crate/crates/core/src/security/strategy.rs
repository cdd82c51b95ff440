use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::MIXTURE_TOL;
use crate::backend::{Backend, Outcome, OutcomeSource};
use crate::codes::{StabilizerCode, MAX_COVERING_N};
use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::pauli::{all_masks, Pauli, PauliOperator};
use crate::seal::{open_public, PlacementMap, SealedMessage};

/// One step of a measurement script, addressed by public position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptStep {
    MeasureZ { position: usize },
    MeasureX { position: usize },
    Gate { gate: CliffordGate },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureMember {
    pub probability: f64,
    pub strategy: CheatStrategy,
}

/// What Bob does to the public register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheatStrategy {
    DeterministicPauli {
        pauli: PauliOperator,
    },
    /// Pick one member at random and run it. Members may be any strategy.
    Mixture {
        members: Vec<MixtureMember>,
    },
    MeasurementScript {
        steps: Vec<ScriptStep>,
    },
    /// The opening procedure, then an optional readout of the recovered qubit
    /// and an optional re-encoding of the public register.
    FullOpen {
        #[serde(default)]
        readout: Option<Pauli>,
        #[serde(default)]
        reencode: bool,
    },
}

impl CheatStrategy {
    pub fn identity(n: usize) -> Self {
        Self::pauli(PauliOperator::identity(n))
    }

    pub fn pauli(p: PauliOperator) -> Self {
        Self::DeterministicPauli { pauli: p }
    }

    pub fn full_open() -> Self {
        Self::FullOpen { readout: Some(Pauli::Z), reencode: false }
    }

    pub fn measure_z(position: usize) -> Self {
        Self::MeasurementScript { steps: vec![ScriptStep::MeasureZ { position }] }
    }

    /// Z measurement at a uniformly random public position.
    pub fn measure_z_random(n: usize) -> Self {
        Self::uniform((0..n).map(Self::measure_z).collect())
    }

    pub fn uniform(members: Vec<CheatStrategy>) -> Self {
        let p = 1.0 / members.len() as f64;
        Self::Mixture { members: members.into_iter().map(|s| MixtureMember { probability: p, strategy: s }).collect() }
    }

    pub fn mixture(members: Vec<(f64, CheatStrategy)>) -> Self {
        Self::Mixture {
            members: members.into_iter().map(|(probability, strategy)| MixtureMember { probability, strategy }).collect(),
        }
    }

    /// Checks lengths, positions and mixture normalization against an
    /// `n`-qubit public register.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Self::DeterministicPauli { pauli } => {
                if pauli.n_qubits() != n {
                    return Err(Error::LengthMismatch { expected: n, actual: pauli.n_qubits() });
                }
            }
            Self::Mixture { members } => {
                if members.is_empty() {
                    return Err(Error::InvalidParameters("empty mixture".into()));
                }
                let mut total = 0.0;
                for m in members {
                    if m.probability.is_nan() || m.probability < 0.0 {
                        return Err(Error::InvalidParameters(format!("negative weight {}", m.probability)));
                    }
                    total += m.probability;
                    m.strategy.validate(n)?;
                }
                if (total - 1.0).abs() > MIXTURE_TOL {
                    return Err(Error::InvalidParameters(format!("mixture weights sum to {total}")));
                }
            }
            Self::MeasurementScript { steps } => {
                for s in steps {
                    match s {
                        ScriptStep::MeasureZ { position } | ScriptStep::MeasureX { position } if *position >= n => {
                            return Err(Error::AccessViolation(format!("position {position} is not public")));
                        }
                        ScriptStep::Gate { gate } => gate.validate(n)?,
                        _ => {}
                    }
                }
            }
            Self::FullOpen { .. } => {}
        }
        Ok(())
    }

    /// True for a deterministic Pauli or a mixture of them.
    pub fn is_pauli_mixture(&self) -> bool {
        match self {
            Self::DeterministicPauli { .. } => true,
            Self::Mixture { members } => members.iter().all(|m| m.strategy.is_pauli_mixture()),
            _ => false,
        }
    }

    /// `(weight, Pauli)` pairs of a Pauli mixture, flattened.
    pub fn pauli_members(&self) -> Option<Vec<(f64, PauliOperator)>> {
        match self {
            Self::DeterministicPauli { pauli } => Some(vec![(1.0, pauli.clone())]),
            Self::Mixture { members } => {
                let mut out = Vec::new();
                for m in members {
                    for (w, p) in m.strategy.pauli_members()? {
                        out.push((m.probability * w, p));
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }
}

/// Everything the attacker learns from one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transcript {
    /// Indices of the mixture members chosen, outermost first.
    pub choices: Vec<usize>,
    pub outcomes: Vec<Outcome>,
}

/// Sample an index with the given weights using binary choices only, so that
/// exhaustive outcome enumeration also enumerates mixture members.
fn choose_index(src: &mut dyn OutcomeSource, weights: &[f64]) -> usize {
    let mut remaining: f64 = weights.iter().sum();
    for (i, &w) in weights.iter().enumerate().take(weights.len() - 1) {
        let p = if remaining > 0.0 { (w / remaining).clamp(0.0, 1.0) } else { 0.0 };
        if src.choose(p) == Outcome::Plus {
            return i;
        }
        remaining -= w;
    }
    weights.len() - 1
}

fn run<B: Backend>(
    sealed: &mut SealedMessage<B>,
    strategy: &CheatStrategy,
    src: &mut dyn OutcomeSource,
    tr: &mut Transcript,
    touched: &mut BTreeSet<usize>,
) -> Result<()> {
    let n = sealed.params.n();
    match strategy {
        CheatStrategy::DeterministicPauli { pauli } => {
            if !pauli.is_identity_up_to_phase() {
                let mut reg = sealed.public_register()?;
                reg.apply_pauli(pauli)?;
                touched.extend(reg.touched());
            }
        }
        CheatStrategy::Mixture { members } => {
            let weights: Vec<f64> = members.iter().map(|m| m.probability).collect();
            let i = choose_index(src, &weights);
            tr.choices.push(i);
            run(sealed, &members[i].strategy, src, tr, touched)?;
        }
        CheatStrategy::MeasurementScript { steps } => {
            let mut reg = sealed.public_register()?;
            for step in steps {
                match step {
                    ScriptStep::MeasureZ { position } => {
                        tr.outcomes.push(reg.measure(&PauliOperator::single(n, *position, Pauli::Z)?, src)?)
                    }
                    ScriptStep::MeasureX { position } => {
                        tr.outcomes.push(reg.measure(&PauliOperator::single(n, *position, Pauli::X)?, src)?)
                    }
                    ScriptStep::Gate { gate } => reg.apply_gate(gate)?,
                }
            }
            touched.extend(reg.touched());
        }
        CheatStrategy::FullOpen { readout, reencode } => {
            let code = sealed.params.message_code.clone();
            let table = sealed.params.message_table().clone();
            let mut reg = sealed.public_register()?;
            let out = open_public(&mut reg, &code, &table, src)?;
            tr.outcomes.extend(out.syndrome.bits.iter().map(|&b| Outcome::from_bit(b)));
            if let Some(kind) = readout {
                // recovered qubit sits at public position 0
                tr.outcomes.push(reg.measure(&PauliOperator::single(n, 0, *kind)?, src)?);
            }
            if *reencode {
                for g in code.encoder() {
                    reg.apply_gate(g)?;
                }
            }
            touched.extend(reg.touched());
        }
    }
    Ok(())
}

/// Run `strategy` on the public register of `sealed` and return the
/// attacker's transcript. Fails if a private qubit would be touched.
pub fn apply_strategy<B: Backend>(
    sealed: &mut SealedMessage<B>,
    strategy: &CheatStrategy,
    src: &mut dyn OutcomeSource,
) -> Result<Transcript> {
    strategy.validate(sealed.params.n())?;
    let mut tr = Transcript::default();
    let mut touched = BTreeSet::new();
    run(sealed, strategy, src, &mut tr, &mut touched)?;
    let private = sealed.placement.private_indices();
    if let Some(q) = private.iter().find(|q| touched.contains(q)) {
        return Err(Error::AccessViolation(format!("strategy touched private qubit {q}")));
    }
    Ok(tr)
}

/// Whether the deterministic Pauli `p` on the public register passes
/// verification: identity on every decoy position and in the normalizer of
/// the message code.
pub fn passes_exact(p: &PauliOperator, message_code: &StabilizerCode, placement: &PlacementMap) -> Result<bool> {
    if p.n_qubits() != message_code.n() {
        return Err(Error::LengthMismatch { expected: message_code.n(), actual: p.n_qubits() });
    }
    if placement.decoy_positions().iter().any(|&i| p.get(i) != Pauli::I) {
        return Ok(false);
    }
    message_code.in_normalizer(p)
}

fn check_scan_size(n: usize) -> Result<()> {
    if n > MAX_COVERING_N {
        return Err(Error::TooLarge { what: "strategy enumeration", n, max: MAX_COVERING_N });
    }
    Ok(())
}

/// All passing Paulis modulo phase, by scanning the `4^n` strategies through
/// [`passes_exact`]. Each member is checked to lie in `<S, X̄, Z̄>` and to be
/// the identity on the decoy positions.
pub fn enumerate_passing(message_code: &StabilizerCode, placement: &PlacementMap) -> Result<Vec<PauliOperator>> {
    let n = message_code.n();
    check_scan_size(n)?;
    let mut out = Vec::new();
    for (x, z) in all_masks(n) {
        let p = PauliOperator::from_masks(n, x, z);
        if passes_exact(&p, message_code, placement)? {
            if !message_code.in_logical_group(&p)? {
                return Err(Error::InvalidCode(format!("passing strategy {p} lies outside <S, X̄, Z̄>")));
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// The same set built from the group side: elements of `<S, X̄, Z̄>` whose
/// support avoids every decoy position.
pub fn passing_from_group(message_code: &StabilizerCode, placement: &PlacementMap) -> Result<Vec<PauliOperator>> {
    let n = message_code.n();
    check_scan_size(n)?;
    let decoy_mask: u64 = placement.decoy_positions().iter().map(|&i| 1u64 << i).sum();
    let mut out: Vec<PauliOperator> = message_code
        .logical_group_masks()
        .into_iter()
        .filter(|&(x, z)| (x | z) & decoy_mask == 0)
        .map(|(x, z)| PauliOperator::from_masks(n, x, z))
        .collect();
    out.sort_by_key(|p| p.masks());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::RngSource;
    use crate::codes::steane_code;
    use crate::seal::{seal_with_placement, verify, SealParameters, VerifyMode};
    use crate::tableau::StabilizerState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn predicate_examples() {
        let code = steane_code().unwrap();
        let pl = PlacementMap::canonical(7, 5, vec![0], vec![2]).unwrap();
        assert!(passes_exact(&PauliOperator::identity(7), &code, &pl).unwrap());
        for k in [Pauli::X, Pauli::Y, Pauli::Z] {
            assert!(!passes_exact(&PauliOperator::single(7, 0, k).unwrap(), &code, &pl).unwrap());
        }
        assert!(passes_exact(&p("IIIXXXX"), &code, &pl).unwrap());
        assert!(!passes_exact(&p("XIXIXIX"), &code, &pl).unwrap());
    }

    #[test]
    fn two_enumerations_agree() {
        let code = steane_code().unwrap();
        for pos in 0..7 {
            let pl = PlacementMap::canonical(7, 5, vec![pos], vec![0]).unwrap();
            let mut a = enumerate_passing(&code, &pl).unwrap();
            a.sort_by_key(|p| p.masks());
            let b = passing_from_group(&code, &pl).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), 64);
            assert!(a[0].is_identity());
            for x in &a {
                for y in &a {
                    let mut prod = x.multiply(y).unwrap();
                    prod.set_phase(0);
                    assert!(a.contains(&prod));
                }
            }
        }
    }

    #[test]
    fn mixture_choice_and_transcript() {
        let params = SealParameters::steane_five(0).unwrap();
        let pl = PlacementMap::canonical(7, 5, vec![3], vec![1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut sealed: SealedMessage<StabilizerState> =
            seal_with_placement(&crate::backend::Prep::zero(), &params, pl.clone()).unwrap();
        let before = sealed.state.clone();
        let tr = apply_strategy(&mut sealed, &CheatStrategy::identity(7), &mut RngSource(&mut rng)).unwrap();
        assert_eq!(tr, Transcript::default());
        assert_eq!(sealed.state, before);

        let all_z = CheatStrategy::MeasurementScript { steps: (0..7).map(|position| ScriptStep::MeasureZ { position }).collect() };
        let tr = apply_strategy(&mut sealed, &all_z, &mut RngSource(&mut rng)).unwrap();
        assert_eq!(tr.outcomes.len(), 7);

        let mut sealed: SealedMessage<StabilizerState> =
            seal_with_placement(&crate::backend::Prep::zero(), &params, pl).unwrap();
        let tr = apply_strategy(&mut sealed, &CheatStrategy::full_open(), &mut RngSource(&mut rng)).unwrap();
        assert_eq!(tr.outcomes.len(), 7);
        let _ = verify(&mut sealed, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap();
    }

    #[test]
    fn validation() {
        assert!(CheatStrategy::mixture(vec![(0.5, CheatStrategy::identity(7))]).validate(7).is_err());
        assert!(CheatStrategy::measure_z(7).validate(7).is_err());
        assert!(CheatStrategy::identity(6).validate(7).is_err());
        assert!(CheatStrategy::measure_z_random(7).validate(7).is_ok());
        let js = serde_json::to_string(&CheatStrategy::full_open()).unwrap();
        assert_eq!(serde_json::from_str::<CheatStrategy>(&js).unwrap(), CheatStrategy::full_open());
    }
}
