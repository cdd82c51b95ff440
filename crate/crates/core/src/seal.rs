//! Sealing, opening and verification.
//!
//! The global register holds the message block (`n` qubits) followed by `t`
//! decoy blocks (`n′` qubits each), in *slot* order, and a seeded permutation
//! sends slots to physical qubit indices. The public register is the `n`
//! physical qubits indexed by message-codeword position; at the `t` secret
//! decoy positions it shows one qubit of a decoy block instead of the message
//! qubit, which is withheld together with the rest of the decoy blocks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::backend::{Backend, Outcome, OutcomeSource, Prep};
use crate::codes::{
    build_decode_table, correct, decode_logical, encode_logical, measure_logical_x, measure_syndrome,
    CodeDescription, DecodeTable, RecoveredQubit, StabilizerCode, Syndrome,
};
use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::pauli::PauliOperator;
use crate::tableau::StabilizerState;

/// Format version stamped into every JSON artifact.
pub const ARTIFACT_VERSION: &str = concat!("qseal-", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug)]
pub struct SealParameters {
    pub message_code: StabilizerCode,
    pub decoy_code: StabilizerCode,
    pub t: usize,
    pub seed: u64,
    pub decoy_preps: Vec<Prep>,
    message_table: DecodeTable,
}

impl SealParameters {
    /// `t = ⌊(d−1)/2⌋` for the message code; all decoys start as `|0>`.
    pub fn new(message_code: StabilizerCode, decoy_code: StabilizerCode, seed: u64) -> Result<Self> {
        let t = message_code.correctable_weight();
        if t == 0 {
            return Err(Error::InvalidParameters(format!(
                "message code {} has distance {} so t = 0",
                message_code.name(),
                message_code.distance()
            )));
        }
        if t >= message_code.n() {
            return Err(Error::InvalidParameters(format!("t = {t} must be below n = {}", message_code.n())));
        }
        let message_table = build_decode_table(&message_code, t)?;
        Ok(Self { message_code, decoy_code, t, seed, decoy_preps: vec![Prep::zero(); t], message_table })
    }

    pub fn with_decoy_preps(mut self, preps: Vec<Prep>) -> Result<Self> {
        if preps.len() != self.t {
            return Err(Error::LengthMismatch { expected: self.t, actual: preps.len() });
        }
        for p in &preps {
            p.validate()?;
        }
        self.decoy_preps = preps;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// The `[[7,1,3]]` message code with `[[5,1,3]]` decoys.
    pub fn steane_five(seed: u64) -> Result<Self> {
        Self::new(crate::codes::steane_code()?, crate::codes::five_qubit_code()?, seed)
    }

    pub fn n(&self) -> usize {
        self.message_code.n()
    }

    pub fn total_qubits(&self) -> usize {
        self.message_code.n() + self.t * self.decoy_code.n()
    }

    pub fn message_table(&self) -> &DecodeTable {
        &self.message_table
    }
}

/// Secret layout of a seal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PlacementJson", into = "PlacementJson")]
pub struct PlacementMap {
    n: usize,
    decoy_n: usize,
    decoy_positions: Vec<usize>,
    exposed: Vec<usize>,
    physical: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PlacementJson {
    n: usize,
    decoy_n: usize,
    decoy_positions: Vec<usize>,
    exposed: Vec<usize>,
    slot_to_physical: Vec<usize>,
}

impl From<PlacementMap> for PlacementJson {
    fn from(p: PlacementMap) -> Self {
        Self { n: p.n, decoy_n: p.decoy_n, decoy_positions: p.decoy_positions, exposed: p.exposed, slot_to_physical: p.physical }
    }
}

impl TryFrom<PlacementJson> for PlacementMap {
    type Error = Error;

    fn try_from(j: PlacementJson) -> Result<Self> {
        PlacementMap::new(j.n, j.decoy_n, j.decoy_positions, j.exposed, j.slot_to_physical)
    }
}

impl PlacementMap {
    /// `decoy_positions[b]` (sorted, distinct, `< n`) receives qubit
    /// `exposed[b]` of decoy block `b`; `physical` permutes the
    /// `n + t·n′` slots.
    pub fn new(
        n: usize,
        decoy_n: usize,
        mut decoy_positions: Vec<usize>,
        exposed: Vec<usize>,
        physical: Vec<usize>,
    ) -> Result<Self> {
        let t = decoy_positions.len();
        decoy_positions.sort_unstable();
        if t == 0 || t >= n {
            return Err(Error::InvalidParameters(format!("need 1 ≤ t < n, got t = {t}, n = {n}")));
        }
        if decoy_positions.windows(2).any(|w| w[0] == w[1]) || decoy_positions[t - 1] >= n {
            return Err(Error::InvalidParameters("decoy positions must be distinct codeword positions".into()));
        }
        if exposed.len() != t || exposed.iter().any(|&e| e >= decoy_n) {
            return Err(Error::InvalidParameters("one exposed qubit per decoy block is required".into()));
        }
        let total = n + t * decoy_n;
        let mut seen = vec![false; total];
        if physical.len() != total || physical.iter().any(|&q| q >= total || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::InvalidParameters("slot map must be a permutation of the register".into()));
        }
        Ok(Self { n, decoy_n, decoy_positions, exposed, physical })
    }

    /// Unshuffled register layout.
    pub fn canonical(n: usize, decoy_n: usize, decoy_positions: Vec<usize>, exposed: Vec<usize>) -> Result<Self> {
        let total = n + decoy_positions.len() * decoy_n;
        Self::new(n, decoy_n, decoy_positions, exposed, (0..total).collect())
    }

    /// Uniform position subset, uniform exposed qubit per block, uniform
    /// register relabelling.
    pub fn sample<R: Rng + ?Sized>(n: usize, decoy_n: usize, t: usize, rng: &mut R) -> Result<Self> {
        if t == 0 || t >= n {
            return Err(Error::InvalidParameters(format!("need 1 ≤ t < n, got t = {t}, n = {n}")));
        }
        let positions = rand::seq::index::sample(rng, n, t).into_vec();
        let exposed = (0..t).map(|_| rng.gen_range(0..decoy_n)).collect();
        let mut physical: Vec<usize> = (0..n + t * decoy_n).collect();
        physical.shuffle(rng);
        Self::new(n, decoy_n, positions, exposed, physical)
    }

    /// Every canonical placement: `C(n,t) · n′^t` of them.
    pub fn all(n: usize, decoy_n: usize, t: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for positions in combinations(n, t) {
            let mut exposed = vec![0usize; t];
            loop {
                out.push(Self::canonical(n, decoy_n, positions.clone(), exposed.clone())?);
                let Some(b) = (0..t).find(|&b| exposed[b] + 1 < decoy_n) else { break };
                exposed[b] += 1;
                exposed[..b].iter_mut().for_each(|e| *e = 0);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.decoy_positions.len()
    }

    pub fn decoy_n(&self) -> usize {
        self.decoy_n
    }

    pub fn total_qubits(&self) -> usize {
        self.physical.len()
    }

    pub fn decoy_positions(&self) -> &[usize] {
        &self.decoy_positions
    }

    pub fn exposed(&self) -> &[usize] {
        &self.exposed
    }

    pub fn is_decoy_position(&self, i: usize) -> bool {
        self.decoy_positions.binary_search(&i).is_ok()
    }

    /// Physical qubits of the genuine message codeword, by position.
    pub fn message_block(&self) -> Vec<usize> {
        self.physical[..self.n].to_vec()
    }

    pub fn decoy_block(&self, b: usize) -> Vec<usize> {
        let start = self.n + b * self.decoy_n;
        self.physical[start..start + self.decoy_n].to_vec()
    }

    /// The `n` exposed physical qubits, by codeword position.
    pub fn public_indices(&self) -> Vec<usize> {
        let mut out = self.message_block();
        for (b, &pos) in self.decoy_positions.iter().enumerate() {
            out[pos] = self.decoy_block(b)[self.exposed[b]];
        }
        out
    }

    /// Withheld message-codeword qubits, by decoy block order.
    pub fn withheld(&self) -> Vec<usize> {
        self.decoy_positions.iter().map(|&p| self.physical[p]).collect()
    }

    /// All `n′t` private physical qubits, sorted.
    pub fn private_indices(&self) -> Vec<usize> {
        let public: BTreeSet<usize> = self.public_indices().into_iter().collect();
        (0..self.total_qubits()).filter(|q| !public.contains(q)).collect()
    }
}

fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, t, &mut Vec::new(), &mut out);
    out
}

/// A sealed message: the register plus everything the verifier holds.
#[derive(Clone, Debug)]
pub struct SealedMessage<B> {
    pub state: B,
    pub placement: PlacementMap,
    pub params: SealParameters,
}

/// Seal `message_prep` with a placement drawn from `params.seed`.
pub fn seal<B: Backend>(message_prep: &Prep, params: &SealParameters) -> Result<SealedMessage<B>> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let placement = PlacementMap::sample(params.n(), params.decoy_code.n(), params.t, &mut rng)?;
    seal_with_placement(message_prep, params, placement)
}

pub fn seal_with_placement<B: Backend>(
    message_prep: &Prep,
    params: &SealParameters,
    placement: PlacementMap,
) -> Result<SealedMessage<B>> {
    message_prep.validate()?;
    if placement.n() != params.n() || placement.t() != params.t || placement.decoy_n() != params.decoy_code.n() {
        return Err(Error::InvalidParameters("placement does not match the seal parameters".into()));
    }
    let mut state = B::new_register(params.total_qubits())?;
    encode_logical(&mut state, &params.message_code, &placement.message_block(), message_prep)?;
    for (b, prep) in params.decoy_preps.iter().enumerate() {
        encode_logical(&mut state, &params.decoy_code, &placement.decoy_block(b), prep)?;
    }
    Ok(SealedMessage { state, placement, params: params.clone() })
}

/// What Bob can reach: the public qubits by codeword position. Every physical
/// index touched is logged so tests can check it never meets a private one.
pub struct PublicRegister<'a, B> {
    state: &'a mut B,
    public: Vec<usize>,
    touched: BTreeSet<usize>,
}

impl<'a, B: Backend> PublicRegister<'a, B> {
    pub fn new(state: &'a mut B, public: Vec<usize>) -> Result<Self> {
        let total = state.num_qubits();
        if let Some(&q) = public.iter().find(|&&q| q >= total) {
            return Err(Error::IndexOutOfRange { index: q, n_qubits: total });
        }
        Ok(Self { state, public, touched: BTreeSet::new() })
    }

    pub fn len(&self) -> usize {
        self.public.len()
    }

    pub fn is_empty(&self) -> bool {
        self.public.is_empty()
    }

    fn physical(&mut self, pos: usize) -> Result<usize> {
        let q = *self.public.get(pos).ok_or_else(|| {
            Error::AccessViolation(format!("position {pos} is outside the {}-qubit public register", self.public.len()))
        })?;
        self.touched.insert(q);
        Ok(q)
    }

    fn lift(&mut self, p: &PauliOperator) -> Result<PauliOperator> {
        if p.n_qubits() != self.public.len() {
            return Err(Error::AccessViolation(format!(
                "operator on {} qubits does not fit the {}-qubit public register",
                p.n_qubits(),
                self.public.len()
            )));
        }
        for q in p.support() {
            self.physical(q)?;
        }
        p.embed(self.state.num_qubits(), &self.public)
    }

    fn touch_all(&mut self) {
        self.touched.extend(self.public.iter().copied());
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        let lifted = self.lift(p)?;
        self.state.apply_pauli(&lifted)
    }

    pub fn apply_gate(&mut self, g: &CliffordGate) -> Result<()> {
        g.validate(self.public.len())
            .map_err(|_| Error::AccessViolation(format!("{g} addresses a non-public position")))?;
        for q in g.qubits() {
            self.physical(q)?;
        }
        self.state.apply_gate(&g.remap(&self.public)?)
    }

    pub fn measure(&mut self, p: &PauliOperator, src: &mut dyn OutcomeSource) -> Result<Outcome> {
        let lifted = self.lift(p)?;
        Ok(self.state.measure(&lifted, src)?.outcome)
    }

    /// Physical qubits touched so far.
    pub fn touched(&self) -> &BTreeSet<usize> {
        &self.touched
    }

    /// Fails if any private qubit was touched.
    pub fn assert_disjoint_from(&self, private: &[usize]) -> Result<()> {
        match private.iter().find(|q| self.touched.contains(q)) {
            Some(q) => Err(Error::AccessViolation(format!("private qubit {q} was touched"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenOutcome {
    pub syndrome: Syndrome,
    /// Correction on codeword positions.
    pub correction: PauliOperator,
    pub recovered: RecoveredQubit,
}

/// Bob's procedure on the public register: syndrome, table correction,
/// inverse encoder.
pub fn open_public<B: Backend>(
    reg: &mut PublicRegister<'_, B>,
    code: &StabilizerCode,
    table: &DecodeTable,
    src: &mut dyn OutcomeSource,
) -> Result<OpenOutcome> {
    if reg.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), actual: reg.len() });
    }
    reg.touch_all();
    let block = reg.public.clone();
    let syndrome = measure_syndrome(reg.state, code, &block, src)?;
    let correction = correct(reg.state, code, &block, &syndrome, table)?;
    let recovered = decode_logical(reg.state, code, &block)?;
    Ok(OpenOutcome { syndrome, correction, recovered })
}

/// Open through the public view only.
pub fn open<B: Backend>(sealed: &mut SealedMessage<B>, src: &mut dyn OutcomeSource) -> Result<OpenOutcome> {
    let public = sealed.placement.public_indices();
    let mut reg = PublicRegister::new(&mut sealed.state, public)?;
    let out = open_public(&mut reg, &sealed.params.message_code, sealed.params.message_table(), src)?;
    reg.assert_disjoint_from(&sealed.placement.private_indices())?;
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Original,
    /// Also measures `X̄` on every block; acceptance ignores those outcomes.
    Revised,
}

impl std::str::FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Self::Original),
            "revised" => Ok(Self::Revised),
            _ => Err(Error::InvalidParameters(format!("unknown verify mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub accept: bool,
    pub message_syndrome: Syndrome,
    pub decoy_syndromes: Vec<Syndrome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_outcomes: Option<Vec<Outcome>>,
}

/// Reassemble every block and measure all generators.
pub fn verify<B: Backend>(
    sealed: &mut SealedMessage<B>,
    mode: VerifyMode,
    src: &mut dyn OutcomeSource,
) -> Result<VerifierReport> {
    let p = &sealed.params;
    let msg_block = sealed.placement.message_block();
    let message_syndrome = measure_syndrome(&mut sealed.state, &p.message_code, &msg_block, src)?;
    let mut decoy_syndromes = Vec::with_capacity(p.t);
    for b in 0..p.t {
        let block = sealed.placement.decoy_block(b);
        decoy_syndromes.push(measure_syndrome(&mut sealed.state, &p.decoy_code, &block, src)?);
    }
    let accept = message_syndrome.is_zero() && decoy_syndromes.iter().all(Syndrome::is_zero);
    let logical_outcomes = match mode {
        VerifyMode::Original => None,
        VerifyMode::Revised => {
            let mut outs = vec![measure_logical_x(&mut sealed.state, &p.message_code, &msg_block, src)?];
            for b in 0..p.t {
                let block = sealed.placement.decoy_block(b);
                outs.push(measure_logical_x(&mut sealed.state, &p.decoy_code, &block, src)?);
            }
            Some(outs)
        }
    };
    Ok(VerifierReport { accept, message_syndrome, decoy_syndromes, logical_outcomes })
}

/// Everything needed to verify: placement, codes and decoy preparations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifierKey {
    pub version: String,
    pub seed: u64,
    pub message_code: CodeDescription,
    pub decoy_code: CodeDescription,
    pub t: usize,
    pub decoy_preps: Vec<Prep>,
    pub placement: PlacementMap,
    pub private_indices: Vec<usize>,
}

/// What is handed to the public: the register and the position labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PublicPackage {
    pub version: String,
    pub seed: u64,
    pub message_code: CodeDescription,
    pub t: usize,
    pub n_qubits: usize,
    pub public_indices: Vec<usize>,
    pub state: StabilizerState,
}

impl PublicPackage {
    pub fn message_code(&self) -> Result<StabilizerCode> {
        StabilizerCode::from_description(self.message_code.clone())
    }

    /// Run the opening procedure on the package in place.
    pub fn open(&mut self, src: &mut dyn OutcomeSource) -> Result<OpenOutcome> {
        let code = self.message_code()?;
        let table = build_decode_table(&code, self.t)?;
        let mut reg = PublicRegister::new(&mut self.state, self.public_indices.clone())?;
        open_public(&mut reg, &code, &table, src)
    }
}

impl<B: Backend> SealedMessage<B> {
    pub fn verifier_key(&self) -> VerifierKey {
        VerifierKey {
            version: ARTIFACT_VERSION.to_string(),
            seed: self.params.seed,
            message_code: self.params.message_code.description(),
            decoy_code: self.params.decoy_code.description(),
            t: self.params.t,
            decoy_preps: self.params.decoy_preps.clone(),
            placement: self.placement.clone(),
            private_indices: self.placement.private_indices(),
        }
    }

    pub fn public_register(&mut self) -> Result<PublicRegister<'_, B>> {
        let public = self.placement.public_indices();
        PublicRegister::new(&mut self.state, public)
    }
}

impl SealedMessage<StabilizerState> {
    pub fn public_package(&self) -> PublicPackage {
        PublicPackage {
            version: ARTIFACT_VERSION.to_string(),
            seed: self.params.seed,
            message_code: self.params.message_code.description(),
            t: self.params.t,
            n_qubits: self.state.n_qubits(),
            public_indices: self.placement.public_indices(),
            state: self.state.clone(),
        }
    }

    /// Reunite a package with its key, checking that they belong together.
    pub fn from_parts(package: PublicPackage, key: VerifierKey) -> Result<Self> {
        let message_code = StabilizerCode::from_description(key.message_code)?;
        let decoy_code = StabilizerCode::from_description(key.decoy_code)?;
        if !message_code.is_equivalent_to(&package.message_code()?)? {
            return Err(Error::Serialization("package and key use different message codes".into()));
        }
        let params = SealParameters::new(message_code, decoy_code, key.seed)?.with_decoy_preps(key.decoy_preps)?;
        if params.t != key.t || package.t != key.t {
            return Err(Error::Serialization("t disagrees between package and key".into()));
        }
        if package.public_indices != key.placement.public_indices()
            || key.private_indices != key.placement.private_indices()
            || package.state.n_qubits() != key.placement.total_qubits()
            || package.n_qubits != package.state.n_qubits()
        {
            return Err(Error::Serialization("package and key describe different layouts".into()));
        }
        Ok(Self { state: package.state, placement: key.placement, params })
    }
}

/// Seal → `adversary` on the public register → verify, `trials` times with
/// per-trial streams derived from `params.seed`.
pub fn open_then_verify_experiment<B: Backend>(
    prep: &Prep,
    params: &SealParameters,
    adversary: &crate::security::CheatStrategy,
    trials: usize,
    parallel: bool,
) -> Result<crate::security::DetectionStats> {
    crate::security::run_trials::<B>(prep, params, adversary, trials, parallel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{enumerate_branches, RngSource};
    use crate::dense::DenseState;
    use crate::pauli::Pauli;

    fn params(seed: u64) -> SealParameters {
        SealParameters::steane_five(seed).unwrap()
    }

    #[test]
    fn steane_five_shape() {
        let s: SealedMessage<StabilizerState> = seal(&Prep::zero(), &params(42)).unwrap();
        assert_eq!(s.state.n_qubits(), 12);
        assert_eq!(s.placement.public_indices().len(), 7);
        assert_eq!(s.placement.private_indices().len(), 5);
        let mut all: Vec<usize> = s.placement.public_indices();
        all.extend(s.placement.private_indices());
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        let t = s.placement.t();
        assert_eq!(t, 1);
        let pos = s.placement.decoy_positions()[0];
        assert_eq!(s.placement.public_indices()[pos], s.placement.decoy_block(0)[s.placement.exposed()[0]]);
        assert_eq!(s.placement.withheld(), vec![s.placement.message_block()[pos]]);
    }

    #[test]
    fn placements_enumerate() {
        assert_eq!(PlacementMap::all(7, 5, 1).unwrap().len(), 35);
        assert_eq!(PlacementMap::all(7, 5, 2).unwrap().len(), 21 * 25);
    }

    #[test]
    fn deterministic_in_seed() {
        let a: SealedMessage<StabilizerState> = seal(&Prep::plus(), &params(7)).unwrap();
        let b: SealedMessage<StabilizerState> = seal(&Prep::plus(), &params(7)).unwrap();
        assert_eq!(a.placement, b.placement);
        assert_eq!(a.state, b.state);
    }

    #[test]
    fn untouched_seal_accepts_exactly() {
        for seed in 0..10 {
            let sealed: SealedMessage<StabilizerState> = seal(&Prep::plus_i(), &params(seed)).unwrap();
            let branches = enumerate_branches(|src| {
                let mut s = sealed.clone();
                Ok(verify(&mut s, VerifyMode::Revised, src)?.accept)
            })
            .unwrap();
            let p: f64 = branches.iter().filter(|b| b.value).map(|b| b.probability).sum();
            assert!((p - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn open_recovers_prep_on_dense_backend() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (name, prep) in Prep::standard_set() {
            let mut sealed: SealedMessage<DenseState> = seal(&prep, &params(3)).unwrap();
            let out = open(&mut sealed, &mut RngSource(&mut rng)).unwrap();
            let f = sealed.state.qubit_fidelity(out.recovered.qubit, &prep.state_vector()).unwrap();
            assert!(f > 1.0 - 1e-9, "{name}: fidelity {f}");
        }
    }

    #[test]
    fn open_plus_gives_deterministic_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut sealed: SealedMessage<StabilizerState> = seal(&Prep::plus(), &params(11)).unwrap();
        let out = open(&mut sealed, &mut RngSource(&mut rng)).unwrap();
        assert_eq!(out.recovered.expectation(&sealed.state, Pauli::X).unwrap(), 1.0);
    }

    #[test]
    fn public_register_guards_positions() {
        let mut sealed: SealedMessage<StabilizerState> = seal(&Prep::zero(), &params(5)).unwrap();
        let private = sealed.placement.private_indices();
        let mut reg = sealed.public_register().unwrap();
        assert!(matches!(reg.apply_gate(&CliffordGate::h(7)), Err(Error::AccessViolation(_))));
        assert!(matches!(reg.apply_pauli(&"XXXXXXXX".parse().unwrap()), Err(Error::AccessViolation(_))));
        reg.apply_pauli(&"ZIIIIIZ".parse().unwrap()).unwrap();
        reg.assert_disjoint_from(&private).unwrap();
    }

    #[test]
    fn z_on_public_decoy_rejects() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut sealed: SealedMessage<StabilizerState> = seal(&Prep::zero(), &params(8)).unwrap();
        let pos = sealed.placement.decoy_positions()[0];
        let z = PauliOperator::single(7, pos, Pauli::Z).unwrap();
        sealed.public_register().unwrap().apply_pauli(&z).unwrap();
        let r = verify(&mut sealed, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap();
        assert!(!r.accept);
        assert!(r.message_syndrome.is_zero());
    }

    #[test]
    fn package_round_trip() {
        let sealed: SealedMessage<StabilizerState> = seal(&Prep::one(), &params(9)).unwrap();
        let pkg = serde_json::to_string(&sealed.public_package()).unwrap();
        let key = serde_json::to_string(&sealed.verifier_key()).unwrap();
        assert!(!pkg.contains("decoy_positions"));
        let mut back = SealedMessage::from_parts(serde_json::from_str(&pkg).unwrap(), serde_json::from_str(&key).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(verify(&mut back, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap().accept);
    }

    #[test]
    fn bad_parameters() {
        let s = crate::codes::steane_code().unwrap();
        let f = crate::codes::five_qubit_code().unwrap();
        assert!(SealParameters::new(s.clone(), f.clone(), 0).unwrap().with_decoy_preps(vec![]).is_err());
        let rep = crate::codes::css_from_parity_checks(&[], &[vec![1, 1, 0], vec![0, 1, 1]], None).unwrap();
        assert!(SealParameters::new(rep, f, 0).is_err());
        let bad_prep = Prep::Gates(vec![CliffordGate::cx(0, 1)]);
        assert!(seal::<StabilizerState>(&bad_prep, &params(0)).is_err());
    }
}
