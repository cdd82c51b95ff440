use qseal::backend::{Prep, RngSource};
use qseal::dense::DenseState;
use qseal::pauli::{Pauli, PauliOperator};
use qseal::seal::{
    open, open_then_verify_experiment, seal, seal_with_placement, verify, PlacementMap, PublicPackage,
    SealParameters, SealedMessage, VerifierKey, VerifyMode,
};
use qseal::security::{
    acceptance_exact_over_placements, attack_then_verify, enumerate_passing, trial_rng, within_sigmas,
    CheatStrategy,
};
use qseal::tableau::StabilizerState;
use num_complex::Complex64;

fn instance(seed: u64) -> SealParameters {
    SealParameters::steane_five(seed).unwrap()
}

#[test]
fn untouched_seal_accepts_for_many_seeds() {
    for seed in 0..40 {
        let mut s: SealedMessage<StabilizerState> = seal(&Prep::minus(), &instance(seed)).unwrap();
        let mut rng = trial_rng(seed, 1);
        let r = verify(&mut s, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap();
        assert!(r.accept && r.message_syndrome.is_zero());
        assert_eq!(r.decoy_syndromes.len(), 1);
        assert!(r.logical_outcomes.is_none());
    }
}

#[test]
fn revised_mode_reports_logicals_without_changing_the_verdict() {
    let params = instance(6);
    let pl = PlacementMap::canonical(7, 5, vec![4], vec![1]).unwrap();
    let sealed = seal_with_placement::<StabilizerState>(&Prep::plus(), &params, pl).unwrap();
    for label in ["IIIIIII", "IIIIXII", "XXXIXXX", "IIIXIXX", "ZIZIIIZ"] {
        let p: PauliOperator = label.parse().unwrap();
        let mut a = sealed.clone();
        a.public_register().unwrap().apply_pauli(&p).unwrap();
        let mut b = a.clone();
        let mut rng = trial_rng(0, 0);
        let orig = verify(&mut a, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap();
        let rev = verify(&mut b, VerifyMode::Revised, &mut RngSource(&mut rng)).unwrap();
        assert_eq!(orig.accept, rev.accept, "{label}");
        assert_eq!(rev.logical_outcomes.as_ref().map(Vec::len), Some(2));
    }
}

#[test]
fn package_and_key_round_trip_through_json() {
    let sealed: SealedMessage<StabilizerState> = seal(&Prep::plus_i(), &instance(42)).unwrap();
    let pkg: PublicPackage = serde_json::from_str(&serde_json::to_string(&sealed.public_package()).unwrap()).unwrap();
    let key: VerifierKey = serde_json::from_str(&serde_json::to_string(&sealed.verifier_key()).unwrap()).unwrap();
    assert_eq!(pkg.public_indices.len(), 7);
    let mut again = SealedMessage::from_parts(pkg, key).unwrap();
    assert_eq!(again.placement, sealed.placement);
    let mut rng = trial_rng(1, 0);
    assert!(verify(&mut again, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap().accept);
}

#[test]
fn mismatched_package_and_key_are_refused() {
    let a: SealedMessage<StabilizerState> = seal(&Prep::zero(), &instance(1)).unwrap();
    let b: SealedMessage<StabilizerState> = seal(&Prep::zero(), &instance(2)).unwrap();
    if a.placement != b.placement {
        assert!(SealedMessage::from_parts(a.public_package(), b.verifier_key()).is_err());
    }
}

#[test]
fn opening_breaks_the_seal_at_the_exact_rate() {
    let prep = Prep::zero();
    let params = instance(77);
    let honest_open = CheatStrategy::FullOpen { readout: None, reencode: false };
    let exact = 1.0 - acceptance_exact_over_placements::<StabilizerState>(&prep, &params, &honest_open).unwrap();
    assert!(exact > 0.9);
    let trials = 2000;
    let mut rejected = 0;
    for seed in 0..trials {
        let mut s: SealedMessage<StabilizerState> = seal(&prep, &instance(seed)).unwrap();
        let mut rng = trial_rng(seed, 0);
        open(&mut s, &mut RngSource(&mut rng)).unwrap();
        rejected += !verify(&mut s, VerifyMode::Original, &mut RngSource(&mut rng)).unwrap().accept as usize;
    }
    let rate = rejected as f64 / trials as f64;
    assert!(within_sigmas(rate, exact, trials as usize, 3.0), "{rate} vs {exact}");
}

#[test]
fn experiment_is_reproducible_and_order_free() {
    let params = instance(5);
    let s = CheatStrategy::measure_z_random(7);
    let a = open_then_verify_experiment::<StabilizerState>(&Prep::plus(), &params, &s, 300, false).unwrap();
    let b = open_then_verify_experiment::<StabilizerState>(&Prep::plus(), &params, &s, 300, true).unwrap();
    assert_eq!(a, b);
    let c = open_then_verify_experiment::<StabilizerState>(&Prep::plus(), &params.clone().with_seed(6), &s, 300, false)
        .unwrap();
    assert_ne!(a.transcript_digest, c.transcript_digest);
}

fn apply_logical(kind: Option<Pauli>, v: [Complex64; 2]) -> [Complex64; 2] {
    let i = Complex64::new(0.0, 1.0);
    match kind {
        None | Some(Pauli::I) => v,
        Some(Pauli::X) => [v[1], v[0]],
        Some(Pauli::Z) => [v[0], -v[1]],
        Some(Pauli::Y) => [-i * v[1], i * v[0]],
    }
}

/// Every passing Pauli either leaves the opened message alone (stabilizer
/// element) or acts on it as exactly its logical class.
#[test]
fn passing_strategies_act_as_stabilizers_or_logicals() {
    let params = instance(0);
    let code = params.message_code.clone();
    for pos in [0, 3, 6] {
        let pl = PlacementMap::canonical(7, 5, vec![pos], vec![2]).unwrap();
        let passing = enumerate_passing(&code, &pl).unwrap();
        for (name, prep) in Prep::standard_set() {
            let sealed = seal_with_placement::<DenseState>(&prep, &params, pl.clone()).unwrap();
            for p in &passing {
                let mut s = sealed.clone();
                let mut rng = trial_rng(0, 0);
                let (_, accept) =
                    attack_then_verify(&s, &CheatStrategy::pauli(p.clone()), &mut RngSource(&mut rng)).unwrap();
                assert!(accept);
                s.public_register().unwrap().apply_pauli(p).unwrap();
                let class = code.logical_class(p).unwrap();
                let in_stab = code.in_stabilizer_group(p).unwrap();
                assert_eq!(in_stab, class.is_none() || class == Some(Pauli::I), "{p}");
                let out = open(&mut s, &mut RngSource(&mut rng)).unwrap();
                let want = apply_logical(class, prep.state_vector());
                let f = s.state.qubit_fidelity(out.recovered.qubit, &want).unwrap();
                assert!(f > 1.0 - 1e-9, "{name} {p}: fidelity {f}");
            }
        }
    }
}
