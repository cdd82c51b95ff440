use std::collections::HashSet;

use qseal::backend::{Outcome, Prep, RngSource};
use qseal::dense::DenseState;
use qseal::pauli::{Pauli, PauliOperator};
use qseal::seal::{open, seal_with_placement, PlacementMap, SealParameters};
use qseal::security::{
    acceptance_exact, acceptance_exact_over_placements, apply_strategy, enumerate_passing, pass_probability,
    passes_exact, passing_from_group, placement_leak_exact, strategy_catalogue, trial_rng, CheatStrategy,
    Evaluation, Method, ScriptStep,
};
use qseal::tableau::StabilizerState;

fn instance() -> SealParameters {
    SealParameters::steane_five(0).unwrap()
}

fn placement(pos: usize) -> PlacementMap {
    PlacementMap::canonical(7, 5, vec![pos], vec![0]).unwrap()
}

#[test]
fn predicate_examples() {
    let code = instance().message_code;
    let pl = placement(2);
    assert!(passes_exact(&PauliOperator::identity(7), &code, &pl).unwrap());
    for kind in [Pauli::X, Pauli::Y, Pauli::Z] {
        assert!(!passes_exact(&PauliOperator::single(7, 2, kind).unwrap(), &code, &pl).unwrap());
    }
    assert!(passes_exact(&"IIIXXXX".parse().unwrap(), &code, &pl).unwrap());
    assert!(!passes_exact(&"IIIXXXX".parse().unwrap(), &code, &placement(4)).unwrap());
}

#[test]
fn passing_sets_agree_and_form_a_group() {
    let code = instance().message_code;
    for pos in 0..7 {
        let pl = placement(pos);
        let scan = enumerate_passing(&code, &pl).unwrap();
        let group = passing_from_group(&code, &pl).unwrap();
        let key = |p: &PauliOperator| p.masks();
        let a: HashSet<_> = scan.iter().map(key).collect();
        let b: HashSet<_> = group.iter().map(key).collect();
        assert_eq!(a, b);
        assert!(a.contains(&(0, 0)));
        for p in &scan {
            for q in &scan {
                assert!(a.contains(&p.multiply(q).unwrap().masks()));
            }
        }
    }
}

#[test]
fn pass_probability_examples() {
    let params = instance();
    let prep = Prep::zero();
    let id = pass_probability::<StabilizerState>(&prep, &params, &CheatStrategy::identity(7), Evaluation::Exact).unwrap();
    assert_eq!(id.probability, 1.0);
    assert_eq!(id.method, Method::Classical);

    // a lone Z fails whether it lands on the decoy or on a message qubit
    let z3 = CheatStrategy::pauli(PauliOperator::single(7, 3, Pauli::Z).unwrap());
    let half = CheatStrategy::uniform(vec![CheatStrategy::identity(7), z3]);
    let classical = pass_probability::<StabilizerState>(&prep, &params, &half, Evaluation::Exact).unwrap();
    let exact = acceptance_exact_over_placements::<StabilizerState>(&prep, &params, &half).unwrap();
    assert!((classical.probability - exact).abs() < 1e-12);
    assert!((exact - 0.5).abs() < 1e-12);

    let sealed = seal_with_placement::<StabilizerState>(&prep, &params, placement(3)).unwrap();
    assert!((acceptance_exact(&sealed, &half).unwrap() - 0.5).abs() < 1e-12);

    let mc = Evaluation::MonteCarlo { trials: 0, parallel: false };
    assert!(pass_probability::<StabilizerState>(&prep, &params, &CheatStrategy::full_open(), mc).is_err());
}

#[test]
fn full_open_exact_agrees_between_backends() {
    let params = instance();
    for s in [CheatStrategy::full_open(), CheatStrategy::FullOpen { readout: None, reencode: true }] {
        let tab = acceptance_exact_over_placements::<StabilizerState>(&Prep::plus(), &params, &s).unwrap();
        let dense = acceptance_exact_over_placements::<DenseState>(&Prep::plus(), &params, &s).unwrap();
        assert!((tab - dense).abs() < 1e-9);
        assert!(tab < 1.0);
    }
}

#[test]
fn transcripts_have_the_expected_shape() {
    let params = instance();
    let sealed = seal_with_placement::<StabilizerState>(&Prep::plus(), &params, placement(1)).unwrap();
    let mut rng = trial_rng(0, 0);

    let mut s = sealed.clone();
    let tr = apply_strategy(&mut s, &CheatStrategy::identity(7), &mut RngSource(&mut rng)).unwrap();
    assert!(tr.outcomes.is_empty() && tr.choices.is_empty());
    assert_eq!(s.state, sealed.state);

    let all_z = CheatStrategy::MeasurementScript { steps: (0..7).map(|position| ScriptStep::MeasureZ { position }).collect() };
    let mut s = sealed.clone();
    assert_eq!(apply_strategy(&mut s, &all_z, &mut RngSource(&mut rng)).unwrap().outcomes.len(), 7);

    let honest = CheatStrategy::FullOpen { readout: None, reencode: false };
    let mut a = sealed.clone();
    let mut b = sealed.clone();
    let tr = apply_strategy(&mut a, &honest, &mut RngSource(&mut trial_rng(5, 5))).unwrap();
    let out = open(&mut b, &mut RngSource(&mut trial_rng(5, 5))).unwrap();
    let bits: Vec<bool> = tr.outcomes.iter().map(|o| *o == Outcome::Minus).collect();
    assert_eq!(bits, out.syndrome.bits);
    assert_eq!(a.state, b.state);
}

#[test]
fn strategies_cannot_reach_private_qubits() {
    let params = instance();
    let sealed = seal_with_placement::<StabilizerState>(&Prep::plus(), &params, placement(0)).unwrap();
    let mut s = sealed.clone();
    let mut rng = trial_rng(0, 0);
    let bad = CheatStrategy::measure_z(7);
    assert!(apply_strategy(&mut s, &bad, &mut RngSource(&mut rng)).is_err());
    let mut reg = s.public_register().unwrap();
    assert!(reg.apply_pauli(&PauliOperator::identity(12)).is_err());
}

#[test]
fn leak_examples() {
    let params = instance();
    let id = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, &CheatStrategy::identity(7)).unwrap();
    assert_eq!(id.leak, 0.0);
    // a Z outcome at a fixed position is uniform whether or not it hits the
    // decoy, so it says nothing about where the decoy is
    let z0 = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, &CheatStrategy::measure_z(0)).unwrap();
    assert!(z0.leak.abs() < 1e-12);
    assert!((z0.a - 0.5).abs() < 1e-12);
    let dense = placement_leak_exact::<DenseState>(&Prep::zero(), &params, &CheatStrategy::measure_z(0)).unwrap();
    assert!((dense.a - z0.a).abs() < 1e-9 && (dense.leak - z0.leak).abs() < 1e-9);
}

#[test]
fn pauli_mixtures_respect_the_bound_once_the_verdict_is_counted() {
    let params = instance();
    let catalogue = strategy_catalogue(&params.message_code);
    assert!(catalogue.len() >= 20);
    for (name, s) in catalogue.iter().filter(|(_, s)| s.is_pauli_mixture()) {
        let r = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, s).unwrap();
        assert!(r.leak_with_verdict <= r.bound_tight + 1e-9, "{name}");
        assert!(r.leak_with_verdict <= qseal::security::bounds::binary_entropy(r.a).unwrap() + 1e-9, "{name}");
    }
}

#[test]
fn strategies_serialize() {
    for (_, s) in strategy_catalogue(&instance().message_code) {
        let back: CheatStrategy = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
