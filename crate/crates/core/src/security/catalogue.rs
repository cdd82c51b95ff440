use super::strategy::{CheatStrategy, ScriptStep};
use crate::codes::StabilizerCode;
use crate::gate::CliffordGate;
use crate::pauli::PauliOperator;

fn script(steps: Vec<ScriptStep>) -> CheatStrategy {
    CheatStrategy::MeasurementScript { steps }
}

fn z(position: usize) -> ScriptStep {
    ScriptStep::MeasureZ { position }
}

fn x(position: usize) -> ScriptStep {
    ScriptStep::MeasureX { position }
}

/// A fixed, named collection of attacks on an `n`-qubit public register of
/// `code`: single measurements, multi-qubit scripts, Pauli mixtures built from
/// the code's own group, and the opening procedure.
pub fn strategy_catalogue(code: &StabilizerCode) -> Vec<(String, CheatStrategy)> {
    let n = code.n();
    let mut out: Vec<(String, CheatStrategy)> = vec![("identity".into(), CheatStrategy::identity(n))];
    for pos in 0..n {
        out.push((format!("z-measure:{pos}"), CheatStrategy::measure_z(pos)));
    }
    out.push(("x-measure:0".into(), script(vec![x(0)])));
    out.push(("z-measure:random".into(), CheatStrategy::measure_z_random(n)));
    out.push(("z-measure:all".into(), script((0..n).map(z).collect())));
    out.push(("x-measure:all".into(), script((0..n).map(x).collect())));

    let gens = code.generators();
    if let Some(g) = gens.first() {
        let support = g.support();
        out.push((format!("z-measure:support({g})"), script(support.iter().map(|&q| z(q)).collect())));
        out.push((format!("x-measure:support({g})"), script(support.iter().map(|&q| x(q)).collect())));
        if support.len() >= 2 {
            let steps = vec![
                ScriptStep::Gate { gate: CliffordGate::cx(support[0], support[1]) },
                z(support[1]),
            ];
            out.push(("cx-parity-probe".into(), script(steps)));
        }
        out.push((format!("half:identity|{g}"), CheatStrategy::uniform(vec![CheatStrategy::identity(n), CheatStrategy::pauli(g.clone())])));
    }
    out.push(("uniform:generators".into(), CheatStrategy::uniform(gens.iter().cloned().map(CheatStrategy::pauli).collect())));
    out.push((
        "tilted:identity|logical-x".into(),
        CheatStrategy::mixture(vec![
            (0.9, CheatStrategy::identity(n)),
            (0.1, CheatStrategy::pauli(code.logical_x().clone())),
        ]),
    ));
    out.push((
        "uniform:single-qubit-z".into(),
        CheatStrategy::uniform((0..n).map(|q| CheatStrategy::pauli(PauliOperator::single(n, q, crate::pauli::Pauli::Z).unwrap())).collect()),
    ));
    out.push((
        "half:identity|z-measure:0".into(),
        CheatStrategy::uniform(vec![CheatStrategy::identity(n), CheatStrategy::measure_z(0)]),
    ));
    let group: Vec<CheatStrategy> = code
        .stabilizer_group_masks()
        .into_iter()
        .map(|(xm, zm)| CheatStrategy::pauli(PauliOperator::from_masks(n, xm, zm)))
        .collect();
    out.push(("uniform:stabilizer-group".into(), CheatStrategy::uniform(group)));
    out.push(("full-open".into(), CheatStrategy::full_open()));
    out.push(("full-open+reencode".into(), CheatStrategy::FullOpen { readout: None, reencode: true }));
    out
}
