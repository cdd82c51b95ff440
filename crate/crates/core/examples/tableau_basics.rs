//! Build a GHZ state on the tableau simulator, read off its stabilizers and
//! entropies, and cross-check against the state-vector oracle.

use qseal::backend::RngSource;
use qseal::dense::DenseState;
use qseal::gate::CliffordGate;
use qseal::pauli::PauliOperator;
use qseal::tableau::StabilizerState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let circuit: Vec<CliffordGate> =
        std::iter::once(CliffordGate::h(0)).chain((1..n).map(|q| CliffordGate::cx(0, q))).collect();
    let mut state = StabilizerState::new(n)?;
    for g in &circuit {
        state.apply_gate(g)?;
    }
    println!("stabilizers:");
    for s in state.stabilizers() {
        println!("  {s}");
    }
    let dense = DenseState::from_circuit(n, &circuit)?;
    for k in 1..n {
        let subset: Vec<usize> = (0..k).collect();
        println!("S(q0..q{}) tableau {:.3}  dense {:.3}", k - 1, state.reduced_entropy(&subset)?, dense.entropy(&subset)?);
    }
    let xxxx: PauliOperator = "XXXX".parse()?;
    let zzii: PauliOperator = "ZZII".parse()?;
    println!("<XXXX> = {}  <ZZII> = {}", state.expectation(&xxxx)?, state.expectation(&zzii)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let z0: PauliOperator = "ZIII".parse()?;
    let m = state.measure(&z0, &mut RngSource(&mut rng))?;
    println!("measured Z0 -> {:?} (random: {})", m.outcome, !m.deterministic);
    let z3: PauliOperator = "IIIZ".parse()?;
    let m = state.measure(&z3, &mut RngSource(&mut rng))?;
    println!("measured Z3 -> {:?} (random: {})", m.outcome, !m.deterministic);
    Ok(())
}
