//! One honest run of the protocol: seal, verify untouched, then open and see
//! verification fail.

use qseal::backend::{Prep, RngSource};
use qseal::dense::DenseState;
use qseal::seal::{open, seal, verify, SealParameters, SealedMessage, VerifyMode};
use qseal::security::trial_rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let params = SealParameters::steane_five(seed)?;
    let prep = Prep::plus();
    let sealed: SealedMessage<DenseState> = seal(&prep, &params)?;
    println!("decoy position {:?}, public qubits {:?}", sealed.placement.decoy_positions(), sealed.placement.public_indices());
    println!("private qubits {:?}", sealed.placement.private_indices());

    let mut rng = trial_rng(seed, 0);
    let mut untouched = sealed.clone();
    let report = verify(&mut untouched, VerifyMode::Original, &mut RngSource(&mut rng))?;
    println!("untouched: accept={} message syndrome {}", report.accept, report.message_syndrome);

    let mut opened = sealed.clone();
    let out = open(&mut opened, &mut RngSource(&mut rng))?;
    let f = opened.state.qubit_fidelity(out.recovered.qubit, &prep.state_vector())?;
    println!("opened: syndrome {} correction {} fidelity {f:.12}", out.syndrome, out.correction);
    let report = verify(&mut opened, VerifyMode::Revised, &mut RngSource(&mut rng))?;
    println!(
        "after opening: accept={} message syndrome {} decoy syndromes {:?}",
        report.accept,
        report.message_syndrome,
        report.decoy_syndromes.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    Ok(())
}
