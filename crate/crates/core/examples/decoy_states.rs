//! Decoys prepared in random pure states instead of |0>: the honest run still
//! verifies and a random Z measurement is still caught half the time.

use qseal::backend::{Prep, RngSource};
use qseal::dense::DenseState;
use qseal::seal::{seal, verify, SealParameters, SealedMessage, VerifyMode};
use qseal::security::{acceptance_exact_over_placements, run_trials, trial_rng, CheatStrategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let decoy = Prep::random_pure(&mut rng);
    println!("decoy prep {decoy:?}");
    let params = SealParameters::steane_five(7)?.with_decoy_preps(vec![decoy])?;

    let mut sealed: SealedMessage<DenseState> = seal(&Prep::one(), &params)?;
    let mut src = trial_rng(7, 0);
    println!("untouched accept: {}", verify(&mut sealed, VerifyMode::Original, &mut RngSource(&mut src))?.accept);

    let attack = CheatStrategy::measure_z_random(7);
    let exact = 1.0 - acceptance_exact_over_placements::<DenseState>(&Prep::one(), &params, &attack)?;
    let sampled = run_trials::<DenseState>(&Prep::one(), &params, &attack, 2000, false)?;
    println!(
        "random Z measurement: exact detection {exact:.6}, sampled {:.4} [{:.4}, {:.4}]",
        sampled.rejection_rate, sampled.ci99_low, sampled.ci99_high
    );
    Ok(())
}
