//! Exact and sampled detection rates of three attacks on the 12-qubit seal.
//!
//! ```text
//! cargo run --release --example attack_harness -- [trials] [seed]
//! ```

use qseal::backend::Prep;
use qseal::dense::DenseState;
use qseal::seal::{open_then_verify_experiment, SealParameters};
use qseal::security::{acceptance_exact_over_placements, within_sigmas, CheatStrategy};
use qseal::tableau::StabilizerState;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2024);
    let params = SealParameters::steane_five(seed)?;
    let prep = Prep::plus();

    let attacks = [
        ("identity", CheatStrategy::identity(7)),
        ("z-measure:random", CheatStrategy::measure_z_random(7)),
        ("full-open", CheatStrategy::full_open()),
        ("full-open+reencode", CheatStrategy::FullOpen { readout: None, reencode: true }),
    ];
    println!("{:<20} {:>12} {:>12} {:>10} {:>8}", "attack", "exact(tab)", "exact(dense)", "sampled", "3σ");
    for (name, attack) in &attacks {
        let tab = 1.0 - acceptance_exact_over_placements::<StabilizerState>(&prep, &params, attack)?;
        let dense = 1.0 - acceptance_exact_over_placements::<DenseState>(&prep, &params, attack)?;
        let mc = open_then_verify_experiment::<StabilizerState>(&prep, &params, attack, trials, true)?;
        println!(
            "{name:<20} {tab:>12.6} {dense:>12.6} {:>10.4} {:>8}",
            mc.rejection_rate,
            if within_sigmas(mc.rejection_rate, dense, trials, 3.0) { "ok" } else { "MISS" }
        );
    }
    Ok(())
}
