//! Exact information about the secret decoy position, per attack, against the
//! entropy bound on the decoy blocks.

use qseal::backend::Prep;
use qseal::seal::SealParameters;
use qseal::security::{placement_leak_exact, strategy_catalogue};
use qseal::tableau::StabilizerState;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = SealParameters::steane_five(0)?;
    println!("{:<40} {:>9} {:>10} {:>10} {:>10} {:>10}", "strategy", "a", "I|pass", "bound", "I", "I(T,A)");
    for (name, s) in strategy_catalogue(&params.message_code) {
        let r = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, &s)?;
        println!(
            "{name:<40} {:>9.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}{}",
            r.a,
            r.leak_given_pass,
            r.bound_tight,
            r.leak,
            r.leak_with_verdict,
            if r.within_bound { "" } else { "  EXCEEDS" }
        );
    }
    Ok(())
}
