//! The two built-in codes: parameters, decoding tables, covering radii, and a
//! corrected single-qubit error.

use qseal::backend::{Prep, RngSource};
use qseal::codes::{
    build_decode_table, correct, covering_radius_exhaustive, css_from_parity_checks, decode_logical, encode_logical,
    five_qubit_code, hamming_checks, measure_syndrome, steane_code,
};
use qseal::dense::DenseState;
use qseal::pauli::PauliOperator;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = hamming_checks();
    let css = css_from_parity_checks(&h, &h, None)?;
    println!("Hamming CSS equals the built-in Steane code: {}", css.is_equivalent_to(&steane_code()?)?);

    for code in [steane_code()?, five_qubit_code()?] {
        let table = build_decode_table(&code, code.correctable_weight())?;
        println!(
            "{}: [[{}, {}, {}]], {} table entries, covering radius {}",
            code.name(),
            code.n(),
            code.k(),
            code.distance(),
            table.len(),
            covering_radius_exhaustive(&code)?
        );
        for g in code.generators() {
            println!("  {g}");
        }

        let n = code.n();
        let block: Vec<usize> = (0..n).collect();
        let mut s = DenseState::new(n)?;
        encode_logical(&mut s, &code, &block, &Prep::plus_i())?;
        let error = PauliOperator::single(n, n / 2, qseal::pauli::Pauli::Y)?;
        s.apply_pauli(&error)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let syndrome = measure_syndrome(&mut s, &code, &block, &mut RngSource(&mut rng))?;
        let fix = correct(&mut s, &code, &block, &syndrome, &table)?;
        let r = decode_logical(&mut s, &code, &block)?;
        let f = s.qubit_fidelity(r.qubit, &Prep::plus_i().state_vector())?;
        println!("  error {error} -> syndrome {syndrome} -> correction {fix}, fidelity {f:.12}");
    }
    Ok(())
}
