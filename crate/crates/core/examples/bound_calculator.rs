//! Security bounds for a target pass probability and information level.
//!
//! ```text
//! cargo run --release --example bound_calculator -- [epsilon_p] [epsilon_i]
//! ```

use qseal::security::bounds::{alpha_closed_form, parameter_search, DEFAULT_RATE};
use qseal::security::SecurityParameters;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let eps_p: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.5);
    let eps_i: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1e-6);
    let r = parameter_search(&SecurityParameters::new(eps_p, eps_i)?)?;
    println!("ε_p = {eps_p}, ε_I = {eps_i:e}");
    println!("smallest n = {} with d = {}, t = {}", r.n, r.d, r.t);
    println!("I_bound = {:.4}, leak bound tight {:.4} / loose {:.4}", r.i_bound, r.i_e_bound.tight, r.i_e_bound.loose);
    println!("pick bound {:.3e} (urn product {:.3e}), I_psi bound {:.3e}", r.p_bound, r.p_exact, r.i_psi_bound);
    if let Some(a) = r.alpha {
        println!("α = {:.6} from n0 = {} (limit {:.6}); length condition n ≥ {:?}", a.alpha, a.n0, a.limit, r.n_min);
    }
    println!("self-consistent: {}", r.self_consistent);
    println!("closed-form ratio at ε_p = 0 and rate {DEFAULT_RATE}: {:.4}", alpha_closed_form(DEFAULT_RATE));
    Ok(())
}
