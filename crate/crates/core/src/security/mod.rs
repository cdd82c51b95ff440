//! Adversary strategies, exact pass predicates, placement leakage and the
//! bound calculator.

pub mod bounds;
mod catalogue;
mod leak;
mod pass;
mod strategy;
pub mod sweeps;

pub use catalogue::strategy_catalogue;
pub use leak::{placement_leak_exact, LeakReport};
pub use pass::{
    acceptance_classical, acceptance_exact, acceptance_exact_over_placements, attack_then_verify, exact_branches,
    pass_probability, run_trials, trial_rng, wilson_interval, within_sigmas, DetectionStats, Evaluation, Method,
    PassEstimate, Z_99,
};
pub use strategy::{
    apply_strategy, enumerate_passing, passes_exact, passing_from_group, CheatStrategy, MixtureMember, ScriptStep,
    Transcript,
};

/// Allowed deviation of mixture weights from a total of 1.
pub const MIXTURE_TOL: f64 = 1e-12;

/// `0 < ε_p ≤ 1` and `0 < ε_I < 1`.
#[derive(Copy, Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SecurityParameters {
    pub epsilon_p: f64,
    pub epsilon_i: f64,
}

impl SecurityParameters {
    pub fn new(epsilon_p: f64, epsilon_i: f64) -> crate::error::Result<Self> {
        if !(epsilon_p > 0.0 && epsilon_p <= 1.0) {
            return Err(crate::error::Error::InvalidParameters(format!("epsilon_p = {epsilon_p} is outside (0, 1]")));
        }
        if !(epsilon_i > 0.0 && epsilon_i < 1.0) {
            return Err(crate::error::Error::InvalidParameters(format!("epsilon_i = {epsilon_i} is outside (0, 1)")));
        }
        Ok(Self { epsilon_p, epsilon_i })
    }
}
