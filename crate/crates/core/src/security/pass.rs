use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::strategy::{apply_strategy, passes_exact, CheatStrategy, Transcript};
use crate::backend::{enumerate_branches, Backend, Branch, OutcomeSource, Prep, RngSource};
use crate::error::{Error, Result};
use crate::seal::{seal_with_placement, verify, PlacementMap, SealParameters, SealedMessage, VerifyMode};

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_549_054;

/// Attack then verify, on a copy of `sealed`.
pub fn attack_then_verify<B: Backend>(
    sealed: &SealedMessage<B>,
    strategy: &CheatStrategy,
    src: &mut dyn OutcomeSource,
) -> Result<(Transcript, bool)> {
    let mut s = sealed.clone();
    let tr = apply_strategy(&mut s, strategy, src)?;
    let report = verify(&mut s, VerifyMode::Original, src)?;
    Ok((tr, report.accept))
}

/// Every outcome branch of attack-then-verify with its exact probability.
pub fn exact_branches<B: Backend>(
    sealed: &SealedMessage<B>,
    strategy: &CheatStrategy,
) -> Result<Vec<Branch<(Transcript, bool)>>> {
    enumerate_branches(|src| attack_then_verify(sealed, strategy, src))
}

/// Exact acceptance probability for a fixed placement.
pub fn acceptance_exact<B: Backend>(sealed: &SealedMessage<B>, strategy: &CheatStrategy) -> Result<f64> {
    Ok(exact_branches(sealed, strategy)?.iter().filter(|b| b.value.1).map(|b| b.probability).sum())
}

/// Exact acceptance probability averaged over every placement, i.e. over the
/// seal's own randomness.
pub fn acceptance_exact_over_placements<B: Backend>(
    prep: &Prep,
    params: &SealParameters,
    strategy: &CheatStrategy,
) -> Result<f64> {
    let placements = PlacementMap::all(params.n(), params.decoy_code.n(), params.t)?;
    let total: Result<Vec<f64>> = placements
        .into_par_iter()
        .map(|pl| acceptance_exact(&seal_with_placement::<B>(prep, params, pl)?, strategy))
        .collect();
    let v = total?;
    Ok(v.iter().sum::<f64>() / v.len() as f64)
}

/// Acceptance probability of a Pauli mixture from the classical predicate,
/// averaged over placements.
pub fn acceptance_classical(strategy: &CheatStrategy, params: &SealParameters) -> Result<f64> {
    let members = strategy
        .pauli_members()
        .ok_or_else(|| Error::InvalidParameters("classical evaluation needs a Pauli mixture".into()))?;
    let placements = PlacementMap::all(params.n(), params.decoy_code.n(), params.t)?;
    let mut total = 0.0;
    for pl in &placements {
        for (w, p) in &members {
            if passes_exact(p, &params.message_code, pl)? {
                total += w;
            }
        }
    }
    Ok(total / placements.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    /// Symplectic predicate, no simulation.
    Classical,
    /// Exhaustive outcome-branch enumeration.
    Exact,
    MonteCarlo { trials: usize, ci99_low: f64, ci99_high: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PassEstimate {
    pub probability: f64,
    #[serde(flatten)]
    pub method: Method,
}

#[derive(Copy, Clone, Debug)]
pub enum Evaluation {
    Exact,
    MonteCarlo { trials: usize, parallel: bool },
}

/// Probability that verification accepts after `strategy`, over the seal's
/// placement randomness. Pauli mixtures are evaluated classically in exact mode.
pub fn pass_probability<B: Backend>(
    prep: &Prep,
    params: &SealParameters,
    strategy: &CheatStrategy,
    evaluation: Evaluation,
) -> Result<PassEstimate> {
    strategy.validate(params.n())?;
    match evaluation {
        Evaluation::Exact if strategy.is_pauli_mixture() => {
            Ok(PassEstimate { probability: acceptance_classical(strategy, params)?, method: Method::Classical })
        }
        Evaluation::Exact => Ok(PassEstimate {
            probability: acceptance_exact_over_placements::<B>(prep, params, strategy)?,
            method: Method::Exact,
        }),
        Evaluation::MonteCarlo { trials, parallel } => {
            let stats = run_trials::<B>(prep, params, strategy, trials, parallel)?;
            let (lo, hi) = wilson_interval(stats.trials - stats.rejections, stats.trials, Z_99);
            Ok(PassEstimate {
                probability: 1.0 - stats.rejection_rate,
                method: Method::MonteCarlo { trials, ci99_low: lo, ci99_high: hi },
            })
        }
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// `|observed − p| ≤ k·sqrt(p(1−p)/trials)`.
pub fn within_sigmas(observed: f64, p: f64, trials: usize, k: f64) -> bool {
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    (observed - p).abs() <= k * sigma + 1e-15
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectionStats {
    pub trials: usize,
    pub seed: u64,
    pub rejections: usize,
    pub rejection_rate: f64,
    pub ci99_low: f64,
    pub ci99_high: f64,
    /// SHA-256 over per-trial `(accept, transcript)` lines in trial order.
    pub transcript_digest: String,
}

struct TrialRecord {
    accept: bool,
    transcript: Transcript,
}

fn one_trial<B: Backend>(prep: &Prep, params: &SealParameters, strategy: &CheatStrategy, trial: u64) -> Result<TrialRecord> {
    let mut rng = trial_rng(params.seed, trial);
    let placement = PlacementMap::sample(params.n(), params.decoy_code.n(), params.t, &mut rng)?;
    let sealed = seal_with_placement::<B>(prep, params, placement)?;
    let (transcript, accept) = attack_then_verify(&sealed, strategy, &mut RngSource(&mut rng))?;
    Ok(TrialRecord { accept, transcript })
}

/// Independent seal → attack → verify trials. Trial `i` uses the stream
/// `(params.seed, i)`, so results do not depend on `parallel`.
pub fn run_trials<B: Backend>(
    prep: &Prep,
    params: &SealParameters,
    strategy: &CheatStrategy,
    trials: usize,
    parallel: bool,
) -> Result<DetectionStats> {
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    strategy.validate(params.n())?;
    let records: Vec<TrialRecord> = if parallel {
        (0..trials as u64).into_par_iter().map(|i| one_trial::<B>(prep, params, strategy, i)).collect::<Result<_>>()?
    } else {
        (0..trials as u64).map(|i| one_trial::<B>(prep, params, strategy, i)).collect::<Result<_>>()?
    };
    let mut hasher = Sha256::new();
    let mut rejections = 0;
    for r in &records {
        if !r.accept {
            rejections += 1;
        }
        let line = serde_json::to_string(&(r.accept, &r.transcript))?;
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
    }
    let (lo, hi) = wilson_interval(rejections, trials, Z_99);
    Ok(DetectionStats {
        trials,
        seed: params.seed,
        rejections,
        rejection_rate: rejections as f64 / trials as f64,
        ci99_low: lo,
        ci99_high: hi,
        transcript_digest: hex::encode(hasher.finalize()),
    })
}
