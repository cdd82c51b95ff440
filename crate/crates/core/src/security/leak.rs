use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::holevo_bound_ie;
use super::pass::exact_branches;
use super::strategy::{CheatStrategy, Transcript};
use crate::backend::{Backend, Prep};
use crate::error::{Error, Result};
use crate::seal::{seal_with_placement, PlacementMap, SealParameters};

/// Largest number of placements enumerated by [`placement_leak_exact`].
pub const MAX_LEAK_PLACEMENTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakReport {
    pub placements: usize,
    /// Probability that verification accepts.
    pub a: f64,
    /// `I(decoy positions; transcript)` in bits.
    pub leak: f64,
    /// The same, conditioned on acceptance (0 when `a = 0`).
    pub leak_given_pass: f64,
    /// `I(decoy positions; transcript, verdict)`.
    pub leak_with_verdict: f64,
    pub bound_tight: f64,
    pub bound_loose: f64,
    pub within_bound: bool,
}

/// Decoy positions, transcript, verdict and joint weight of one branch.
type WeightedBranch = (Vec<usize>, Transcript, bool, f64);

/// Mutual information in bits of a joint distribution given as positive
/// weights (normalized internally).
pub(crate) fn mutual_information<S, T>(joint: &HashMap<(S, T), f64>) -> f64
where
    S: Eq + Hash + Clone,
    T: Eq + Hash + Clone,
{
    let total: f64 = joint.values().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let mut ps: HashMap<S, f64> = HashMap::new();
    let mut pt: HashMap<T, f64> = HashMap::new();
    for ((s, t), &w) in joint {
        *ps.entry(s.clone()).or_default() += w / total;
        *pt.entry(t.clone()).or_default() += w / total;
    }
    let mut mi = 0.0;
    for ((s, t), &w) in joint {
        let p = w / total;
        if p > 0.0 {
            mi += p * (p / (ps[s] * pt[t])).log2();
        }
    }
    mi.max(0.0)
}

/// Exact information the attacker's transcript carries about the secret decoy
/// positions, from the joint distribution over every placement (uniform) and
/// every outcome branch. The exposed decoy-block qubit is marginalized.
pub fn placement_leak_exact<B: Backend>(
    prep: &Prep,
    params: &SealParameters,
    strategy: &CheatStrategy,
) -> Result<LeakReport> {
    let placements = PlacementMap::all(params.n(), params.decoy_code.n(), params.t)?;
    if placements.len() > MAX_LEAK_PLACEMENTS {
        return Err(Error::TooLarge { what: "placement enumeration", n: placements.len(), max: MAX_LEAK_PLACEMENTS });
    }
    let weight = 1.0 / placements.len() as f64;
    let per: Vec<Vec<WeightedBranch>> = placements
        .par_iter()
        .map(|pl| {
            let sealed = seal_with_placement::<B>(prep, params, pl.clone())?;
            Ok(exact_branches(&sealed, strategy)?
                .into_iter()
                .filter(|b| b.probability > 0.0)
                .map(|b| (pl.decoy_positions().to_vec(), b.value.0, b.value.1, b.probability * weight))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut joint: HashMap<(Vec<usize>, Transcript), f64> = HashMap::new();
    let mut joint_pass: HashMap<(Vec<usize>, Transcript), f64> = HashMap::new();
    let mut joint_verdict: HashMap<(Vec<usize>, (Transcript, bool)), f64> = HashMap::new();
    let mut a = 0.0;
    for (s, tr, accept, w) in per.into_iter().flatten() {
        *joint.entry((s.clone(), tr.clone())).or_default() += w;
        *joint_verdict.entry((s.clone(), (tr.clone(), accept))).or_default() += w;
        if accept {
            a += w;
            *joint_pass.entry((s, tr)).or_default() += w;
        }
    }
    let a = a.clamp(0.0, 1.0);
    let bound = holevo_bound_ie(a, params.t)?;
    let leak_given_pass = mutual_information(&joint_pass);
    Ok(LeakReport {
        placements: placements.len(),
        a,
        leak: mutual_information(&joint),
        leak_given_pass,
        leak_with_verdict: mutual_information(&joint_verdict),
        bound_tight: bound.tight,
        bound_loose: bound.loose,
        within_bound: leak_given_pass <= bound.tight + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::StabilizerState;

    #[test]
    fn mi_examples() {
        let mut j = HashMap::new();
        j.insert((0, 0), 0.5);
        j.insert((1, 1), 0.5);
        assert!((mutual_information(&j) - 1.0).abs() < 1e-12);
        let mut j = HashMap::new();
        for s in 0..3 {
            for t in 0..2 {
                j.insert((s, t), 1.0);
            }
        }
        assert!(mutual_information(&j).abs() < 1e-12);
    }

    #[test]
    fn identity_leaks_nothing() {
        let params = SealParameters::steane_five(0).unwrap();
        let r = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, &CheatStrategy::identity(7)).unwrap();
        assert_eq!(r.placements, 35);
        assert!(r.leak.abs() < 1e-12 && r.leak_given_pass.abs() < 1e-12);
        assert!((r.a - 1.0).abs() < 1e-12);
    }

    /// Identity or a weight-4 stabilizer element, half and half: hand-computed
    /// joint distribution gives a = 5/7 and
    /// I = H(S | pass) − H(S | T, pass) = 0.6·log2(5) + 0.4·log2(10) − 0.7·log2(7) − 0.3·log2(3).
    #[test]
    fn stabilizer_mixture_matches_hand_value() {
        let params = SealParameters::steane_five(0).unwrap();
        let s = CheatStrategy::uniform(vec![
            CheatStrategy::identity(7),
            CheatStrategy::pauli("IIIXXXX".parse().unwrap()),
        ]);
        let r = placement_leak_exact::<StabilizerState>(&Prep::zero(), &params, &s).unwrap();
        assert!((r.a - 5.0 / 7.0).abs() < 1e-12);
        let want = 0.6 * 5f64.log2() + 0.4 * 10f64.log2() - 0.7 * 7f64.log2() - 0.3 * 3f64.log2();
        assert!((r.leak_given_pass - want).abs() < 1e-12, "{} vs {want}", r.leak_given_pass);
        assert!(r.within_bound);
    }
}
