//! Closed-form security bounds and the code-length search.
//!
//! All logarithms are base 2. `t` is the number of decoy qubits, `n` the
//! message block length and `ε_p` the smallest pass probability considered.

use serde::{Deserialize, Serialize};

use super::SecurityParameters;
use crate::error::{Error, Result};

/// Reference rate `t/n` used when none is given.
pub const DEFAULT_RATE: f64 = 0.055;

/// Relative distance used by [`parameter_search`]: `d = ⌈0.11·n⌉`.
pub const SEARCH_RELATIVE_DISTANCE: f64 = 0.11;

/// Upper end of the linear scans below.
pub const MAX_SEARCH_N: usize = 10_000_000;

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("{name} = {v} is outside [0, 1]")))
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `H(a) = −a·log a − (1−a)·log(1−a)`.
pub fn binary_entropy(a: f64) -> Result<f64> {
    check_unit("a", a)?;
    Ok(-xlog2x(a) - xlog2x(1.0 - a))
}

/// The `a ∈ [0, 1/2]` with `H(a) = y`, by bisection to `1e-12`.
pub fn binary_entropy_inverse(y: f64) -> Result<f64> {
    check_unit("y", y)?;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolevoBound {
    /// Entropy of `diag[a, (1−a)/(2^t−1), …]`.
    pub tight: f64,
    /// `H(a) + t(1−a)`.
    pub loose: f64,
}

/// Bound on the information about decoy locations for pass weight `a`.
pub fn holevo_bound_ie(a: f64, t: usize) -> Result<HolevoBound> {
    check_unit("a", a)?;
    if t == 0 {
        if a < 1.0 {
            return Err(Error::InvalidParameters("t = 0 leaves no room for failing strategies".into()));
        }
        return Ok(HolevoBound { tight: 0.0, loose: 0.0 });
    }
    let tf = t as f64;
    // beyond 52 bits 2^t − 1 rounds to 2^t
    let log_m = if t < 53 { (((1u64 << t) - 1) as f64).log2() } else { tf };
    let tight = -xlog2x(a) - xlog2x(1.0 - a) + (1.0 - a) * log_m;
    let loose = binary_entropy(a)? + tf * (1.0 - a);
    Ok(HolevoBound { tight, loose })
}

/// `ε_p > 1/(1 + 2^t)`, strictly.
pub fn epsilon_condition(epsilon_p: f64, t: usize) -> bool {
    epsilon_p > 1.0 / (1.0 + (t as f64).exp2())
}

/// `H(ε_p) + (1−ε_p)·t`.
pub fn i_bound(epsilon_p: f64, t: usize) -> Result<f64> {
    Ok(binary_entropy(epsilon_p)? + (1.0 - epsilon_p) * t as f64)
}

/// `⌊(n−1)/2⌋`.
pub fn redundancy_bound(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

fn base_ratio(n: usize, t: usize, epsilon_p: f64) -> Result<f64> {
    if t >= n {
        return Err(Error::InvalidParameters(format!("t = {t} must be below n = {n}")));
    }
    if !epsilon_condition(epsilon_p, t) {
        return Err(Error::InvalidParameters(format!(
            "ε_p = {epsilon_p} does not exceed 1/(1+2^{t}) = {}",
            1.0 / (1.0 + (t as f64).exp2())
        )));
    }
    let ib = i_bound(epsilon_p, t)?;
    if ib >= n as f64 {
        return Err(Error::InvalidParameters(format!("I_bound = {ib} is not below n = {n}")));
    }
    Ok((n - t) as f64 / (n as f64 - ib))
}

/// `[(n−t)/(n−I_bound)]^(n−ρ)` with `ρ = ⌊(n−1)/2⌋`.
pub fn pick_probability_bound(n: usize, t: usize, epsilon_p: f64) -> Result<f64> {
    Ok(base_ratio(n, t, epsilon_p)?.powi((n - redundancy_bound(n)) as i32))
}

/// The urn product `∏_{i<n−ρ} (n−t−i)/(n−I_bound−i)` that the power form bounds.
pub fn pick_probability_exact(n: usize, t: usize, epsilon_p: f64) -> Result<f64> {
    base_ratio(n, t, epsilon_p)?;
    let ib = i_bound(epsilon_p, t)?;
    let mut p = 1.0;
    for i in 0..n - redundancy_bound(n) {
        let num = (n as f64 - t as f64 - i as f64).max(0.0);
        let den = n as f64 - ib - i as f64;
        if num == 0.0 {
            return Ok(0.0);
        }
        if den <= 0.0 {
            return Err(Error::InvalidParameters(format!("urn has fewer than {} balls", i + 1)));
        }
        p *= num / den;
    }
    Ok(p)
}

/// `[(n−t)/(n−I_bound)]^⌈(n+1)/2⌉`.
pub fn psi_info_bound(n: usize, t: usize, epsilon_p: f64) -> Result<f64> {
    Ok(base_ratio(n, t, epsilon_p)?.powi((n + 1).div_ceil(2) as i32))
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Alpha {
    pub epsilon_p: f64,
    pub rate: f64,
    /// Supremum of `(n−t)/(n−I_bound)` over `n ≥ n0` with `t = ⌊rate·n⌋`.
    pub alpha: f64,
    /// Smallest `n` with `t ≥ 1`, `ε_p > 1/(1+2^t)` and `I_bound < t`.
    pub n0: usize,
    /// `(1−rate)/(1−(1−ε_p)·rate)`, the `n → ∞` limit of the ratio.
    pub limit: f64,
}

/// `(1−rate)/(1+rate)`, the closed form quoted for `ε_p = 0`.
pub fn alpha_closed_form(rate: f64) -> f64 {
    (1.0 - rate) / (1.0 + rate)
}

fn check_rate(rate: f64) -> Result<()> {
    if rate > 0.0 && rate < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("rate = {rate} is outside (0, 1/2)")))
    }
}

fn rate_t(n: usize, rate: f64) -> usize {
    // guard against 0.055·200 = 10.999…
    (rate * n as f64 + 1e-9).floor() as usize
}

/// Uniform bound `α(ε_p)` on the ratio for all `n ≥ n0`. Fails with
/// [`Error::Infeasible`] when the ratio never drops below 1, which includes
/// `ε_p = 0`.
pub fn alpha_of(epsilon_p: f64, rate: f64) -> Result<Alpha> {
    check_unit("epsilon_p", epsilon_p)?;
    check_rate(rate)?;
    let h = binary_entropy(epsilon_p)?;
    let c = 1.0 - epsilon_p;
    let limit = (1.0 - rate) / (1.0 - c * rate);
    if epsilon_p == 0.0 {
        return Err(Error::Infeasible(format!(
            "at ε_p = 0 the ratio (n−t)/(n−I_bound) equals 1 for every n (limit {limit})"
        )));
    }
    let t_needed = (h / epsilon_p).floor() as usize + 1;
    let n0 = (1..MAX_SEARCH_N)
        .find(|&n| {
            let t = rate_t(n, rate);
            t >= t_needed.max(1) && epsilon_condition(epsilon_p, t) && h < epsilon_p * t as f64 && t < n
        })
        .ok_or_else(|| Error::Infeasible(format!("no n below {MAX_SEARCH_N} makes I_bound < t")))?;
    // Past n0 the ratio decreases in t, so t > rate·n − 1 gives the envelope
    // g(n) = (n(1−r)+1)/(n(1−c·r) − h + c), which decreases in n.
    let span = 200_000usize;
    let mut sup: f64 = 0.0;
    for n in n0..n0 + span {
        let t = rate_t(n, rate);
        sup = sup.max((n - t) as f64 / (n as f64 - h - c * t as f64));
    }
    let tail = n0 + span;
    let envelope = (tail as f64 * (1.0 - rate) + 1.0) / (tail as f64 * (1.0 - c * rate) - h + c);
    let alpha = sup.max(envelope.min(1.0));
    if alpha >= 1.0 {
        return Err(Error::Infeasible(format!("ratio bound α = {alpha} is not below 1")));
    }
    Ok(Alpha { epsilon_p, rate, alpha, n0, limit })
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinLength {
    /// `max(n0, ⌈2·log(1/ε_I)/log(1/α)⌉)`.
    pub n: usize,
    /// `⌈2·log(1/ε_I)/log(1/α)⌉` alone.
    pub log_condition: usize,
    pub alpha: Option<Alpha>,
}

/// Block length from the logarithmic condition with `α = α(ε_p)`. For
/// `ε_I ≥ 1` any length works and 0 is returned.
pub fn min_codeword_length(epsilon_p: f64, epsilon_i: f64, rate: f64) -> Result<MinLength> {
    if epsilon_i.is_nan() || epsilon_i <= 0.0 {
        return Err(Error::InvalidParameters(format!("epsilon_i = {epsilon_i} must be positive")));
    }
    if epsilon_i >= 1.0 {
        return Ok(MinLength { n: 0, log_condition: 0, alpha: None });
    }
    let alpha = alpha_of(epsilon_p, rate)?;
    let log_condition = (2.0 * (1.0 / epsilon_i).ln() / (1.0 / alpha.alpha).ln()).ceil() as usize;
    Ok(MinLength { n: log_condition.max(alpha.n0), log_condition, alpha: Some(alpha) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub epsilon_p: f64,
    pub epsilon_i: f64,
    pub n: usize,
    pub d: usize,
    pub t: usize,
    /// Pass weight on decoy-clean strategies, taken at its minimum `ε_p`.
    pub a: f64,
    pub i_e_bound: HolevoBound,
    pub threshold_ok: bool,
    pub i_bound: f64,
    pub rho_bound: usize,
    pub p_bound: f64,
    pub p_exact: f64,
    pub i_psi_bound: f64,
    /// `None` when no uniform ratio bound below 1 exists at the default rate.
    pub alpha: Option<Alpha>,
    pub n_min: Option<usize>,
    /// `I_|ψ>` bound re-evaluated at `n_min` with `t = ⌊rate·n_min⌋`.
    pub n_min_psi_bound: Option<f64>,
    pub self_consistent: bool,
}

/// `d = ⌈0.11·n⌉`, `t = ⌊(d−1)/2⌋`.
pub fn search_code_shape(n: usize) -> (usize, usize) {
    let d = (SEARCH_RELATIVE_DISTANCE * n as f64 - 1e-9).ceil().max(1.0) as usize;
    (d, d.saturating_sub(1) / 2)
}

/// Whether `n` meets both conditions of the search.
pub fn search_conditions(n: usize, sec: &SecurityParameters) -> (bool, Option<f64>) {
    let (_, t) = search_code_shape(n);
    if t == 0 || !epsilon_condition(sec.epsilon_p, t) {
        return (false, None);
    }
    match psi_info_bound(n, t, sec.epsilon_p) {
        Ok(psi) => (true, Some(psi)),
        Err(_) => (true, None),
    }
}

/// Smallest `n` (with `d = ⌈0.11n⌉`, `t = ⌊(d−1)/2⌋`) satisfying the
/// threshold and `I_|ψ> < ε_I`, with the full report.
pub fn parameter_search(sec: &SecurityParameters) -> Result<BoundReport> {
    let n = (1..MAX_SEARCH_N)
        .find(|&n| matches!(search_conditions(n, sec), (true, Some(psi)) if psi < sec.epsilon_i))
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no n below {MAX_SEARCH_N} meets ε_p = {} and ε_I = {:e}",
                sec.epsilon_p, sec.epsilon_i
            ))
        })?;
    report_at(sec, n)
}

/// Every bound evaluated at block length `n`.
pub fn report_at(sec: &SecurityParameters, n: usize) -> Result<BoundReport> {
    let (d, t) = search_code_shape(n);
    let threshold_ok = t >= 1 && epsilon_condition(sec.epsilon_p, t);
    let i_b = i_bound(sec.epsilon_p, t)?;
    let (p_bound, p_exact, i_psi) = if threshold_ok {
        (pick_probability_bound(n, t, sec.epsilon_p)?, pick_probability_exact(n, t, sec.epsilon_p)?, psi_info_bound(n, t, sec.epsilon_p)?)
    } else {
        (f64::NAN, f64::NAN, f64::NAN)
    };
    let (alpha, n_min, n_min_psi) = match min_codeword_length(sec.epsilon_p, sec.epsilon_i, DEFAULT_RATE) {
        Ok(m) => {
            let psi = if m.n > 0 { psi_info_bound(m.n, rate_t(m.n, DEFAULT_RATE), sec.epsilon_p).ok() } else { None };
            (m.alpha, Some(m.n), psi)
        }
        Err(_) => (None, None, None),
    };
    let self_consistent = threshold_ok
        && i_psi < sec.epsilon_i
        && n_min_psi.is_none_or(|p| p <= sec.epsilon_i);
    Ok(BoundReport {
        epsilon_p: sec.epsilon_p,
        epsilon_i: sec.epsilon_i,
        n,
        d,
        t,
        a: sec.epsilon_p,
        i_e_bound: holevo_bound_ie(sec.epsilon_p, t.max(1))?,
        threshold_ok,
        i_bound: i_b,
        rho_bound: redundancy_bound(n),
        p_bound,
        p_exact,
        i_psi_bound: i_psi,
        alpha,
        n_min,
        n_min_psi_bound: n_min_psi,
        self_consistent,
    })
}
