//! Common interface over the stabilizer tableau and the dense state vector,
//! plus the measurement-outcome sources that drive both.
//!
//! Every protocol routine is written once against [`Backend`] and an
//! [`OutcomeSource`]. Passing an [`RngSource`] samples a single run; running
//! the routine under [`enumerate_branches`] visits every outcome branch with
//! its exact probability.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{x_gates, CliffordGate};
use crate::pauli::PauliOperator;

/// Probabilities closer than this to 0 or 1 count as deterministic.
pub const DETERMINISM_TOL: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    /// Syndrome-bit convention: `+1 → false`, `-1 → true`.
    pub fn bit(self) -> bool {
        self == Outcome::Minus
    }

    pub fn from_bit(b: bool) -> Self {
        if b {
            Outcome::Minus
        } else {
            Outcome::Plus
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub outcome: Outcome,
    pub deterministic: bool,
}

pub(crate) fn is_deterministic(prob_plus: f64) -> bool {
    prob_plus <= DETERMINISM_TOL || prob_plus >= 1.0 - DETERMINISM_TOL
}

/// Picks an outcome given the probability of `+1`.
pub trait OutcomeSource {
    fn choose(&mut self, prob_plus: f64) -> Outcome;
}

/// Samples outcomes from a seeded generator. Deterministic measurements never
/// draw from the generator, so transcripts depend only on genuine randomness.
pub struct RngSource<'a, R: Rng + ?Sized>(pub &'a mut R);

impl<R: Rng + ?Sized> OutcomeSource for RngSource<'_, R> {
    fn choose(&mut self, prob_plus: f64) -> Outcome {
        if prob_plus >= 1.0 - DETERMINISM_TOL {
            Outcome::Plus
        } else if prob_plus <= DETERMINISM_TOL {
            Outcome::Minus
        } else if self.0.gen::<f64>() < prob_plus {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }
}

/// Follows a fixed prefix of random outcomes, then defaults to `+1`,
/// accumulating the probability of the path taken.
#[derive(Debug, Clone)]
pub struct ForcedPath {
    prefix: Vec<Outcome>,
    taken: Vec<Outcome>,
    weight: f64,
}

impl ForcedPath {
    pub fn new(prefix: Vec<Outcome>) -> Self {
        Self { prefix, taken: Vec::new(), weight: 1.0 }
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

impl OutcomeSource for ForcedPath {
    fn choose(&mut self, prob_plus: f64) -> Outcome {
        if prob_plus >= 1.0 - DETERMINISM_TOL {
            return Outcome::Plus;
        }
        if prob_plus <= DETERMINISM_TOL {
            return Outcome::Minus;
        }
        let pos = self.taken.len();
        let o = self.prefix.get(pos).copied().unwrap_or(Outcome::Plus);
        self.weight *= if o == Outcome::Plus { prob_plus } else { 1.0 - prob_plus };
        self.taken.push(o);
        o
    }
}

/// One leaf of an exhaustive outcome enumeration.
#[derive(Debug, Clone)]
pub struct Branch<T> {
    pub probability: f64,
    /// Outcomes of the nondeterministic measurements along this branch.
    pub path: Vec<Outcome>,
    pub value: T,
}

/// Run `routine` once per outcome branch (depth first). Branch probabilities
/// sum to 1 up to rounding.
pub fn enumerate_branches<T>(
    mut routine: impl FnMut(&mut ForcedPath) -> Result<T>,
) -> Result<Vec<Branch<T>>> {
    let mut leaves = Vec::new();
    let mut stack: Vec<Vec<Outcome>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let fixed = prefix.len();
        let mut src = ForcedPath::new(prefix);
        let value = routine(&mut src)?;
        for j in fixed..src.taken.len() {
            let mut alt = src.taken[..j].to_vec();
            alt.push(Outcome::Minus);
            stack.push(alt);
        }
        leaves.push(Branch { probability: src.weight, path: src.taken, value });
    }
    Ok(leaves)
}

/// A single-qubit state preparation applied to a fresh `|0>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prep {
    /// Clifford gates, all on qubit 0, applied in order.
    Gates(Vec<CliffordGate>),
    /// Arbitrary pure state `alpha|0> + beta|1>`; dense backend only.
    State { alpha: [f64; 2], beta: [f64; 2] },
}

impl Prep {
    pub fn zero() -> Self {
        Prep::Gates(Vec::new())
    }

    pub fn one() -> Self {
        Prep::Gates(x_gates(0).to_vec())
    }

    pub fn plus() -> Self {
        Prep::Gates(vec![CliffordGate::h(0)])
    }

    pub fn minus() -> Self {
        let mut g = x_gates(0).to_vec();
        g.push(CliffordGate::h(0));
        Prep::Gates(g)
    }

    /// `H` then `S`: the `+i` eigenstate of `Y`.
    pub fn plus_i() -> Self {
        Prep::Gates(vec![CliffordGate::h(0), CliffordGate::s(0)])
    }

    /// The four preps used for completeness checks.
    pub fn standard_set() -> [(&'static str, Prep); 4] {
        [
            ("zero", Prep::zero()),
            ("one", Prep::one()),
            ("plus", Prep::plus()),
            ("plus-i", Prep::plus_i()),
        ]
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "zero" | "0" => Prep::zero(),
            "one" | "1" => Prep::one(),
            "plus" | "+" => Prep::plus(),
            "minus" | "-" => Prep::minus(),
            "plus-i" | "i" => Prep::plus_i(),
            _ => return Err(Error::InvalidParameters(format!("unknown prep {name:?}"))),
        })
    }

    pub fn state(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidParameters("zero state vector".into()));
        }
        let (a, b) = (alpha / norm, beta / norm);
        Ok(Prep::State { alpha: [a.re, a.im], beta: [b.re, b.im] })
    }

    /// Uniformly random point on the Bloch sphere.
    pub fn random_pure<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cos_theta: f64 = 1.0 - 2.0 * rng.gen::<f64>();
        let phi: f64 = std::f64::consts::TAU * rng.gen::<f64>();
        let half = cos_theta.clamp(-1.0, 1.0).acos() / 2.0;
        let alpha = Complex64::new(half.cos(), 0.0);
        let beta = Complex64::from_polar(half.sin(), phi);
        Prep::State { alpha: [alpha.re, alpha.im], beta: [beta.re, beta.im] }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Prep::Gates(gates) => {
                for g in gates {
                    if g.qubits() != [0] {
                        return Err(Error::InvalidParameters(format!(
                            "prep gate {g} does not act on qubit 0 alone"
                        )));
                    }
                }
                Ok(())
            }
            Prep::State { .. } => {
                let v = self.state_vector();
                if ((v[0].norm_sqr() + v[1].norm_sqr()) - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidParameters("prep state not normalised".into()));
                }
                Ok(())
            }
        }
    }

    pub fn is_stabilizer(&self) -> bool {
        matches!(self, Prep::Gates(_))
    }

    /// The prepared single-qubit state vector.
    pub fn state_vector(&self) -> [Complex64; 2] {
        match self {
            Prep::State { alpha, beta } => {
                [Complex64::new(alpha[0], alpha[1]), Complex64::new(beta[0], beta[1])]
            }
            Prep::Gates(gates) => {
                let mut v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
                let r = std::f64::consts::FRAC_1_SQRT_2;
                for g in gates {
                    v = match g {
                        CliffordGate::Hadamard { .. } => [(v[0] + v[1]) * r, (v[0] - v[1]) * r],
                        CliffordGate::Phase { .. } => [v[0], v[1] * Complex64::new(0.0, 1.0)],
                        CliffordGate::ControlledNot { .. } => v,
                    };
                }
                v
            }
        }
    }

    /// A unitary whose first column is the prepared state.
    pub fn unitary(&self) -> [[Complex64; 2]; 2] {
        let [a, b] = self.state_vector();
        [[a, -b.conj()], [b, a.conj()]]
    }
}

/// Operations shared by the tableau simulator and the dense oracle.
pub trait Backend: Clone + Send + Sync {
    /// `|0...0>` on `n` qubits.
    fn new_register(n: usize) -> Result<Self>;

    fn num_qubits(&self) -> usize;

    fn apply_gate(&mut self, gate: &CliffordGate) -> Result<()>;

    fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()>;

    /// Apply `prep` to `qubit`, which is assumed to hold `|0>`.
    fn prepare(&mut self, qubit: usize, prep: &Prep) -> Result<()>;

    /// `<P>` for a Hermitian Pauli, without disturbing the state.
    fn expectation(&self, p: &PauliOperator) -> Result<f64>;

    /// Project onto the `outcome` eigenspace of `p`. Returns the probability of
    /// that outcome before projection; when it is zero the state is left as is.
    fn project(&mut self, p: &PauliOperator, outcome: Outcome) -> Result<f64>;

    fn prob_plus(&self, p: &PauliOperator) -> Result<f64> {
        Ok(((1.0 + self.expectation(p)?) / 2.0).clamp(0.0, 1.0))
    }

    fn measure(&mut self, p: &PauliOperator, src: &mut dyn OutcomeSource) -> Result<Measurement> {
        let pp = self.prob_plus(p)?;
        let outcome = src.choose(pp);
        self.project(p, outcome)?;
        Ok(Measurement { outcome, deterministic: is_deterministic(pp) })
    }

    fn apply_circuit(&mut self, gates: &[CliffordGate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}

pub(crate) fn check_observable(p: &PauliOperator, n: usize) -> Result<()> {
    if p.n_qubits() != n {
        return Err(Error::LengthMismatch { expected: n, actual: p.n_qubits() });
    }
    if p.is_identity_up_to_phase() {
        return Err(Error::IdentityObservable);
    }
    if !p.is_hermitian() {
        return Err(Error::NonHermitian(p.phase()));
    }
    Ok(())
}
