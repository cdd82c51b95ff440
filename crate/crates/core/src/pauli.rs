//! n-qubit Pauli operators in symplectic form.
//!
//! An operator is stored as `i^phase · σ(x_0, z_0) ⊗ … ⊗ σ(x_{n-1}, z_{n-1})`
//! where `σ(1,0) = X`, `σ(0,1) = Z` and `σ(1,1) = Y`. With this labelling a
//! Hermitian operator always has an even phase, so `phase == 2` is the sign −1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An n-qubit Pauli operator with phase tracked as a power of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliOperator {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self { n, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    /// `kind` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, kind: Pauli) -> Result<Self> {
        let mut p = Self::identity(n);
        p.set(q, kind)?;
        Ok(p)
    }

    pub fn from_bits(x: &[bool], z: &[bool], phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch { expected: x.len(), actual: z.len() });
        }
        let mut p = Self::identity(x.len());
        for (q, (&xb, &zb)) in x.iter().zip(z).enumerate() {
            p.set_bits(q, xb, zb);
        }
        p.phase = phase & 3;
        Ok(p)
    }

    /// Build from bit masks (qubit `q` ↔ bit `q`), for `n <= 64`.
    pub fn from_masks(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= WORD, "from_masks supports at most 64 qubits");
        let keep = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut p = Self::identity(n);
        if n > 0 {
            p.x[0] = x & keep;
            p.z[0] = z & keep;
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Exponent `k` of the global factor `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) & 3;
    }

    pub fn negated(mut self) -> Self {
        self.negate();
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// Phase -1 among Hermitian operators.
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, kind: Pauli) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange { index: q, n_qubits: self.n });
        }
        let (xb, zb) = kind.bits();
        self.set_bits(q, xb, zb);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_bits(&mut self, q: usize, xb: bool, zb: bool) {
        let (w, b) = (q / WORD, 1u64 << (q % WORD));
        if xb {
            self.x[w] |= b;
        } else {
            self.x[w] &= !b;
        }
        if zb {
            self.z[w] |= b;
        } else {
            self.z[w] &= !b;
        }
    }

    #[inline]
    pub(crate) fn flip_x(&mut self, q: usize) {
        self.x[q / WORD] ^= 1u64 << (q % WORD);
    }

    #[inline]
    pub(crate) fn flip_z(&mut self, q: usize) {
        self.z[q / WORD] ^= 1u64 << (q % WORD);
    }

    /// Bit masks of the X and Z parts, for `n <= 64`.
    pub fn masks(&self) -> (u64, u64) {
        assert!(self.n <= WORD, "masks() supports at most 64 qubits");
        if self.n == 0 {
            (0, 0)
        } else {
            (self.x[0], self.z[0])
        }
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    /// True when all bits are zero; the phase is ignored.
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_up_to_phase()
    }

    /// Same bits, phase ignored.
    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: other.n });
        }
        Ok(())
    }

    /// Parity of the symplectic inner product; `true` means anticommuting.
    #[inline]
    pub(crate) fn symplectic_unchecked(&self, other: &Self) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        acc & 1 == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.symplectic_unchecked(other))
    }

    pub fn anticommutes(&self, other: &Self) -> Result<bool> {
        self.commutes(other).map(|c| !c)
    }

    /// `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// `self ← self · other`; lengths must already agree.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        // In X^x Z^z form the exponent is phase + |x∧z|, and moving Z^{z1} past
        // X^{x2} contributes (-1)^{z1·x2}.
        let mut e = self.phase as u32 + other.phase as u32;
        let mut ys_in = 0u32;
        let mut cross = 0u32;
        let mut ys_out = 0u32;
        for i in 0..self.x.len() {
            ys_in += (self.x[i] & self.z[i]).count_ones() + (other.x[i] & other.z[i]).count_ones();
            cross += (self.z[i] & other.x[i]).count_ones();
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
            ys_out += (self.x[i] & self.z[i]).count_ones();
        }
        e += ys_in + 2 * cross;
        self.phase = ((e + 4 * ys_out - ys_out) & 3) as u8;
    }

    /// Place qubit `j` of `self` at `map[j]` in an operator on `total` qubits.
    pub fn embed(&self, total: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: map.len() });
        }
        let mut out = Self::identity(total);
        for (j, &phys) in map.iter().enumerate() {
            if phys >= total {
                return Err(Error::IndexOutOfRange { index: phys, n_qubits: total });
            }
            out.set_bits(phys, self.x_bit(j), self.z_bit(j));
        }
        out.phase = self.phase;
        Ok(out)
    }

    /// Operator on `positions.len()` qubits taking qubit `positions[j]` to `j`.
    /// The phase is kept.
    pub fn restrict(&self, positions: &[usize]) -> Result<Self> {
        let mut out = Self::identity(positions.len());
        for (j, &q) in positions.iter().enumerate() {
            if q >= self.n {
                return Err(Error::IndexOutOfRange { index: q, n_qubits: self.n });
            }
            out.set_bits(j, self.x_bit(q), self.z_bit(q));
        }
        out.phase = self.phase;
        Ok(out)
    }

    /// Label string without the phase prefix.
    pub fn label(&self) -> String {
        (0..self.n).map(|q| self.get(q).symbol()).collect()
    }

    /// Concatenated `x` then `z` bits as a `0`/`1` string.
    pub fn to_bit_string(&self) -> String {
        let mut s = String::with_capacity(2 * self.n);
        for q in 0..self.n {
            s.push(if self.x_bit(q) { '1' } else { '0' });
        }
        for q in 0..self.n {
            s.push(if self.z_bit(q) { '1' } else { '0' });
        }
        s
    }

    pub fn from_bit_string(bits: &str, phase: u8) -> Result<Self> {
        let bytes = bits.as_bytes();
        if !bytes.len().is_multiple_of(2) || bytes.iter().any(|b| *b != b'0' && *b != b'1') {
            return Err(Error::PauliParse(bits.to_string()));
        }
        let n = bytes.len() / 2;
        let x: Vec<bool> = bytes[..n].iter().map(|b| *b == b'1').collect();
        let z: Vec<bool> = bytes[n..].iter().map(|b| *b == b'1').collect();
        Self::from_bits(&x, &z, phase)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.label())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::PauliParse(s.to_string()));
        }
        let mut p = PauliOperator::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let kind = match c {
                'I' | '_' | '.' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(Error::PauliParse(s.to_string())),
            };
            p.set(q, kind)?;
        }
        p.phase = phase;
        Ok(p)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every n-qubit Pauli modulo phase, as masks, for `n <= 16`.
pub(crate) fn all_masks(n: usize) -> impl Iterator<Item = (u64, u64)> {
    assert!(n <= 16, "exhaustive Pauli scans are limited to 16 qubits");
    let m = 1u64 << n;
    (0..m).flat_map(move |x| (0..m).map(move |z| (x, z)))
}

#[inline]
pub(crate) fn masks_anticommute(ax: u64, az: u64, bx: u64, bz: u64) -> bool {
    ((ax & bz) ^ (az & bx)).count_ones() & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XXXX").commutes(&p("ZZII")).unwrap());
        assert!(matches!(p("X").commutes(&p("XX")), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn multiplication_examples() {
        assert!(p("X").multiply(&p("X")).unwrap().is_identity());
        let xz = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(xz.label(), "Y");
        assert_eq!(xz.phase(), 3);
        let prod = p("XZ").multiply(&p("ZZ")).unwrap();
        assert_eq!(prod.to_string(), "-iYI");
    }

    #[test]
    fn weight_and_identity() {
        assert_eq!(PauliOperator::identity(5).weight(), 0);
        assert!(PauliOperator::identity(5).is_identity());
        assert_eq!(p("XIYZI").weight(), 3);
        assert_eq!(p("XIYZI").support(), vec![0, 2, 3]);
    }

    #[test]
    fn labels_round_trip() {
        for s in ["XZZXI", "-YY", "iZ", "-iXIZ"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("XQ".parse::<PauliOperator>().is_err());
        let q = p("-XYZ");
        let bits = q.to_bit_string();
        assert_eq!(bits, "110011");
        assert_eq!(PauliOperator::from_bit_string(&bits, q.phase()).unwrap(), q);
    }

    #[test]
    fn embed_and_restrict() {
        let q = p("XZ");
        let e = q.embed(4, &[3, 1]).unwrap();
        assert_eq!(e.label(), "IZIX");
        assert_eq!(e.restrict(&[3, 1]).unwrap(), q);
    }

    /// Dense 2x2 matrices give an independent reference for the phase rule.
    fn matrix(k: Pauli) -> [[num_complex::Complex64; 2]; 2] {
        use num_complex::Complex64 as C;
        let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
        match k {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    fn kron_apply(op: &PauliOperator) -> Vec<Vec<num_complex::Complex64>> {
        use num_complex::Complex64 as C;
        let n = op.n_qubits();
        let dim = 1 << n;
        let ph = [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)]
            [op.phase() as usize];
        let mut m = vec![vec![C::new(0.0, 0.0); dim]; dim];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let mut v = ph;
                for q in 0..n {
                    v *= matrix(op.get(q))[(r >> q) & 1][(c >> q) & 1];
                }
                *entry = v;
            }
        }
        m
    }

    #[test]
    fn exhaustive_two_qubit_products_match_matrices() {
        let all: Vec<PauliOperator> = all_masks(2)
            .map(|(x, z)| PauliOperator::from_masks(2, x, z))
            .collect();
        assert_eq!(all.len() * all.len(), 256);
        for a in &all {
            for b in &all {
                let ab = a.multiply(b).unwrap();
                let (ma, mb, mab) = (kron_apply(a), kron_apply(b), kron_apply(&ab));
                for r in 0..4 {
                    for c in 0..4 {
                        let v: num_complex::Complex64 = (0..4).map(|k| ma[r][k] * mb[k][c]).sum();
                        assert!((v - mab[r][c]).norm() < 1e-12, "{a} * {b} = {ab}");
                    }
                }
                assert_eq!(a.commutes(b).unwrap(), b.commutes(a).unwrap());
                for c in &all {
                    let left = ab.multiply(c).unwrap();
                    let right = a.multiply(&b.multiply(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
