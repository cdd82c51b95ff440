//! `[[n,1,d]]` stabilizer codes: construction, encoding, syndrome decoding and
//! covering radius.
//!
//! Generator order is fixed at construction and every syndrome is reported in
//! that order. For the two built-in codes:
//!
//! * `steane7`: X-type `IIIXXXX, IXXIIXX, XIXIXIX`, then the same three rows
//!   Z-type; `X̄ = X^⊗7`, `Z̄ = Z^⊗7`.
//! * `perfect5`: the cyclic shifts `XZZXI, IXZZX, XIXZZ, ZXIXZ`;
//!   `X̄ = X^⊗5`, `Z̄ = Z^⊗5`.

mod covering;
mod decode;
mod synth;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::gf2::{self, BitVec};
use crate::pauli::{masks_anticommute, PauliOperator};
use crate::tableau::StabilizerState;

pub use covering::{covering_radius_exhaustive, MAX_COVERING_N};
pub use decode::{
    build_decode_table, correct, decode_logical, encode_logical, measure_logical_x,
    measure_logical_z, measure_syndrome, syndrome_of_pauli, DecodeTable, RecoveredQubit, Syndrome,
};
pub use synth::synthesize_clifford;

/// Largest block length for which the distance is computed by exhaustive scan.
pub const MAX_EXHAUSTIVE_DISTANCE_N: usize = 10;

/// A stabilizer code encoding one logical qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    distance: usize,
    generators: Vec<PauliOperator>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
    encoder: Vec<CliffordGate>,
}

fn symplectic_row(p: &PauliOperator) -> BitVec {
    let n = p.n_qubits();
    let mut v = BitVec::zeros(2 * n);
    for q in 0..n {
        v.set(q, p.x_bit(q));
        v.set(n + q, p.z_bit(q));
    }
    v
}

impl StabilizerCode {
    /// Validate the operators, compute the distance (n ≤ 10) and synthesize an
    /// encoder. `declared_distance` is required above the exhaustive limit and
    /// must agree with the scan below it.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<PauliOperator>,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
        declared_distance: Option<usize>,
    ) -> Result<Self> {
        let n = logical_x.n_qubits();
        Self::validate_operators(n, &generators, &logical_x, &logical_z)?;
        let distance = Self::resolve_distance(n, &generators, &logical_x, &logical_z, declared_distance)?;
        let encoder = synth::synthesize_encoder(&generators, &logical_x, &logical_z)?;
        Ok(Self { name: name.into(), n, distance, generators, logical_x, logical_z, encoder })
    }

    /// As [`StabilizerCode::new`] but with a caller-supplied encoder, which is
    /// checked to map `|0>` and `|+>` on qubit 0 to the logical `|0>` and `|+>`.
    pub fn with_encoder(
        name: impl Into<String>,
        generators: Vec<PauliOperator>,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
        declared_distance: Option<usize>,
        encoder: Vec<CliffordGate>,
    ) -> Result<Self> {
        let n = logical_x.n_qubits();
        Self::validate_operators(n, &generators, &logical_x, &logical_z)?;
        let distance = Self::resolve_distance(n, &generators, &logical_x, &logical_z, declared_distance)?;
        let code = Self { name: name.into(), n, distance, generators, logical_x, logical_z, encoder };
        code.verify_encoder()?;
        Ok(code)
    }

    fn validate_operators(
        n: usize,
        generators: &[PauliOperator],
        lx: &PauliOperator,
        lz: &PauliOperator,
    ) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if lz.n_qubits() != n {
            return Err(Error::LengthMismatch { expected: n, actual: lz.n_qubits() });
        }
        if generators.len() + 1 != n {
            return Err(Error::UnsupportedLogicalCount(n - generators.len()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n_qubits() != n {
                return Err(Error::LengthMismatch { expected: n, actual: g.n_qubits() });
            }
            if !g.is_hermitian() || g.is_identity_up_to_phase() {
                return Err(Error::InvalidCode(format!("generator {i} ({g}) is not a valid check")));
            }
            for (j, h) in generators.iter().enumerate().take(i) {
                if !g.commutes(h)? {
                    return Err(Error::InvalidCode(format!("generators {j} and {i} anticommute")));
                }
            }
            if !g.commutes(lx)? || !g.commutes(lz)? {
                return Err(Error::InvalidCode(format!("generator {i} anticommutes with a logical")));
            }
        }
        if !lx.is_hermitian() || !lz.is_hermitian() {
            return Err(Error::InvalidCode("logical operators must be Hermitian".into()));
        }
        if lx.commutes(lz)? {
            return Err(Error::InvalidCode("logical X and Z must anticommute".into()));
        }
        let rows: Vec<BitVec> = generators.iter().map(symplectic_row).collect();
        if gf2::rank(&rows) != generators.len() {
            return Err(Error::InvalidCode("generators are not independent".into()));
        }
        Ok(())
    }

    fn resolve_distance(
        n: usize,
        generators: &[PauliOperator],
        lx: &PauliOperator,
        lz: &PauliOperator,
        declared: Option<usize>,
    ) -> Result<usize> {
        if n <= MAX_EXHAUSTIVE_DISTANCE_N {
            let d = exhaustive_distance(generators, lx, lz);
            if let Some(decl) = declared {
                if decl != d {
                    return Err(Error::InvalidCode(format!(
                        "declared distance {decl} but exhaustive scan finds {d}"
                    )));
                }
            }
            Ok(d)
        } else {
            declared.ok_or_else(|| {
                Error::InvalidCode(format!("n = {n} needs a declared distance"))
            })
        }
    }

    fn verify_encoder(&self) -> Result<()> {
        for g in &self.encoder {
            g.validate(self.n)?;
        }
        for (plus, logical) in [(false, &self.logical_z), (true, &self.logical_x)] {
            let mut s = StabilizerState::new(self.n)?;
            if plus {
                s.apply_gate(&CliffordGate::h(0))?;
            }
            for g in &self.encoder {
                s.apply_gate(g)?;
            }
            let ok = self.generators.iter().chain(std::iter::once(logical)).all(|op| {
                s.expectation(op).map(|e| e == 1.0).unwrap_or(false)
            });
            if !ok {
                return Err(Error::InvalidCode(format!(
                    "encoder does not map {} to the logical state",
                    if plus { "|+>" } else { "|0>" }
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        1
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    /// `⌊(d−1)/2⌋`.
    pub fn correctable_weight(&self) -> usize {
        self.distance.saturating_sub(1) / 2
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// The encoded spin flip.
    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    pub fn encoder(&self) -> &[CliffordGate] {
        &self.encoder
    }

    /// True when `p` commutes with every generator.
    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool> {
        for g in &self.generators {
            if !g.commutes(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when `p` lies in the stabilizer group up to phase.
    pub fn in_stabilizer_group(&self, p: &PauliOperator) -> Result<bool> {
        if p.n_qubits() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: p.n_qubits() });
        }
        let rows: Vec<BitVec> = self.generators.iter().map(symplectic_row).collect();
        Ok(gf2::in_span(&rows, &symplectic_row(p)))
    }

    /// True when `p` lies in `<generators, X̄, Z̄>` up to phase.
    pub fn in_logical_group(&self, p: &PauliOperator) -> Result<bool> {
        if p.n_qubits() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: p.n_qubits() });
        }
        let mut rows: Vec<BitVec> = self.generators.iter().map(symplectic_row).collect();
        rows.push(symplectic_row(&self.logical_x));
        rows.push(symplectic_row(&self.logical_z));
        Ok(gf2::in_span(&rows, &symplectic_row(p)))
    }

    /// Which logical Pauli a normalizer element implements (up to phase and
    /// stabilizer factors), or `None` outside the normalizer.
    pub fn logical_class(&self, p: &PauliOperator) -> Result<Option<crate::pauli::Pauli>> {
        if !self.in_normalizer(p)? {
            return Ok(None);
        }
        let flips_z = !p.commutes(&self.logical_z)?;
        let flips_x = !p.commutes(&self.logical_x)?;
        // X̄ anticommutes with Z̄ only, so its class is read off the Z̄ test
        Ok(Some(crate::pauli::Pauli::from_bits(flips_z, flips_x)))
    }

    /// Same stabilizer group and logical operators modulo the stabilizer.
    pub fn is_equivalent_to(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        let a: Vec<BitVec> = self.generators.iter().map(symplectic_row).collect();
        let b: Vec<BitVec> = other.generators.iter().map(symplectic_row).collect();
        let spans_equal = b.iter().all(|v| gf2::in_span(&a, v)) && a.iter().all(|v| gf2::in_span(&b, v));
        if !spans_equal {
            return Ok(false);
        }
        let lx = self.logical_x.multiply(&other.logical_x)?;
        let lz = self.logical_z.multiply(&other.logical_z)?;
        Ok(self.in_stabilizer_group(&lx)? && self.in_stabilizer_group(&lz)?)
    }

    /// All `2^(n+1)` elements of `<generators, X̄, Z̄>` modulo phase, as masks.
    pub(crate) fn logical_group_masks(&self) -> Vec<(u64, u64)> {
        let mut basis: Vec<(u64, u64)> = self.generators.iter().map(|g| g.masks()).collect();
        basis.push(self.logical_x.masks());
        basis.push(self.logical_z.masks());
        span_masks(&basis)
    }

    /// All `2^(n−1)` stabilizer group elements modulo phase, as masks.
    pub(crate) fn stabilizer_group_masks(&self) -> Vec<(u64, u64)> {
        let basis: Vec<(u64, u64)> = self.generators.iter().map(|g| g.masks()).collect();
        span_masks(&basis)
    }

    pub fn description(&self) -> CodeDescription {
        CodeDescription {
            name: self.name.clone(),
            n: self.n,
            k: 1,
            distance: self.distance,
            generators: self.generators.clone(),
            logical_x: self.logical_x.clone(),
            logical_z: self.logical_z.clone(),
            encoder: self.encoder.clone(),
        }
    }

    pub fn from_description(d: CodeDescription) -> Result<Self> {
        if d.k != 1 {
            return Err(Error::UnsupportedLogicalCount(d.k));
        }
        if d.logical_x.n_qubits() != d.n {
            return Err(Error::LengthMismatch { expected: d.n, actual: d.logical_x.n_qubits() });
        }
        if d.encoder.is_empty() {
            Self::new(d.name, d.generators, d.logical_x, d.logical_z, Some(d.distance))
        } else {
            Self::with_encoder(d.name, d.generators, d.logical_x, d.logical_z, Some(d.distance), d.encoder)
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.description())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_description(serde_json::from_str(s)?)
    }

    /// `steane7` or `perfect5`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "steane7" | "steane" => steane_code(),
            "perfect5" | "five" => five_qubit_code(),
            _ => Err(Error::InvalidParameters(format!("unknown code {name:?}"))),
        }
    }
}

impl Serialize for StabilizerCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.description().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StabilizerCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = CodeDescription::deserialize(d)?;
        StabilizerCode::from_description(desc).map_err(serde::de::Error::custom)
    }
}

/// JSON form of a code: generators and logicals as Pauli labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeDescription {
    pub name: String,
    pub n: usize,
    #[serde(default = "one")]
    pub k: usize,
    pub distance: usize,
    pub generators: Vec<PauliOperator>,
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
    #[serde(default)]
    pub encoder: Vec<CliffordGate>,
}

fn one() -> usize {
    1
}

pub(crate) fn span_masks(basis: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut out = vec![(0u64, 0u64)];
    for &(bx, bz) in basis {
        let len = out.len();
        for i in 0..len {
            let (x, z) = out[i];
            out.push((x ^ bx, z ^ bz));
        }
    }
    out
}

/// Smallest weight of a Pauli commuting with all generators but outside the
/// stabilizer group.
fn exhaustive_distance(generators: &[PauliOperator], lx: &PauliOperator, lz: &PauliOperator) -> usize {
    let n = lx.n_qubits();
    let gens: Vec<(u64, u64)> = generators.iter().map(|g| g.masks()).collect();
    let (lxx, lxz) = lx.masks();
    let (lzx, lzz) = lz.masks();
    let mut best = n;
    for (x, z) in crate::pauli::all_masks(n) {
        let w = (x | z).count_ones() as usize;
        if w == 0 || w >= best {
            continue;
        }
        if gens.iter().any(|&(gx, gz)| masks_anticommute(x, z, gx, gz)) {
            continue;
        }
        if masks_anticommute(x, z, lxx, lxz) || masks_anticommute(x, z, lzx, lzz) {
            best = w;
        }
    }
    best
}

fn parse_all(labels: &[&str]) -> Vec<PauliOperator> {
    labels.iter().map(|s| s.parse().expect("built-in label")).collect()
}

/// The `[[7,1,3]]` CSS code from the `[7,4,3]` Hamming parity checks.
pub fn steane_code() -> Result<StabilizerCode> {
    let generators = parse_all(&[
        "IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ",
    ]);
    StabilizerCode::new(
        "steane7",
        generators,
        "XXXXXXX".parse()?,
        "ZZZZZZZ".parse()?,
        Some(3),
    )
}

/// The `[[5,1,3]]` perfect code.
pub fn five_qubit_code() -> Result<StabilizerCode> {
    let generators = parse_all(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]);
    StabilizerCode::new("perfect5", generators, "XXXXX".parse()?, "ZZZZZ".parse()?, Some(3))
}

/// The `[7,4,3]` Hamming parity-check matrix, columns indexed by qubit.
pub fn hamming_checks() -> Vec<Vec<u8>> {
    vec![
        vec![0, 0, 0, 1, 1, 1, 1],
        vec![0, 1, 1, 0, 0, 1, 1],
        vec![1, 0, 1, 0, 1, 0, 1],
    ]
}

fn rows_from_matrix(m: &[Vec<u8>], n: usize) -> Result<Vec<BitVec>> {
    m.iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, actual: row.len() });
            }
            if row.iter().any(|&b| b > 1) {
                return Err(Error::InvalidCode("parity-check entries must be 0 or 1".into()));
            }
            Ok(BitVec::from_bools(&row.iter().map(|&b| b == 1).collect::<Vec<_>>()))
        })
        .collect()
}

fn independent_subset(rows: &[BitVec]) -> Vec<BitVec> {
    let mut out: Vec<BitVec> = Vec::new();
    for r in rows {
        if !r.is_zero() && !gf2::in_span(&out, r) {
            out.push(r.clone());
        }
    }
    out
}

/// Lowest-weight vector in `v + span(rows)`, searched exhaustively when the
/// span is small.
fn min_weight_in_coset(v: &BitVec, rows: &[BitVec]) -> BitVec {
    if rows.len() > 16 {
        return v.clone();
    }
    let mut best = v.clone();
    for mask in 1u32..(1 << rows.len()) {
        let mut c = v.clone();
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c.xor_assign(r);
            }
        }
        if c.count_ones() < best.count_ones() {
            best = c;
        }
    }
    best
}

/// CSS code with X-type checks from `hx` rows and Z-type checks from `hz` rows.
/// Requires `hx · hzᵀ = 0` and exactly one logical qubit.
pub fn css_from_parity_checks(
    hx: &[Vec<u8>],
    hz: &[Vec<u8>],
    declared_distance: Option<usize>,
) -> Result<StabilizerCode> {
    let n = hx
        .first()
        .or(hz.first())
        .map(|r| r.len())
        .ok_or_else(|| Error::InvalidCode("no parity checks given".into()))?;
    let rx = rows_from_matrix(hx, n)?;
    let rz = rows_from_matrix(hz, n)?;
    for (i, a) in rx.iter().enumerate() {
        for (j, b) in rz.iter().enumerate() {
            if a.dot(b) {
                return Err(Error::NonOrthogonalChecks { hx_row: i, hz_row: j });
            }
        }
    }
    let bx = independent_subset(&rx);
    let bz = independent_subset(&rz);
    let k = n as isize - bx.len() as isize - bz.len() as isize;
    if k != 1 {
        return Err(Error::UnsupportedLogicalCount(k.max(0) as usize));
    }
    let to_op = |v: &BitVec, x_type: bool| {
        let bits = v.to_bools();
        let zeros = vec![false; n];
        if x_type {
            PauliOperator::from_bits(&bits, &zeros, 0)
        } else {
            PauliOperator::from_bits(&zeros, &bits, 0)
        }
    };

    let lx_vec = gf2::nullspace(&bz, n)
        .into_iter()
        .find(|v| !gf2::in_span(&bx, v))
        .ok_or_else(|| Error::InvalidCode("no logical X found".into()))?;
    let lx_vec = min_weight_in_coset(&lx_vec, &bx);
    let ker_x = gf2::nullspace(&bx, n);
    let lz_vec = {
        let odd = ker_x.iter().find(|v| v.dot(&lx_vec)).cloned();
        let base = odd.ok_or_else(|| Error::InvalidCode("no logical Z found".into()))?;
        min_weight_in_coset(&base, &bz)
    };

    let mut generators = Vec::with_capacity(n - 1);
    for v in &bx {
        generators.push(to_op(v, true)?);
    }
    for v in &bz {
        generators.push(to_op(v, false)?);
    }
    StabilizerCode::new("css", generators, to_op(&lx_vec, true)?, to_op(&lz_vec, false)?, declared_distance)
}
