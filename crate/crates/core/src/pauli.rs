//! Symplectic Pauli strings and real-coefficient Pauli sums.
//!
//! A [`PauliString`] stores an X mask, a Z mask and a phase in {1, i, −1, −i}.
//! Qubit `k` carries I, X, Y or Z for `(x_k, z_k)` = (0,0), (1,0), (1,1), (0,1); the
//! Y factor is the Hermitian Pauli Y (not XZ). Text form writes qubit 0 first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_QUBITS: usize = 64;

/// Coefficients with magnitude below this are dropped by default (Hartree).
pub const DEFAULT_DROP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("{0} qubits exceeds the {MAX_QUBITS}-qubit mask width")]
    TooManyQubits(usize),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("cannot parse Pauli text {0:?}")]
    Parse(String),
    #[error("operator is not Hermitian: term {term} has imaginary coefficient {imag:e}")]
    NotHermitian { term: String, imag: f64 },
}

/// Fourth root of unity, stored as the exponent of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Phase {
    #[default]
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(e: u32) -> Self {
        match e % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u32 {
        self as u32
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + other.exponent())
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::One | Phase::MinusOne)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: u64,
    z: u64,
    phase: Phase,
    n_qubits: usize,
}

fn mask_for(n_qubits: usize) -> u64 {
    if n_qubits == 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "{n_qubits} qubits exceeds mask width");
        Self {
            x: 0,
            z: 0,
            phase: Phase::One,
            n_qubits,
        }
    }

    /// Builds a phase-one string; bits above `n_qubits` must be clear.
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self, PauliError> {
        if n_qubits > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(n_qubits));
        }
        let m = mask_for(n_qubits);
        if x & !m != 0 || z & !m != 0 {
            let stray = ((x | z) & !m).trailing_zeros() as usize;
            return Err(PauliError::QubitOutOfRange {
                index: stray,
                n_qubits,
            });
        }
        Ok(Self {
            x,
            z,
            phase: Phase::One,
            n_qubits,
        })
    }

    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self, PauliError> {
        if qubit >= n_qubits {
            return Err(PauliError::QubitOutOfRange {
                index: qubit,
                n_qubits,
            });
        }
        let (x, z) = pauli.bits();
        Self::from_masks(n_qubits, (x as u64) << qubit, (z as u64) << qubit)
    }

    pub fn from_letters(letters: &[Pauli]) -> Result<Self, PauliError> {
        let mut x = 0;
        let mut z = 0;
        for (q, p) in letters.iter().enumerate() {
            let (xb, zb) = p.bits();
            x |= (xb as u64) << q;
            z |= (zb as u64) << q;
        }
        Self::from_masks(letters.len(), x, z)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The same operator with phase reset to one.
    pub fn unsigned(&self) -> Self {
        Self {
            phase: Phase::One,
            ..*self
        }
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    /// Count of Y factors; equals the `i` exponent relating the string to `X^x Z^z`.
    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    fn check_size(&self, other: &Self) -> Result<(), PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(())
    }

    /// Group product `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // σ(x,z) = i^{|x∧z|} X^x Z^z, and Z^z1 X^x2 = (−1)^{|z1∧x2|} X^x2 Z^z1.
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let e = self.phase.exponent()
            + other.phase.exponent()
            + self.y_count()
            + other.y_count()
            + 2 * (self.z & other.x).count_ones()
            + 4 * MAX_QUBITS as u32
            - (x & z).count_ones();
        Self {
            x,
            z,
            phase: Phase::from_exponent(e),
            n_qubits: self.n_qubits,
        }
    }

    /// Symplectic inner product: true when the strings anticommute.
    fn anticommutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 1
    }

    /// General commutation: an even number of anticommuting positions.
    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        !self.anticommutes_unchecked(other)
    }

    /// Every position carries equal letters or at least one identity.
    pub fn qubit_wise_commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_size(other)?;
        Ok(self.qubit_wise_commutes_unchecked(other))
    }

    pub(crate) fn qubit_wise_commutes_unchecked(&self, other: &Self) -> bool {
        let overlap = self.support() & other.support();
        ((self.x ^ other.x) | (self.z ^ other.z)) & overlap == 0
    }

    /// Action on a computational basis state: `P|b⟩ = c |b ⊕ x⟩`, returns `(b ⊕ x, c)`.
    pub fn apply_to_basis(&self, bits: u64) -> (u64, Phase) {
        let sign = 2 * (self.z & bits).count_ones();
        let e = self.phase.exponent() + self.y_count() + sign;
        (bits ^ self.x, Phase::from_exponent(e))
    }

    /// Removes the listed qubits (ascending order not required) and compacts the rest.
    pub fn remove_qubits(&self, qubits: &[usize]) -> Self {
        let mut x = 0;
        let mut z = 0;
        let mut out = 0;
        for q in 0..self.n_qubits {
            if qubits.contains(&q) {
                continue;
            }
            x |= ((self.x >> q) & 1) << out;
            z |= ((self.z >> q) & 1) << out;
            out += 1;
        }
        Self {
            x,
            z,
            phase: self.phase,
            n_qubits: out,
        }
    }

    fn letters_string(&self) -> String {
        (0..self.n_qubits).map(|q| self.letter(q).as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            Phase::One => "",
            Phase::I => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        };
        write!(f, "{prefix}{}", self.letters_string())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (phase, body) = if let Some(rest) = t.strip_prefix("-i") {
            (Phase::MinusI, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (Phase::MinusOne, rest)
        } else if let Some(rest) = t.strip_prefix("+i").or_else(|| t.strip_prefix('i')) {
            (Phase::I, rest)
        } else {
            (Phase::One, t.strip_prefix('+').unwrap_or(t))
        };
        let letters = body
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| PauliError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(PauliError::Parse(s.to_string()));
        }
        Ok(PauliString::from_letters(&letters)?.with_phase(phase))
    }
}

/// Accumulates complex-weighted Pauli strings; phases are folded into the weights.
#[derive(Debug, Clone)]
pub(crate) struct PauliAccumulator {
    n_qubits: usize,
    terms: HashMap<(u64, u64), Complex64>,
}

impl PauliAccumulator {
    pub(crate) fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: HashMap::new(),
        }
    }

    pub(crate) fn add(&mut self, p: &PauliString, weight: Complex64) {
        *self.terms.entry((p.x, p.z)).or_default() += weight * p.phase.to_complex();
    }

    /// Real part becomes the coefficient; fails if an imaginary residual exceeds `tol`.
    pub(crate) fn into_sum(self, tol: f64) -> Result<PauliSum, PauliError> {
        let mut out = PauliSum::new(self.n_qubits);
        for ((x, z), c) in self.terms {
            if c.im.abs() > tol.max(1e-10) {
                let p = PauliString {
                    x,
                    z,
                    phase: Phase::One,
                    n_qubits: self.n_qubits,
                };
                return Err(PauliError::NotHermitian {
                    term: p.to_string(),
                    imag: c.im,
                });
            }
            if c.re.abs() > tol {
                out.terms.insert((x, z), c.re);
            }
        }
        Ok(out)
    }
}

/// Real linear combination of phase-free Pauli strings, iterated in canonical
/// (X mask, Z mask) order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<(u64, u64), f64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "{n_qubits} qubits exceeds mask width");
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of stored terms, identity included.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · p`. `p` must have a real phase so the sum stays Hermitian.
    pub fn add_term(&mut self, p: &PauliString, coeff: f64) -> Result<(), PauliError> {
        if p.n_qubits != self.n_qubits {
            return Err(PauliError::SizeMismatch(self.n_qubits, p.n_qubits));
        }
        let c = coeff * p.phase.to_complex();
        if c.im != 0.0 {
            return Err(PauliError::NotHermitian {
                term: p.to_string(),
                imag: c.im,
            });
        }
        *self.terms.entry((p.x, p.z)).or_insert(0.0) += c.re;
        Ok(())
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.get(&(p.x, p.z)).copied().unwrap_or(0.0) * p.phase.to_complex().re
    }

    pub fn constant(&self) -> f64 {
        self.terms.get(&(0, 0)).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliString, f64)> + '_ {
        let n = self.n_qubits;
        self.terms.iter().map(move |(&(x, z), &c)| {
            (
                PauliString {
                    x,
                    z,
                    phase: Phase::One,
                    n_qubits: n,
                },
                c,
            )
        })
    }

    /// Non-identity terms in canonical order.
    pub fn non_identity_terms(&self) -> impl Iterator<Item = (PauliString, f64)> + '_ {
        self.iter().filter(|(p, _)| !p.is_identity())
    }

    /// Drops terms with `|coeff| <= tol`.
    pub fn simplify(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.abs() > tol);
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            *out.terms.entry(*k).or_insert(0.0) += c;
        }
        out.simplify(0.0);
        Ok(out)
    }

    /// Operator product. Fails when the product is not Hermitian (non-commuting factors).
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        let mut acc = PauliAccumulator::new(self.n_qubits);
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                acc.add(&a.mul_unchecked(&b), Complex64::new(ca * cb, 0.0));
            }
        }
        acc.into_sum(DEFAULT_DROP_TOLERANCE)
    }

    /// True when `self` commutes with every term of `p`'s sum, checked term by term.
    pub fn all_terms_commute_with(&self, p: &PauliString) -> bool {
        self.iter().all(|(t, _)| t.commutes_unchecked(p))
    }

    /// Line-per-term text: `<coeff> <letters>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, c) in self.iter() {
            s.push_str(&format!("{c:e} {p}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, PauliError> {
        let mut n_qubits = None;
        let mut out: Option<PauliSum> = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let tokens: Vec<&str> = line
                .split_whitespace()
                .filter(|t| *t != "·" && *t != "*")
                .collect();
            if tokens.len() != 2 {
                return Err(PauliError::Parse(line.to_string()));
            }
            let coeff: f64 = tokens[0]
                .parse()
                .map_err(|_| PauliError::Parse(line.to_string()))?;
            let p: PauliString = tokens[1].parse()?;
            let n = *n_qubits.get_or_insert(p.n_qubits);
            let sum = out.get_or_insert_with(|| PauliSum::new(n));
            sum.add_term(&p, coeff)?;
        }
        out.ok_or_else(|| PauliError::Parse("empty Pauli sum".into()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: f64,
    pauli: String,
}

#[derive(Serialize, Deserialize)]
struct PauliSumJson {
    n_qubits: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PauliSum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PauliSumJson {
            n_qubits: self.n_qubits,
            terms: self
                .iter()
                .map(|(p, c)| TermJson {
                    coeff: c,
                    pauli: p.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PauliSumJson::deserialize(deserializer)?;
        if raw.n_qubits > MAX_QUBITS {
            return Err(D::Error::custom(PauliError::TooManyQubits(raw.n_qubits)));
        }
        let mut sum = PauliSum::new(raw.n_qubits);
        for t in raw.terms {
            let p: PauliString = t.pauli.parse().map_err(D::Error::custom)?;
            sum.add_term(&p, t.coeff).map_err(D::Error::custom)?;
        }
        Ok(sum)
    }
}
