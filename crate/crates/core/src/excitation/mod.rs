//! Excitation enumeration, point-group filtering, ansatz assembly and
//! resource estimation.

mod ansatz;
mod resources;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrals::irrep_product;
use crate::mapping::SpinOrbitalLayout;

pub use ansatz::{build_ansatz, AnsatzContext, AnsatzSpec, AnsatzVariant};
pub use resources::{
    estimate_resources, summarize_hamiltonian, CostModel, FermionicCostModel, GateCost,
    HamiltonianSummary, QubitCostModel, ResourceReport,
};

/// How an excitation evolution treats fermionic antisymmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Jordan–Wigner parity strings included.
    Fermionic,
    /// Parity strings dropped; fixed-cost qubit-excitation circuits.
    Qubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExcitationKind {
    Single,
    Double,
}

/// Excitation `occupied → virtuals` on spin-orbital indices.
///
/// The generator is `T − T†` with `T = a†_{v0} [a†_{v1}] [a_{o1}] a_{o0}` (qubit
/// flavor: the same product of `|1⟩⟨0|` / `|0⟩⟨1|` without parity strings).
/// "Occupied" and "virtual" name the annihilated and created sets; for
/// generalized excitations neither has to match the reference occupation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Excitation {
    occupied: Vec<usize>,
    virtuals: Vec<usize>,
    flavor: Flavor,
    parameter_index: usize,
}

impl Excitation {
    fn validated(mut occupied: Vec<usize>, mut virtuals: Vec<usize>, flavor: Flavor) -> Result<Self> {
        occupied.sort_unstable();
        virtuals.sort_unstable();
        let ok = !occupied.is_empty()
            && occupied.len() == virtuals.len()
            && occupied.len() <= 2
            && occupied.windows(2).all(|w| w[0] != w[1])
            && virtuals.windows(2).all(|w| w[0] != w[1])
            && occupied.iter().all(|o| !virtuals.contains(o));
        if !ok {
            return Err(Error::Excitation(format!(
                "indices {occupied:?} -> {virtuals:?} must be 1 or 2 distinct, disjoint spin-orbitals"
            )));
        }
        Ok(Self {
            occupied,
            virtuals,
            flavor,
            parameter_index: 0,
        })
    }

    pub fn single(occupied: usize, virtual_: usize, flavor: Flavor) -> Result<Self> {
        Self::validated(vec![occupied], vec![virtual_], flavor)
    }

    pub fn double(occupied: [usize; 2], virtuals: [usize; 2], flavor: Flavor) -> Result<Self> {
        Self::validated(occupied.to_vec(), virtuals.to_vec(), flavor)
    }

    pub fn kind(&self) -> ExcitationKind {
        if self.occupied.len() == 1 {
            ExcitationKind::Single
        } else {
            ExcitationKind::Double
        }
    }

    pub fn occupied(&self) -> &[usize] {
        &self.occupied
    }

    pub fn virtuals(&self) -> &[usize] {
        &self.virtuals
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn parameter_index(&self) -> usize {
        self.parameter_index
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub(crate) fn with_parameter_index(mut self, index: usize) -> Self {
        self.parameter_index = index;
        self
    }

    pub fn occupied_mask(&self) -> u64 {
        self.occupied.iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn virtual_mask(&self) -> u64 {
        self.virtuals.iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn max_index(&self) -> usize {
        self.occupied
            .iter()
            .chain(&self.virtuals)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn min_index(&self) -> usize {
        self.occupied
            .iter()
            .chain(&self.virtuals)
            .copied()
            .min()
            .unwrap_or(0)
    }

    /// Same number of α spin-orbitals annihilated and created.
    pub fn conserves_sz(&self) -> bool {
        let alphas = |v: &[usize]| v.iter().filter(|&&q| SpinOrbitalLayout::is_alpha(q)).count();
        alphas(&self.occupied) == alphas(&self.virtuals)
    }

    /// Spatial orbitals touched, with repetition (a paired double lists each twice).
    pub fn spatial_orbitals(&self) -> Vec<usize> {
        self.occupied
            .iter()
            .chain(&self.virtuals)
            .map(|&q| SpinOrbitalLayout::spatial_of(q))
            .collect()
    }

    fn sort_key(&self) -> (u8, &[usize], &[usize]) {
        let rank = match self.kind() {
            ExcitationKind::Double => 0,
            ExcitationKind::Single => 1,
        };
        (rank, &self.occupied, &self.virtuals)
    }
}

impl fmt::Display for Excitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}", self.occupied, self.virtuals)
    }
}

/// Doubles before singles, each group ordered by (occupied, virtual).
pub fn canonical_order(excitations: &mut [Excitation]) {
    excitations.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

fn check_counts(n_qubits: usize, n_electrons: usize) -> Result<()> {
    if n_qubits % 2 != 0 || n_electrons % 2 != 0 || n_electrons > n_qubits {
        return Err(Error::Excitation(format!(
            "need an even electron count within an even number of spin-orbitals, got {n_electrons} in {n_qubits}"
        )));
    }
    Ok(())
}

/// All Sz-conserving singles and doubles in canonical order.
///
/// With `generalized = false` excitations go from the `n_electrons` lowest spin-orbitals
/// to the rest. With `generalized = true` every index pair is eligible, each unordered
/// excitation appearing once with its lower index set as `occupied`.
pub fn generate_sd(
    n_qubits: usize,
    n_electrons: usize,
    generalized: bool,
    flavor: Flavor,
) -> Result<Vec<Excitation>> {
    check_counts(n_qubits, n_electrons)?;
    let same_spin = |a: usize, b: usize| a % 2 == b % 2;
    let mut out = Vec::new();
    if generalized {
        for p in 0..n_qubits {
            for q in p + 1..n_qubits {
                if same_spin(p, q) {
                    out.push(Excitation::single(p, q, flavor)?);
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n_qubits)
            .flat_map(|p| (p + 1..n_qubits).map(move |q| (p, q)))
            .collect();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            for &(r, s) in &pairs[k + 1..] {
                if [p, q].iter().any(|i| *i == r || *i == s) {
                    continue;
                }
                let e = Excitation::double([p, q], [r, s], flavor)?;
                if e.conserves_sz() {
                    out.push(e);
                }
            }
        }
    } else {
        let occ: Vec<usize> = (0..n_electrons).collect();
        let vir: Vec<usize> = (n_electrons..n_qubits).collect();
        for &i in &occ {
            for &a in &vir {
                if same_spin(i, a) {
                    out.push(Excitation::single(i, a, flavor)?);
                }
            }
        }
        for (x, &i) in occ.iter().enumerate() {
            for &j in &occ[x + 1..] {
                for (y, &a) in vir.iter().enumerate() {
                    for &b in &vir[y + 1..] {
                        let e = Excitation::double([i, j], [a, b], flavor)?;
                        if e.conserves_sz() {
                            out.push(e);
                        }
                    }
                }
            }
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// Paired doubles `(pα, pβ) → (qα, qβ)` for every spatial pair `p < q`.
pub fn generate_paired_doubles(n_spatial: usize, flavor: Flavor) -> Result<Vec<Excitation>> {
    if n_spatial < 2 {
        return Err(Error::Excitation(format!(
            "paired excitations need at least 2 spatial orbitals, got {n_spatial}"
        )));
    }
    let mut out = Vec::with_capacity(n_spatial * (n_spatial - 1) / 2);
    for p in 0..n_spatial {
        for q in p + 1..n_spatial {
            out.push(Excitation::double([2 * p, 2 * p + 1], [2 * q, 2 * q + 1], flavor)?);
        }
    }
    Ok(out)
}

/// Generalized same-spin singles `pσ → qσ` for every spatial pair `p < q`.
pub fn generate_paired_singles(n_spatial: usize, flavor: Flavor) -> Result<Vec<Excitation>> {
    let mut out = Vec::new();
    for p in 0..n_spatial {
        for q in p + 1..n_spatial {
            for spin in 0..2 {
                out.push(Excitation::single(2 * p + spin, 2 * q + spin, flavor)?);
            }
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// Paired generalized block: paired doubles, optionally followed by generalized singles.
pub fn generate_paired_gsd(
    n_spatial: usize,
    include_singles: bool,
    flavor: Flavor,
) -> Result<Vec<Excitation>> {
    let mut out = generate_paired_doubles(n_spatial, flavor)?;
    if include_singles {
        out.extend(generate_paired_singles(n_spatial, flavor)?);
    }
    Ok(out)
}

/// True when the irrep product of all touched spatial orbitals is totally symmetric.
pub fn is_symmetry_allowed(excitation: &Excitation, orbsym: &[u8]) -> Result<bool> {
    let mut product = 1u8;
    for p in excitation.spatial_orbitals() {
        let label = *orbsym.get(p).ok_or_else(|| {
            Error::Excitation(format!(
                "orbital {p} has no irrep label ({} labels given)",
                orbsym.len()
            ))
        })?;
        product = irrep_product(product, label);
    }
    Ok(product == 1)
}

/// Keeps excitations whose irrep product matches the closed-shell reference (A₁/A′/A_g).
pub fn filter_by_irrep(excitations: &[Excitation], orbsym: &[u8]) -> Result<Vec<Excitation>> {
    let mut out = Vec::with_capacity(excitations.len());
    for e in excitations {
        if is_symmetry_allowed(e, orbsym)? {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Closed-form counts `(N_S, N_D) = (N(M−N), C(N,2)·C(M−N,2))` over spin-orbitals,
/// without spin restrictions.
pub fn closed_form_counts(n_qubits: usize, n_electrons: usize) -> (u64, u64) {
    let n = n_electrons as u64;
    let v = (n_qubits - n_electrons) as u64;
    (n * v, n * n.saturating_sub(1) / 2 * (v * v.saturating_sub(1) / 2))
}

/// Spin-restricted spatial counts: singles `i → a` and doubles `(i ≤ j) → (a ≤ b)`
/// over spatial orbitals, optionally irrep-filtered.
///
/// Irrep-filtered resource tables are often quoted in this convention, which counts
/// one parameter per spatial excitation rather than per spin-orbital excitation.
pub fn spatial_excitation_counts(
    n_spatial: usize,
    n_occupied: usize,
    orbsym: Option<&[u8]>,
) -> Result<(usize, usize)> {
    if n_occupied > n_spatial {
        return Err(Error::Excitation(format!(
            "{n_occupied} occupied orbitals exceed {n_spatial}"
        )));
    }
    let allowed = |orbs: &[usize]| -> Result<bool> {
        let Some(sym) = orbsym else { return Ok(true) };
        let mut product = 1u8;
        for &p in orbs {
            let label = *sym
                .get(p)
                .ok_or_else(|| Error::Excitation(format!("orbital {p} has no irrep label")))?;
            product = irrep_product(product, label);
        }
        Ok(product == 1)
    };
    let mut singles = 0;
    for i in 0..n_occupied {
        for a in n_occupied..n_spatial {
            if allowed(&[i, a])? {
                singles += 1;
            }
        }
    }
    let mut doubles = 0;
    for i in 0..n_occupied {
        for j in i..n_occupied {
            for a in n_occupied..n_spatial {
                for b in a..n_spatial {
                    if allowed(&[i, j, a, b])? {
                        doubles += 1;
                    }
                }
            }
        }
    }
    Ok((singles, doubles))
}
