//! ℤ₂ symmetry search and qubit tapering.
//!
//! Symmetries are Pauli strings commuting with every Hamiltonian term: the GF(2)
//! kernel of the check matrix whose row for term `(x, z)` is `[z | x]`. The kernel
//! is reduced to a maximal mutually commuting subspace and put in reduced row
//! echelon form (X columns first, so Z-only generators come out explicitly). Each
//! generator `τ_k` is paired with a single-qubit Pauli `s_k` on qubit `σ_k` that
//! anticommutes with `τ_k` and commutes with every other generator; X is tried
//! first, on the lowest qubit. `U_k = (s_k + τ_k)/√2` maps `τ_k` to `s_k`, so after
//! conjugation every term carries `I` or `s_k` on `σ_k`, which is replaced by the
//! sector eigenvalue before the qubit is removed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{kernel, rref, Gf2Vec};
use crate::mapping::BasisState;
use crate::pauli::{Pauli, PauliAccumulator, PauliString, PauliSum, DEFAULT_DROP_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct Z2SymmetrySet {
    n_qubits: usize,
    generators: Vec<PauliString>,
    sigma_qubits: Vec<usize>,
    sigma_paulis: Vec<PauliString>,
    sector: Option<Vec<i8>>,
}

/// Plain-data view for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub n_qubits: usize,
    pub generators: Vec<String>,
    pub sigma_qubits: Vec<usize>,
    pub sigma_paulis: Vec<char>,
    pub sector: Option<Vec<i8>>,
}

fn symplectic(a: &(u64, u64), b: &(u64, u64)) -> bool {
    ((a.0 & b.1) ^ (a.1 & b.0)).count_ones() % 2 == 1
}

fn xor(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0 ^ b.0, a.1 ^ b.1)
}

/// Keeps one partner of every anticommuting pair, which leaves a maximal isotropic subspace.
fn isotropic_part(mut vecs: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    let mut kept = Vec::new();
    while let Some(v) = vecs.pop() {
        match vecs.iter().position(|w| symplectic(&v, w)) {
            None => kept.push(v),
            Some(i) => {
                let w = vecs.swap_remove(i);
                kept.push(v);
                // make the rest orthogonal to the hyperbolic pair (v, w)
                for u in vecs.iter_mut() {
                    let mut next = *u;
                    if symplectic(u, &w) {
                        next = xor(next, v);
                    }
                    if symplectic(u, &v) {
                        next = xor(next, w);
                    }
                    *u = next;
                }
            }
        }
    }
    kept
}

/// Finds a maximal independent set of commuting ℤ₂ symmetries of `h`, sector unset.
pub fn find_z2_symmetries(h: &PauliSum) -> Result<Z2SymmetrySet> {
    let n = h.n_qubits();
    let rows: Vec<Gf2Vec> = h
        .non_identity_terms()
        .map(|(p, _)| Gf2Vec::from_mask_pair(n, p.z_mask(), p.x_mask()))
        .collect();
    let ker: Vec<(u64, u64)> = kernel(&rows, 2 * n)
        .iter()
        .map(Gf2Vec::to_mask_pair)
        .collect();
    let iso = isotropic_part(ker);
    // canonical form: RREF over [x | z]
    let as_rows: Vec<Gf2Vec> = iso
        .iter()
        .map(|&(x, z)| Gf2Vec::from_mask_pair(n, x, z))
        .collect();
    let (reduced, _) = rref(&as_rows, 2 * n);
    let generators: Vec<PauliString> = reduced
        .iter()
        .map(|r| {
            let (x, z) = r.to_mask_pair();
            PauliString::from_masks(n, x, z)
        })
        .collect::<std::result::Result<_, _>>()?;
    let (sigma_qubits, sigma_paulis) = choose_sigma(n, &generators)?;
    Ok(Z2SymmetrySet {
        n_qubits: n,
        generators,
        sigma_qubits,
        sigma_paulis,
        sector: None,
    })
}

fn choose_sigma(n: usize, gens: &[PauliString]) -> Result<(Vec<usize>, Vec<PauliString>)> {
    let mut qubits = Vec::with_capacity(gens.len());
    let mut paulis = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        let mut found = None;
        'search: for letter in [Pauli::X, Pauli::Z, Pauli::Y] {
            for q in (0..n).filter(|q| !qubits.contains(q)) {
                let s = PauliString::single(n, q, letter)?;
                let ok = gens
                    .iter()
                    .enumerate()
                    .all(|(j, t)| s.commutes_unchecked(t) != (j == k));
                if ok {
                    found = Some((q, s));
                    break 'search;
                }
            }
        }
        let (q, s) = found.ok_or_else(|| {
            Error::Tapering(format!("no single-qubit partner for generator {g}"))
        })?;
        qubits.push(q);
        paulis.push(s);
    }
    Ok((qubits, paulis))
}

impl Z2SymmetrySet {
    /// Empty set on `n_qubits`; tapering with it is the identity.
    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            generators: Vec::new(),
            sigma_qubits: Vec::new(),
            sigma_paulis: Vec::new(),
            sector: Some(Vec::new()),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn sigma_qubits(&self) -> &[usize] {
        &self.sigma_qubits
    }

    /// Single-qubit partner of each generator (X unless no X qualifies).
    pub fn sigma_paulis(&self) -> &[PauliString] {
        &self.sigma_paulis
    }

    pub fn sector(&self) -> Option<&[i8]> {
        self.sector.as_deref()
    }

    pub fn tapered_qubits(&self) -> usize {
        self.n_qubits - self.generators.len()
    }

    /// Sector from the eigenvalues of the (Z-type) generators on `reference`.
    pub fn select_sector(&self, reference: BasisState) -> Result<Self> {
        if reference.n_qubits != self.n_qubits {
            return Err(Error::Tapering(format!(
                "reference has {} qubits, symmetries act on {}",
                reference.n_qubits, self.n_qubits
            )));
        }
        let mut sector = Vec::with_capacity(self.len());
        for g in &self.generators {
            if g.x_mask() != 0 {
                return Err(Error::Tapering(format!(
                    "generator {g} is not diagonal on the reference; pass an explicit sector"
                )));
            }
            let odd = (g.z_mask() & reference.bits).count_ones() % 2 == 1;
            sector.push(if odd { -1 } else { 1 });
        }
        self.with_sector(sector)
    }

    /// Explicit sector, one ±1 per generator.
    pub fn with_sector(&self, sector: Vec<i8>) -> Result<Self> {
        if sector.len() != self.len() || sector.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Tapering(format!(
                "sector {sector:?} must list {} values of +1 or -1",
                self.len()
            )));
        }
        Ok(Self {
            sector: Some(sector),
            ..self.clone()
        })
    }

    /// Every one of the `2^m` sectors, in binary counting order (+1 before -1).
    pub fn all_sectors(&self) -> Vec<Vec<i8>> {
        let m = self.len();
        (0..1usize << m)
            .map(|k| {
                (0..m)
                    .map(|j| if (k >> j) & 1 == 1 { -1 } else { 1 })
                    .collect()
            })
            .collect()
    }

    pub fn report(&self) -> SymmetryReport {
        SymmetryReport {
            n_qubits: self.n_qubits,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            sigma_qubits: self.sigma_qubits.clone(),
            sigma_paulis: self
                .sigma_paulis
                .iter()
                .zip(&self.sigma_qubits)
                .map(|(s, &q)| s.letter(q).as_char())
                .collect(),
            sector: self.sector.clone(),
        }
    }
}

/// `U H U†` with `U = Π_k (s_k + τ_k)/√2`, before any qubit is removed.
pub fn conjugate_clifford(h: &PauliSum, sym: &Z2SymmetrySet) -> Result<PauliSum> {
    if h.n_qubits() != sym.n_qubits {
        return Err(Error::Tapering(format!(
            "Hamiltonian has {} qubits, symmetries act on {}",
            h.n_qubits(),
            sym.n_qubits
        )));
    }
    let mut terms: Vec<(PauliString, f64)> = h.iter().collect();
    for (tau, s) in sym.generators.iter().zip(&sym.sigma_paulis) {
        let ts = tau.multiply(s)?;
        for (p, c) in terms.iter_mut() {
            if !tau.commutes_unchecked(p) {
                return Err(Error::Tapering(format!(
                    "term {p} does not commute with generator {tau}"
                )));
            }
            // P anticommuting with s maps to P·τ·s, otherwise it is untouched
            if !s.commutes_unchecked(p) {
                let q = p.multiply(&ts)?;
                *c *= q.phase().to_complex().re;
                *p = q.unsigned();
            }
        }
    }
    let mut acc = PauliAccumulator::new(h.n_qubits());
    for (p, c) in &terms {
        acc.add(p, c.into());
    }
    Ok(acc.into_sum(DEFAULT_DROP_TOLERANCE)?)
}

/// Tapered Hamiltonian on `n − m` qubits in the selected sector.
pub fn taper(h: &PauliSum, sym: &Z2SymmetrySet) -> Result<PauliSum> {
    let sector = sym
        .sector
        .as_ref()
        .ok_or_else(|| Error::Tapering("sector not selected".into()))?;
    if sector.len() != sym.len() {
        return Err(Error::Tapering(format!(
            "{} sector values for {} generators",
            sector.len(),
            sym.len()
        )));
    }
    if sym.is_empty() {
        return Ok(h.clone());
    }
    let conjugated = conjugate_clifford(h, sym)?;
    let mut acc = PauliAccumulator::new(sym.tapered_qubits());
    for (p, c) in conjugated.iter() {
        let mut c = c;
        for ((&q, s), &e) in sym.sigma_qubits.iter().zip(&sym.sigma_paulis).zip(sector) {
            match p.letter(q) {
                Pauli::I => {}
                l if l == s.letter(q) => c *= f64::from(e),
                _ => {
                    return Err(Error::Tapering(format!(
                        "term {p} acts non-trivially on tapered qubit {q}"
                    )))
                }
            }
        }
        acc.add(&p.remove_qubits(&sym.sigma_qubits), c.into());
    }
    Ok(acc.into_sum(DEFAULT_DROP_TOLERANCE)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::tests::random_integrals;
    use crate::mapping::{hf_state, jordan_wigner};
    use crate::statevector::exact_ground_energy;

    #[test]
    fn zz_alone_is_a_symmetry() {
        let h = PauliSum::from_text("1.0 ZZ").unwrap();
        let sym = find_z2_symmetries(&h).unwrap();
        assert!(!sym.is_empty());
        let zz: PauliString = "ZZ".parse().unwrap();
        // ZZ lies in the span of the generators
        let rows: Vec<Gf2Vec> = sym
            .generators()
            .iter()
            .map(|g| Gf2Vec::from_mask_pair(2, g.x_mask(), g.z_mask()))
            .collect();
        let mut with = rows.clone();
        with.push(Gf2Vec::from_mask_pair(2, zz.x_mask(), zz.z_mask()));
        assert_eq!(crate::gf2::rank(&with, 4), crate::gf2::rank(&rows, 4));
    }

    #[test]
    fn sector_eigenvalues() {
        let sym = Z2SymmetrySet {
            n_qubits: 4,
            generators: vec!["ZZII".parse().unwrap(), "ZIII".parse().unwrap()],
            sigma_qubits: vec![1, 0],
            sigma_paulis: vec!["IXII".parse().unwrap(), "XIII".parse().unwrap()],
            sector: None,
        };
        let s = sym.select_sector(hf_state(2, 4).unwrap()).unwrap();
        assert_eq!(s.sector().unwrap(), &[1, -1]);
        assert!(sym.with_sector(vec![1]).is_err());
        assert!(sym.with_sector(vec![1, 0]).is_err());
    }

    #[test]
    fn no_symmetries_is_identity() {
        let h = PauliSum::from_text("1.0 X\n0.5 Z").unwrap();
        let sym = find_z2_symmetries(&h).unwrap();
        assert!(sym.is_empty());
        let sym = sym.select_sector(hf_state(0, 1).unwrap()).unwrap();
        assert_eq!(taper(&h, &sym).unwrap(), h);
    }

    #[test]
    fn isotropic_reduction_on_untouched_qubit() {
        // qubit 1 never appears, so X1 and Z1 both commute with H but not with each other
        let h = PauliSum::from_text("1.0 XI\n0.5 ZI").unwrap();
        let sym = find_z2_symmetries(&h).unwrap();
        assert_eq!(sym.len(), 1);
        for a in sym.generators() {
            assert!(h.all_terms_commute_with(a));
        }
    }

    #[test]
    fn random_molecule_taper_preserves_ground_energy() {
        let s = random_integrals(3, 2, 21);
        let h = jordan_wigner(&s).unwrap();
        let sym = find_z2_symmetries(&h).unwrap();
        // number and spin parities at least
        assert!(sym.len() >= 2);
        for g in sym.generators() {
            assert!(h.all_terms_commute_with(g));
        }
        let conj = conjugate_clifford(&h, &sym).unwrap();
        for (p, _) in conj.iter() {
            for (&q, s) in sym.sigma_qubits().iter().zip(sym.sigma_paulis()) {
                assert!(matches!(p.letter(q), Pauli::I) || p.letter(q) == s.letter(q));
            }
        }
        let full = exact_ground_energy(&h, None).unwrap();
        let mut best = f64::INFINITY;
        for sector in sym.all_sectors() {
            let t = taper(&h, &sym.with_sector(sector).unwrap()).unwrap();
            assert_eq!(t.n_qubits(), 6 - sym.len());
            best = best.min(exact_ground_energy(&t, None).unwrap());
        }
        assert!((best - full).abs() < 1e-10, "{best} vs {full}");
    }
}
