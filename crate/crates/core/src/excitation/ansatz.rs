use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    filter_by_irrep, generate_paired_gsd, generate_sd, Excitation, ExcitationKind, Flavor,
};
use crate::error::{Error, Result};
use crate::integrals::IntegralSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnsatzVariant {
    #[serde(rename = "uccsd")]
    Uccsd,
    #[serde(rename = "uccgsd")]
    Uccgsd,
    #[serde(rename = "uccsdq")]
    Uccsdq,
    #[serde(rename = "uccsdqs")]
    Uccsdqs,
    #[serde(rename = "kupgsd")]
    KUpGsd,
    #[serde(rename = "kupgsdq")]
    KUpGsdq,
}

impl AnsatzVariant {
    pub const ALL: [AnsatzVariant; 6] = [
        Self::Uccsd,
        Self::Uccgsd,
        Self::Uccsdq,
        Self::Uccsdqs,
        Self::KUpGsd,
        Self::KUpGsdq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Uccsd => "uccsd",
            Self::Uccgsd => "uccgsd",
            Self::Uccsdq => "uccsdq",
            Self::Uccsdqs => "uccsdqs",
            Self::KUpGsd => "kupgsd",
            Self::KUpGsdq => "kupgsdq",
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            Self::Uccsd | Self::Uccgsd | Self::KUpGsd => Flavor::Fermionic,
            Self::Uccsdq | Self::Uccsdqs | Self::KUpGsdq => Flavor::Qubit,
        }
    }

    pub fn is_k_up(self) -> bool {
        matches!(self, Self::KUpGsd | Self::KUpGsdq)
    }
}

impl fmt::Display for AnsatzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|v| v.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|v| v.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown ansatz {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Problem data an ansatz is built against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzContext {
    pub n_qubits: usize,
    pub n_electrons: usize,
    /// Irrep label per spatial orbital; only the irrep-filtered variant reads it.
    pub orbsym: Vec<u8>,
    /// Block repetitions for the k-Up variants; ignored otherwise.
    pub k: usize,
    /// Append generalized singles to every k-Up block.
    pub k_up_singles: bool,
}

impl AnsatzContext {
    pub fn new(n_qubits: usize, n_electrons: usize, orbsym: Vec<u8>) -> Self {
        Self {
            n_qubits,
            n_electrons,
            orbsym,
            k: 1,
            k_up_singles: false,
        }
    }

    pub fn from_integrals(s: &IntegralSet) -> Self {
        Self::new(s.n_spin_orbitals(), s.n_electrons(), s.orbsym().to_vec())
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_k_up_singles(mut self, include: bool) -> Self {
        self.k_up_singles = include;
        self
    }
}

/// Ordered excitation list with one parameter slot per entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    variant: AnsatzVariant,
    excitations: Vec<Excitation>,
    k: usize,
    n_qubits: usize,
    n_electrons: usize,
    n_parameters: usize,
}

impl AnsatzSpec {
    /// Assembles a spec from explicit excitations; parameters are assigned in order.
    pub fn from_excitations(
        variant: AnsatzVariant,
        n_qubits: usize,
        n_electrons: usize,
        excitations: Vec<Excitation>,
    ) -> Result<Self> {
        Self::from_blocks(variant, n_qubits, n_electrons, excitations, 1)
    }

    fn from_blocks(
        variant: AnsatzVariant,
        n_qubits: usize,
        n_electrons: usize,
        block: Vec<Excitation>,
        k: usize,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Excitation("repetition count k must be at least 1".into()));
        }
        if let Some(bad) = block.iter().find(|e| e.max_index() >= n_qubits) {
            return Err(Error::Excitation(format!(
                "excitation {bad} exceeds {n_qubits} qubits"
            )));
        }
        let excitations: Vec<Excitation> = (0..k)
            .flat_map(|_| block.iter().cloned())
            .enumerate()
            .map(|(i, e)| e.with_parameter_index(i))
            .collect();
        Ok(Self {
            variant,
            n_parameters: excitations.len(),
            excitations,
            k,
            n_qubits,
            n_electrons,
        })
    }

    pub fn variant(&self) -> AnsatzVariant {
        self.variant
    }

    pub fn excitations(&self) -> &[Excitation] {
        &self.excitations
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Electrons in the reference determinant.
    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn n_parameters(&self) -> usize {
        self.n_parameters
    }

    pub fn is_empty(&self) -> bool {
        self.excitations.is_empty()
    }

    /// Excitations of one kind across all blocks.
    pub fn count(&self, kind: ExcitationKind) -> usize {
        self.excitations.iter().filter(|e| e.kind() == kind).count()
    }

    pub fn check_parameters(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.n_parameters {
            return Err(Error::Simulation(format!(
                "ansatz has {} parameters, got {}",
                self.n_parameters,
                theta.len()
            )));
        }
        Ok(())
    }
}

/// Builds one of the six ansatz variants.
///
/// | variant | excitations |
/// |---|---|
/// | uccsd | fermionic singles + doubles |
/// | uccgsd | fermionic generalized singles + doubles |
/// | uccsdq | qubit singles + doubles |
/// | uccsdqs | qubit singles + doubles kept by the irrep filter |
/// | kupgsd | k blocks of fermionic paired doubles |
/// | kupgsdq | k blocks of qubit paired doubles |
///
/// k-Up blocks get generalized singles only when `k_up_singles` is set.
pub fn build_ansatz(variant: AnsatzVariant, ctx: &AnsatzContext) -> Result<AnsatzSpec> {
    let flavor = variant.flavor();
    let (nq, ne) = (ctx.n_qubits, ctx.n_electrons);
    match variant {
        AnsatzVariant::Uccsd | AnsatzVariant::Uccsdq => {
            AnsatzSpec::from_excitations(variant, nq, ne, generate_sd(nq, ne, false, flavor)?)
        }
        AnsatzVariant::Uccgsd => {
            AnsatzSpec::from_excitations(variant, nq, ne, generate_sd(nq, ne, true, flavor)?)
        }
        AnsatzVariant::Uccsdqs => {
            let all = generate_sd(nq, ne, false, flavor)?;
            AnsatzSpec::from_excitations(variant, nq, ne, filter_by_irrep(&all, &ctx.orbsym)?)
        }
        AnsatzVariant::KUpGsd | AnsatzVariant::KUpGsdq => {
            if nq % 2 != 0 {
                return Err(Error::Excitation(format!(
                    "paired excitations need an even qubit count, got {nq}"
                )));
            }
            let block = generate_paired_gsd(nq / 2, ctx.k_up_singles, flavor)?;
            AnsatzSpec::from_blocks(variant, nq, ne, block, ctx.k)
        }
    }
}
