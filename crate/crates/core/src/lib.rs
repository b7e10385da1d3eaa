//! Symmetry-adapted qubit-excitation VQE toolkit.
//!
//! The pipeline runs from molecular integrals to a converged variational
//! energy:
//!
//! 1. [`integrals`] parses FCIDUMP files and folds frozen-core / inactive
//!    orbitals into effective one-body integrals.
//! 2. [`mapping`] builds the Jordan–Wigner qubit Hamiltonian and the
//!    Hartree–Fock reference bitstring.
//! 3. [`tapering`] finds ℤ₂ symmetries and removes qubits.
//! 4. [`grouping`] partitions Pauli terms into jointly measurable sets.
//! 5. [`excitation`] enumerates excitation sets, filters them by point-group
//!    irreps, assembles the ansatz variants and estimates circuit resources.
//! 6. [`statevector`] simulates excitation evolutions exactly and provides
//!    the exact-diagonalization reference.
//! 7. [`vqe`] minimizes the energy with BFGS.
//!
//! Conventions used throughout:
//! - spin-orbitals are interleaved: qubit `2p` is spatial orbital `p` with
//!   α spin and qubit `2p + 1` the β partner;
//! - qubit 0 is the least significant bit of a statevector index and the
//!   leftmost character in Pauli-string and bitstring text.

pub mod error;
pub mod excitation;
pub mod gf2;
pub mod grouping;
pub mod integrals;
pub mod mapping;
pub mod pauli;
pub mod statevector;
pub mod tapering;
pub mod vqe;

pub use error::{Error, Result};
pub use excitation::{
    build_ansatz, AnsatzContext, AnsatzSpec, AnsatzVariant, CostModel, Excitation, Flavor,
    ResourceReport,
};
pub use grouping::GroupingMode;
pub use integrals::IntegralSet;
pub use mapping::{hf_state, jordan_wigner, BasisState, SpinOrbitalLayout};
pub use pauli::{Pauli, PauliString, PauliSum, Phase};
pub use statevector::{exact_ground_energy, SparseOperator, Statevector};
pub use tapering::Z2SymmetrySet;
pub use vqe::{minimize, MinimizeOptions, VqeTrace};

/// Chemical accuracy threshold in Hartree.
pub const CHEMICAL_ACCURACY: f64 = 1.6e-3;
