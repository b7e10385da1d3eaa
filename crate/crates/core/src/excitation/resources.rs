use serde::{Deserialize, Serialize};

use super::{AnsatzSpec, Excitation, ExcitationKind, Flavor};
use crate::error::{Error, Result};
use crate::grouping::{group_count, GroupingMode};
use crate::pauli::PauliSum;

/// Gate and depth contribution of one excitation evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GateCost {
    pub one_qubit: u64,
    pub two_qubit: u64,
    pub depth: u64,
}

impl std::ops::Add for GateCost {
    type Output = GateCost;

    fn add(self, o: GateCost) -> GateCost {
        GateCost {
            one_qubit: self.one_qubit + o.one_qubit,
            two_qubit: self.two_qubit + o.two_qubit,
            depth: self.depth + o.depth,
        }
    }
}

/// Fixed per-excitation costs of qubit-excitation circuits.
///
/// `alpha` counts one-qubit gates, `beta` two-qubit gates and `gamma` depth, with
/// `_s` for singles and `_d` for doubles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitCostModel {
    pub alpha_s: u64,
    pub alpha_d: u64,
    pub beta_s: u64,
    pub beta_d: u64,
    pub gamma_s: u64,
    pub gamma_d: u64,
}

impl Default for QubitCostModel {
    fn default() -> Self {
        Self {
            alpha_s: 8,
            alpha_d: 23,
            beta_s: 2,
            beta_d: 13,
            gamma_s: 6,
            gamma_d: 21,
        }
    }
}

/// CNOT-staircase costs of fermionic excitations.
///
/// A single `p → q` expands to 2 Pauli exponentials of weight `q − p + 1`, a double to 8
/// exponentials spanning the lowest to the highest index. One exponential of weight
/// `w` with `m` non-Z factors costs `2(w − 1)` CNOTs, `basis_change · m + rotation`
/// one-qubit gates and `2(w − 1) + depth_overhead` layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FermionicCostModel {
    pub basis_change: u64,
    pub rotation: u64,
    pub depth_overhead: u64,
}

impl Default for FermionicCostModel {
    fn default() -> Self {
        Self {
            basis_change: 2,
            rotation: 1,
            depth_overhead: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostModel {
    pub qubit: QubitCostModel,
    pub fermionic: FermionicCostModel,
    /// Count one X gate per electron for preparing the reference determinant.
    pub reference_preparation: bool,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            qubit: QubitCostModel::default(),
            fermionic: FermionicCostModel::default(),
            reference_preparation: true,
        }
    }
}

impl CostModel {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("cost model JSON: {e}")))
    }

    pub fn excitation_cost(&self, e: &Excitation) -> GateCost {
        let single = e.kind() == ExcitationKind::Single;
        match e.flavor() {
            Flavor::Qubit => {
                let q = &self.qubit;
                if single {
                    GateCost {
                        one_qubit: q.alpha_s,
                        two_qubit: q.beta_s,
                        depth: q.gamma_s,
                    }
                } else {
                    GateCost {
                        one_qubit: q.alpha_d,
                        two_qubit: q.beta_d,
                        depth: q.gamma_d,
                    }
                }
            }
            Flavor::Fermionic => {
                let f = &self.fermionic;
                let weight = (e.max_index() - e.min_index() + 1) as u64;
                let (strings, non_z) = if single { (2, 2) } else { (8, 4) };
                let ladder = 2 * (weight - 1);
                GateCost {
                    one_qubit: strings * (f.basis_change * non_z + f.rotation),
                    two_qubit: strings * ladder,
                    depth: strings * (ladder + f.depth_overhead),
                }
            }
        }
    }
}

/// Term and measurement-circuit counts of a Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianSummary {
    pub n_qubits: usize,
    /// Distinct Pauli strings, identity included.
    pub pauli_terms: usize,
    pub measurement_circuits: usize,
    pub grouping: GroupingMode,
}

pub fn summarize_hamiltonian(h: &PauliSum, mode: GroupingMode) -> HamiltonianSummary {
    HamiltonianSummary {
        n_qubits: h.n_qubits(),
        pauli_terms: h.len(),
        measurement_circuits: group_count(h, mode),
        grouping: mode,
    }
}

/// One resource-table row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub ansatz: String,
    pub k: usize,
    pub n_qubits: usize,
    pub circuit_depth: u64,
    pub total_gates: u64,
    pub two_qubit_gates: u64,
    pub one_qubit_gates: u64,
    pub pauli_terms: usize,
    pub measurement_circuits: usize,
    pub grouping: GroupingMode,
    pub n_singles: usize,
    pub n_doubles: usize,
    pub n_parameters: usize,
    pub tapering_used: bool,
}

/// Sums per-excitation costs over the whole ansatz; depth is the serial sum.
/// Reference preparation, when enabled, adds one-qubit gates but no depth.
///
/// `hamiltonian` is the operator actually measured, so with tapering its qubit
/// count is the reported register size.
pub fn estimate_resources(
    ansatz: &AnsatzSpec,
    cost_model: &CostModel,
    hamiltonian: &HamiltonianSummary,
    tapering_used: bool,
) -> ResourceReport {
    let total = ansatz
        .excitations()
        .iter()
        .map(|e| cost_model.excitation_cost(e))
        .fold(GateCost::default(), |a, b| a + b);
    let total = GateCost {
        one_qubit: total.one_qubit
            + if cost_model.reference_preparation {
                ansatz.n_electrons() as u64
            } else {
                0
            },
        ..total
    };
    ResourceReport {
        ansatz: ansatz.variant().to_string(),
        k: ansatz.k(),
        n_qubits: hamiltonian.n_qubits,
        circuit_depth: total.depth,
        total_gates: total.one_qubit + total.two_qubit,
        two_qubit_gates: total.two_qubit,
        one_qubit_gates: total.one_qubit,
        pauli_terms: hamiltonian.pauli_terms,
        measurement_circuits: hamiltonian.measurement_circuits,
        grouping: hamiltonian.grouping,
        n_singles: ansatz.count(ExcitationKind::Single),
        n_doubles: ansatz.count(ExcitationKind::Double),
        n_parameters: ansatz.n_parameters(),
        tapering_used,
    }
}
