use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use log::{info, warn};
use serde::Serialize;
use symvqe::excitation::{estimate_resources, summarize_hamiltonian, CostModel, ResourceReport};
use symvqe::grouping::group;
use symvqe::statevector::MAX_EXACT_QUBITS;
use symvqe::tapering::{find_z2_symmetries, taper, SymmetryReport};
use symvqe::vqe::{perturbed_start, GradientMethod, Termination, TraceEntry};
use symvqe::{
    build_ansatz, exact_ground_energy, hf_state, jordan_wigner, minimize, AnsatzContext,
    AnsatzSpec, BasisState, GroupingMode, IntegralSet, MinimizeOptions, PauliSum,
    CHEMICAL_ACCURACY,
};

use crate::args::{
    AnsatzArgs, Common, EstimateArgs, FciArgs, GradientArg, GroupArgs, RunArgs, ScanArgs,
    TaperArgs, VqeArgs,
};
use crate::output::{energy, grid, key_values, opt_energy, Report};
use crate::UsageError;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn read_integrals(path: &Path) -> Result<IntegralSet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    IntegralSet::parse_fcidump(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Integrals after `--freeze` and `--active`.
fn load(common: &Common) -> Result<IntegralSet> {
    let path = common
        .fcidump
        .as_deref()
        .ok_or_else(|| usage("--fcidump PATH is required"))?;
    let mut s = read_integrals(path)?;
    if common.freeze > 0 {
        s = s.freeze_core(common.freeze)?;
    }
    if let Some(a) = common.active {
        s = s.select_active_space(a.electrons, a.orbitals)?;
    }
    info!(
        "integrals: {} spatial orbitals, {} electrons, constant {:.10}",
        s.n_spatial(),
        s.n_electrons(),
        s.e_constant()
    );
    Ok(s)
}

fn reference(s: &IntegralSet) -> Result<BasisState> {
    Ok(hf_state(s.n_electrons(), s.n_spin_orbitals())?)
}

fn ansatz(s: &IntegralSet, a: &AnsatzArgs, k: usize) -> Result<AnsatzSpec> {
    let ctx = AnsatzContext::from_integrals(s)
        .with_k(k)
        .with_k_up_singles(a.k_up_singles);
    Ok(build_ansatz(a.ansatz, &ctx)?)
}

fn cost_model(a: &AnsatzArgs) -> Result<CostModel> {
    match &a.cost_model {
        None => Ok(CostModel::default()),
        Some(p) => {
            let text =
                fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Ok(CostModel::from_json(&text)?)
        }
    }
}

/// Hamiltonian tapered in the sector of `reference`, with its symmetry report.
fn taper_at_reference(h: &PauliSum, reference: BasisState) -> Result<(PauliSum, SymmetryReport)> {
    let sym = find_z2_symmetries(h)?.select_sector(reference)?;
    Ok((taper(h, &sym)?, sym.report()))
}

fn exact_or_skip(h: &PauliSum, n_electrons: Option<usize>) -> Result<Option<f64>> {
    if h.n_qubits() > MAX_EXACT_QUBITS {
        warn!(
            "skipping exact diagonalization: {} qubits exceed the limit of {MAX_EXACT_QUBITS}",
            h.n_qubits()
        );
        return Ok(None);
    }
    Ok(Some(exact_ground_energy(h, n_electrons)?))
}

// ---------------------------------------------------------------- estimate

#[derive(Serialize)]
pub struct EstimateOutput {
    schema: &'static str,
    n_electrons: usize,
    #[serde(flatten)]
    report: ResourceReport,
    symmetries: Option<SymmetryReport>,
}

pub fn estimate(args: &EstimateArgs) -> Result<EstimateOutput> {
    let s = load(&args.common)?;
    let h = jordan_wigner(&s)?;
    let spec = ansatz(&s, &args.ansatz, args.ansatz.k as usize)?;
    let cost = cost_model(&args.ansatz)?;
    let (measured, symmetries) = if args.taper.taper {
        let (t, r) = taper_at_reference(&h, reference(&s)?)?;
        (t, Some(r))
    } else {
        (h, None)
    };
    let summary = summarize_hamiltonian(&measured, args.ansatz.grouping);
    Ok(EstimateOutput {
        schema: "estimate/v1",
        n_electrons: s.n_electrons(),
        report: estimate_resources(&spec, &cost, &summary, args.taper.taper),
        symmetries,
    })
}

fn report_rows(r: &ResourceReport) -> Vec<(&'static str, String)> {
    vec![
        ("ansatz", r.ansatz.clone()),
        ("k", r.k.to_string()),
        ("circuit depth", r.circuit_depth.to_string()),
        ("qubits", r.n_qubits.to_string()),
        ("total gates", r.total_gates.to_string()),
        ("two-qubit gates", r.two_qubit_gates.to_string()),
        ("one-qubit gates", r.one_qubit_gates.to_string()),
        ("Pauli terms", r.pauli_terms.to_string()),
        (
            "circuits",
            format!("{} ({})", r.measurement_circuits, r.grouping),
        ),
        ("double excitations", r.n_doubles.to_string()),
        ("single excitations", r.n_singles.to_string()),
        ("parameters", r.n_parameters.to_string()),
        ("tapering", if r.tapering_used { "yes" } else { "no" }.into()),
    ]
}

const REPORT_HEADER: [&str; 14] = [
    "ansatz",
    "k",
    "circuit_depth",
    "n_qubits",
    "total_gates",
    "two_qubit_gates",
    "one_qubit_gates",
    "pauli_terms",
    "measurement_circuits",
    "grouping",
    "n_doubles",
    "n_singles",
    "n_parameters",
    "tapering_used",
];

fn report_record(r: &ResourceReport) -> Vec<String> {
    vec![
        r.ansatz.clone(),
        r.k.to_string(),
        r.circuit_depth.to_string(),
        r.n_qubits.to_string(),
        r.total_gates.to_string(),
        r.two_qubit_gates.to_string(),
        r.one_qubit_gates.to_string(),
        r.pauli_terms.to_string(),
        r.measurement_circuits.to_string(),
        r.grouping.to_string(),
        r.n_doubles.to_string(),
        r.n_singles.to_string(),
        r.n_parameters.to_string(),
        r.tapering_used.to_string(),
    ]
}

impl Report for EstimateOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        REPORT_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![report_record(&self.report)]
    }

    fn table(&self) -> String {
        key_values(&report_rows(&self.report))
    }
}

// ---------------------------------------------------------------- run

#[derive(Serialize)]
pub struct RunOutput {
    schema: &'static str,
    ansatz: String,
    k: usize,
    n_qubits: usize,
    n_electrons: usize,
    n_parameters: usize,
    hf_energy: f64,
    final_energy: f64,
    reference_fci: Option<f64>,
    gap: Option<f64>,
    chemical_accuracy: Option<bool>,
    converged: bool,
    termination: Termination,
    iterations: usize,
    energy_evaluations: usize,
    gradient_evaluations: usize,
    resources: ResourceReport,
    parameters: Vec<f64>,
    trace: Vec<TraceEntry>,
}

fn options(v: &VqeArgs) -> MinimizeOptions {
    MinimizeOptions {
        gradient_tolerance: v.gtol,
        energy_tolerance: v.etol,
        max_iterations: v.max_iter,
        gradient: match v.gradient {
            GradientArg::Fd => GradientMethod::FiniteDifference { step: v.fd_step },
            GradientArg::Adjoint => GradientMethod::Adjoint,
        },
        ..Default::default()
    }
}

fn start(spec: &AnsatzSpec, v: &VqeArgs, seed: u64) -> Option<Vec<f64>> {
    v.perturb
        .map(|scale| perturbed_start(spec.n_parameters(), scale, seed))
}

pub fn run(args: &RunArgs) -> Result<RunOutput> {
    if args.taper.taper {
        return Err(usage(
            "--taper applies to estimate, group and taper; VQE runs use the untapered register",
        ));
    }
    let s = load(&args.common)?;
    let h = jordan_wigner(&s)?;
    let hf = reference(&s)?;
    let k = args.ansatz.k as usize;
    let spec = ansatz(&s, &args.ansatz, k)?;
    let fci = exact_or_skip(&h, Some(s.n_electrons()))?;
    let theta0 = start(&spec, &args.vqe, args.common.seed);
    let mut trace = minimize(&spec, &h, hf, theta0.as_deref(), &options(&args.vqe))?;
    let summary = summarize_hamiltonian(&h, args.ansatz.grouping);
    let resources = estimate_resources(&spec, &cost_model(&args.ansatz)?, &summary, false);
    trace.reference_fci = fci;
    trace.n_two_qubit_gates = Some(resources.two_qubit_gates);
    let gap = fci.map(|f| trace.final_energy - f);
    info!(
        "VQE finished after {} iterations ({:?}), final energy {:.10}",
        trace.iterations.len().saturating_sub(1),
        trace.termination,
        trace.final_energy
    );
    Ok(RunOutput {
        schema: "run/v1",
        ansatz: spec.variant().to_string(),
        k,
        n_qubits: s.n_spin_orbitals(),
        n_electrons: s.n_electrons(),
        n_parameters: spec.n_parameters(),
        hf_energy: s.hf_energy(),
        final_energy: trace.final_energy,
        reference_fci: fci,
        gap,
        chemical_accuracy: gap.map(|g| g.abs() <= CHEMICAL_ACCURACY),
        converged: trace.converged,
        termination: trace.termination,
        iterations: trace.iterations.len().saturating_sub(1),
        energy_evaluations: trace.energy_evaluations,
        gradient_evaluations: trace.gradient_evaluations,
        resources,
        parameters: trace.parameters,
        trace: trace.iterations,
    })
}

impl Report for RunOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["iter", "energy", "grad_norm"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.trace
            .iter()
            .map(|t| {
                vec![
                    t.iteration.to_string(),
                    format!("{:.12}", t.energy),
                    format!("{:.6e}", t.grad_norm),
                ]
            })
            .collect()
    }

    fn table(&self) -> String {
        let mut s = key_values(&[
            ("ansatz", format!("{} (k = {})", self.ansatz, self.k)),
            ("qubits", self.n_qubits.to_string()),
            ("parameters", self.n_parameters.to_string()),
            ("HF energy", energy(self.hf_energy)),
            ("final energy", energy(self.final_energy)),
            ("FCI energy", opt_energy(self.reference_fci)),
            (
                "error",
                self.gap.map_or("-".into(), |g| format!("{g:.3e}")),
            ),
            (
                "chemical accuracy",
                self.chemical_accuracy
                    .map_or("-".into(), |c| if c { "yes" } else { "no" }.into()),
            ),
            (
                "iterations",
                format!("{} ({:?})", self.iterations, self.termination),
            ),
            ("two-qubit gates", self.resources.two_qubit_gates.to_string()),
        ]);
        s.push('\n');
        s.push_str(&grid(&self.csv_header(), &self.csv_rows()));
        s
    }
}

// ---------------------------------------------------------------- taper

#[derive(Serialize)]
pub struct SectorEnergy {
    sector: Vec<i8>,
    ground_energy: f64,
}

#[derive(Serialize)]
pub struct TaperOutput {
    schema: &'static str,
    n_qubits: usize,
    tapered_qubits: usize,
    symmetries: SymmetryReport,
    /// Ground energy of the untapered operator over all particle numbers.
    full_ground_energy: Option<f64>,
    sectors: Option<Vec<SectorEnergy>>,
    hamiltonian: Option<PauliSum>,
}

pub fn taper_cmd(args: &TaperArgs) -> Result<TaperOutput> {
    let (h, hf) = match &args.hamiltonian {
        Some(p) => {
            let text =
                fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            let h: PauliSum = serde_json::from_str(&text)
                .with_context(|| format!("parsing Pauli sum {}", p.display()))?;
            (h, None)
        }
        None => {
            let s = load(&args.common)?;
            (jordan_wigner(&s)?, Some(reference(&s)?))
        }
    };
    let sym = find_z2_symmetries(&h)?;
    info!("{} Z2 symmetries on {} qubits", sym.len(), h.n_qubits());

    if args.scan_sectors {
        let full = exact_or_skip(&h, None)?;
        let mut sectors = Vec::new();
        for sector in sym.all_sectors() {
            let t = taper(&h, &sym.with_sector(sector.clone())?)?;
            let e = exact_ground_energy(&t, None)?;
            sectors.push(SectorEnergy {
                sector,
                ground_energy: e,
            });
        }
        return Ok(TaperOutput {
            schema: "taper/v1",
            n_qubits: h.n_qubits(),
            tapered_qubits: sym.tapered_qubits(),
            symmetries: sym.report(),
            full_ground_energy: full,
            sectors: Some(sectors),
            hamiltonian: None,
        });
    }

    let sym = match (&args.sector, hf) {
        (Some(sec), _) => sym.with_sector(sec.0.clone())?,
        (None, Some(r)) => sym.select_sector(r)?,
        (None, None) if sym.is_empty() => sym,
        (None, None) => {
            return Err(usage(
                "a Hamiltonian read from JSON has no reference state; pass --sector or --scan-sectors",
            ))
        }
    };
    let tapered = taper(&h, &sym)?;
    Ok(TaperOutput {
        schema: "taper/v1",
        n_qubits: h.n_qubits(),
        tapered_qubits: tapered.n_qubits(),
        symmetries: sym.report(),
        full_ground_energy: None,
        sectors: None,
        hamiltonian: Some(tapered),
    })
}

fn sector_text(s: &[i8]) -> String {
    s.iter()
        .map(|v| if *v > 0 { "+1" } else { "-1" })
        .collect::<Vec<_>>()
        .join(",")
}

impl Report for TaperOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        if self.sectors.is_some() {
            vec!["sector", "ground_energy"]
        } else {
            vec!["coeff", "pauli"]
        }
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        if let Some(sectors) = &self.sectors {
            return sectors
                .iter()
                .map(|r| vec![sector_text(&r.sector), format!("{:.12}", r.ground_energy)])
                .collect();
        }
        self.hamiltonian
            .iter()
            .flat_map(|h| h.iter())
            .map(|(p, c)| vec![format!("{c:.15e}"), p.to_string()])
            .collect()
    }

    fn table(&self) -> String {
        let r = &self.symmetries;
        let mut s = key_values(&[
            ("qubits", self.n_qubits.to_string()),
            ("symmetries", r.generators.len().to_string()),
            ("tapered qubits", self.tapered_qubits.to_string()),
            (
                "sector",
                r.sector.as_deref().map_or("-".into(), sector_text),
            ),
        ]);
        s.push('\n');
        let rows: Vec<Vec<String>> = r
            .generators
            .iter()
            .zip(&r.sigma_qubits)
            .zip(&r.sigma_paulis)
            .map(|((g, q), p)| vec![g.clone(), q.to_string(), p.to_string()])
            .collect();
        s.push_str(&grid(&["generator", "qubit", "sigma"], &rows));
        if let Some(h) = &self.hamiltonian {
            s.push_str(&format!("\ntapered Hamiltonian: {} terms\n", h.len()));
        }
        if self.sectors.is_some() {
            s.push('\n');
            s.push_str(&grid(&self.csv_header(), &self.csv_rows()));
            if let Some(e) = self.full_ground_energy {
                s.push_str(&format!("untapered ground energy  {}\n", energy(e)));
            }
        }
        s
    }
}

// ---------------------------------------------------------------- group

#[derive(Serialize)]
pub struct GroupOutput {
    schema: &'static str,
    mode: GroupingMode,
    n_qubits: usize,
    pauli_terms: usize,
    n_groups: usize,
    tapering_used: bool,
    groups: Option<Vec<Vec<String>>>,
}

pub fn group_cmd(args: &GroupArgs) -> Result<GroupOutput> {
    let s = load(&args.common)?;
    let mut h = jordan_wigner(&s)?;
    if args.taper.taper {
        h = taper_at_reference(&h, reference(&s)?)?.0;
    }
    let groups = group(&h, args.mode);
    Ok(GroupOutput {
        schema: "group/v1",
        mode: args.mode,
        n_qubits: h.n_qubits(),
        pauli_terms: h.len(),
        n_groups: groups.len(),
        tapering_used: args.taper.taper,
        groups: args.partition.then(|| {
            groups
                .iter()
                .map(|g| g.iter().map(ToString::to_string).collect())
                .collect()
        }),
    })
}

impl Report for GroupOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        if self.groups.is_some() {
            vec!["group", "pauli"]
        } else {
            vec!["mode", "n_qubits", "pauli_terms", "n_groups"]
        }
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        match &self.groups {
            Some(groups) => groups
                .iter()
                .enumerate()
                .flat_map(|(i, g)| g.iter().map(move |p| vec![i.to_string(), p.clone()]))
                .collect(),
            None => vec![vec![
                self.mode.to_string(),
                self.n_qubits.to_string(),
                self.pauli_terms.to_string(),
                self.n_groups.to_string(),
            ]],
        }
    }

    fn table(&self) -> String {
        let mut s = key_values(&[
            ("mode", self.mode.to_string()),
            ("qubits", self.n_qubits.to_string()),
            ("Pauli terms", self.pauli_terms.to_string()),
            ("groups", self.n_groups.to_string()),
        ]);
        if let Some(groups) = &self.groups {
            for (i, g) in groups.iter().enumerate() {
                s.push_str(&format!("{i:>6}  {}\n", g.join(" ")));
            }
        }
        s
    }
}

// ---------------------------------------------------------------- fci

#[derive(Serialize)]
pub struct FciOutput {
    schema: &'static str,
    n_qubits: usize,
    n_electrons: usize,
    hf_energy: f64,
    fci_energy: f64,
    correlation_energy: f64,
}

pub fn fci(args: &FciArgs) -> Result<FciOutput> {
    let s = load(&args.common)?;
    let h = jordan_wigner(&s)?;
    let e = exact_ground_energy(&h, Some(s.n_electrons()))?;
    Ok(FciOutput {
        schema: "fci/v1",
        n_qubits: h.n_qubits(),
        n_electrons: s.n_electrons(),
        hf_energy: s.hf_energy(),
        fci_energy: e,
        correlation_energy: e - s.hf_energy(),
    })
}

impl Report for FciOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n_qubits", "n_electrons", "hf_energy", "fci_energy", "correlation_energy"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.n_qubits.to_string(),
            self.n_electrons.to_string(),
            format!("{:.12}", self.hf_energy),
            format!("{:.12}", self.fci_energy),
            format!("{:.12}", self.correlation_energy),
        ]]
    }

    fn table(&self) -> String {
        key_values(&[
            ("qubits", self.n_qubits.to_string()),
            ("electrons", self.n_electrons.to_string()),
            ("HF energy", energy(self.hf_energy)),
            ("FCI energy", energy(self.fci_energy)),
            ("correlation", energy(self.correlation_energy)),
        ])
    }
}

// ---------------------------------------------------------------- scan

#[derive(Serialize)]
pub struct ActiveSpaceRow {
    label: String,
    n_electrons: usize,
    n_orbitals: usize,
    n_qubits: usize,
    hf_energy: f64,
    exact_energy: Option<f64>,
}

#[derive(Serialize)]
pub struct KRow {
    k: usize,
    n_parameters: usize,
    final_energy: f64,
    reference_fci: Option<f64>,
    gap: Option<f64>,
    converged: bool,
    iterations: usize,
}

#[derive(Serialize)]
#[serde(tag = "sweep", rename_all = "snake_case")]
pub enum ScanRows {
    ActiveSpace { rows: Vec<ActiveSpaceRow> },
    K { ansatz: String, rows: Vec<KRow> },
}

#[derive(Serialize)]
pub struct ScanOutput {
    schema: &'static str,
    #[serde(flatten)]
    rows: ScanRows,
}

fn window_row(label: String, s: &IntegralSet) -> Result<ActiveSpaceRow> {
    let h = jordan_wigner(s)?;
    Ok(ActiveSpaceRow {
        label,
        n_electrons: s.n_electrons(),
        n_orbitals: s.n_spatial(),
        n_qubits: s.n_spin_orbitals(),
        hf_energy: s.hf_energy(),
        exact_energy: exact_or_skip(&h, Some(s.n_electrons()))?,
    })
}

pub fn scan(args: &ScanArgs) -> Result<ScanOutput> {
    if args.active_sweep {
        if args.common.active.is_some() {
            return Err(usage("--active-sweep chooses its own windows; drop --active"));
        }
        let path = args
            .common
            .fcidump
            .as_deref()
            .ok_or_else(|| usage("--fcidump PATH is required"))?;
        let full = read_integrals(path)?;
        let mut rows = Vec::new();
        let n_occ = full.n_occupied();
        for half in 1..=n_occ {
            let (ne, no) = (2 * half, 2 * half);
            if n_occ - half + no > full.n_spatial() {
                break;
            }
            let s = full.select_active_space(ne, no)?;
            rows.push(window_row(format!("({ne}e,{no}o)"), &s)?);
        }
        let core = full.freeze_core(args.common.freeze)?;
        let label = if args.common.freeze > 0 {
            format!("frozen core ({}e,{}o)", core.n_electrons(), core.n_spatial())
        } else {
            format!("all orbitals ({}e,{}o)", core.n_electrons(), core.n_spatial())
        };
        rows.push(window_row(label, &core)?);
        return Ok(ScanOutput {
            schema: "scan/v1",
            rows: ScanRows::ActiveSpace { rows },
        });
    }

    let kmax = args.k_sweep.unwrap_or(1);
    if !args.ansatz.ansatz.is_k_up() {
        return Err(usage(format!(
            "--k-sweep needs kupgsd or kupgsdq, got {}",
            args.ansatz.ansatz
        )));
    }
    let s = load(&args.common)?;
    let h = jordan_wigner(&s)?;
    let hf = reference(&s)?;
    let fci = exact_or_skip(&h, Some(s.n_electrons()))?;
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let spec = ansatz(&s, &args.ansatz, k)?;
        let theta0 = start(&spec, &args.vqe, args.common.seed);
        let trace = minimize(&spec, &h, hf, theta0.as_deref(), &options(&args.vqe))?;
        info!("k = {k}: final energy {:.10}", trace.final_energy);
        rows.push(KRow {
            k,
            n_parameters: spec.n_parameters(),
            final_energy: trace.final_energy,
            reference_fci: fci,
            gap: fci.map(|f| trace.final_energy - f),
            converged: trace.converged,
            iterations: trace.iterations.len().saturating_sub(1),
        });
    }
    Ok(ScanOutput {
        schema: "scan/v1",
        rows: ScanRows::K {
            ansatz: args.ansatz.ansatz.to_string(),
            rows,
        },
    })
}

impl Report for ScanOutput {
    fn csv_header(&self) -> Vec<&'static str> {
        match &self.rows {
            ScanRows::ActiveSpace { .. } => vec![
                "label",
                "n_electrons",
                "n_orbitals",
                "n_qubits",
                "hf_energy",
                "exact_energy",
            ],
            ScanRows::K { .. } => vec![
                "k",
                "n_parameters",
                "final_energy",
                "reference_fci",
                "gap",
                "converged",
                "iterations",
            ],
        }
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |e: Option<f64>| e.map_or(String::new(), |v| format!("{v:.12}"));
        match &self.rows {
            ScanRows::ActiveSpace { rows } => rows
                .iter()
                .map(|r| {
                    vec![
                        r.label.clone(),
                        r.n_electrons.to_string(),
                        r.n_orbitals.to_string(),
                        r.n_qubits.to_string(),
                        format!("{:.12}", r.hf_energy),
                        opt(r.exact_energy),
                    ]
                })
                .collect(),
            ScanRows::K { rows, .. } => rows
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        r.n_parameters.to_string(),
                        format!("{:.12}", r.final_energy),
                        opt(r.reference_fci),
                        r.gap.map_or(String::new(), |g| format!("{g:.3e}")),
                        r.converged.to_string(),
                        r.iterations.to_string(),
                    ]
                })
                .collect(),
        }
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .csv_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| if c.is_empty() { "-".into() } else { c })
                    .collect()
            })
            .collect();
        grid(&self.csv_header(), &rows)
    }
}
