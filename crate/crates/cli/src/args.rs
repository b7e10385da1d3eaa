use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use symvqe::{AnsatzVariant, GroupingMode};

#[derive(Debug, Parser)]
#[command(name = "symvqe", version, about = "Qubit Hamiltonians, ansatz resources and statevector VQE from FCIDUMP integrals")]
pub struct Cli {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true, env = "SYMVQE_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resource estimate for one ansatz (gates, depth, Pauli terms, measurement circuits).
    Estimate(EstimateArgs),
    /// Statevector VQE with BFGS.
    Run(RunArgs),
    /// Find Z2 symmetries and remove qubits.
    Taper(TaperArgs),
    /// Partition the Hamiltonian into jointly measurable groups.
    Group(GroupArgs),
    /// Exact ground energy in the electron-number sector.
    Fci(FciArgs),
    /// Exact energies over a sweep of active spaces, or VQE over k.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mapping {
    Jw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GradientArg {
    Fd,
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActiveSpace {
    pub electrons: usize,
    pub orbitals: usize,
}

fn parse_active(s: &str) -> Result<ActiveSpace, String> {
    let (e, o) = s
        .split_once(',')
        .ok_or_else(|| format!("expected NE,NO (e.g. 6,6), got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected NE,NO (e.g. 6,6), got {s:?}"))
    };
    Ok(ActiveSpace {
        electrons: num(e)?,
        orbitals: num(o)?,
    })
}

fn parse_ansatz(s: &str) -> Result<AnsatzVariant, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = AnsatzVariant::ALL.iter().map(|v| v.name()).collect();
        format!("unknown ansatz {s:?}; valid values: {}", names.join(", "))
    })
}

fn parse_grouping(s: &str) -> Result<GroupingMode, String> {
    s.parse()
        .map_err(|_| format!("unknown grouping {s:?}; valid values: qubitwise, general"))
}

/// Symmetry eigenvalues given on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Sector(pub Vec<i8>);

fn parse_sector(s: &str) -> Result<Sector, String> {
    s.split(',')
        .map(|t| match t.trim() {
            "+1" | "1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(format!("sector entries must be +1 or -1, got {other:?}")),
        })
        .collect::<Result<_, _>>()
        .map(Sector)
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// FCIDUMP integral file.
    #[arg(long, value_name = "PATH")]
    pub fcidump: Option<PathBuf>,

    /// Number of lowest spatial orbitals to freeze.
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub freeze: usize,

    /// Active space as electrons,spatial orbitals around the HOMO-LUMO gap.
    #[arg(long, value_name = "NE,NO", value_parser = parse_active)]
    pub active: Option<ActiveSpace>,

    /// Fermion-to-qubit mapping.
    #[arg(long, value_enum, default_value_t = Mapping::Jw)]
    pub mapping: Mapping,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub out: OutputFormat,

    /// Seed for the random start perturbation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Ansatz selection and cost-model flags.
#[derive(Debug, Clone, Args, Serialize)]
pub struct AnsatzArgs {
    /// uccsd, uccgsd, uccsdq, uccsdqs, kupgsd or kupgsdq.
    #[arg(long, default_value = "uccsdqs", value_parser = parse_ansatz)]
    pub ansatz: AnsatzVariant,

    /// Block repetitions for the k-Up ansatzes.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,

    /// Add generalized singles to every k-Up block.
    #[arg(long)]
    pub k_up_singles: bool,

    /// JSON file overriding the gate cost model.
    #[arg(long, value_name = "PATH")]
    pub cost_model: Option<PathBuf>,

    /// Measurement grouping used for the circuit count.
    #[arg(long, default_value = "qubitwise", value_parser = parse_grouping)]
    pub grouping: GroupingMode,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TaperFlag {
    /// Taper the Hamiltonian before counting terms and circuits.
    #[arg(long = "taper", overrides_with = "no_taper", action = ArgAction::SetTrue)]
    pub taper: bool,

    #[arg(long = "no-taper", overrides_with = "taper", action = ArgAction::SetTrue)]
    #[serde(skip)]
    pub no_taper: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub taper: TaperFlag,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub taper: TaperFlag,

    #[command(flatten)]
    pub vqe: VqeArgs,
}

/// Optimizer flags shared by `run` and `scan --k-sweep`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct VqeArgs {
    /// Gradient evaluation.
    #[arg(long, value_enum, default_value_t = GradientArg::Fd)]
    pub gradient: GradientArg,

    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-5)]
    pub fd_step: f64,

    /// Stop once the gradient norm falls below this.
    #[arg(long, default_value_t = 1e-6)]
    pub gtol: f64,

    /// Stop once an accepted step lowers the energy by less than this.
    #[arg(long, default_value_t = 1e-10)]
    pub etol: f64,

    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,

    /// Start from uniform noise in [-SCALE, SCALE] (seeded by --seed) instead of zero.
    #[arg(long, value_name = "SCALE")]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TaperArgs {
    #[command(flatten)]
    pub common: Common,

    /// Read a Pauli-sum JSON file instead of building from --fcidump.
    #[arg(long, value_name = "PATH", conflicts_with = "fcidump")]
    pub hamiltonian: Option<PathBuf>,

    /// Explicit sector, e.g. +1,-1,-1 (default: eigenvalues on the HF state).
    #[arg(long, value_parser = parse_sector, allow_hyphen_values = true)]
    pub sector: Option<Sector>,

    /// Diagonalize every sector and report its ground energy.
    #[arg(long, conflicts_with = "sector")]
    pub scan_sectors: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupArgs {
    #[command(flatten)]
    pub common: Common,

    /// qubitwise or general.
    #[arg(long, alias = "grouping", default_value = "qubitwise", value_parser = parse_grouping)]
    pub mode: GroupingMode,

    /// Include the full partition in the output.
    #[arg(long)]
    pub partition: bool,

    #[command(flatten)]
    pub taper: TaperFlag,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FciArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(id = "sweep", required = true, multiple = false, args = ["active_sweep", "k_sweep"])]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,

    /// Symmetric (2e,2o), (4e,4o), ... windows plus the frozen-core-only point.
    #[arg(long)]
    pub active_sweep: bool,

    /// VQE for k = 1..=KMAX with a k-Up ansatz.
    #[arg(long, value_name = "KMAX")]
    pub k_sweep: Option<usize>,

    #[command(flatten)]
    pub ansatz: AnsatzArgs,

    #[command(flatten)]
    pub vqe: VqeArgs,
}
