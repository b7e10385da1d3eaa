//! Variational loop: energy objective, gradients and a BFGS minimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::excitation::AnsatzSpec;
use crate::mapping::BasisState;
use crate::pauli::PauliSum;
use crate::statevector::{SparseOperator, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientMethod {
    /// Central differences with the given step.
    FiniteDifference { step: f64 },
    /// Exact gradient from one forward and one backward sweep.
    Adjoint,
}

impl Default for GradientMethod {
    fn default() -> Self {
        Self::FiniteDifference { step: 1e-5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MinimizeOptions {
    pub gradient_tolerance: f64,
    pub energy_tolerance: f64,
    pub max_iterations: usize,
    pub gradient: GradientMethod,
    /// Sufficient-decrease constant of the backtracking line search.
    pub armijo: f64,
    pub max_backtracks: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            gradient_tolerance: 1e-6,
            energy_tolerance: 1e-10,
            max_iterations: 500,
            gradient: GradientMethod::default(),
            armijo: 1e-4,
            max_backtracks: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub energy: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    GradientTolerance,
    EnergyTolerance,
    MaxIterations,
    LineSearchFailed,
    NoParameters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeTrace {
    pub iterations: Vec<TraceEntry>,
    pub final_energy: f64,
    pub parameters: Vec<f64>,
    pub reference_fci: Option<f64>,
    pub n_two_qubit_gates: Option<u64>,
    pub converged: bool,
    pub termination: Termination,
    pub energy_evaluations: usize,
    pub gradient_evaluations: usize,
}

/// Energy of an ansatz on a fixed reference, with the Hamiltonian assembled once in
/// the reference's particle-number sector.
pub struct Objective<'a> {
    ansatz: &'a AnsatzSpec,
    operator: SparseOperator,
    reference: BasisState,
}

impl<'a> Objective<'a> {
    pub fn new(ansatz: &'a AnsatzSpec, h: &PauliSum, reference: BasisState) -> Result<Self> {
        if h.n_qubits() != ansatz.n_qubits() || reference.n_qubits != ansatz.n_qubits() {
            return Err(Error::Simulation(format!(
                "Hamiltonian ({}), ansatz ({}) and reference ({}) qubit counts differ",
                h.n_qubits(),
                ansatz.n_qubits(),
                reference.n_qubits
            )));
        }
        let operator = SparseOperator::in_sector(h, reference.n_particles())?;
        Ok(Self {
            ansatz,
            operator,
            reference,
        })
    }

    pub fn n_parameters(&self) -> usize {
        self.ansatz.n_parameters()
    }

    pub fn state(&self, theta: &[f64]) -> Result<Statevector> {
        let mut v = Statevector::prepare_basis(self.reference)?;
        v.apply_ansatz(self.ansatz, theta)?;
        Ok(v)
    }

    pub fn energy(&self, theta: &[f64]) -> Result<f64> {
        let e = self.operator.expectation(&self.state(theta)?)?;
        if !e.is_finite() {
            return Err(Error::Optimizer(format!("non-finite energy at θ = {theta:?}")));
        }
        Ok(e)
    }

    pub fn gradient(&self, theta: &[f64], method: GradientMethod) -> Result<Vec<f64>> {
        match method {
            GradientMethod::FiniteDifference { step } => self.gradient_fd(theta, step),
            GradientMethod::Adjoint => self.gradient_adjoint(theta),
        }
    }

    fn gradient_fd(&self, theta: &[f64], step: f64) -> Result<Vec<f64>> {
        (0..theta.len())
            .into_par_iter()
            .map(|i| {
                let mut t = theta.to_vec();
                t[i] = theta[i] + step;
                let plus = self.energy(&t)?;
                t[i] = theta[i] - step;
                let minus = self.energy(&t)?;
                Ok((plus - minus) / (2.0 * step))
            })
            .collect()
    }

    fn gradient_adjoint(&self, theta: &[f64]) -> Result<Vec<f64>> {
        let mut psi = self.state(theta)?;
        let mut lambda = self.operator.apply_to_state(&psi)?;
        let mut g = vec![0.0; theta.len()];
        for e in self.ansatz.excitations().iter().rev() {
            let t = theta[e.parameter_index()];
            g[e.parameter_index()] += 2.0 * lambda.inner(&psi.apply_generator(e)?).re;
            psi.apply_excitation(e, -t)?;
            lambda.apply_excitation(e, -t)?;
        }
        Ok(g)
    }
}

/// `⟨ref|U(θ)† H U(θ)|ref⟩`.
pub fn objective(
    ansatz: &AnsatzSpec,
    h: &PauliSum,
    reference: BasisState,
    theta: &[f64],
) -> Result<f64> {
    Objective::new(ansatz, h, reference)?.energy(theta)
}

pub fn gradient(
    ansatz: &AnsatzSpec,
    h: &PauliSum,
    reference: BasisState,
    theta: &[f64],
    method: GradientMethod,
) -> Result<Vec<f64>> {
    ansatz.check_parameters(theta)?;
    Objective::new(ansatz, h, reference)?.gradient(theta, method)
}

/// Uniform perturbation of zero in `[-scale, scale]`, reproducible from `seed`.
pub fn perturbed_start(n_parameters: usize, scale: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_parameters)
        .map(|_| scale * (2.0 * rng.random::<f64>() - 1.0))
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// BFGS on the inverse Hessian with Armijo backtracking, starting from `theta0`
/// (all zeros, i.e. the reference energy, when `None`).
pub fn minimize(
    ansatz: &AnsatzSpec,
    h: &PauliSum,
    reference: BasisState,
    theta0: Option<&[f64]>,
    options: &MinimizeOptions,
) -> Result<VqeTrace> {
    let obj = Objective::new(ansatz, h, reference)?;
    let n = obj.n_parameters();
    let mut x = match theta0 {
        Some(t) => {
            ansatz.check_parameters(t)?;
            t.to_vec()
        }
        None => vec![0.0; n],
    };
    let mut f = obj.energy(&x)?;
    let mut evals = 1;
    let mut trace = VqeTrace {
        iterations: Vec::new(),
        final_energy: f,
        parameters: x.clone(),
        reference_fci: None,
        n_two_qubit_gates: None,
        converged: true,
        termination: Termination::NoParameters,
        energy_evaluations: 0,
        gradient_evaluations: 0,
    };
    if n == 0 {
        trace.iterations.push(TraceEntry {
            iteration: 0,
            energy: f,
            grad_norm: 0.0,
        });
        trace.energy_evaluations = evals;
        return Ok(trace);
    }

    let mut g = obj.gradient(&x, options.gradient)?;
    let mut grads = 1;
    let mut hinv: Vec<f64> = identity(n);
    let mut first_update = true;
    trace.iterations.push(TraceEntry {
        iteration: 0,
        energy: f,
        grad_norm: norm(&g),
    });
    let mut termination = Termination::MaxIterations;

    for it in 1..=options.max_iterations {
        if norm(&g) < options.gradient_tolerance {
            termination = Termination::GradientTolerance;
            break;
        }
        let mut p = matvec(&hinv, &g, n);
        p.iter_mut().for_each(|v| *v = -*v);
        let mut slope = dot(&p, &g);
        if slope >= 0.0 {
            hinv = identity(n);
            p = g.iter().map(|v| -v).collect();
            slope = dot(&p, &g);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..options.max_backtracks {
            let trial: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + step * b).collect();
            let ft = obj.energy(&trial)?;
            evals += 1;
            if ft <= f + options.armijo * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            termination = Termination::LineSearchFailed;
            break;
        };
        let g_new = obj.gradient(&x_new, options.gradient)?;
        grads += 1;

        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            if first_update {
                let scale = sy / dot(&y, &y);
                hinv.iter_mut().for_each(|v| *v *= scale);
                first_update = false;
            }
            bfgs_update(&mut hinv, &s, &y, sy, n);
        }

        let df = f - f_new;
        x = x_new;
        f = f_new;
        g = g_new;
        trace.iterations.push(TraceEntry {
            iteration: it,
            energy: f,
            grad_norm: norm(&g),
        });
        if norm(&g) < options.gradient_tolerance {
            termination = Termination::GradientTolerance;
            break;
        }
        if df.abs() < options.energy_tolerance {
            termination = Termination::EnergyTolerance;
            break;
        }
    }

    trace.converged = matches!(
        termination,
        Termination::GradientTolerance | Termination::EnergyTolerance
    );
    trace.termination = termination;
    trace.final_energy = f;
    trace.parameters = x;
    trace.energy_evaluations = evals;
    trace.gradient_evaluations = grads;
    Ok(trace)
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn matvec(m: &[f64], v: &[f64], n: usize) -> Vec<f64> {
    (0..n).map(|i| dot(&m[i * n..(i + 1) * n], v)).collect()
}

/// `H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ` with `ρ = 1/(yᵀs)`.
fn bfgs_update(h: &mut [f64], s: &[f64], y: &[f64], sy: f64, n: usize) {
    let rho = 1.0 / sy;
    let hy = matvec(h, y, n);
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += -rho * (s[i] * hy[j] + hy[i] * s[j])
                + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}
