//! Variational minimization of the diagonal Hamiltonian.
//!
//! The Hamiltonian is diagonal, so the expectation over an ansatz state is
//! a probability-weighted aggregate of a precomputed energy table. Two
//! aggregations are supported: the plain mean and the conditional value at
//! risk (the mean of the lowest-energy tail holding `alpha` of the
//! probability mass), which rewards states that put even a little weight on
//! low-energy basis states.
//!
//! The returned bitstring is the best basis state *observed* during the
//! search (most likely state of every evaluated ansatz state, plus every
//! sampled state in shot mode), re-validated through the Hamiltonian. This
//! is how a diagonal-problem VQE is actually read out: the optimizer only
//! has to make the ground state visible, not dominant.

use crate::hamiltonian::{EnergyBreakdown, Hamiltonian};
use crate::solvers::nelder_mead::{nelder_mead, NelderMeadOptions};
use crate::solvers::statevector::{build_ansatz_state, AnsatzSpec};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How a probability distribution over basis states is collapsed to the
/// scalar the optimizer sees.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Aggregation {
    #[default]
    Mean,
    /// Mean of the lowest-energy tail carrying `alpha` probability mass.
    Cvar { alpha: f64 },
}


/// Dense energy table plus an ascending-energy ordering of basis states.
pub struct EnergyLandscape {
    energies: Vec<f64>,
    order: Vec<u32>,
}

impl EnergyLandscape {
    pub fn new(h: &Hamiltonian) -> Result<Self> {
        Ok(Self::from_energies(h.energy_table()?))
    }

    pub fn from_energies(energies: Vec<f64>) -> Self {
        let mut order: Vec<u32> = (0..energies.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            energies[a as usize]
                .total_cmp(&energies[b as usize])
                .then(a.cmp(&b))
        });
        Self { energies, order }
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energy(&self, index: usize) -> f64 {
        self.energies[index]
    }

    /// Lowest energy and the smallest basis index attaining it.
    pub fn min(&self) -> (usize, f64) {
        let i = self.order[0] as usize;
        (i, self.energies[i])
    }

    /// Aggregate the landscape under the distribution |psi|^2.
    pub fn expectation(&self, psi: &[f64], agg: Aggregation) -> f64 {
        debug_assert_eq!(psi.len(), self.energies.len());
        match agg {
            Aggregation::Mean => psi
                .iter()
                .zip(&self.energies)
                .map(|(a, e)| a * a * e)
                .sum(),
            Aggregation::Cvar { alpha } => {
                let mut remaining = alpha.min(1.0);
                let mut acc_w = 0.0;
                let mut acc_e = 0.0;
                for &idx in &self.order {
                    if remaining <= 0.0 {
                        break;
                    }
                    let w = psi[idx as usize].powi(2);
                    if w == 0.0 {
                        continue;
                    }
                    let take = w.min(remaining);
                    acc_e += take * self.energies[idx as usize];
                    acc_w += take;
                    remaining -= take;
                }
                if acc_w > 0.0 {
                    acc_e / acc_w
                } else {
                    self.min().1
                }
            }
        }
    }
}

/// Draw basis indices from |psi|^2 with a fixed seed.
pub fn sample_bitstrings(psi: &[f64], shots: u64, seed: u64) -> Vec<usize> {
    sample_with(psi, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_with(psi: &[f64], shots: u64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(psi.len());
    let mut mass = 0.0;
    for a in psi {
        mass += a * a;
        cumulative.push(mass);
    }
    (0..shots)
        .map(|_| {
            let u = rng.gen::<f64>() * mass;
            cumulative
                .partition_point(|&c| c <= u)
                .min(psi.len() - 1)
        })
        .collect()
}

fn aggregate_samples(landscape: &EnergyLandscape, samples: &[usize], agg: Aggregation) -> f64 {
    match agg {
        Aggregation::Mean => {
            samples.iter().map(|&s| landscape.energy(s)).sum::<f64>() / samples.len() as f64
        }
        Aggregation::Cvar { alpha } => {
            let mut energies: Vec<f64> = samples.iter().map(|&s| landscape.energy(s)).collect();
            energies.sort_unstable_by(f64::total_cmp);
            let mut remaining = alpha * samples.len() as f64;
            let mut acc_w = 0.0;
            let mut acc_e = 0.0;
            for e in energies {
                if remaining <= 0.0 {
                    break;
                }
                let take = remaining.min(1.0);
                acc_e += take * e;
                acc_w += take;
                remaining -= take;
            }
            acc_e / acc_w
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeOptions {
    pub depth: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub aggregation: Aggregation,
    /// None evaluates the exact expectation; Some(n) estimates it from n
    /// sampled bitstrings per evaluation.
    pub shots: Option<u64>,
}

impl Default for VqeOptions {
    fn default() -> Self {
        Self {
            depth: 2,
            restarts: 10,
            max_iters: 500,
            seed: 0,
            aggregation: Aggregation::Mean,
            shots: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RestartSummary {
    pub seed: u64,
    pub iterations: usize,
    pub evaluations: u64,
    pub best_objective: f64,
}

#[derive(Debug, Clone)]
pub struct VqeResult {
    /// Best observed basis state, conformation bits then contact bits.
    pub best_bits: Vec<bool>,
    pub breakdown: EnergyBreakdown,
    /// Lowest final objective over all restarts (an aggregate, so it need
    /// not equal the energy of `best_bits`).
    pub best_objective: f64,
    pub evaluations: u64,
    pub n_params: usize,
    pub restarts: Vec<RestartSummary>,
    /// Objective trace of the winning restart.
    pub trace: Vec<f64>,
}

fn improve(seen: &mut Option<(usize, f64)>, idx: usize, e: f64) {
    let better = match seen {
        None => true,
        Some((bi, be)) => e < *be || (e == *be && idx < *bi),
    };
    if better {
        *seen = Some((idx, e));
    }
}

/// Minimize the Hamiltonian with restarted Nelder-Mead over the ansatz
/// parameters. Restart r is seeded with `opts.seed ^ r`, so the whole run
/// is reproducible from the master seed.
pub fn vqe_minimize(h: &Hamiltonian, opts: &VqeOptions) -> Result<VqeResult> {
    let nq = h.layout().n_qubits();
    if nq == 0 {
        let breakdown = h.energy(&[])?;
        return Ok(VqeResult {
            best_bits: Vec::new(),
            breakdown,
            best_objective: breakdown.total,
            evaluations: 0,
            n_params: 0,
            restarts: Vec::new(),
            trace: Vec::new(),
        });
    }
    if opts.restarts == 0 {
        return Err(Error::Optimizer("need at least one restart".into()));
    }
    if let Aggregation::Cvar { alpha } = opts.aggregation {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Optimizer(format!(
                "cvar alpha must be in (0, 1], got {alpha}"
            )));
        }
    }
    if opts.shots == Some(0) {
        return Err(Error::Optimizer("shots must be positive".into()));
    }

    let landscape = EnergyLandscape::new(h)?;
    let spec = AnsatzSpec {
        n_qubits: nq,
        depth: opts.depth,
    };
    let nm_opts = NelderMeadOptions {
        max_iters: opts.max_iters,
        ..NelderMeadOptions::default()
    };

    let mut best_seen: Option<(usize, f64)> = None;
    let mut restarts = Vec::with_capacity(opts.restarts);
    let mut total_evals = 0u64;
    let mut winner: Option<(f64, Vec<f64>)> = None;

    for r in 0..opts.restarts {
        let seed_r = opts.seed ^ r as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed_r);
        let theta0: Vec<f64> = (0..spec.n_params())
            .map(|_| rng.gen_range(-PI..PI))
            .collect();
        let mut sample_rng = ChaCha8Rng::seed_from_u64(seed_r ^ 0x9e37_79b9_7f4a_7c15);

        let objective = |params: &[f64]| -> f64 {
            let psi = build_ansatz_state(&spec, params).expect("params sized by spec");
            let mut arg = 0;
            let mut top = psi[0] * psi[0];
            for (i, a) in psi.iter().enumerate().skip(1) {
                let p = a * a;
                if p > top {
                    arg = i;
                    top = p;
                }
            }
            improve(&mut best_seen, arg, landscape.energy(arg));
            match opts.shots {
                None => landscape.expectation(&psi, opts.aggregation),
                Some(shots) => {
                    let samples = sample_with(&psi, shots, &mut sample_rng);
                    for &s in &samples {
                        improve(&mut best_seen, s, landscape.energy(s));
                    }
                    aggregate_samples(&landscape, &samples, opts.aggregation)
                }
            }
        };
        let nm = nelder_mead(objective, &theta0, &nm_opts);
        total_evals += nm.evaluations;
        restarts.push(RestartSummary {
            seed: seed_r,
            iterations: nm.iterations,
            evaluations: nm.evaluations,
            best_objective: nm.fx,
        });
        if winner.as_ref().is_none_or(|(fx, _)| nm.fx < *fx) {
            winner = Some((nm.fx, nm.trace));
        }
    }

    let (best_idx, _) = best_seen.expect("every restart evaluates at least once");
    let best_bits: Vec<bool> = (0..nq).map(|i| (best_idx >> (nq - 1 - i)) & 1 == 1).collect();
    let breakdown = h.energy(&best_bits)?;
    let (best_objective, trace) = winner.expect("at least one restart ran");
    Ok(VqeResult {
        best_bits,
        breakdown,
        best_objective,
        evaluations: total_evals,
        n_params: spec.n_params(),
        restarts,
        trace,
    })
}
