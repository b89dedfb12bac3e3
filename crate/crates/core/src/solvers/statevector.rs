//! Real-amplitude statevector simulation of the hardware-efficient ansatz.
//!
//! The circuit is a layer of single-qubit Y rotations followed by `depth`
//! repetitions of a linear CZ entangling chain plus another rotation layer.
//! Y rotations and CZ keep real amplitudes real, so the state is a plain
//! `Vec<f64>` over basis indices. Qubit 0 owns the most significant index
//! bit, matching the bitstring convention used everywhere else.

use crate::hamiltonian::MAX_TABLE_QUBITS;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub depth: usize,
}

impl AnsatzSpec {
    /// One rotation angle per qubit per layer, depth + 1 layers.
    pub fn n_params(&self) -> usize {
        (self.depth + 1) * self.n_qubits
    }
}

/// Rotate qubit `q` by Ry(theta) in place.
fn apply_ry(psi: &mut [f64], n_qubits: usize, q: usize, theta: f64) {
    let mask = 1usize << (n_qubits - 1 - q);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    for b in 0..psi.len() {
        if b & mask == 0 {
            let (a0, a1) = (psi[b], psi[b | mask]);
            psi[b] = c * a0 - s * a1;
            psi[b | mask] = s * a0 + c * a1;
        }
    }
}

/// CZ between each adjacent qubit pair: negate amplitudes whose index has
/// an odd number of adjacent 11 bit pairs.
fn apply_cz_chain(psi: &mut [f64]) {
    for (b, amp) in psi.iter_mut().enumerate() {
        if (b & (b >> 1)).count_ones() % 2 == 1 {
            *amp = -*amp;
        }
    }
}

/// Run the ansatz from |0...0> and return the final amplitudes. Parameters
/// are ordered layer by layer, qubit 0 first within each layer.
pub fn build_ansatz_state(spec: &AnsatzSpec, params: &[f64]) -> Result<Vec<f64>> {
    if spec.n_qubits == 0 || spec.n_qubits > MAX_TABLE_QUBITS {
        return Err(Error::TooLarge(format!(
            "statevector needs 1..={MAX_TABLE_QUBITS} qubits, got {}",
            spec.n_qubits
        )));
    }
    if params.len() != spec.n_params() {
        return Err(Error::Config(format!(
            "ansatz expects {} parameters, got {}",
            spec.n_params(),
            params.len()
        )));
    }
    let mut psi = vec![0.0; 1 << spec.n_qubits];
    psi[0] = 1.0;
    for (layer, angles) in params.chunks_exact(spec.n_qubits).enumerate() {
        if layer > 0 {
            apply_cz_chain(&mut psi);
        }
        for (q, &theta) in angles.iter().enumerate() {
            apply_ry(&mut psi, spec.n_qubits, q, theta);
        }
    }
    Ok(psi)
}
