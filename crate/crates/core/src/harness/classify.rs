//! Conformation metrics: size measures and per-bead phase assignment.

use crate::lattice::{cartesian_embed, lattice_distance_sq, TurnSequence};
use crate::Result;
use serde::Serialize;

/// Which medium a bead sits in, judged by its indicator value against a
/// symmetric threshold. On-plane beads (small indicator) are interfacial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseLabel {
    Nonpolar,
    Interfacial,
    Polar,
}

pub fn phase_label(s_hat: f64, threshold: f64) -> PhaseLabel {
    if s_hat < -threshold {
        PhaseLabel::Nonpolar
    } else if s_hat > threshold {
        PhaseLabel::Polar
    } else {
        PhaseLabel::Interfacial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    /// Squared lattice end-to-end distance of the chain.
    pub end_to_end_sq: u32,
    /// Cartesian radius of gyration in bond-length units.
    pub radius_of_gyration: f64,
    pub n_nonpolar: usize,
    pub n_interfacial: usize,
    pub n_polar: usize,
}

/// Root mean squared distance of the points from their centroid.
pub fn radius_of_gyration(coords: &[[f64; 3]]) -> f64 {
    let n = coords.len() as f64;
    let mut centroid = [0.0f64; 3];
    for c in coords {
        for (axis, v) in centroid.iter_mut().zip(c) {
            *axis += v / n;
        }
    }
    let mean_sq = coords
        .iter()
        .map(|c| {
            c.iter()
                .zip(&centroid)
                .map(|(v, m)| (v - m) * (v - m))
                .sum::<f64>()
        })
        .sum::<f64>()
        / n;
    mean_sq.sqrt()
}

pub fn classify(turns: &TurnSequence, s_hat: &[f64], threshold: f64) -> Result<Metrics> {
    let end_to_end_sq = lattice_distance_sq(turns, 1, turns.n_beads())?;
    let radius_of_gyration = radius_of_gyration(&cartesian_embed(turns, 1.0));
    let mut counts = [0usize; 3];
    for &s in s_hat {
        counts[phase_label(s, threshold) as usize] += 1;
    }
    Ok(Metrics {
        end_to_end_sq,
        radius_of_gyration,
        n_nonpolar: counts[0],
        n_interfacial: counts[1],
        n_polar: counts[2],
    })
}
