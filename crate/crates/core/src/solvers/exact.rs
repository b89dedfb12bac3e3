//! Exact ground states by enumerating every conformation.
//!
//! The total energy is affine in each contact bit with a coefficient (the
//! contact bracket) that depends only on the conformation, so for a fixed
//! conformation the optimal contact assignment is computable bit by bit:
//! take the contact exactly when its bracket is negative. That reduces the
//! search space from 2^n_q to 2^(conformation bits).

use crate::hamiltonian::{EnergyBreakdown, Hamiltonian};
use crate::lattice::decode_turns;
use crate::{Error, Result};

/// Enumeration guard: chains longer than this are out of scope for the
/// exact solver (2^17 conformations at 12 beads).
pub const MAX_EXACT_BEADS: usize = 12;

#[derive(Debug, Clone)]
pub struct ExactResult {
    /// Full ground-state bitstring: conformation bits then contact bits.
    pub best_bits: Vec<bool>,
    pub breakdown: EnergyBreakdown,
    /// Number of conformations enumerated.
    pub states_scanned: u64,
    /// Sorted per-conformation optimal totals, when requested.
    pub energies: Option<Vec<f64>>,
}

fn check_size(h: &Hamiltonian) -> Result<usize> {
    let n = h.layout().n_beads();
    if n > MAX_EXACT_BEADS {
        return Err(Error::TooLarge(format!(
            "{n} beads exceeds the exact-solver limit of {MAX_EXACT_BEADS}"
        )));
    }
    Ok(n)
}

/// Scan every conformation, assign contacts greedily per bracket sign, and
/// return the minimum-energy bitstring. Ties go to the lexicographically
/// smallest bitstring, which is the first one found because enumeration
/// order equals lexicographic order.
pub fn exact_ground_state(h: &Hamiltonian, collect_energies: bool) -> Result<ExactResult> {
    let n = check_size(h)?;
    let nc = h.layout().n_conf_bits();
    let mut conf_bits = vec![false; nc];
    let mut best: Option<(f64, Vec<bool>, EnergyBreakdown)> = None;
    let mut energies = collect_energies.then(|| Vec::with_capacity(1usize << nc));

    for conf_idx in 0u64..(1 << nc) {
        for (i, bit) in conf_bits.iter_mut().enumerate() {
            *bit = (conf_idx >> (nc - 1 - i)) & 1 == 1;
        }
        let turns = decode_turns(n, &conf_bits)?;
        let conf = h.conformation_energies(&turns);
        let contact_bits: Vec<bool> = conf.brackets.iter().map(|&b| b < 0.0).collect();
        let breakdown = h.breakdown(&conf, &contact_bits)?;
        if let Some(list) = energies.as_mut() {
            list.push(breakdown.total);
        }
        let better = match &best {
            None => true,
            Some((t, _, _)) => breakdown.total < *t,
        };
        if better {
            let mut bits = conf_bits.clone();
            bits.extend_from_slice(&contact_bits);
            best = Some((breakdown.total, bits, breakdown));
        }
    }

    if let Some(list) = energies.as_mut() {
        list.sort_unstable_by(f64::total_cmp);
    }
    let (_, best_bits, breakdown) = best.expect("at least one conformation");
    Ok(ExactResult {
        best_bits,
        breakdown,
        states_scanned: 1 << nc,
        energies,
    })
}

/// Largest end-to-end squared lattice distance over all feasible
/// conformations (no reversals, no overlaps). None if nothing is feasible.
pub fn max_feasible_end_to_end(h: &Hamiltonian) -> Result<Option<u32>> {
    let n = check_size(h)?;
    let nc = h.layout().n_conf_bits();
    let mut conf_bits = vec![false; nc];
    let mut best: Option<u32> = None;
    for conf_idx in 0u64..(1 << nc) {
        for (i, bit) in conf_bits.iter_mut().enumerate() {
            *bit = (conf_idx >> (nc - 1 - i)) & 1 == 1;
        }
        let turns = decode_turns(n, &conf_bits)?;
        if h.h_gc(&turns) != 0.0 {
            continue;
        }
        let d2 = crate::lattice::lattice_distance_sq(&turns, 1, n)?;
        best = Some(best.map_or(d2, |b| b.max(d2)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{parse_sequence, InterfaceParams, MjTable};
    use crate::hamiltonian::{Mode, Penalties};
    use crate::lattice::format_bits;

    fn hamiltonian(seq: &str, mode: Mode, ip: InterfaceParams) -> Hamiltonian {
        Hamiltonian::new(
            parse_sequence(seq).unwrap(),
            mode,
            ip,
            Penalties::default(),
            MjTable::embedded().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn three_bead_chain_has_single_fixed_conformation() {
        let h = hamiltonian("WLW", Mode::VacuumMj, InterfaceParams::default());
        let r = exact_ground_state(&h, false).unwrap();
        assert!(r.best_bits.is_empty());
        assert_eq!(r.states_scanned, 1);
        assert_eq!(r.breakdown.total, 0.0);
    }

    #[test]
    fn four_bead_chain_avoids_the_reversal() {
        let h = hamiltonian("WLWL", Mode::VacuumMj, InterfaceParams::default());
        let r = exact_ground_state(&h, true).unwrap();
        assert_eq!(format_bits(&r.best_bits), "1");
        assert_eq!(r.breakdown.total, 0.0);
        assert_eq!(r.energies.unwrap(), vec![0.0, 1000.0]);
    }

    #[test]
    fn greedy_contacts_match_full_bitstring_scan() {
        let ip = InterfaceParams {
            delta_p: 1.0,
            ..InterfaceParams::default()
        };
        for mode in [Mode::Interface, Mode::HomogeneousPolar, Mode::VacuumMj] {
            let h = hamiltonian("WLWLWL", mode, ip);
            let r = exact_ground_state(&h, false).unwrap();
            let table = h.energy_table().unwrap();
            let (argmin, &min) = table
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            assert!((r.breakdown.total - min).abs() < 1e-12);
            // With strict comparison the first index attaining the minimum is
            // the lexicographically smallest bitstring.
            let nq = h.layout().n_qubits();
            let bits: Vec<bool> = (0..nq).map(|i| (argmin >> (nq - 1 - i)) & 1 == 1).collect();
            assert_eq!(r.best_bits, bits);
        }
    }

    #[test]
    fn best_energy_bounds_every_scanned_state() {
        let ip = InterfaceParams {
            delta_p: 10.0,
            ..InterfaceParams::default()
        };
        let h = hamiltonian("DRDRDR", Mode::Interface, ip);
        let r = exact_ground_state(&h, true).unwrap();
        let energies = r.energies.unwrap();
        assert_eq!(energies.len(), 32);
        assert!(energies.iter().all(|&e| r.breakdown.total <= e));
    }

    #[test]
    fn ten_bead_extension_maximum_is_the_straight_ladder() {
        let h = hamiltonian("WLWLWLWWLW", Mode::VacuumMj, InterfaceParams::default());
        assert_eq!(max_feasible_end_to_end(&h).unwrap(), Some(41));
    }

    #[test]
    fn refuses_oversized_chains() {
        let h = hamiltonian(
            "WLWLWLWWLWWLW",
            Mode::VacuumMj,
            InterfaceParams::default(),
        );
        assert!(matches!(
            exact_ground_state(&h, false),
            Err(Error::TooLarge(_))
        ));
    }
}
