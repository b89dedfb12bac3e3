//! The diagonal Hamiltonian over conformation and contact qubits: geometric
//! constraint penalties, phase-corrected contact interactions, and the
//! per-bead solvent coupling, plus an exact Pauli-Z expansion.
//!
//! Qubit order is the bitstring order: first the 2N-7 free conformation bits,
//! then one contact bit per eligible bead pair. Basis-state indices pack bit 0
//! as the most significant bit, so numeric order equals lexicographic order on
//! rendered bitstrings.

use serde::{Deserialize, Serialize};

use crate::energy::{
    interface_phase_energy, leonhard_pair_energy, sign_poly, solvent_term, AminoAcid,
    InterfaceParams, MjTable,
};
use crate::lattice::{conf_bit_count, decode_turns, TurnSequence};
use crate::{Error, Result};

/// Largest qubit count for which a dense energy table is allowed.
pub const MAX_TABLE_QUBITS: usize = 24;
/// Default cap for the Pauli expansion (2^16 basis states).
pub const DEFAULT_PAULI_CAP: usize = 16;

/// How the solvent environment is modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Single polar phase everywhere; no interface plane.
    HomogeneousPolar,
    /// Single nonpolar phase everywhere; no interface plane.
    HomogeneousNonpolar,
    /// No solvent at all: bare contact energies.
    VacuumMj,
    /// Two phases separated by a plane perpendicular to the interface axis.
    Interface,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::HomogeneousPolar => "homogeneous-polar",
            Mode::HomogeneousNonpolar => "homogeneous-nonpolar",
            Mode::VacuumMj => "vacuum-mj",
            Mode::Interface => "interface",
        })
    }
}

/// Penalty weights for the geometric constraint term and the
/// contact-adjacency bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Penalties {
    pub back: f64,
    pub overlap: f64,
    pub contact: f64,
}

impl Default for Penalties {
    fn default() -> Self {
        Self {
            back: 1000.0,
            overlap: 1000.0,
            contact: 1000.0,
        }
    }
}

/// Qubit bookkeeping for an N-bead chain: conformation bits followed by one
/// bit per eligible contact pair (bead separation odd and >= 5).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitLayout {
    n_beads: usize,
    n_conf_bits: usize,
    /// 1-indexed bead pairs, ascending separation then ascending first bead.
    contact_pairs: Vec<(usize, usize)>,
}

impl QubitLayout {
    pub fn new(n_beads: usize) -> Result<Self> {
        if n_beads < 3 {
            return Err(Error::SequenceLength(n_beads, 3, usize::MAX));
        }
        let mut contact_pairs = Vec::new();
        let mut sep = 5;
        while sep < n_beads {
            for i in 1..=(n_beads - sep) {
                contact_pairs.push((i, i + sep));
            }
            sep += 2;
        }
        Ok(Self {
            n_beads,
            n_conf_bits: conf_bit_count(n_beads),
            contact_pairs,
        })
    }

    pub fn n_beads(&self) -> usize {
        self.n_beads
    }

    pub fn n_conf_bits(&self) -> usize {
        self.n_conf_bits
    }

    pub fn contact_pairs(&self) -> &[(usize, usize)] {
        &self.contact_pairs
    }

    pub fn n_contact_bits(&self) -> usize {
        self.contact_pairs.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_conf_bits + self.contact_pairs.len()
    }

    /// Split a full bitstring into (conformation bits, contact bits).
    pub fn split_bits<'a>(&self, bits: &'a [bool]) -> Result<(&'a [bool], &'a [bool])> {
        if bits.len() != self.n_qubits() {
            return Err(Error::BitstringLength {
                got: bits.len(),
                expected: self.n_qubits(),
            });
        }
        Ok(bits.split_at(self.n_conf_bits))
    }
}

/// Energy split by Hamiltonian term. `ch` is the side-chain term, identically
/// zero for the backbone-only model but reported for schema stability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub gc: f64,
    pub ch: f64,
    #[serde(rename = "in")]
    pub interaction: f64,
    pub sol: f64,
    pub total: f64,
}

/// Everything about one conformation that does not depend on contact bits.
#[derive(Debug, Clone)]
pub struct ConformationEnergies {
    pub gc: f64,
    pub ch: f64,
    pub sol: f64,
    /// Signed displacement of each bead from the interface plane.
    pub dn: Vec<f64>,
    /// Phase indicator of each bead.
    pub s_hat: Vec<f64>,
    /// Contact bracket per layout pair: pair energy plus adjacency penalty.
    pub brackets: Vec<f64>,
}

impl ConformationEnergies {
    /// True when the conformation violates no geometric constraint.
    pub fn feasible(&self) -> bool {
        self.gc == 0.0
    }
}

/// The full diagonal Hamiltonian for one sequence in one environment.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    sequence: Vec<AminoAcid>,
    layout: QubitLayout,
    mode: Mode,
    interface: InterfaceParams,
    penalties: Penalties,
    table: MjTable,
    /// Whether the per-bead solvent sum is active (interface mode only).
    solvent_sum_active: bool,
}

impl Hamiltonian {
    /// Fold the mode into effective interface parameters and validate.
    /// Homogeneous modes reuse the interface machinery with both phases set
    /// equal, which removes all position dependence from the pair energies;
    /// with a single medium there is no polarity difference, so the per-bead
    /// solvent sum is inactive outside interface mode.
    pub fn new(
        sequence: Vec<AminoAcid>,
        mode: Mode,
        interface: InterfaceParams,
        penalties: Penalties,
        table: MjTable,
    ) -> Result<Self> {
        if sequence.len() < 3 {
            return Err(Error::SequenceLength(sequence.len(), 3, usize::MAX));
        }
        if interface.axis > 3 {
            return Err(Error::BadAxis(interface.axis));
        }
        if interface.orientation != 1 && interface.orientation != -1 {
            return Err(Error::BadOrientation(interface.orientation));
        }
        if interface.delta_p.is_nan() || interface.delta_p < 0.0 {
            return Err(Error::Config(format!(
                "delta_p must be >= 0, got {}",
                interface.delta_p
            )));
        }
        for (name, v) in [
            ("back", penalties.back),
            ("overlap", penalties.overlap),
            ("contact", penalties.contact),
        ] {
            if v.is_nan() || v < 0.0 {
                return Err(Error::Config(format!("penalty '{name}' must be >= 0, got {v}")));
            }
        }
        let layout = QubitLayout::new(sequence.len())?;
        let mut effective = interface;
        match mode {
            Mode::Interface => {}
            Mode::VacuumMj => effective.solvent_on = false,
            Mode::HomogeneousPolar => effective.phase_nonpolar = effective.phase_polar,
            Mode::HomogeneousNonpolar => effective.phase_polar = effective.phase_nonpolar,
        }
        let solvent_sum_active = mode == Mode::Interface && effective.solvent_on;
        Ok(Self {
            sequence,
            layout,
            mode,
            interface: effective,
            penalties,
            table,
            solvent_sum_active,
        })
    }

    pub fn sequence(&self) -> &[AminoAcid] {
        &self.sequence
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Interface parameters after mode folding.
    pub fn interface(&self) -> &InterfaceParams {
        &self.interface
    }

    pub fn penalties(&self) -> &Penalties {
        &self.penalties
    }

    pub fn table(&self) -> &MjTable {
        &self.table
    }

    /// Geometric constraint term: back * (immediate reversals)
    /// + overlap * (coinciding same-sublattice bead pairs at separation >= 4).
    pub fn h_gc(&self, turns: &TurnSequence) -> f64 {
        let parts = self.geometry(turns);
        self.gc_from_geometry(turns, &parts)
    }

    /// Side-chain term. The model is backbone-only, so this is zero.
    pub fn h_ch(&self, _turns: &TurnSequence) -> f64 {
        0.0
    }

    /// Interaction term for explicit contact bits.
    pub fn h_in(&self, turns: &TurnSequence, contact_bits: &[bool]) -> Result<f64> {
        let conf = self.conformation_energies(turns);
        if contact_bits.len() != conf.brackets.len() {
            return Err(Error::BitstringLength {
                got: contact_bits.len(),
                expected: conf.brackets.len(),
            });
        }
        Ok(contact_interaction(&conf.brackets, contact_bits))
    }

    /// Per-bead solvent coupling, summed over the chain. Zero whenever the
    /// solvent sum is inactive (vacuum, homogeneous media, solvent off).
    pub fn h_sol(&self, turns: &TurnSequence) -> f64 {
        if !self.solvent_sum_active {
            return 0.0;
        }
        let parts = self.geometry(turns);
        self.sol_from_geometry(&parts)
    }

    /// All contact-bit-independent energies of one conformation.
    pub fn conformation_energies(&self, turns: &TurnSequence) -> ConformationEnergies {
        let geo = self.geometry(turns);
        let gc = self.gc_from_geometry(turns, &geo);
        let sol = if self.solvent_sum_active {
            self.sol_from_geometry(&geo)
        } else {
            0.0
        };
        let brackets = self
            .layout
            .contact_pairs()
            .iter()
            .map(|&(i, j)| {
                let d2 = geo.pair_distance_sq(i, j);
                let eps = leonhard_pair_energy(
                    self.sequence[i - 1],
                    self.sequence[j - 1],
                    geo.s_hat[i - 1],
                    geo.s_hat[j - 1],
                    &self.interface,
                    &self.table,
                );
                eps + self.penalties.contact * (d2 as f64 - 1.0)
            })
            .collect();
        ConformationEnergies {
            gc,
            ch: self.h_ch(turns),
            sol,
            dn: geo.dn,
            s_hat: geo.s_hat,
            brackets,
        }
    }

    /// Assemble the full breakdown for explicit contact bits.
    pub fn breakdown(
        &self,
        conf: &ConformationEnergies,
        contact_bits: &[bool],
    ) -> Result<EnergyBreakdown> {
        if contact_bits.len() != conf.brackets.len() {
            return Err(Error::BitstringLength {
                got: contact_bits.len(),
                expected: conf.brackets.len(),
            });
        }
        let interaction = contact_interaction(&conf.brackets, contact_bits);
        Ok(EnergyBreakdown {
            gc: conf.gc,
            ch: conf.ch,
            interaction,
            sol: conf.sol,
            total: conf.gc + conf.ch + interaction + conf.sol,
        })
    }

    /// Total energy of a full bitstring (conformation bits then contact bits).
    pub fn energy(&self, bits: &[bool]) -> Result<EnergyBreakdown> {
        let (conf_bits, contact_bits) = self.layout.split_bits(bits)?;
        let turns = decode_turns(self.layout.n_beads(), conf_bits)?;
        let conf = self.conformation_energies(&turns);
        self.breakdown(&conf, contact_bits)
    }

    /// Dense table of total energies over all 2^n_q basis states, indexed by
    /// basis index (bit 0 of the bitstring = most significant index bit).
    pub fn energy_table(&self) -> Result<Vec<f64>> {
        let nq = self.layout.n_qubits();
        if nq > MAX_TABLE_QUBITS {
            return Err(Error::TooLarge(format!(
                "{nq} qubits exceeds the {MAX_TABLE_QUBITS}-qubit dense-table cap"
            )));
        }
        let nc = self.layout.n_conf_bits();
        let np = self.layout.n_contact_bits();
        let mut table = Vec::with_capacity(1usize << nq);
        let mut conf_bits = vec![false; nc];
        for conf_idx in 0u64..(1 << nc) {
            for (i, bit) in conf_bits.iter_mut().enumerate() {
                *bit = (conf_idx >> (nc - 1 - i)) & 1 == 1;
            }
            let turns = decode_turns(self.layout.n_beads(), &conf_bits)?;
            let conf = self.conformation_energies(&turns);
            let base = conf.gc + conf.ch + conf.sol;
            for contact_idx in 0u64..(1 << np) {
                let mut e = base;
                for (p, &b) in conf.brackets.iter().enumerate() {
                    if (contact_idx >> (np - 1 - p)) & 1 == 1 {
                        e += b;
                    }
                }
                table.push(e);
            }
        }
        Ok(table)
    }

    /// Exact Pauli-Z expansion of the energy table via a fast Walsh-Hadamard
    /// transform. Refuses to run above `cap` qubits.
    pub fn pauli_expansion(&self, cap: usize) -> Result<PauliZPolynomial> {
        let nq = self.layout.n_qubits();
        if nq > cap.min(MAX_TABLE_QUBITS) {
            return Err(Error::TooLarge(format!(
                "{nq} qubits exceeds the expansion cap of {}",
                cap.min(MAX_TABLE_QUBITS)
            )));
        }
        let mut values = self.energy_table()?;
        walsh_hadamard(&mut values);
        let scale = 1.0 / values.len() as f64;
        let terms = values
            .iter()
            .enumerate()
            .filter(|&(mask, &v)| mask == 0 || v != 0.0)
            .map(|(mask, &v)| (mask as u64, v * scale))
            .collect();
        Ok(PauliZPolynomial {
            n_qubits: nq,
            terms,
        })
    }

    fn geometry(&self, turns: &TurnSequence) -> Geometry {
        let n = turns.n_beads();
        // pos[j-1][a] = sum_{k<j} (-1)^k [t_k == a]
        let mut pos = vec![[0i32; 4]; n];
        for k in 1..n {
            pos[k] = pos[k - 1];
            pos[k][turns.turn(k) as usize] += if k % 2 == 1 { -1 } else { 1 };
        }
        let ip = &self.interface;
        let o = ip.orientation as f64;
        let dn: Vec<f64> = pos
            .iter()
            .map(|p| o * p[ip.axis as usize] as f64 + ip.delta_a)
            .collect();
        let s_hat = dn.iter().map(|&d| sign_poly(d)).collect();
        Geometry { pos, dn, s_hat }
    }

    fn gc_from_geometry(&self, turns: &TurnSequence, geo: &Geometry) -> f64 {
        let n = turns.n_beads();
        let mut reversals = 0usize;
        for k in 1..n - 1 {
            if turns.turn(k) == turns.turn(k + 1) {
                reversals += 1;
            }
        }
        let mut overlaps = 0usize;
        for i in 1..=n {
            let mut j = i + 4;
            while j <= n {
                if geo.pair_distance_sq(i, j) == 0 {
                    overlaps += 1;
                }
                j += 2;
            }
        }
        self.penalties.back * reversals as f64 + self.penalties.overlap * overlaps as f64
    }

    fn sol_from_geometry(&self, geo: &Geometry) -> f64 {
        self.sequence
            .iter()
            .zip(&geo.s_hat)
            .map(|(&aa, &s)| solvent_term(aa, self.interface.delta_p, s))
            .sum()
    }

    /// Residue-solvent energy at a given indicator value, with the effective
    /// (mode-folded) phases. Exposed for reporting.
    pub fn residue_phase_energy(&self, aa: AminoAcid, s_hat: f64) -> f64 {
        interface_phase_energy(aa, s_hat, &self.interface, &self.table)
    }
}

struct Geometry {
    pos: Vec<[i32; 4]>,
    dn: Vec<f64>,
    s_hat: Vec<f64>,
}

impl Geometry {
    fn pair_distance_sq(&self, i: usize, j: usize) -> u32 {
        let a = self.pos[i - 1];
        let b = self.pos[j - 1];
        (0..4).map(|x| (b[x] - a[x]).pow(2) as u32).sum()
    }
}

fn contact_interaction(brackets: &[f64], contact_bits: &[bool]) -> f64 {
    brackets
        .iter()
        .zip(contact_bits)
        .filter(|&(_, &q)| q)
        .map(|(&b, _)| b)
        .sum()
}

/// In-place Walsh-Hadamard transform (unnormalized).
fn walsh_hadamard(values: &mut [f64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for chunk in (0..len).step_by(2 * h) {
            for j in chunk..chunk + h {
                let x = values[j];
                let y = values[j + h];
                values[j] = x + y;
                values[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// Multilinear polynomial in Pauli-Z variables: E(b) = sum_S c_S
/// prod_{i in S} (-1)^{b_i}. Masks live in basis-index bit positions.
#[derive(Debug, Clone, Serialize)]
pub struct PauliZPolynomial {
    n_qubits: usize,
    terms: Vec<(u64, f64)>,
}

impl PauliZPolynomial {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the identity term: the mean energy over all basis states.
    pub fn constant(&self) -> f64 {
        self.terms
            .iter()
            .find(|&&(m, _)| m == 0)
            .map(|&(_, c)| c)
            .unwrap_or(0.0)
    }

    /// Evaluate on the basis state with the given index.
    pub fn evaluate_index(&self, index: u64) -> f64 {
        self.terms
            .iter()
            .map(|&(mask, c)| {
                if (mask & index).count_ones().is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Terms as (sorted qubit indices, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let nq = self.n_qubits;
        self.terms.iter().map(move |&(mask, c)| {
            let qubits = (0..nq).filter(|i| (mask >> (nq - 1 - i)) & 1 == 1).collect();
            (qubits, c)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::parse_sequence;
    use crate::lattice::{format_bits, lattice_distance_sq, parse_bits};

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

    fn index_bits(idx: u64, len: usize) -> Vec<bool> {
        (0..len).map(|i| (idx >> (len - 1 - i)) & 1 == 1).collect()
    }

    #[test]
    fn layout_counts_match_chain_length() {
        let cases = [
            (3, 0, 0),
            (4, 1, 0),
            (5, 3, 0),
            (6, 5, 1),
            (10, 13, 9),
        ];
        for (n, conf, contacts) in cases {
            let l = QubitLayout::new(n).unwrap();
            assert_eq!(l.n_conf_bits(), conf, "n = {n}");
            assert_eq!(l.n_contact_bits(), contacts, "n = {n}");
            assert_eq!(l.n_qubits(), conf + contacts);
        }
        assert_eq!(QubitLayout::new(10).unwrap().n_qubits(), 22);
    }

    #[test]
    fn layout_pairs_are_odd_separation_five_plus() {
        let l = QubitLayout::new(10).unwrap();
        assert_eq!(
            l.contact_pairs(),
            &[
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 10),
                (1, 8),
                (2, 9),
                (3, 10),
                (1, 10)
            ]
        );
        assert_eq!(QubitLayout::new(6).unwrap().contact_pairs(), &[(1, 6)]);
    }

    #[test]
    fn reversal_costs_one_back_penalty() {
        let h = hamiltonian("WLWL", Mode::VacuumMj, InterfaceParams::default());
        let straight = decode_turns(4, &parse_bits("1").unwrap()).unwrap();
        assert_eq!(h.h_gc(&straight), 0.0);
        let reversed = decode_turns(4, &parse_bits("0").unwrap()).unwrap();
        assert_eq!(h.h_gc(&reversed), 1000.0);
    }

    #[test]
    fn hexagonal_loop_costs_one_overlap_penalty() {
        // Steps 2..7 walk the axis pattern 0,1,2,0,1,2: a closed six-ring
        // that drops bead 8 onto bead 2 without any immediate reversal.
        let h = hamiltonian("WLWLWLWLW", Mode::VacuumMj, InterfaceParams::default());
        let turns = TurnSequence::new(9, vec![1, 0, 1, 2, 0, 1, 2, 3]).unwrap();
        assert_eq!(lattice_distance_sq(&turns, 2, 8).unwrap(), 0);
        assert_eq!(h.h_gc(&turns), 1000.0);
        assert_eq!(h.h_ch(&turns), 0.0);
    }

    #[test]
    fn internal_distances_match_lattice_module() {
        let h = hamiltonian("WLWLWL", Mode::VacuumMj, InterfaceParams::default());
        for idx in 0u64..(1 << 5) {
            let turns = decode_turns(6, &index_bits(idx, 5)).unwrap();
            let geo = h.geometry(&turns);
            for i in 1..6 {
                for j in (i + 1)..=6 {
                    assert_eq!(
                        geo.pair_distance_sq(i, j),
                        lattice_distance_sq(&turns, i, j).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn energy_is_affine_in_each_contact_bit() {
        let ip = InterfaceParams {
            delta_p: 10.0,
            ..InterfaceParams::default()
        };
        let h = hamiltonian("WRDWGSGWDR", Mode::Interface, ip);
        let nq = h.layout().n_qubits();
        // grouped as 13 conformation bits | 9 contact bits
        #[allow(clippy::unusual_byte_groupings)]
        let mut bits = index_bits(0b1011011000110_010101010, nq);
        let pair_count = h.layout().n_contact_bits();
        let conf_bits = h.layout().n_conf_bits();
        for p in 0..pair_count {
            // The energy step from flipping contact bit p must not depend on
            // the other contact bits.
            bits[conf_bits + p] = false;
            let e0 = h.energy(&bits).unwrap().total;
            bits[conf_bits + p] = true;
            let e1 = h.energy(&bits).unwrap().total;
            let delta = e1 - e0;

            for q in 0..pair_count {
                bits[conf_bits + q] = q % 2 == 0;
            }
            bits[conf_bits + p] = false;
            let f0 = h.energy(&bits).unwrap().total;
            bits[conf_bits + p] = true;
            let f1 = h.energy(&bits).unwrap().total;
            assert!((f1 - f0 - delta).abs() < 1e-9, "pair {p}");
        }
    }

    #[test]
    fn vacuum_mode_ignores_interface_geometry() {
        let ip_a = InterfaceParams {
            delta_a: -1.0,
            delta_p: 10.0,
            ..InterfaceParams::default()
        };
        let ip_b = InterfaceParams {
            delta_a: 0.5,
            delta_p: 0.1,
            orientation: 1,
            ..InterfaceParams::default()
        };
        let ha = hamiltonian("WRDWGSGWDR", Mode::VacuumMj, ip_a);
        let hb = hamiltonian("WRDWGSGWDR", Mode::VacuumMj, ip_b);
        let nq = ha.layout().n_qubits();
        for idx in [0u64, 77, 4_000_000 % (1 << nq), (1 << nq) - 1] {
            let bits = index_bits(idx, nq);
            let ea = ha.energy(&bits).unwrap();
            let eb = hb.energy(&bits).unwrap();
            assert_eq!(ea.sol, 0.0);
            assert_eq!(eb.sol, 0.0);
            assert_eq!(ea.interaction, eb.interaction);
            assert_eq!(ea.total, eb.total);
        }
    }

    #[test]
    fn homogeneous_modes_have_no_position_dependence() {
        let ip = InterfaceParams {
            delta_p: 10.0,
            ..InterfaceParams::default()
        };
        let h = hamiltonian("DRDRDR", Mode::HomogeneousPolar, ip);
        for idx in 0u64..(1 << h.layout().n_qubits()) {
            let bits = index_bits(idx, h.layout().n_qubits());
            let e = h.energy(&bits).unwrap();
            assert_eq!(e.sol, 0.0);
        }
        // Pair energies collapse to the single-phase correction.
        let turns = decode_turns(6, &parse_bits("10100").unwrap()).unwrap();
        let conf = h.conformation_energies(&turns);
        let ip2 = InterfaceParams {
            delta_a: 3.0,
            ..ip
        };
        let h2 = hamiltonian("DRDRDR", Mode::HomogeneousPolar, ip2);
        let conf2 = h2.conformation_energies(&turns);
        for (a, b) in conf.brackets.iter().zip(&conf2.brackets) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn solvent_sum_matches_per_bead_terms() {
        let ip = InterfaceParams {
            delta_p: 10.0,
            ..InterfaceParams::default()
        };
        let h = hamiltonian("WRDWGSGWDR", Mode::Interface, ip);
        let turns = decode_turns(10, &parse_bits("1000100010001").unwrap()).unwrap();
        let conf = h.conformation_energies(&turns);
        let by_hand: f64 = h
            .sequence()
            .iter()
            .zip(&conf.s_hat)
            .map(|(&aa, &s)| 10.0 * aa.hydrophobicity() * s)
            .sum();
        assert!((h.h_sol(&turns) - by_hand).abs() < 1e-12);
        // The fully extended ladder climbs into the polar phase: for a
        // charged sequence every term is favorable.
        let hp2 = hamiltonian("DRDRDRDRDR", Mode::Interface, ip);
        let sol = hp2.h_sol(&turns);
        assert!(sol < 0.0, "climbing solvent sum should be favorable, got {sol}");
    }

    #[test]
    fn pauli_expansion_reproduces_energies_exactly() {
        let ip = InterfaceParams {
            delta_p: 1.0,
            ..InterfaceParams::default()
        };
        for (seq, mode) in [
            ("WLWL", Mode::VacuumMj),
            ("DRDRD", Mode::Interface),
            ("WLWLWL", Mode::Interface),
            ("WRDWGS", Mode::HomogeneousNonpolar),
        ] {
            let h = hamiltonian(seq, mode, ip);
            let poly = h.pauli_expansion(DEFAULT_PAULI_CAP).unwrap();
            let table = h.energy_table().unwrap();
            let mean = table.iter().sum::<f64>() / table.len() as f64;
            assert!((poly.constant() - mean).abs() < 1e-9, "{seq}");
            for (idx, &e) in table.iter().enumerate() {
                let via_poly = poly.evaluate_index(idx as u64);
                assert!(
                    (via_poly - e).abs() <= 1e-9,
                    "{seq} state {}",
                    format_bits(&index_bits(idx as u64, h.layout().n_qubits()))
                );
            }
        }
    }

    #[test]
    fn constant_hamiltonian_expands_to_identity_term() {
        let h = Hamiltonian::new(
            parse_sequence("WLWL").unwrap(),
            Mode::VacuumMj,
            InterfaceParams::default(),
            Penalties {
                back: 0.0,
                overlap: 0.0,
                contact: 0.0,
            },
            MjTable::embedded().unwrap(),
        )
        .unwrap();
        let poly = h.pauli_expansion(DEFAULT_PAULI_CAP).unwrap();
        assert_eq!(poly.n_terms(), 1);
        assert_eq!(poly.constant(), 0.0);
    }

    #[test]
    fn pauli_expansion_respects_cap() {
        let h = hamiltonian("WLWLWLWWLW", Mode::VacuumMj, InterfaceParams::default());
        assert!(matches!(
            h.pauli_expansion(16),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn energy_table_matches_direct_evaluation() {
        let ip = InterfaceParams {
            delta_p: 10.0,
            delta_a: -0.5,
            ..InterfaceParams::default()
        };
        let h = hamiltonian("WRDWGS", Mode::Interface, ip);
        let table = h.energy_table().unwrap();
        assert_eq!(table.len(), 1 << h.layout().n_qubits());
        for (idx, &e) in table.iter().enumerate() {
            let bits = index_bits(idx as u64, h.layout().n_qubits());
            assert_eq!(e, h.energy(&bits).unwrap().total);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let table = MjTable::embedded().unwrap();
        let seq = parse_sequence("WLWL").unwrap();
        let bad_axis = InterfaceParams {
            axis: 4,
            ..InterfaceParams::default()
        };
        assert!(Hamiltonian::new(
            seq.clone(),
            Mode::Interface,
            bad_axis,
            Penalties::default(),
            table.clone()
        )
        .is_err());
        let bad_dp = InterfaceParams {
            delta_p: -1.0,
            ..InterfaceParams::default()
        };
        assert!(Hamiltonian::new(
            seq,
            Mode::Interface,
            bad_dp,
            Penalties::default(),
            table
        )
        .is_err());
    }
}
