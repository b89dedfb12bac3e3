//! Residue-level energetics: the pairwise contact-energy table, per-phase
//! solvent corrections, the smooth side-of-interface polynomial, and the
//! per-bead solvent coupling.
//!
//! Sign conventions: the phase-indicator value S ranges over roughly [-1, 1]
//! with -1 deep in the nonpolar phase and +1 deep in the polar phase. Energies
//! are in units of RT; more negative is more favorable.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Number of amino-acid types in the contact table.
pub const N_RESIDUE_TYPES: usize = 20;

/// The twenty standard amino acids, ordered as in the shipped contact table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AminoAcid {
    Cys,
    Met,
    Phe,
    Ile,
    Leu,
    Val,
    Trp,
    Tyr,
    Ala,
    Gly,
    Thr,
    Ser,
    Asn,
    Gln,
    Asp,
    Glu,
    His,
    Arg,
    Lys,
    Pro,
}

use AminoAcid::*;

impl AminoAcid {
    pub const ALL: [AminoAcid; N_RESIDUE_TYPES] = [
        Cys, Met, Phe, Ile, Leu, Val, Trp, Tyr, Ala, Gly, Thr, Ser, Asn, Gln, Asp, Glu, His,
        Arg, Lys, Pro,
    ];

    pub fn from_code(c: char) -> Result<Self> {
        let aa = match c.to_ascii_uppercase() {
            'C' => Cys,
            'M' => Met,
            'F' => Phe,
            'I' => Ile,
            'L' => Leu,
            'V' => Val,
            'W' => Trp,
            'Y' => Tyr,
            'A' => Ala,
            'G' => Gly,
            'T' => Thr,
            'S' => Ser,
            'N' => Asn,
            'Q' => Gln,
            'D' => Asp,
            'E' => Glu,
            'H' => His,
            'R' => Arg,
            'K' => Lys,
            'P' => Pro,
            other => return Err(Error::UnknownResidue(other)),
        };
        Ok(aa)
    }

    pub fn code(self) -> char {
        match self {
            Cys => 'C',
            Met => 'M',
            Phe => 'F',
            Ile => 'I',
            Leu => 'L',
            Val => 'V',
            Trp => 'W',
            Tyr => 'Y',
            Ala => 'A',
            Gly => 'G',
            Thr => 'T',
            Ser => 'S',
            Asn => 'N',
            Gln => 'Q',
            Asp => 'D',
            Glu => 'E',
            His => 'H',
            Arg => 'R',
            Lys => 'K',
            Pro => 'P',
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&a| a == self).unwrap()
    }

    /// Octanol/water transfer hydrophobicity used by the solvent coupling.
    /// Positive values prefer the nonpolar phase.
    pub fn hydrophobicity(self) -> f64 {
        match self {
            Asp => -0.77,
            Glu => -0.64,
            Lys => -0.99,
            Arg => -1.01,
            His => 0.13,
            Gly => 0.00,
            Ala => 0.31,
            Val => 1.22,
            Leu => 1.70,
            Ile => 1.80,
            Pro => 0.72,
            Met => 1.23,
            Phe => 1.79,
            Trp => 2.25,
            Tyr => 0.96,
            Thr => -0.04,
            Ser => 0.26,
            Cys => 1.54,
            Asn => -0.60,
            Gln => -0.22,
        }
    }

    pub fn class(self) -> ResidueClass {
        match self {
            Asp | Glu | Lys | Arg | His => ResidueClass::Charged,
            Gly | Ala | Val | Leu | Ile | Pro | Met => ResidueClass::Nonpolar,
            Phe | Trp | Tyr => ResidueClass::Aromatic,
            Thr | Ser | Cys | Asn | Gln => ResidueClass::Polar,
        }
    }
}

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueClass {
    Charged,
    Nonpolar,
    Aromatic,
    Polar,
}

/// Parse a one-letter residue string.
pub fn parse_sequence(s: &str) -> Result<Vec<AminoAcid>> {
    s.chars().map(AminoAcid::from_code).collect()
}

/// Render residues back to a one-letter string.
pub fn format_sequence(seq: &[AminoAcid]) -> String {
    seq.iter().map(|aa| aa.code()).collect()
}

pub(crate) const EMBEDDED_MJ_CSV: &str = include_str!("../data/mj_table.csv");
const EMBEDDED_MJ_SHA256: &str = "e12dbb49fbdb54111df0e258cb7176611a71706921d8e2f65ce3acdca47e8f13";

/// Symmetric 20x20 residue-residue contact-energy table, loaded from CSV and
/// checksum-verified.
#[derive(Debug, Clone)]
pub struct MjTable {
    values: [[f64; N_RESIDUE_TYPES]; N_RESIDUE_TYPES],
    diagonal_sum: f64,
    checksum: String,
}

impl MjTable {
    /// Load the table bundled with the crate.
    pub fn embedded() -> Result<Self> {
        Self::from_csv_str(EMBEDDED_MJ_CSV, Some(EMBEDDED_MJ_SHA256))
    }

    /// Load from a CSV file. If a sibling `<name>.sha256` file exists, the
    /// file bytes must hash to the digest it records.
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let sidecar = path.with_extension(match path.extension().and_then(|e| e.to_str()) {
            Some(ext) => format!("{ext}.sha256"),
            None => "sha256".to_string(),
        });
        let expected = match std::fs::read_to_string(&sidecar) {
            Ok(s) => Some(s.trim().to_string()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => return Err(e.into()),
        };
        Self::from_csv_str(&text, expected.as_deref())
    }

    /// Parse CSV text: a `residue,<code>,...` header followed by one row per
    /// residue. Validates completeness and symmetry; verifies the checksum
    /// when one is supplied.
    pub fn from_csv_str(text: &str, expected_sha256: Option<&str>) -> Result<Self> {
        let checksum = hex_digest(text.as_bytes());
        if let Some(expected) = expected_sha256 {
            if !expected.eq_ignore_ascii_case(&checksum) {
                return Err(Error::ChecksumMismatch {
                    expected: expected.to_string(),
                    got: checksum,
                });
            }
        }

        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::MjTable("empty file".into()))?;
        let mut cols = header.split(',');
        cols.next(); // corner label
        let col_order: Vec<AminoAcid> = cols.map(code_cell).collect::<Result<_>>()?;
        if col_order.len() != N_RESIDUE_TYPES {
            return Err(Error::MjTable(format!(
                "header has {} residue columns, expected {}",
                col_order.len(),
                N_RESIDUE_TYPES
            )));
        }

        let mut values = [[f64::NAN; N_RESIDUE_TYPES]; N_RESIDUE_TYPES];
        let mut rows_seen = 0usize;
        for line in lines {
            let mut cells = line.split(',');
            let row_aa = code_cell(cells.next().unwrap_or(""))?;
            let mut count = 0usize;
            for (cell, &col_aa) in cells.zip(&col_order) {
                let v: f64 = cell.trim().parse().map_err(|_| {
                    Error::MjTable(format!("cell '{cell}' in row {row_aa} is not a number"))
                })?;
                values[row_aa.index()][col_aa.index()] = v;
                count += 1;
            }
            if count != N_RESIDUE_TYPES {
                return Err(Error::MjTable(format!(
                    "row {row_aa} has {count} cells, expected {N_RESIDUE_TYPES}"
                )));
            }
            rows_seen += 1;
        }
        if rows_seen != N_RESIDUE_TYPES {
            return Err(Error::MjTable(format!(
                "{rows_seen} rows, expected {N_RESIDUE_TYPES}"
            )));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v.is_nan() {
                    return Err(Error::MjTable(format!(
                        "missing entry {}-{}",
                        AminoAcid::ALL[i],
                        AminoAcid::ALL[j]
                    )));
                }
                if v != values[j][i] {
                    return Err(Error::MjTable(format!(
                        "asymmetric entries {}-{}: {} vs {}",
                        AminoAcid::ALL[i],
                        AminoAcid::ALL[j],
                        v,
                        values[j][i]
                    )));
                }
            }
        }
        let diagonal_sum = (0..N_RESIDUE_TYPES).map(|i| values[i][i]).sum();
        Ok(Self {
            values,
            diagonal_sum,
            checksum,
        })
    }

    /// Contact energy e_ab (symmetric).
    pub fn energy(&self, a: AminoAcid, b: AminoAcid) -> f64 {
        self.values[a.index()][b.index()]
    }

    /// Sum of the twenty self-contact energies e_kk.
    pub fn diagonal_sum(&self) -> f64 {
        self.diagonal_sum
    }

    /// Hex sha-256 of the source CSV bytes.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }
}

fn code_cell(cell: &str) -> Result<AminoAcid> {
    let t = cell.trim();
    let mut chars = t.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => AminoAcid::from_code(c),
        _ => Err(Error::MjTable(format!("bad residue label '{t}'"))),
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Solvent character of one homogeneous phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseParams {
    /// Hydrophobicity selector in [-1, 1]: negative favors solvent contact
    /// with hydrophobic residues, positive with hydrophilic ones.
    pub c_s: f64,
    /// Constant solvent-contact offset.
    #[serde(default)]
    pub omega_bar: f64,
}

/// Mean residue-solvent contact energy in a homogeneous phase:
/// (1 - C_s)/2 * e_kk + omega_bar + C_s/(2*20) * sum_i e_ii.
pub fn phase_energy(aa: AminoAcid, phase: &PhaseParams, table: &MjTable) -> f64 {
    0.5 * (1.0 - phase.c_s) * table.energy(aa, aa)
        + phase.omega_bar
        + phase.c_s / (2.0 * N_RESIDUE_TYPES as f64) * table.diagonal_sum()
}

/// Everything describing the planar interface between the two phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InterfaceParams {
    /// Lattice axis (0..=3) perpendicular to the phase-separating plane.
    pub axis: u8,
    /// Offset of bead 1 from the plane, in lattice units.
    pub delta_a: f64,
    /// +1 or -1: which side of the plane the pinned chain prefix points into.
    pub orientation: i8,
    /// Polarity difference between the two phases (>= 0).
    pub delta_p: f64,
    /// When false, all solvent physics is off and bare contact energies apply.
    pub solvent_on: bool,
    /// Phase at S = -1.
    pub phase_nonpolar: PhaseParams,
    /// Phase at S = +1.
    pub phase_polar: PhaseParams,
}

impl Default for InterfaceParams {
    fn default() -> Self {
        Self {
            axis: 1,
            delta_a: 0.0,
            orientation: -1,
            delta_p: 1.0,
            solvent_on: true,
            phase_nonpolar: PhaseParams {
                c_s: -0.5,
                omega_bar: 0.0,
            },
            phase_polar: PhaseParams {
                c_s: 0.5,
                omega_bar: 0.0,
            },
        }
    }
}

/// Smooth surrogate for sign(x) used as the side-of-interface indicator. Odd
/// polynomial, within 0.25 of +-1 for 2 <= |x| <= 9.
pub fn sign_poly(x: f64) -> f64 {
    let x2 = x * x;
    x * (0.48175 + x2 * (-0.0182 + x2 * (2.95e-4 + x2 * -1.56e-6)))
}

/// Residue-solvent contact energy at a point with indicator value `s_hat`,
/// interpolating linearly between the two phases.
pub fn interface_phase_energy(
    aa: AminoAcid,
    s_hat: f64,
    ip: &InterfaceParams,
    table: &MjTable,
) -> f64 {
    0.5 * ((1.0 - s_hat) * phase_energy(aa, &ip.phase_nonpolar, table)
        + (1.0 + s_hat) * phase_energy(aa, &ip.phase_polar, table))
}

/// Effective contact energy between residues a and b at indicator values
/// s_a, s_b: the bare contact energy minus the solvent contacts each residue
/// gives up by touching the other. With `solvent_on = false` this is the bare
/// contact energy.
pub fn leonhard_pair_energy(
    a: AminoAcid,
    b: AminoAcid,
    s_a: f64,
    s_b: f64,
    ip: &InterfaceParams,
    table: &MjTable,
) -> f64 {
    if !ip.solvent_on {
        return table.energy(a, b);
    }
    table.energy(a, b)
        - interface_phase_energy(a, s_a, ip, table)
        - interface_phase_energy(b, s_b, ip, table)
}

/// Per-bead solvent coupling: delta_p * gamma_k * s_hat.
pub fn solvent_term(aa: AminoAcid, delta_p: f64, s_hat: f64) -> f64 {
    delta_p * aa.hydrophobicity() * s_hat
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrophobicity_table_is_exact() {
        let expected = [
            (Asp, -0.77),
            (Glu, -0.64),
            (Lys, -0.99),
            (Arg, -1.01),
            (His, 0.13),
            (Gly, 0.00),
            (Ala, 0.31),
            (Val, 1.22),
            (Leu, 1.70),
            (Ile, 1.80),
            (Pro, 0.72),
            (Met, 1.23),
            (Phe, 1.79),
            (Trp, 2.25),
            (Tyr, 0.96),
            (Thr, -0.04),
            (Ser, 0.26),
            (Cys, 1.54),
            (Asn, -0.60),
            (Gln, -0.22),
        ];
        assert_eq!(expected.len(), N_RESIDUE_TYPES);
        for (aa, gamma) in expected {
            assert_eq!(aa.hydrophobicity(), gamma, "{aa}");
        }
    }

    #[test]
    fn residue_classes_match_table() {
        use ResidueClass::*;
        for (set, class) in [
            ("DEKRH", Charged),
            ("GAVLIPM", Nonpolar),
            ("FWY", Aromatic),
            ("TSCNQ", Polar),
        ] {
            for c in set.chars() {
                assert_eq!(AminoAcid::from_code(c).unwrap().class(), class, "{c}");
            }
        }
    }

    #[test]
    fn sequence_codes_round_trip() {
        let seq = parse_sequence("WRDWGSGWDR").unwrap();
        assert_eq!(format_sequence(&seq), "WRDWGSGWDR");
        assert!(matches!(parse_sequence("WXD"), Err(Error::UnknownResidue('X'))));
    }

    #[test]
    fn sign_poly_matches_fixed_points() {
        assert!((sign_poly(5.0) - 0.93375).abs() < 1e-9);
        assert!((sign_poly(-3.0) + 1.02212).abs() < 1e-5);
        assert_eq!(sign_poly(0.0), 0.0);
    }

    #[test]
    fn sign_poly_is_odd() {
        let mut x = -9.0;
        while x <= 9.0 {
            assert!((sign_poly(x) + sign_poly(-x)).abs() < 1e-12, "x = {x}");
            x += 0.037;
        }
    }

    #[test]
    fn sign_poly_tracks_sign_on_plateau() {
        let mut x = 2.0;
        while x <= 9.0 {
            assert!((sign_poly(x) - 1.0).abs() <= 0.25, "x = {x}: {}", sign_poly(x));
            assert!((sign_poly(-x) + 1.0).abs() <= 0.25, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn sign_poly_saturates_by_two_and_a_half() {
        let crossing = (0..=250)
            .map(|i| i as f64 * 0.01)
            .find(|&x| sign_poly(x) >= 0.8);
        assert!(crossing.is_some(), "no 0.8 crossing at |x| <= 2.5");
    }

    #[test]
    fn embedded_table_loads_and_is_symmetric() {
        let t = MjTable::embedded().unwrap();
        assert_eq!(t.energy(Gly, Gly), -2.24);
        assert_eq!(t.checksum(), EMBEDDED_MJ_SHA256);
        for a in AminoAcid::ALL {
            for b in AminoAcid::ALL {
                assert_eq!(t.energy(a, b), t.energy(b, a));
                assert!(t.energy(a, b) < 0.0, "{a}-{b} should be attractive");
            }
        }
        let diag: f64 = AminoAcid::ALL.iter().map(|&a| t.energy(a, a)).sum();
        assert!((t.diagonal_sum() - diag).abs() < 1e-12);
    }

    #[test]
    fn table_rejects_corruption() {
        // Flip one off-diagonal cell: symmetry check has to catch it.
        let text = EMBEDDED_MJ_CSV.replacen("-4.99", "-4.98", 1);
        assert!(matches!(
            MjTable::from_csv_str(&text, None),
            Err(Error::MjTable(_))
        ));
        // Same bytes against the stock digest: checksum check has to catch it.
        assert!(matches!(
            MjTable::from_csv_str(&text, Some(EMBEDDED_MJ_SHA256)),
            Err(Error::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn table_rejects_missing_row() {
        let truncated: Vec<&str> = EMBEDDED_MJ_CSV.lines().take(20).collect();
        assert!(MjTable::from_csv_str(&truncated.join("\n"), None).is_err());
    }

    /// Independent arithmetic check of the homogeneous phase energy, reading
    /// the raw CSV text directly rather than going through MjTable.
    #[test]
    fn phase_energy_matches_direct_arithmetic() {
        let rows: Vec<Vec<&str>> = EMBEDDED_MJ_CSV
            .lines()
            .map(|l| l.split(',').collect())
            .collect();
        let raw = |a: char, b: char| -> f64 {
            let col = rows[0].iter().position(|&c| c == b.to_string()).unwrap();
            let row = rows.iter().position(|r| r[0] == a.to_string()).unwrap();
            rows[row][col].parse().unwrap()
        };
        let codes = "CMFILVWYAGTSNQDEHRKP";
        let diag_sum: f64 = codes.chars().map(|c| raw(c, c)).sum();

        let table = MjTable::embedded().unwrap();
        let phase = PhaseParams {
            c_s: 0.5,
            omega_bar: -0.2,
        };
        let expected = 0.5 * (1.0 - 0.5) * raw('W', 'W') - 0.2 + 0.5 / 40.0 * diag_sum;
        let got = phase_energy(Trp, &phase, &table);
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    }

    #[test]
    fn interface_phase_energy_interpolates_between_phases() {
        let table = MjTable::embedded().unwrap();
        let ip = InterfaceParams::default();
        for aa in [Trp, Asp, Gly] {
            let at_nonpolar = interface_phase_energy(aa, -1.0, &ip, &table);
            let at_polar = interface_phase_energy(aa, 1.0, &ip, &table);
            assert!((at_nonpolar - phase_energy(aa, &ip.phase_nonpolar, &table)).abs() < 1e-12);
            assert!((at_polar - phase_energy(aa, &ip.phase_polar, &table)).abs() < 1e-12);
            // Affine in s_hat: the midpoint value is the mean of the endpoints.
            let mid = interface_phase_energy(aa, 0.0, &ip, &table);
            assert!((mid - 0.5 * (at_nonpolar + at_polar)).abs() < 1e-12);
        }
    }

    #[test]
    fn pair_energy_is_swap_symmetric() {
        let table = MjTable::embedded().unwrap();
        let ip = InterfaceParams::default();
        let cases = [
            (Trp, Leu, 0.3, -0.8),
            (Asp, Arg, -1.0, 1.0),
            (Gly, Ser, 0.0, 0.46),
        ];
        for (a, b, sa, sb) in cases {
            let ab = leonhard_pair_energy(a, b, sa, sb, &ip, &table);
            let ba = leonhard_pair_energy(b, a, sb, sa, &ip, &table);
            assert!((ab - ba).abs() < 1e-12);
        }
    }

    #[test]
    fn pair_energy_without_solvent_is_bare_contact() {
        let table = MjTable::embedded().unwrap();
        let ip = InterfaceParams {
            solvent_on: false,
            ..InterfaceParams::default()
        };
        for (a, b) in [(Trp, Leu), (Asp, Arg), (Gly, Gly)] {
            assert_eq!(
                leonhard_pair_energy(a, b, 0.7, -0.7, &ip, &table),
                table.energy(a, b)
            );
        }
    }

    #[test]
    fn solvent_term_matches_hand_worked_cases() {
        let s1 = sign_poly(1.0);
        assert!((solvent_term(Arg, 10.0, s1) - -4.684).abs() < 1e-3);
        assert!((solvent_term(Trp, 10.0, -0.93375) - -21.01).abs() < 1e-2);
        assert_eq!(solvent_term(Gly, 10.0, 0.9), 0.0);
    }
}
