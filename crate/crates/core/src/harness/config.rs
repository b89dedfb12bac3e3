//! Experiment configuration: a single JSON document per run.
//!
//! Unknown fields are rejected so typos fail loudly, and every optional
//! field has a default, so a minimal config is just a sequence and a mode.
//! Precedence is CLI flag > config file > default; the flags are applied by
//! the CLI before the config reaches `run`.

use crate::energy::{hex_digest, parse_sequence, AminoAcid, MjTable};
use crate::energy::InterfaceParams;
use crate::hamiltonian::{Hamiltonian, Mode, Penalties};
use crate::solvers::{Aggregation, VqeOptions};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ffi::OsStr;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable naming an alternate contact-energy CSV.
pub const MJ_TABLE_ENV: &str = "MEMBRANEFOLD_MJ_TABLE";
pub const MIN_BEADS: usize = 3;
pub const MAX_BEADS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    #[default]
    Exact,
    Vqe,
    Both,
}

impl SolverChoice {
    pub fn runs_exact(self) -> bool {
        matches!(self, SolverChoice::Exact | SolverChoice::Both)
    }

    pub fn runs_vqe(self) -> bool {
        matches!(self, SolverChoice::Vqe | SolverChoice::Both)
    }
}

impl FromStr for SolverChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolverChoice::Exact),
            "vqe" => Ok(SolverChoice::Vqe),
            "both" => Ok(SolverChoice::Both),
            other => Err(Error::Config(format!(
                "unknown solver '{other}' (expected exact, vqe, or both)"
            ))),
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Exact => "exact",
            SolverChoice::Vqe => "vqe",
            SolverChoice::Both => "both",
        })
    }
}

/// Variational-solver settings; the master seed lives at the config root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VqeSettings {
    pub depth: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub aggregation: Aggregation,
    pub shots: Option<u64>,
}

impl Default for VqeSettings {
    fn default() -> Self {
        Self {
            depth: 2,
            restarts: 10,
            max_iters: 500,
            aggregation: Aggregation::Mean,
            shots: None,
        }
    }
}

impl VqeSettings {
    pub fn options(&self, seed: u64) -> VqeOptions {
        VqeOptions {
            depth: self.depth,
            restarts: self.restarts,
            max_iters: self.max_iters,
            seed,
            aggregation: self.aggregation,
            shots: self.shots,
        }
    }
}

fn default_classify_threshold() -> f64 {
    0.2
}

fn default_xyz_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// One-letter residue codes, 3 to 12 beads.
    pub sequence: String,
    pub mode: Mode,
    #[serde(default)]
    pub interface: InterfaceParams,
    #[serde(default)]
    pub penalties: Penalties,
    #[serde(default)]
    pub solver: SolverChoice,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub vqe: VqeSettings,
    /// Per-bead phase assignment cutoff on the indicator value.
    #[serde(default = "default_classify_threshold")]
    pub classify_threshold: f64,
    /// Bond length in the exported structure file.
    #[serde(default = "default_xyz_scale")]
    pub xyz_scale: f64,
    /// Alternate contact-energy CSV; falls back to the environment variable,
    /// then to the embedded table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mj_table: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    /// Where summary rows accumulate; defaults to summary.csv in out_dir.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary_csv: Option<PathBuf>,
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(sequence: &str, mode: Mode) -> Self {
        Self {
            sequence: sequence.to_string(),
            mode,
            interface: InterfaceParams::default(),
            penalties: Penalties::default(),
            solver: SolverChoice::default(),
            seed: 0,
            vqe: VqeSettings::default(),
            classify_threshold: default_classify_threshold(),
            xyz_scale: default_xyz_scale(),
            mj_table: None,
            out_dir: None,
            summary_csv: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: Self = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn parsed_sequence(&self) -> Result<Vec<AminoAcid>> {
        let seq = parse_sequence(&self.sequence)?;
        if seq.len() < MIN_BEADS || seq.len() > MAX_BEADS {
            return Err(Error::SequenceLength(seq.len(), MIN_BEADS, MAX_BEADS));
        }
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: String| Error::Config(format!("{name}: {msg}"));
        self.parsed_sequence()?;
        let ip = &self.interface;
        if ip.axis > 3 {
            return Err(field("interface.axis", format!("must be 0..=3, got {}", ip.axis)));
        }
        if ip.orientation != 1 && ip.orientation != -1 {
            return Err(field(
                "interface.orientation",
                format!("must be +1 or -1, got {}", ip.orientation),
            ));
        }
        if !ip.delta_a.is_finite() {
            return Err(field("interface.delta_a", "must be finite".into()));
        }
        if !(ip.delta_p >= 0.0 && ip.delta_p.is_finite()) {
            return Err(field(
                "interface.delta_p",
                format!("must be finite and >= 0, got {}", ip.delta_p),
            ));
        }
        for (name, phase) in [
            ("interface.phase_nonpolar", &ip.phase_nonpolar),
            ("interface.phase_polar", &ip.phase_polar),
        ] {
            if !(phase.c_s >= -1.0 && phase.c_s <= 1.0) {
                return Err(field(name, format!("c_s must be within [-1, 1], got {}", phase.c_s)));
            }
            if !phase.omega_bar.is_finite() {
                return Err(field(name, "omega_bar must be finite".into()));
            }
        }
        for (name, v) in [
            ("penalties.back", self.penalties.back),
            ("penalties.overlap", self.penalties.overlap),
            ("penalties.contact", self.penalties.contact),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(field(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        if !(self.classify_threshold >= 0.0 && self.classify_threshold.is_finite()) {
            return Err(field(
                "classify_threshold",
                format!("must be finite and >= 0, got {}", self.classify_threshold),
            ));
        }
        if !(self.xyz_scale > 0.0 && self.xyz_scale.is_finite()) {
            return Err(field(
                "xyz_scale",
                format!("must be finite and > 0, got {}", self.xyz_scale),
            ));
        }
        if self.vqe.restarts == 0 {
            return Err(field("vqe.restarts", "must be at least 1".into()));
        }
        if self.vqe.max_iters == 0 {
            return Err(field("vqe.max_iters", "must be at least 1".into()));
        }
        if self.vqe.shots == Some(0) {
            return Err(field("vqe.shots", "must be at least 1 when set".into()));
        }
        if let Aggregation::Cvar { alpha } = self.vqe.aggregation {
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(field(
                    "vqe.aggregation.alpha",
                    format!("must be in (0, 1], got {alpha}"),
                ));
            }
        }
        Ok(())
    }

    /// Compact canonical serialization; field order is fixed by the struct.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// Hex digest identifying this exact configuration.
    pub fn hash(&self) -> String {
        hex_digest(self.canonical_json().as_bytes())
    }

    pub fn resolve_mj_table(&self) -> Result<MjTable> {
        resolve_mj_table_from(
            self.mj_table.as_deref(),
            std::env::var_os(MJ_TABLE_ENV).as_deref(),
        )
    }

    pub fn hamiltonian(&self) -> Result<Hamiltonian> {
        Hamiltonian::new(
            self.parsed_sequence()?,
            self.mode,
            self.interface,
            self.penalties,
            self.resolve_mj_table()?,
        )
    }

    pub fn vqe_options(&self) -> VqeOptions {
        self.vqe.options(self.seed)
    }

    pub fn effective_out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn effective_summary_csv(&self) -> PathBuf {
        self.summary_csv
            .clone()
            .unwrap_or_else(|| self.effective_out_dir().join("summary.csv"))
    }
}

/// Table precedence: explicit config field, then environment, then embedded.
fn resolve_mj_table_from(field: Option<&Path>, env: Option<&OsStr>) -> Result<MjTable> {
    if let Some(path) = field {
        return MjTable::from_csv_path(path);
    }
    match env {
        Some(path) if !path.is_empty() => MjTable::from_csv_path(Path::new(path)),
        _ => MjTable::embedded(),
    }
}
