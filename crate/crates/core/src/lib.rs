//! Coarse-grained peptide folding on a tetrahedral lattice, with an optional
//! planar polar/nonpolar interface crossing the simulation volume.
//!
//! A peptide of N residues is a self-avoiding walk on the diamond lattice,
//! encoded as N-1 turns with a fixed prefix that pins global rotations. The
//! energy combines residue-residue contact terms (phase-corrected pairwise
//! contact energies), steric penalties, and a per-residue solvent term driven
//! by a smooth polynomial surrogate for which side of the interface a bead
//! sits on. Ground states come from exact enumeration or from a simulated
//! variational quantum eigensolver over the same diagonal Hamiltonian.

pub mod energy;
pub mod error;
pub mod hamiltonian;
pub mod harness;
pub mod lattice;
pub mod solvers;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
