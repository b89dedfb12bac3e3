//! Ground-state solvers over the diagonal Hamiltonian: exact enumeration of
//! the conformation space, and a simulated variational eigensolver with a
//! hardware-style real-amplitude ansatz.

pub mod exact;
pub mod nelder_mead;
pub mod statevector;
pub mod vqe;

pub use exact::{exact_ground_state, max_feasible_end_to_end, ExactResult, MAX_EXACT_BEADS};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult};
pub use statevector::{build_ansatz_state, AnsatzSpec};
pub use vqe::{
    sample_bitstrings, vqe_minimize, Aggregation, EnergyLandscape, RestartSummary, VqeOptions,
    VqeResult,
};
