//! Dense complex Hermitian matrix kernel for one and two qubits: matrices,
//! eigensolvers, Bloch maps, entropies, and state-comparison metrics.

pub mod bloch;
pub mod eigen;
pub mod entropy;
pub mod matrix;
pub mod metrics;

pub use bloch::{bloch_to_density, density_to_bloch, pauli_x, pauli_y, pauli_z, paulis, BlochVector};
pub use eigen::{eigen_hermitian, eigenvalues_hermitian, sqrt_psd};
pub use entropy::{binary_entropy, entropy, vn_entropy_from_purity_rank2, EntropyFunction};
pub use matrix::{kron, kron_vec, DensityMatrix, Matrix};
pub use metrics::{fidelity, purity, trace_distance};
