//! Conditional-purity toolkit for two-qubit mixtures of equally weighted
//! symmetric product states.
//!
//! The crate studies the family of two-qubit states built from two product
//! states whose single-qubit factors lie in the x–z plane at polar angles ±θ,
//! mixed with weights p and 1−p. It provides:
//!
//! - [`linalg`]: a dense complex Hermitian kernel (2×2 and 4×4), Bloch maps,
//!   purity, entropy family, fidelity, and trace distance;
//! - [`states`]: construction, canonicalization, reduced states, and the
//!   spin-chain reduced pair that converges to this family;
//! - [`measurement`]: projective measurements on qubit B in the x–z plane,
//!   conditional states of qubit A, and the angles where the conditional
//!   mixture purifies or equilibrates;
//! - [`correlations`]: measurement-averaged conditional purity, quantum
//!   discord, concurrence, information deficits, and the measurement
//!   directions that optimize them;
//! - [`oracle`]: brute-force minimizers and dense recomputations used to
//!   cross-check every closed form;
//! - [`expsim`]: a seeded Monte Carlo emulation of a finite-count photonic
//!   test of the same quantities, including tomography and physicality
//!   projection.
//!
//! Scalar genericity: the numerical core is generic over [`scalar::Real`]
//! (implemented for `f32` and `f64`); concrete `f64` aliases are exported at
//! the crate root.
//!
//! Angle convention: θ and φ are Bloch-sphere polar angles in radians,
//! measured from +z in the x–z plane. A laboratory wave-plate angle θ_L maps
//! to θ = 2·θ_L.

#![allow(clippy::needless_range_loop)]

pub mod correlations;
pub mod error;
pub mod expsim;
pub mod linalg;
pub mod measurement;
pub mod oracle;
pub mod scalar;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

/// 2×2 complex matrix over f64.
pub type Matrix2 = linalg::Matrix<f64, 2>;
/// 4×4 complex matrix over f64.
pub type Matrix4 = linalg::Matrix<f64, 4>;
/// Validated single-qubit density matrix over f64.
pub type Density2 = linalg::DensityMatrix<f64, 2>;
/// Validated two-qubit density matrix over f64.
pub type Density4 = linalg::DensityMatrix<f64, 4>;
/// Real Bloch 3-vector over f64.
pub type Bloch = linalg::BlochVector<f64>;
/// The two-parameter state family (θ, p) over f64.
pub type ThetaP = states::ThetaPState<f64>;
/// A pure qubit in the x–z plane over f64.
pub type PureQubit = states::PureQubit<f64>;
