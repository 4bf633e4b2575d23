//! Centralized numerical tolerances.
//!
//! Every validation threshold used across the crate lives here so that the
//! tolerance story can be audited in one place. Values are `f64`; generic code
//! converts with [`crate::scalar::Real::tol`], which is the identity for `f64`.

/// Maximum |m[i][j] − conj(m[j][i])| for a matrix to count as Hermitian.
pub const HERM_TOL: f64 = 1e-12;

/// Eigenvalues of a density matrix may be negative by at most this much, and
/// |trace − 1| must stay below it.
pub const PSD_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius mass at which the Jacobi eigensolver stops, and the
/// default "is this zero" threshold for eigenvalue post-processing.
pub const EIG_TOL: f64 = 1e-12;

/// Probability below which conditioning on a measurement outcome is rejected
/// (the conditional state is a 0/0 expression there).
pub const PROB_TOL: f64 = 1e-12;

/// Bloch vectors may exceed unit norm by at most this much and still count as
/// physical.
pub const BLOCH_TOL: f64 = 1e-10;

/// Maximum Bloch-aperture mismatch between the two qubits' state pairs
/// accepted by canonicalization.
pub const APERTURE_TOL: f64 = 1e-9;

/// Bracket width at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-9;

// The tolerance ladder is intentional: Hermiticity and eigensolver
// convergence are tighter than the PSD/trace slack, which is tighter than
// the scan-refinement bracket.
const _: () = {
    assert!(HERM_TOL <= PSD_TOL);
    assert!(EIG_TOL <= PSD_TOL);
    assert!(PSD_TOL <= REFINE_TOL);
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_small_and_positive() {
        for t in [HERM_TOL, PSD_TOL, EIG_TOL, PROB_TOL, BLOCH_TOL, APERTURE_TOL, REFINE_TOL] {
            assert!(t > 0.0 && t < 1e-6);
        }
    }
}
