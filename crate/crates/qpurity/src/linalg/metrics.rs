//! State-comparison functionals: purity, Uhlmann fidelity, trace distance.

use crate::scalar::Real;

use super::eigen::{column, eigen_hermitian, eigenvalues_hermitian_unchecked};
use super::matrix::{DensityMatrix, Matrix};

/// Tr ρ². For a Hermitian matrix this equals the squared Frobenius norm, so
/// no eigensolve is needed.
pub fn purity<S: Real, const N: usize>(rho: &DensityMatrix<S, N>) -> S {
    rho.matrix().norm_sqr()
}

const PURE_CUTOFF: f64 = 1e-12;
const SUPPORT_CUTOFF: f64 = 1e-14;

/// Uhlmann fidelity F(ρ,σ) = Tr √(√σ ρ √σ), clamped to [0,1]. When either
/// argument is pure the matrix square roots collapse to F = √(⟨ψ|other|ψ⟩).
/// Dimension agreement is enforced by the type system.
///
/// The inner matrix is assembled in the eigenbasis of σ restricted to its
/// support: M_ij = √λ_i √λ_j ⟨v_i|ρ|v_j⟩. Building the product √σ ρ √σ in
/// the computational basis instead would fill σ's null space with O(ε)
/// rounding noise, and each noisy zero eigenvalue λ ≈ 1e−16 would leak √λ ≈
/// 1e−8 into the trace; in the support basis the null block is exactly zero.
pub fn fidelity<S: Real, const N: usize>(
    rho: &DensityMatrix<S, N>,
    sigma: &DensityMatrix<S, N>,
) -> S {
    let one = S::one();
    if purity(rho) >= one - S::tol(PURE_CUTOFF) {
        return pure_fidelity(rho, sigma);
    }
    if purity(sigma) >= one - S::tol(PURE_CUTOFF) {
        return pure_fidelity(sigma, rho);
    }
    let (vals, vecs) = eigen_hermitian(sigma.matrix()).expect("density matrix is Hermitian");
    let cutoff = vals[0].max(S::zero()) * S::tol(SUPPORT_CUTOFF);
    let mut inner = Matrix::<S, N>::zero();
    for i in 0..N {
        if vals[i] <= cutoff {
            continue;
        }
        let vi = column(&vecs, i);
        for j in i..N {
            if vals[j] <= cutoff {
                continue;
            }
            let vj = column(&vecs, j);
            let elem = rho
                .matrix()
                .sandwich(&vi, &vj)
                .scale((vals[i] * vals[j]).sqrt());
            inner.e[i][j] = elem;
            inner.e[j][i] = elem.conj();
        }
    }
    let eigs = eigenvalues_hermitian_unchecked(&inner);
    let mut f = S::zero();
    for lam in eigs {
        f = f + lam.max(S::zero()).sqrt();
    }
    f.max(S::zero()).min(one)
}

/// F with `pure` known pure: √(⟨ψ|other|ψ⟩) for the top eigenvector ψ.
fn pure_fidelity<S: Real, const N: usize>(
    pure: &DensityMatrix<S, N>,
    other: &DensityMatrix<S, N>,
) -> S {
    let (_, vecs) = eigen_hermitian(pure.matrix()).expect("density matrix is Hermitian");
    let psi = column(&vecs, 0);
    let overlap = other.matrix().sandwich(&psi, &psi).re;
    overlap.max(S::zero()).sqrt().min(S::one())
}

/// T(ρ,σ) = ½ Σ |λ_i(ρ − σ)| = ½‖ρ − σ‖₁.
pub fn trace_distance<S: Real, const N: usize>(
    rho: &DensityMatrix<S, N>,
    sigma: &DensityMatrix<S, N>,
) -> S {
    let diff = rho.matrix() - sigma.matrix();
    let eigs = eigenvalues_hermitian_unchecked(&diff);
    let mut acc = S::zero();
    for lam in eigs {
        acc = acc + lam.abs();
    }
    acc * S::half()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn mixed(p: f64) -> DensityMatrix<f64, 2> {
        DensityMatrix::new(Matrix::from_diag([p, 1.0 - p])).unwrap()
    }

    fn plus_state() -> DensityMatrix<f64, 2> {
        let v = [C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
        DensityMatrix::new(Matrix::outer(&v)).unwrap()
    }

    #[test]
    fn purity_range() {
        assert_eq!(purity(&mixed(1.0)), 1.0);
        assert!((purity(&mixed(0.5)) - 0.5).abs() < 1e-15);
        assert!((purity(&mixed(0.75)) - 0.625).abs() < 1e-15);
    }

    #[test]
    fn fidelity_with_self_is_one() {
        for rho in [mixed(0.5), mixed(0.8), plus_state()] {
            assert!((fidelity(&rho, &rho) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelity_orthogonal_pure_is_zero() {
        assert!(fidelity(&mixed(1.0), &mixed(0.0)) < 1e-12);
    }

    #[test]
    fn fidelity_symmetric_mixed_pair() {
        let a = mixed(0.7);
        let b = plus_state();
        let fab = fidelity(&a, &b);
        let fba = fidelity(&b, &a);
        assert!((fab - fba).abs() < 1e-10);
        // ⟨+|diag(0.7,0.3)|+⟩ = 0.5 ⇒ F = √0.5.
        assert!((fab - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fidelity_two_mixed_states() {
        // Both diagonal: F = Σ √(p_i q_i) = √(0.7·0.5) + √(0.3·0.5).
        let f = fidelity(&mixed(0.7), &mixed(0.5));
        let expect = (0.35f64).sqrt() + (0.15f64).sqrt();
        assert!((f - expect).abs() < 1e-12);
    }

    #[test]
    fn fidelity_rank_deficient_noncommuting_pair() {
        // Two rank-2 states on 4 dimensions sharing one basis ray. The inner
        // matrix has eigenvalues {1/4, 1/16, 0, 0}, so F = 1/2 + 1/4 = 3/4
        // exactly. This locks in the support-basis construction: a null space
        // contaminated by O(ε) noise would shift F at the √ε ≈ 1e−8 level.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = [C::new(h, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(h, 0.0)];
        let w = [C::new(h, 0.0), C::new(0.0, 0.0), C::new(h, 0.0), C::new(0.0, 0.0)];
        let e1 = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)];
        let a = DensityMatrix::new(
            &Matrix::outer(&u).scale(0.5) + &Matrix::outer(&e1).scale(0.5),
        )
        .unwrap();
        let b = DensityMatrix::new(
            &Matrix::outer(&w).scale(0.5) + &Matrix::outer(&e1).scale(0.5),
        )
        .unwrap();
        assert!((fidelity(&a, &b) - 0.75).abs() < 1e-13, "F = {}", fidelity(&a, &b));
        assert!((fidelity(&b, &a) - 0.75).abs() < 1e-13);
        assert!((fidelity(&a, &a) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn trace_distance_basics() {
        assert!(trace_distance(&mixed(0.6), &mixed(0.6)).abs() < 1e-14);
        // Orthogonal pure states are at distance 1.
        assert!((trace_distance(&mixed(1.0), &mixed(0.0)) - 1.0).abs() < 1e-14);
        // Diagonal pair: ½(|0.2| + |−0.2|) = 0.2.
        assert!((trace_distance(&mixed(0.7), &mixed(0.5)) - 0.2).abs() < 1e-14);
    }
}
