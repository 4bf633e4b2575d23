//! Hermitian eigensolvers: closed form for 2×2, cyclic complex Jacobi for
//! anything larger. At dimensions 2–4 the Jacobi iteration converges in a
//! handful of sweeps and needs no external solver.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

use super::matrix::Matrix;

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigenvalues_hermitian<S: Real, const N: usize>(m: &Matrix<S, N>) -> Result<[S; N]> {
    ensure_hermitian(m)?;
    Ok(eigenvalues_hermitian_unchecked(m))
}

/// Eigenvalues and a unitary whose columns are the matching eigenvectors,
/// sorted by descending eigenvalue.
pub fn eigen_hermitian<S: Real, const N: usize>(
    m: &Matrix<S, N>,
) -> Result<([S; N], Matrix<S, N>)> {
    ensure_hermitian(m)?;
    Ok(jacobi(m))
}

fn ensure_hermitian<S: Real, const N: usize>(m: &Matrix<S, N>) -> Result<()> {
    let defect = m.hermiticity_defect();
    if defect > S::tol(tol::HERM_TOL) {
        return Err(Error::NotHermitian { max_asym: defect.as_f64() });
    }
    Ok(())
}

/// Internal entry point that skips the Hermiticity gate (used by the density
/// validator, which reports its own error). 2×2 goes through the closed form.
pub(crate) fn eigenvalues_hermitian_unchecked<S: Real, const N: usize>(m: &Matrix<S, N>) -> [S; N] {
    if N == 2 {
        let (hi, lo) = eigvals2(m.e[0][0].re, m.e[1][1].re, m.e[0][1]);
        let mut out = [S::zero(); N];
        out[0] = hi;
        out[1] = lo;
        return out;
    }
    jacobi(m).0
}

/// Closed-form eigenvalues of [[a, z], [conj(z), d]], descending.
#[inline]
pub fn eigvals2<S: Real>(a: S, d: S, z: Complex<S>) -> (S, S) {
    let mean = (a + d) * S::half();
    let delta = (a - d) * S::half();
    let r = (delta * delta + z.norm_sqr()).sqrt();
    (mean + r, mean - r)
}

/// Cyclic Jacobi for complex Hermitian matrices. Each pivot (p,q) is phased to
/// a real off-diagonal entry and rotated away; sweeps run until the
/// off-diagonal Frobenius mass drops below the convergence tolerance.
fn jacobi<S: Real, const N: usize>(m: &Matrix<S, N>) -> ([S; N], Matrix<S, N>) {
    let mut a = *m;
    let mut v = Matrix::<S, N>::identity();
    let scale = a.norm().max(S::one());
    let stop = S::tol(tol::EIG_TOL) * scale;

    for _sweep in 0..60 {
        if off_diagonal_norm(&a) <= stop {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.e[p][q];
                let r = apq.norm();
                if r <= stop * S::of(1e-3) {
                    continue;
                }
                // Phase w turns the pivot entry real; the real Givens angle
                // then zeroes it: tan 2θ = 2r / (a_pp − a_qq).
                let w = apq.conj() / r;
                let app = a.e[p][p].re;
                let aqq = a.e[q][q].re;
                let tau = (app - aqq) / (S::two() * r);
                let t = if tau >= S::zero() {
                    S::one() / (tau + (S::one() + tau * tau).sqrt())
                } else {
                    -S::one() / (-tau + (S::one() + tau * tau).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = t * c;

                let mut u = Matrix::<S, N>::identity();
                u.e[p][p] = Complex::new(c, S::zero());
                u.e[p][q] = Complex::new(-s, S::zero());
                u.e[q][p] = w * s;
                u.e[q][q] = w * c;

                a = &(&u.adjoint() * &a) * &u;
                v = &v * &u;
            }
        }
    }

    let mut vals = [S::zero(); N];
    for i in 0..N {
        vals[i] = a.e[i][i].re;
    }
    sort_descending(&mut vals, &mut v);
    (vals, v)
}

fn off_diagonal_norm<S: Real, const N: usize>(a: &Matrix<S, N>) -> S {
    let mut acc = S::zero();
    for i in 0..N {
        for j in 0..N {
            if i != j {
                acc = acc + a.e[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn sort_descending<S: Real, const N: usize>(vals: &mut [S; N], vecs: &mut Matrix<S, N>) {
    // Selection sort with column swaps; N ≤ 4.
    for i in 0..N {
        let mut best = i;
        for j in (i + 1)..N {
            if vals[j] > vals[best] {
                best = j;
            }
        }
        if best != i {
            vals.swap(i, best);
            for row in 0..N {
                vecs.e[row].swap(i, best);
            }
        }
    }
}

/// Positive-semidefinite square root via eigendecomposition; eigenvalues below
/// zero (allowed only within the PSD tolerance) are clipped.
pub fn sqrt_psd<S: Real, const N: usize>(m: &Matrix<S, N>) -> Result<Matrix<S, N>> {
    let (vals, vecs) = eigen_hermitian(m)?;
    let mut d = Matrix::<S, N>::zero();
    for i in 0..N {
        let lam = vals[i].max(S::zero());
        d.e[i][i] = Complex::new(lam.sqrt(), S::zero());
    }
    Ok(&(&vecs * &d) * &vecs.adjoint())
}

/// Extract the `k`-th eigenvector column after [`eigen_hermitian`].
pub fn column<S: Real, const N: usize>(vecs: &Matrix<S, N>, k: usize) -> [Complex<S>; N] {
    let mut out = [Complex::new(S::zero(), S::zero()); N];
    for i in 0..N {
        out[i] = vecs.e[i][k];
    }
    out
}
