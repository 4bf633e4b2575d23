//! Dense complex matrices of small fixed dimension, plus the validated
//! density-matrix refinement. Row-major `[[Complex<S>; N]; N]` storage; no
//! allocation anywhere.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

use super::eigen;

/// Dense `N×N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<S, const N: usize> {
    pub(crate) e: [[Complex<S>; N]; N],
}

impl<S: Real, const N: usize> Default for Matrix<S, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Real, const N: usize> Matrix<S, N> {
    pub fn zero() -> Self {
        Self { e: [[Complex::new(S::zero(), S::zero()); N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.e[i][i] = Complex::new(S::one(), S::zero());
        }
        m
    }

    pub fn from_rows(e: [[Complex<S>; N]; N]) -> Self {
        Self { e }
    }

    /// Real diagonal matrix.
    pub fn from_diag(d: [S; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.e[i][i] = Complex::new(d[i], S::zero());
        }
        m
    }

    /// Rank-1 projector |v⟩⟨v| (v need not be normalized; it is not rescaled).
    pub fn outer(v: &[Complex<S>; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    /// Rank-1 cross projector |u⟩⟨v|.
    pub fn outer_pair(u: &[Complex<S>; N], v: &[Complex<S>; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<S> {
        let mut t = Complex::new(S::zero(), S::zero());
        for i in 0..N {
            t = t + self.e[i][i];
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = self.e[j][i].conj();
            }
        }
        m
    }

    /// Multiply every entry by a complex scalar.
    pub fn mul_scalar(&self, z: Complex<S>) -> Self {
        let mut m = *self;
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = m.e[i][j] * z;
            }
        }
        m
    }

    pub fn scale(&self, s: S) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                *v = Complex::new(v.re * s, v.im * s);
            }
        }
        m
    }

    /// Frobenius norm.
    pub fn norm(&self) -> S {
        self.norm_sqr().sqrt()
    }

    /// Squared Frobenius norm Σ|m_ij|². For Hermitian matrices this equals
    /// Tr m², which is why `purity` never multiplies matrices.
    pub fn norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for row in self.e.iter() {
            for v in row.iter() {
                acc = acc + v.norm_sqr();
            }
        }
        acc
    }

    /// Largest |m_ij − conj(m_ji)| over all entries.
    pub fn hermiticity_defect(&self) -> S {
        let mut worst = S::zero();
        for i in 0..N {
            for j in 0..N {
                let d = (self.e[i][j] - self.e[j][i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= S::tol(tol::HERM_TOL)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<S>; N]) -> [Complex<S>; N] {
        let mut out = [Complex::new(S::zero(), S::zero()); N];
        for i in 0..N {
            for j in 0..N {
                out[i] = out[i] + self.e[i][j] * v[j];
            }
        }
        out
    }

    /// ⟨u| M |v⟩.
    pub fn sandwich(&self, u: &[Complex<S>; N], v: &[Complex<S>; N]) -> Complex<S> {
        let mv = self.apply(v);
        let mut acc = Complex::new(S::zero(), S::zero());
        for i in 0..N {
            acc = acc + u[i].conj() * mv[i];
        }
        acc
    }
}

impl<S: Real, const N: usize> Index<(usize, usize)> for Matrix<S, N> {
    type Output = Complex<S>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<S> {
        &self.e[i][j]
    }
}

impl<S: Real, const N: usize> IndexMut<(usize, usize)> for Matrix<S, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<S> {
        &mut self.e[i][j]
    }
}

impl<S: Real, const N: usize> Add for &Matrix<S, N> {
    type Output = Matrix<S, N>;
    fn add(self, rhs: &Matrix<S, N>) -> Matrix<S, N> {
        let mut m = *self;
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = m.e[i][j] + rhs.e[i][j];
            }
        }
        m
    }
}

impl<S: Real, const N: usize> Sub for &Matrix<S, N> {
    type Output = Matrix<S, N>;
    fn sub(self, rhs: &Matrix<S, N>) -> Matrix<S, N> {
        let mut m = *self;
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] = m.e[i][j] - rhs.e[i][j];
            }
        }
        m
    }
}

impl<S: Real, const N: usize> Mul for &Matrix<S, N> {
    type Output = Matrix<S, N>;
    fn mul(self, rhs: &Matrix<S, N>) -> Matrix<S, N> {
        let mut m = Matrix::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.e[i][k];
                if a.re == S::zero() && a.im == S::zero() {
                    continue;
                }
                for j in 0..N {
                    m.e[i][j] = m.e[i][j] + a * rhs.e[k][j];
                }
            }
        }
        m
    }
}

/// Kronecker product mapping (2×2, 2×2) → 4×4 with the first factor on the
/// left: basis index = 2·(first) + (second).
pub fn kron<S: Real>(a: &Matrix<S, 2>, b: &Matrix<S, 2>) -> Matrix<S, 4> {
    let mut m = Matrix::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.e[2 * i + k][2 * j + l] = a.e[i][j] * b.e[k][l];
                }
            }
        }
    }
    m
}

/// Tensor product of two single-qubit kets, first factor on the left.
pub fn kron_vec<S: Real>(a: &[Complex<S>; 2], b: &[Complex<S>; 2]) -> [Complex<S>; 4] {
    let mut v = [Complex::new(S::zero(), S::zero()); 4];
    for i in 0..2 {
        for k in 0..2 {
            v[2 * i + k] = a[i] * b[k];
        }
    }
    v
}

/// Trace out the second qubit of a 4×4 operator.
pub fn partial_trace_second<S: Real>(m: &Matrix<S, 4>) -> Matrix<S, 2> {
    let mut out = Matrix::zero();
    for i in 0..2 {
        for j in 0..2 {
            out.e[i][j] = m.e[2 * i][2 * j] + m.e[2 * i + 1][2 * j + 1];
        }
    }
    out
}

/// Trace out the first qubit of a 4×4 operator.
pub fn partial_trace_first<S: Real>(m: &Matrix<S, 4>) -> Matrix<S, 2> {
    let mut out = Matrix::zero();
    for i in 0..2 {
        for j in 0..2 {
            out.e[i][j] = m.e[i][j] + m.e[2 + i][2 + j];
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// Hermitian, unit-trace, positive-semidefinite matrix; the only way to build
/// one from raw entries is [`DensityMatrix::new`], which checks all three
/// invariants within the central tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<S, const N: usize> {
    m: Matrix<S, N>,
}

impl<S: Real, const N: usize> DensityMatrix<S, N> {
    /// Validate Hermiticity (1e-12), unit trace (1e-10) and positivity
    /// (eigenvalues ≥ −1e-10).
    pub fn new(m: Matrix<S, N>) -> Result<Self> {
        let asym = m.hermiticity_defect();
        if asym > S::tol(tol::HERM_TOL) {
            return Err(Error::NotHermitian { max_asym: asym.as_f64() });
        }
        let tr = m.trace();
        if (tr.re - S::one()).abs() > S::tol(tol::PSD_TOL) {
            return Err(Error::NotUnitTrace { trace: tr.re.as_f64() });
        }
        let eigs = eigen::eigenvalues_hermitian_unchecked(&m);
        let min = eigs[N - 1];
        if min < -S::tol(tol::PSD_TOL) {
            return Err(Error::NotPositive { min_eig: min.as_f64() });
        }
        Ok(Self { m })
    }

    /// Wrap a matrix known to satisfy the invariants by construction
    /// (convex combinations of projectors, partial traces of valid states, …).
    /// Debug builds still verify.
    pub fn new_unchecked(m: Matrix<S, N>) -> Self {
        debug_assert!(m.is_hermitian());
        debug_assert!((m.trace().re - S::one()).abs() <= S::tol(tol::PSD_TOL));
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix<S, N> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<S, N> {
        self.m
    }
}

impl<S, const N: usize> std::ops::Deref for DensityMatrix<S, N> {
    type Target = Matrix<S, N>;
    fn deref(&self) -> &Matrix<S, N> {
        &self.m
    }
}
