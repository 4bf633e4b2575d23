//! Bloch-vector representation of single-qubit states and the Pauli basis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

use super::matrix::{DensityMatrix, Matrix};

/// A real 3-vector (x, y, z); for physical states its norm is ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<S = f64> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Real> BlochVector<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> S {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Unit vector along (sinφ, 0, cosφ): a direction in the x–z plane at
    /// polar angle φ from +z. Measurement directions in this crate live in
    /// this plane unless stated otherwise.
    pub fn xz_direction(phi: S) -> Self {
        Self { x: phi.sin(), y: S::zero(), z: phi.cos() }
    }
}

/// Pauli σ_x.
pub fn pauli_x<S: Real>() -> Matrix<S, 2> {
    let o = S::one();
    let z = S::zero();
    Matrix::from_rows([
        [Complex::new(z, z), Complex::new(o, z)],
        [Complex::new(o, z), Complex::new(z, z)],
    ])
}

/// Pauli σ_y.
pub fn pauli_y<S: Real>() -> Matrix<S, 2> {
    let o = S::one();
    let z = S::zero();
    Matrix::from_rows([
        [Complex::new(z, z), Complex::new(z, -o)],
        [Complex::new(z, o), Complex::new(z, z)],
    ])
}

/// Pauli σ_z.
pub fn pauli_z<S: Real>() -> Matrix<S, 2> {
    Matrix::from_diag([S::one(), -S::one()])
}

/// The three Paulis as an array [σ_x, σ_y, σ_z].
pub fn paulis<S: Real>() -> [Matrix<S, 2>; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// ρ = (I + r·σ)/2. Rejects vectors that leave the Bloch ball by more than
/// the Bloch tolerance; vectors inside the tolerance band are accepted as-is
/// (the density validator re-checks positivity).
pub fn bloch_to_density<S: Real>(r: &BlochVector<S>) -> Result<DensityMatrix<S, 2>> {
    let n = r.norm();
    if n > S::one() + S::tol(tol::BLOCH_TOL) {
        return Err(Error::BlochNormTooLarge { norm: n.as_f64() });
    }
    let half = S::half();
    let m = Matrix::from_rows([
        [
            Complex::new((S::one() + r.z) * half, S::zero()),
            Complex::new(r.x * half, -r.y * half),
        ],
        [
            Complex::new(r.x * half, r.y * half),
            Complex::new((S::one() - r.z) * half, S::zero()),
        ],
    ]);
    // Hermitian and unit-trace by construction; positivity needs |r| ≤ 1,
    // which the norm gate plus clipping below tolerance guarantees.
    Ok(DensityMatrix::new_unchecked(m))
}

/// r_i = Tr(ρ σ_i).
pub fn density_to_bloch<S: Real>(rho: &DensityMatrix<S, 2>) -> BlochVector<S> {
    let m = rho.matrix();
    let two = S::two();
    BlochVector {
        x: m.e[0][1].re * two,
        y: -m.e[0][1].im * two,
        z: m.e[0][0].re - m.e[1][1].re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_is_origin() {
        let r = BlochVector::<f64>::new(0.0, 0.0, 0.0);
        let rho = bloch_to_density(&r).unwrap();
        assert!((rho.matrix().e[0][0].re - 0.5).abs() < 1e-15);
        let back = density_to_bloch(&rho);
        assert_eq!(back, r);
    }

    #[test]
    fn poles_are_basis_states() {
        let up = bloch_to_density(&BlochVector::<f64>::new(0.0, 0.0, 1.0)).unwrap();
        assert!((up.matrix().e[0][0].re - 1.0).abs() < 1e-15);
        assert!(up.matrix().e[1][1].re.abs() < 1e-15);
    }

    #[test]
    fn round_trip_interior_point() {
        let r = BlochVector::<f64>::new(0.3, -0.4, 0.5);
        let back = density_to_bloch(&bloch_to_density(&r).unwrap());
        assert!((back.x - r.x).abs() < 1e-15);
        assert!((back.y - r.y).abs() < 1e-15);
        assert!((back.z - r.z).abs() < 1e-15);
    }

    #[test]
    fn rejects_outside_ball() {
        let r = BlochVector::<f64>::new(1.2, 0.0, 0.0);
        assert!(matches!(bloch_to_density(&r), Err(Error::BlochNormTooLarge { .. })));
    }

    #[test]
    fn xz_direction_is_unit() {
        for k in 0..12 {
            let phi = -3.0 + 0.55 * k as f64;
            let d = BlochVector::<f64>::xz_direction(phi);
            assert!((d.norm() - 1.0).abs() < 1e-15);
            assert_eq!(d.y, 0.0);
        }
    }

    #[test]
    fn paulis_square_to_identity() {
        for s in paulis::<f64>() {
            assert!((&(&s * &s) - &Matrix::identity()).norm() < 1e-15);
        }
    }
}
