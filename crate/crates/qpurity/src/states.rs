//! The two-parameter family of symmetric rank-2 two-qubit mixtures, its
//! reduced states and closed-form spectra, canonicalization of general
//! rank-2 product mixtures into the family, and the exact reduced pair state
//! of a superposed product chain that converges to the family as the chain
//! grows.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::bloch::BlochVector;
use crate::linalg::matrix::{kron_vec, DensityMatrix, Matrix};
use crate::scalar::Real;
use crate::tol;

/// A pure qubit state fixed by its Bloch direction: polar angle `theta` from
/// +z and azimuth `phi_azimuth` from +x, in radians.
/// Ket: cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ — purity 1 by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit<S = f64> {
    pub theta: S,
    pub phi_azimuth: S,
}

impl<S: Real> PureQubit<S> {
    pub fn new(theta: S, phi_azimuth: S) -> Self {
        Self { theta, phi_azimuth }
    }

    /// A state in the x–z plane (zero azimuth) at polar angle θ; negative θ
    /// gives the mirror state cos(θ/2)|0⟩ − sin(θ/2)|1⟩.
    pub fn xz(theta: S) -> Self {
        Self { theta, phi_azimuth: S::zero() }
    }

    pub fn ket(&self) -> [Complex<S>; 2] {
        let half = self.theta * S::half();
        let (s, c) = (half.sin(), half.cos());
        let phase = Complex::from_polar(S::one(), self.phi_azimuth);
        [Complex::new(c, S::zero()), phase * s]
    }

    pub fn bloch(&self) -> BlochVector<S> {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        BlochVector::new(st * self.phi_azimuth.cos(), st * self.phi_azimuth.sin(), ct)
    }

    pub fn projector(&self) -> Matrix<S, 2> {
        Matrix::outer(&self.ket())
    }
}

/// The symmetric two-qubit mixture p·|θθ⟩⟨θθ| + q·|−θ−θ⟩⟨−θ−θ| with q = 1−p,
/// where |±θ⟩ = cos(θ/2)|0⟩ ± sin(θ/2)|1⟩.
///
/// θ is accepted on [0, π]; the closed-form analysis is phrased for [0, π/2]
/// and larger apertures are equivalent by symmetry (reports flag them via
/// [`ThetaPState::beyond_principal_range`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPState<S = f64> {
    theta: S,
    p: S,
}

impl<S: Real> ThetaPState<S> {
    pub fn new(theta: S, p: S) -> Result<Self> {
        if !(theta >= S::zero() && theta <= S::PI()) {
            return Err(Error::ParameterOutOfRange { name: "theta", value: theta.as_f64() });
        }
        if !(p >= S::zero() && p <= S::one()) {
            return Err(Error::ParameterOutOfRange { name: "p", value: p.as_f64() });
        }
        Ok(Self { theta, p })
    }

    pub fn theta(&self) -> S {
        self.theta
    }

    pub fn p(&self) -> S {
        self.p
    }

    pub fn q(&self) -> S {
        S::one() - self.p
    }

    /// True when θ > π/2, where closed forms still hold but the state is a
    /// mirrored copy of one in the principal range.
    pub fn beyond_principal_range(&self) -> bool {
        self.theta > S::FRAC_PI_2()
    }

    /// The two pure factors |+θ⟩ and |−θ⟩.
    pub fn factors(&self) -> (PureQubit<S>, PureQubit<S>) {
        (PureQubit::xz(self.theta), PureQubit::xz(-self.theta))
    }

    pub fn materialize(&self) -> DensityMatrix<S, 4> {
        make_theta_state(self)
    }
}

/// Materialize the 4×4 density matrix p·|θθ⟩⟨θθ| + q·|−θ−θ⟩⟨−θ−θ|.
/// Rank ≤ 2 and symmetric under qubit swap by construction.
pub fn make_theta_state<S: Real>(s: &ThetaPState<S>) -> DensityMatrix<S, 4> {
    let (plus, minus) = s.factors();
    let up = kron_vec(&plus.ket(), &plus.ket());
    let dn = kron_vec(&minus.ket(), &minus.ket());
    let m = &Matrix::outer(&up).scale(s.p()) + &Matrix::outer(&dn).scale(s.q());
    DensityMatrix::new_unchecked(m)
}

/// Global purity P_AB = 1 − 2pq(1 − cos⁴θ).
pub fn purity_ab<S: Real>(s: &ThetaPState<S>) -> S {
    let c = s.theta().cos();
    let c4 = c * c * c * c;
    S::one() - S::two() * s.p() * s.q() * (S::one() - c4)
}

/// The two nonzero eigenvalues λ± = ½(1 ± √(2·P_AB − 1)), descending.
pub fn eigvals_ab<S: Real>(s: &ThetaPState<S>) -> (S, S) {
    let radicand = (S::two() * purity_ab(s) - S::one()).max(S::zero());
    let r = radicand.sqrt();
    (S::half() * (S::one() + r), S::half() * (S::one() - r))
}

/// Which qubit of the pair a reduced state describes. Qubit A is the first
/// tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of a two-qubit state down to the named qubit.
pub fn reduce<S: Real>(rho: &DensityMatrix<S, 4>, keep: Subsystem) -> DensityMatrix<S, 2> {
    let m = match keep {
        Subsystem::A => crate::linalg::matrix::partial_trace_second(rho.matrix()),
        Subsystem::B => crate::linalg::matrix::partial_trace_first(rho.matrix()),
    };
    // Partial trace preserves Hermiticity, unit trace, and positivity.
    DensityMatrix::new_unchecked(m)
}

/// Local purity P_A = P_B = 1 − 2pq·sin²θ. Never below the global purity
/// (the global spectrum is majorized by the local one).
pub fn local_purity<S: Real>(s: &ThetaPState<S>) -> S {
    let sn = s.theta().sin();
    S::one() - S::two() * s.p() * s.q() * sn * sn
}

/// Closed-form Bloch vector of either reduced qubit:
/// ((p−q)·sinθ, 0, cosθ). Both qubits agree by swap symmetry.
pub fn local_bloch<S: Real>(s: &ThetaPState<S>) -> BlochVector<S> {
    BlochVector::new((s.p() - s.q()) * s.theta().sin(), S::zero(), s.theta().cos())
}

/// The canonical form of a rank-2 product mixture: the family member it is
/// locally equivalent to, plus the single-qubit rotations that bring the
/// input to that form (`rotation_a ⊗ rotation_b` conjugation).
#[derive(Debug, Clone, Copy)]
pub struct CanonicalForm<S: Real = f64> {
    pub state: ThetaPState<S>,
    pub rotation_a: Matrix<S, 2>,
    pub rotation_b: Matrix<S, 2>,
}

/// Bring the mixture p·|Ω1⟩⟨Ω1|⊗|Ω2⟩⟨Ω2| + (1−p)·|Ω1'⟩⟨Ω1'|⊗|Ω2'⟩⟨Ω2'| to
/// the canonical x–z-plane form.
///
/// Applicability requires the Bloch aperture between Ω2 and Ω2' to equal the
/// one between Ω1 and Ω1' (within 1e-9); the aperture halved is the canonical
/// θ. Each qubit's new z axis is the bisector of its two Bloch directions and
/// the new x axis lies in their span, signed so the first direction lands at
/// positive x.
pub fn canonicalize<S: Real>(
    omega1: &PureQubit<S>,
    omega2: &PureQubit<S>,
    omega1p: &PureQubit<S>,
    omega2p: &PureQubit<S>,
    p: S,
) -> Result<CanonicalForm<S>> {
    if !(p >= S::zero() && p <= S::one()) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p.as_f64() });
    }
    let n1 = to3(&omega1.bloch());
    let n1p = to3(&omega1p.bloch());
    let n2 = to3(&omega2.bloch());
    let n2p = to3(&omega2p.bloch());

    let aperture_a = angle_between(&n1, &n1p);
    let aperture_b = angle_between(&n2, &n2p);
    if (aperture_a - aperture_b).abs() > S::tol(tol::APERTURE_TOL) {
        return Err(Error::ApertureMismatch {
            expected: aperture_a.as_f64(),
            got: aperture_b.as_f64(),
        });
    }

    let theta = aperture_a * S::half();
    let state = ThetaPState::new(theta, p)?;
    let rotation_a = frame_rotation(&n1, &n1p);
    let rotation_b = frame_rotation(&n2, &n2p);
    Ok(CanonicalForm { state, rotation_a, rotation_b })
}

/// Superposition of two uniform product chains: α|θ⟩^⊗n + β|−θ⟩^⊗n
/// (unnormalized amplitudes; the overall norm must be positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateSpec<S = f64> {
    pub alpha: Complex<S>,
    pub beta: Complex<S>,
    pub theta: S,
    pub n: u32,
}

impl<S: Real> GroundStateSpec<S> {
    pub fn new(alpha: Complex<S>, beta: Complex<S>, theta: S, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParameterOutOfRange { name: "n", value: n as f64 });
        }
        let spec = Self { alpha, beta, theta, n };
        let norm = spec.norm();
        if norm <= S::zero() {
            return Err(Error::NonNormalizable { norm: norm.as_f64() });
        }
        Ok(spec)
    }

    /// ⟨GS|GS⟩ = |α|² + |β|² + 2·Re(α·β̄)·cosⁿθ, using ⟨−θ|θ⟩ = cosθ.
    pub fn norm(&self) -> S {
        let c = self.theta.cos();
        self.alpha.norm_sqr()
            + self.beta.norm_sqr()
            + S::two() * (self.alpha * self.beta.conj()).re * c.powi(self.n as i32)
    }
}

/// Exact normalized reduced state of two chain sites: the two product
/// projectors weighted by |α|²/‖·‖ and |β|²/‖·‖ plus a cross term damped by
/// cos^{n−2}θ from tracing the other n−2 sites. For n = 2 this is the pure
/// chain state itself.
pub fn gs_reduced_pair<S: Real>(g: &GroundStateSpec<S>) -> DensityMatrix<S, 4> {
    let plus = PureQubit::xz(g.theta).ket();
    let minus = PureQubit::xz(-g.theta).ket();
    let up = kron_vec(&plus, &plus);
    let dn = kron_vec(&minus, &minus);

    let c = g.theta.cos();
    let damp = c.powi(g.n as i32 - 2);
    let cross_amp = g.alpha * g.beta.conj() * damp;

    let cross = Matrix::outer_pair(&up, &dn);
    let mut m = &(&Matrix::outer(&up).scale(g.alpha.norm_sqr())
        + &Matrix::outer(&dn).scale(g.beta.norm_sqr()))
        + &(&cross.mul_scalar(cross_amp) + &cross.adjoint().mul_scalar(cross_amp.conj()));
    let inv_norm = S::one() / g.norm();
    m = m.scale(inv_norm);
    DensityMatrix::new_unchecked(m)
}

// --- small real 3-vector helpers for the canonical frames ---

fn to3<S: Real>(b: &BlochVector<S>) -> [S; 3] {
    [b.x, b.y, b.z]
}

fn dot3<S: Real>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3<S: Real>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3<S: Real>(a: &[S; 3]) -> S {
    dot3(a, a).sqrt()
}

fn normalize3<S: Real>(a: &[S; 3]) -> [S; 3] {
    let n = norm3(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

fn angle_between<S: Real>(a: &[S; 3], b: &[S; 3]) -> S {
    dot3(a, b).max(-S::one()).min(S::one()).acos()
}

/// SU(2) rotation sending the Bloch frame spanned by directions n and n' to
/// the canonical one: z along their bisector, x in their span with n·x > 0.
fn frame_rotation<S: Real>(n: &[S; 3], np: &[S; 3]) -> Matrix<S, 2> {
    let degenerate = S::of(1e-7);
    let sum = [n[0] + np[0], n[1] + np[1], n[2] + np[2]];

    let (z_new, x_new);
    if norm3(&sum) < degenerate {
        // Antipodal pair (aperture π): the bisector vanishes; any axis
        // orthogonal to n serves as z. Pick deterministically from the world
        // axis least aligned with n.
        let seed = if n[2].abs() < S::of(0.9) {
            [S::zero(), S::zero(), S::one()]
        } else {
            [S::one(), S::zero(), S::zero()]
        };
        let proj = dot3(&seed, n);
        z_new = normalize3(&[
            seed[0] - proj * n[0],
            seed[1] - proj * n[1],
            seed[2] - proj * n[2],
        ]);
        x_new = *n;
    } else {
        let z = normalize3(&sum);
        let proj = dot3(n, &z);
        let perp = [n[0] - proj * z[0], n[1] - proj * z[1], n[2] - proj * z[2]];
        if norm3(&perp) < degenerate {
            // Zero aperture: n ≈ n' ≈ z; x is free, pick one orthogonal.
            let seed = if z[2].abs() < S::of(0.9) {
                [S::zero(), S::zero(), S::one()]
            } else {
                [S::one(), S::zero(), S::zero()]
            };
            let p2 = dot3(&seed, &z);
            x_new = normalize3(&[
                seed[0] - p2 * z[0],
                seed[1] - p2 * z[1],
                seed[2] - p2 * z[2],
            ]);
        } else {
            x_new = normalize3(&perp);
        }
        z_new = z;
    }
    let y_new = cross3(&z_new, &x_new);
    // Rows of the (passive) rotation are the new axes expressed in world
    // coordinates; as an active map it sends n to (sin θ, 0, cos θ).
    let r = [x_new, y_new, z_new];
    su2_from_so3(&r)
}

/// Lift R ∈ SO(3) to U ∈ SU(2) with bloch(U ρ U†) = R·bloch(ρ)
/// (Shepperd's quaternion extraction, branch chosen for stability).
fn su2_from_so3<S: Real>(r: &[[S; 3]; 3]) -> Matrix<S, 2> {
    let t = r[0][0] + r[1][1] + r[2][2];
    let quarter = S::of(0.25);
    let (w, x, y, z);
    if t > S::zero() {
        let s = (S::one() + t).sqrt() * S::two(); // 4w
        w = quarter * s;
        x = (r[2][1] - r[1][2]) / s;
        y = (r[0][2] - r[2][0]) / s;
        z = (r[1][0] - r[0][1]) / s;
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let s = (S::one() + r[0][0] - r[1][1] - r[2][2]).sqrt() * S::two(); // 4x
        w = (r[2][1] - r[1][2]) / s;
        x = quarter * s;
        y = (r[0][1] + r[1][0]) / s;
        z = (r[0][2] + r[2][0]) / s;
    } else if r[1][1] >= r[2][2] {
        let s = (S::one() - r[0][0] + r[1][1] - r[2][2]).sqrt() * S::two(); // 4y
        w = (r[0][2] - r[2][0]) / s;
        x = (r[0][1] + r[1][0]) / s;
        y = quarter * s;
        z = (r[1][2] + r[2][1]) / s;
    } else {
        let s = (S::one() - r[0][0] - r[1][1] + r[2][2]).sqrt() * S::two(); // 4z
        w = (r[1][0] - r[0][1]) / s;
        x = (r[0][2] + r[2][0]) / s;
        y = (r[1][2] + r[2][1]) / s;
        z = quarter * s;
    }
    // U = w·I − i(x σx + y σy + z σz)
    Matrix::from_rows([
        [Complex::new(w, -z), Complex::new(-y, -x)],
        [Complex::new(y, -x), Complex::new(w, z)],
    ])
}
