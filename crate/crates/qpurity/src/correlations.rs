//! Scalar correlation measures of the family state and their optimizers:
//! measurement-averaged conditional purity, quantum discord, concurrence of
//! the pure-state dilation, post-measurement global purity and the
//! information deficits built on it, the correlation tensor, and the
//! eigenvalue-equation formulation of the optimal measurement directions.

use crate::linalg::bloch::BlochVector;
use crate::linalg::eigen::eigen_hermitian;
use crate::linalg::entropy::{binary_entropy, vn_entropy_from_purity_rank2};
use crate::linalg::matrix::{kron, DensityMatrix, Matrix};
use crate::measurement::{conditional_state, projectors, MeasurementSetting, Outcome};
use crate::scalar::Real;
use crate::states::{local_bloch, local_purity, purity_ab, ThetaPState};

/// The aperture arccos(1/√3) ≈ 0.3041π where, at p = q, the deficit-optimal
/// measurement angle jumps from 0 to π/2.
pub fn theta_c<S: Real>() -> S {
    (S::one() / S::of(3.0).sqrt()).acos()
}

/// The anisotropy factor γ(φ) = [p·sin²(θ−φ) + q·sin²(θ+φ)] / (1 − w²) with
/// w = p·cos(θ−φ) + q·cos(θ+φ). Equals 1 at φ ∈ {0, π} and cos²θ at the
/// purity-optimal angle.
fn gamma<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let w = p * (theta - phi).cos() + q * (theta + phi).cos();
    let den = S::one() - w * w;
    if den < S::tol(1e-14) {
        // Reachable only for degenerate families (θ ∈ {0,π} or pq = 0),
        // where the limit of γ is 1.
        return S::one();
    }
    let num = p * (theta - phi).sin().powi(2) + q * (theta + phi).sin().powi(2);
    num / den
}

/// r₊·P_{A/B+} + r₋·P_{A/B−} = 1 − 2pq·γ(φ)·sin²θ: the purity of qubit A's
/// conditional state averaged over the outcomes at angle φ. Never below the
/// unmeasured local purity. At φ ∈ {0, π} the measurement reveals nothing
/// about A and the value is exactly the local purity.
pub fn avg_conditional_purity<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    let phi = crate::measurement::normalize_phi(phi);
    if phi == S::zero() || phi == S::PI() {
        return local_purity(s);
    }
    let sn = s.theta().sin();
    S::one() - S::two() * s.p() * s.q() * gamma(s, phi) * sn * sn
}

/// Measurement-dependent quadratic conditional entropy
/// S₂(A/B_φ) = 2(1 − avg_conditional_purity) = 4pq·γ·sin²θ.
pub fn s2_conditional_entropy<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    S::two() * (S::one() - avg_conditional_purity(s, phi))
}

/// An optimizer result: the extremal angle, plus a flag set when the family
/// is degenerate there (θ ∈ {0, π} or pq = 0) and the reported angle is a
/// convention rather than a unique optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalAngle<S = f64> {
    pub phi: S,
    pub degenerate: bool,
}

/// The angle maximizing the average conditional purity:
/// tan φ* = tan θ / (p − q), i.e. φ* = atan2(sin θ, (p−q)·cos θ) ∈ (0, π).
/// At p = q this is π/2 for every θ (a measurement along x). Degenerate
/// families return φ = 0 with the flag set (every angle is optimal there).
pub fn optimal_phi_conditional<S: Real>(s: &ThetaPState<S>) -> OptimalAngle<S> {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    if theta == S::zero() || theta == S::PI() || p * q == S::zero() {
        return OptimalAngle { phi: S::zero(), degenerate: true };
    }
    OptimalAngle { phi: theta.sin().atan2((p - q) * theta.cos()), degenerate: false }
}

/// The maximum average conditional purity, in closed form:
/// P_{A/B} = 1 − 2pq·sin²θ·cos²θ. Minimal over θ at π/4 for fixed p.
pub fn max_avg_conditional_purity<S: Real>(s: &ThetaPState<S>) -> S {
    let (sn, cs) = (s.theta().sin(), s.theta().cos());
    S::one() - S::two() * s.p() * s.q() * sn * sn * cs * cs
}

/// Concurrence between qubit A and a purifying third party C in the natural
/// pure-state dilation: C_AC = √(pq)·|sin 2θ|. Its square equals the minimum
/// of the quadratic conditional entropy over φ.
pub fn concurrence_ac<S: Real>(s: &ThetaPState<S>) -> S {
    (s.p() * s.q()).sqrt() * (S::two() * s.theta()).sin().abs()
}

/// S(A/B) = S(AB) − S(B): the von Neumann conditional entropy (bits),
/// computed from the rank-2 purities.
pub fn vn_conditional_entropy<S: Real>(s: &ThetaPState<S>) -> S {
    vn_entropy_from_purity_rank2(purity_ab(s)) - vn_entropy_from_purity_rank2(local_purity(s))
}

/// Measurement-dependent discord (bits): the average post-measurement
/// entropy of A minus the unmeasured conditional entropy,
/// D(A/B_φ) = Σ r_o·S(ρ_{A/B,o}) − [S(AB) − S(B)].
/// Outcomes with vanishing probability contribute zero weight.
pub fn discord_phi<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    let mut avg_entropy = S::zero();
    for outcome in Outcome::BOTH {
        if let Ok(out) = conditional_state(s, phi, outcome) {
            avg_entropy = avg_entropy + out.r * vn_entropy_from_purity_rank2(out.purity);
        }
    }
    avg_entropy - vn_conditional_entropy(s)
}

/// Quantum discord in closed form, with its minimizing measurement angle:
/// D = H₂(f₊) − [S(AB) − S(B)] where f± = (1 ± √(2·P_{A/B} − 1))/2 are the
/// conditional eigenvalues at the purity-optimal angle — the same angle
/// minimizes the discord.
pub fn discord<S: Real>(s: &ThetaPState<S>) -> (S, S) {
    let p_cond = max_avg_conditional_purity(s);
    let radicand = (S::two() * p_cond - S::one()).max(S::zero());
    let f_plus = S::half() * (S::one() + radicand.sqrt());
    let value = binary_entropy(f_plus) - vn_conditional_entropy(s);
    (value.max(S::zero()), optimal_phi_conditional(s).phi)
}

/// The average global state after an unread measurement at angle φ on B:
/// ρ' = r₊·ρ_{A/B+} ⊗ Π₊ + r₋·ρ_{A/B−} ⊗ Π₋ (block-diagonal in the
/// measurement basis). Zero-probability outcomes contribute nothing.
pub fn post_measurement_global_state<S: Real>(
    s: &ThetaPState<S>,
    phi: S,
) -> DensityMatrix<S, 4> {
    let (proj_plus, proj_minus) =
        projectors(&MeasurementSetting::xz(phi)).expect("xz setting is always unit");
    let mut m = Matrix::zero();
    for (outcome, proj) in [(Outcome::Plus, proj_plus), (Outcome::Minus, proj_minus)] {
        if let Ok(out) = conditional_state(s, phi, outcome) {
            m = &m + &kron(out.state.matrix(), &proj).scale(out.r);
        }
    }
    DensityMatrix::new_unchecked(m)
}

/// Global purity after the unread measurement, from its definition
/// P'_AB = r₊²·P_{A/B+} + r₋²·P_{A/B−} (the cross blocks of ρ' vanish).
pub fn global_post_purity<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    let mut acc = S::zero();
    for outcome in Outcome::BOTH {
        if let Ok(out) = conditional_state(s, phi, outcome) {
            acc = acc + out.r * out.r * out.purity;
        }
    }
    acc
}

/// Algebraic closed form of the same quantity,
/// P'_AB = ½[1 + w²] − pq·sin²θ·(1 + cos(θ+φ)·cos(θ−φ)),
/// w = p·cos(θ−φ) + q·cos(θ+φ); kept as an independently derived
/// cross-check of [`global_post_purity`] (the two agree to 1e-12).
pub fn global_post_purity_closed_form<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let w = p * (theta - phi).cos() + q * (theta + phi).cos();
    let sn = theta.sin();
    S::half() * (S::one() + w * w)
        - p * q * sn * sn * (S::one() + (theta + phi).cos() * (theta - phi).cos())
}

/// Quadratic information deficit I₂(φ) = 2(P_AB − P'_AB(φ)) ≥ 0: the loss of
/// global quadratic purity caused by the unread measurement.
pub fn info_deficit_phi<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    S::two() * (purity_ab(s) - global_post_purity(s, phi))
}

/// Rényi-2 information deficit I₂^R(φ) = −log₂(P'_AB/P_AB) ≥ 0.
pub fn renyi_deficit_phi<S: Real>(s: &ThetaPState<S>, phi: S) -> S {
    -(global_post_purity(s, phi) / purity_ab(s)).log2()
}

/// The angle maximizing the post-measurement global purity (equivalently
/// minimizing both deficits). Stationary angles satisfy
/// tan 2φ = (p−q)·sin 2θ / [pq + (1−pq)·cos 2θ]; the two stationary
/// candidates in [0, π) are compared on P'_AB and the maximizer returned
/// (ties break to the smaller angle — at p = q this realizes the sharp
/// 0 → π/2 transition at θ = arccos(1/√3)).
pub fn optimal_phi_deficit<S: Real>(s: &ThetaPState<S>) -> OptimalAngle<S> {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let degenerate = theta == S::zero() || theta == S::PI() || p * q == S::zero();
    let pq = p * q;
    let two_theta = S::two() * theta;
    let alpha = ((p - q) * two_theta.sin())
        .atan2(pq + (S::one() - pq) * two_theta.cos());
    let base = alpha * S::half();
    let mut candidates = [base, base + S::FRAC_PI_2()];
    for c in candidates.iter_mut() {
        // Fold into [0, π): φ and φ+π label the same measurement.
        while *c < S::zero() {
            *c = *c + S::PI();
        }
        while *c >= S::PI() {
            *c = *c - S::PI();
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
    let (lo, hi) = (candidates[0], candidates[1]);
    let phi = if global_post_purity(s, hi) > global_post_purity(s, lo) + S::tol(1e-15) {
        hi
    } else {
        lo
    };
    OptimalAngle { phi, degenerate }
}

/// The minimum quadratic deficit min_φ I₂(φ), attained at
/// [`optimal_phi_deficit`]; proportional to the geometric discord.
pub fn geometric_deficit<S: Real>(s: &ThetaPState<S>) -> S {
    info_deficit_phi(s, optimal_phi_deficit(s).phi)
}

/// The Pauli correlation data of a family state: raw two-point expectations
/// J_{μν} = ⟨σ_μ ⊗ σ_ν⟩, centered correlations C = J − r_A·r_Bᵀ (a single
/// nonzero entry C_xx = 4pq·sin²θ), the local Bloch vectors, and
/// N_B = 1 − r_B·r_Bᵀ.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationTensor<S: Real = f64> {
    pub c: [[S; 3]; 3],
    pub j: [[S; 3]; 3],
    pub r_a: BlochVector<S>,
    pub r_b: BlochVector<S>,
    pub n_b: [[S; 3]; 3],
}

/// Closed-form correlation tensor of a family state.
pub fn correlation_tensor<S: Real>(s: &ThetaPState<S>) -> CorrelationTensor<S> {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let sn = theta.sin();
    let z = S::zero();

    let mut c = [[z; 3]; 3];
    c[0][0] = S::of(4.0) * p * q * sn * sn;

    let r = local_bloch(s);
    let rv = [r.x, r.y, r.z];
    let mut j = c;
    let mut n_b = [[z; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            j[i][k] = j[i][k] + rv[i] * rv[k];
            n_b[i][k] = if i == k { S::one() } else { z } - rv[i] * rv[k];
        }
    }
    // J in closed form: J_xx = sin²θ, J_xz = J_zx = (p−q)·sinθ·cosθ,
    // J_zz = cos²θ, rest zero — the construction above reproduces it since
    // 4pq·sin²θ + (p−q)²·sin²θ = sin²θ.
    CorrelationTensor { c, j, r_a: r, r_b: r, n_b }
}

/// Which optimizer an eigen-direction should reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    /// Maximal average conditional purity: generalized problem
    /// Cᵀ C k = λ N_B k.
    Conditional,
    /// Maximal post-measurement global purity: standard problem
    /// (Jᵀ J + r_B r_Bᵀ) k = λ k.
    Deficit,
}

/// Solve the optimal-direction eigenproblem and return the top direction
/// (oriented into the x ≥ 0 half of the xz plane) and its eigenvalue. The
/// direction's polar angle reproduces the closed-form optimal φ of the
/// corresponding optimizer.
pub fn optimal_direction_eigen<S: Real>(
    s: &ThetaPState<S>,
    kind: EigenKind,
) -> (BlochVector<S>, S) {
    let t = correlation_tensor(s);
    match kind {
        EigenKind::Conditional => {
            // Whiten: with W = N_B^{−1/2}, solve W Cᵀ C W u = λ u, k ∝ W u.
            let w = inv_sqrt_sym3(&t.n_b);
            let m = mat3_mul(&mat3_mul(&w, &mat3_mul(&mat3_t(&t.c), &t.c)), &w);
            let (lam, u) = top_eigen_sym3(&m);
            (orient(normalize3(&mat3_apply(&w, &u))), lam)
        }
        EigenKind::Deficit => {
            let rv = [t.r_b.x, t.r_b.y, t.r_b.z];
            let mut m = mat3_mul(&mat3_t(&t.j), &t.j);
            for i in 0..3 {
                for k in 0..3 {
                    m[i][k] = m[i][k] + rv[i] * rv[k];
                }
            }
            let (lam, u) = top_eigen_sym3(&m);
            (orient(normalize3(&u)), lam)
        }
    }
}

/// The polar angle in the xz plane of an oriented direction, in [0, π).
pub fn direction_angle<S: Real>(k: &BlochVector<S>) -> S {
    let mut a = k.x.atan2(k.z);
    if a < S::zero() {
        a = a + S::PI();
    } else if a >= S::PI() {
        a = a - S::PI();
    }
    a
}

/// Every scalar measure of one family state, in one record.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationReport<S: Real = f64> {
    pub theta: S,
    pub p: S,
    /// Global purity P_AB.
    pub p_ab: S,
    /// Local purity P_B (= P_A).
    pub p_b: S,
    /// Maximal average conditional purity P_{A/B}.
    pub p_cond_max: S,
    /// Angle attaining it.
    pub phi_star_cond: S,
    /// Quantum discord (bits).
    pub discord: S,
    /// Von Neumann entropy of the global state (bits).
    pub s_ab_vn: S,
    /// Von Neumann entropy of either reduced qubit (bits).
    pub s_b_vn: S,
    /// Conditional entropy S(AB) − S(B) (bits).
    pub s_cond_vn: S,
    /// Concurrence with the purifying third party.
    pub concurrence_ac: S,
    /// Minimal quadratic information deficit.
    pub i2_min: S,
    /// Angle attaining it.
    pub phi_star_deficit: S,
    /// Minimal Rényi-2 deficit (bits).
    pub i2_renyi_min: S,
    /// Whether θ exceeds the deficit transition aperture arccos(1/√3).
    pub theta_c_flag: bool,
    /// Whether the optimizer angles are conventions (degenerate family).
    pub degenerate: bool,
}

/// Evaluate all closed-form measures of a family state.
pub fn correlation_report<S: Real>(s: &ThetaPState<S>) -> CorrelationReport<S> {
    let cond = optimal_phi_conditional(s);
    let deficit = optimal_phi_deficit(s);
    let (d_value, _) = discord(s);
    CorrelationReport {
        theta: s.theta(),
        p: s.p(),
        p_ab: purity_ab(s),
        p_b: local_purity(s),
        p_cond_max: max_avg_conditional_purity(s),
        phi_star_cond: cond.phi,
        discord: d_value,
        s_ab_vn: vn_entropy_from_purity_rank2(purity_ab(s)),
        s_b_vn: vn_entropy_from_purity_rank2(local_purity(s)),
        s_cond_vn: vn_conditional_entropy(s),
        concurrence_ac: concurrence_ac(s),
        i2_min: geometric_deficit(s),
        phi_star_deficit: deficit.phi,
        i2_renyi_min: renyi_deficit_phi(s, deficit.phi),
        theta_c_flag: s.theta() > theta_c(),
        degenerate: cond.degenerate || deficit.degenerate,
    }
}

// --- small real 3×3 helpers (kept local: the public kernel is complex) ---

fn mat3_t<S: Real>(a: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

fn mat3_mul<S: Real>(a: &[[S; 3]; 3], b: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let mut out = [[S::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat3_apply<S: Real>(a: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    let mut out = [S::zero(); 3];
    for i in 0..3 {
        for k in 0..3 {
            out[i] = out[i] + a[i][k] * v[k];
        }
    }
    out
}

fn normalize3<S: Real>(v: &[S; 3]) -> [S; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Embed a real symmetric 3×3 into the complex Hermitian solver and return
/// eigenvalues (descending) with real eigenvector columns.
fn eigen_sym3<S: Real>(a: &[[S; 3]; 3]) -> ([S; 3], [[S; 3]; 3]) {
    let mut m = Matrix::<S, 3>::zero();
    for i in 0..3 {
        for j in 0..3 {
            m.e[i][j] = num_complex::Complex::new(a[i][j], S::zero());
        }
    }
    let (vals, vecs) = eigen_hermitian(&m).expect("symmetric by construction");
    let mut cols = [[S::zero(); 3]; 3];
    for c in 0..3 {
        for r in 0..3 {
            cols[c][r] = vecs.e[r][c].re;
        }
    }
    (vals, cols)
}

fn top_eigen_sym3<S: Real>(a: &[[S; 3]; 3]) -> (S, [S; 3]) {
    let (vals, cols) = eigen_sym3(a);
    (vals[0], cols[0])
}

/// N^{−1/2} for a symmetric PSD matrix, eigenvalues clamped away from zero.
fn inv_sqrt_sym3<S: Real>(a: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let (vals, cols) = eigen_sym3(a);
    let mut out = [[S::zero(); 3]; 3];
    for k in 0..3 {
        let lam = vals[k].max(S::tol(1e-14));
        let w = S::one() / lam.sqrt();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = out[i][j] + w * cols[k][i] * cols[k][j];
            }
        }
    }
    out
}

/// Fix the eigenvector sign freedom: point into the x ≥ 0 half plane
/// (z ≥ 0 when x vanishes).
fn orient<S: Real>(v: [S; 3]) -> BlochVector<S> {
    let flip = v[0] < S::zero() || (v[0] == S::zero() && v[2] < S::zero());
    if flip {
        BlochVector::new(-v[0], -v[1], -v[2])
    } else {
        BlochVector::new(v[0], v[1], v[2])
    }
}
