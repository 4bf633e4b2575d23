//! Projective measurement on qubit B and the conditional description of
//! qubit A it induces: outcome probabilities, conditional mixtures and their
//! purities, and the measurement angles with special conditional behavior
//! (purifying, equilibrating, probability-extremal).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::bloch::BlochVector;
use crate::linalg::matrix::{DensityMatrix, Matrix};
use crate::scalar::Real;
use crate::states::ThetaPState;
use crate::tol;

/// Measurement direction on the Bloch sphere: either an angle φ in the x–z
/// plane (the plane containing the state family) or a general unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasurementSetting<S = f64> {
    /// Direction (sin φ, 0, cos φ).
    XzAngle { phi: S },
    /// Arbitrary direction; must be unit length within 1e-12.
    BlochDirection { k: BlochVector<S> },
}

impl<S: Real> MeasurementSetting<S> {
    pub fn xz(phi: S) -> Self {
        Self::XzAngle { phi }
    }

    /// The measurement direction as a validated unit vector.
    pub fn direction(&self) -> Result<BlochVector<S>> {
        match self {
            Self::XzAngle { phi } => Ok(BlochVector::xz_direction(*phi)),
            Self::BlochDirection { k } => {
                let n = k.norm();
                if (n - S::one()).abs() > S::tol(1e-12) {
                    return Err(Error::NonUnitDirection { norm: n.as_f64() });
                }
                Ok(*k)
            }
        }
    }
}

/// A projective measurement outcome label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign<S: Real>(&self) -> S {
        match self {
            Outcome::Plus => S::one(),
            Outcome::Minus => -S::one(),
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }

    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];
}

/// Wrap an angle into (−π, π]. Zero maps to zero exactly.
pub fn normalize_phi<S: Real>(phi: S) -> S {
    let two_pi = S::two() * S::PI();
    let mut w = phi % two_pi;
    if w > S::PI() {
        w = w - two_pi;
    } else if w <= -S::PI() {
        w = w + two_pi;
    }
    w
}

/// Orthogonal rank-1 projectors Π± = ½(1 ± k·σ) for the given setting.
pub fn projectors<S: Real>(m: &MeasurementSetting<S>) -> Result<(Matrix<S, 2>, Matrix<S, 2>)> {
    let k = m.direction()?;
    let half = S::half();
    let mk = |sign: S| {
        Matrix::from_rows([
            [
                Complex::new(half * (S::one() + sign * k.z), S::zero()),
                Complex::new(half * sign * k.x, -half * sign * k.y),
            ],
            [
                Complex::new(half * sign * k.x, half * sign * k.y),
                Complex::new(half * (S::one() - sign * k.z), S::zero()),
            ],
        ])
    };
    Ok((mk(S::one()), mk(-S::one())))
}

/// Closed-form outcome probabilities for a measurement at angle φ on qubit B:
/// r± = ½[1 ± p·cos(φ−θ) ± q·cos(φ+θ)].
pub fn outcome_probabilities<S: Real>(s: &ThetaPState<S>, phi: S) -> (S, S) {
    let phi = normalize_phi(phi);
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let half = S::half();
    let a = p * (phi - theta).cos() + q * (phi + theta).cos();
    (half * (S::one() + a), half * (S::one() - a))
}

/// The conditional description of qubit A after outcome ± at angle φ on
/// qubit B: the outcome probability, the conditional state (always a mixture
/// of the same two pure factors with a shifted weight), its weight, and its
/// purity.
#[derive(Debug, Clone)]
pub struct ConditionalOutcome<S: Real = f64> {
    pub outcome: Outcome,
    /// Probability r± of this outcome.
    pub r: S,
    /// Conditional state p'|θ⟩⟨θ| + (1−p')|−θ⟩⟨−θ| of qubit A.
    pub state: DensityMatrix<S, 2>,
    /// The shifted mixing weight p'.
    pub p_prime: S,
    /// 1 − 2p'q'·sin²θ.
    pub purity: S,
}

/// The shifted weight p'± = p·a±/r± with a± = [1 ± cos(θ−φ)]/2 and
/// r± = p·a± + q·b±, b± = [1 ± cos(θ+φ)]/2.
///
/// Returns (r, p'). At φ ∈ {0, π} the weight is returned as exactly p
/// (there a± = b±, so the quotient is identically p and should not pick up
/// rounding noise). A vanishing r (≤ 1e-12) is a conditioning error.
fn conditional_weight<S: Real>(s: &ThetaPState<S>, phi: S, outcome: Outcome) -> Result<(S, S)> {
    let phi = normalize_phi(phi);
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let sign: S = outcome.sign();
    let half = S::half();
    let a = half * (S::one() + sign * (theta - phi).cos());
    let b = half * (S::one() + sign * (theta + phi).cos());
    let r = p * a + q * b;
    if r <= S::tol(tol::PROB_TOL) {
        return Err(Error::ZeroProbabilityOutcome {
            outcome: outcome.symbol(),
            prob: r.as_f64(),
        });
    }
    let p_prime = if phi == S::zero() || phi == S::PI() {
        p
    } else {
        p * a / r
    };
    Ok((r, p_prime))
}

/// Full conditional outcome record; errors when the outcome has probability
/// below 1e-12 (the conditional state is then undefined).
pub fn conditional_state<S: Real>(
    s: &ThetaPState<S>,
    phi: S,
    outcome: Outcome,
) -> Result<ConditionalOutcome<S>> {
    let (r, p_prime) = conditional_weight(s, phi, outcome)?;
    let q_prime = S::one() - p_prime;
    let (plus, minus) = s.factors();
    let m = &plus.projector().scale(p_prime) + &minus.projector().scale(q_prime);
    let sn = s.theta().sin();
    Ok(ConditionalOutcome {
        outcome,
        r,
        state: DensityMatrix::new_unchecked(m),
        p_prime,
        purity: S::one() - S::two() * p_prime * q_prime * sn * sn,
    })
}

/// Conditional purity 1 − 2p'q'·sin²θ without materializing the state.
/// Always within [1 − ½sin²θ, 1].
pub fn conditional_purity<S: Real>(s: &ThetaPState<S>, phi: S, outcome: Outcome) -> Result<S> {
    let (_, p_prime) = conditional_weight(s, phi, outcome)?;
    let sn = s.theta().sin();
    Ok(S::one() - S::two() * p_prime * (S::one() - p_prime) * sn * sn)
}

/// An angle where one outcome projects qubit A onto a pure factor:
/// p' reaches 0 (state |−θ⟩) or 1 (state |+θ⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurifyingAngle<S = f64> {
    pub phi: S,
    pub outcome: Outcome,
    /// The attained weight, exactly 0 or 1.
    pub p_prime: S,
}

/// An angle where one outcome balances the mixture: p' = ½, the conditional
/// purity floor 1 − ½sin²θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibratingRoot<S = f64> {
    pub phi: S,
    pub outcome: Outcome,
}

/// The special measurement angles of a family state.
#[derive(Debug, Clone)]
pub struct SpecialAngles<S: Real = f64> {
    /// φ ∈ {θ, −θ, π−θ, θ−π}: one outcome leaves A in a pure factor.
    pub purifying: Vec<PurifyingAngle<S>>,
    /// Solutions of tan φ = (p−q)·sinθ / (cosθ ± 2√(pq)); at each root one
    /// outcome's conditional weight equals ½. For p ≥ q the positive roots
    /// balance the − outcome and the non-positive ones the + outcome; for
    /// p < q the association mirrors, so each root carries the outcome it
    /// actually balances.
    pub equilibrating: Vec<EquilibratingRoot<S>>,
    /// The angle extremizing r₊: tan φ = (p−q)·tanθ.
    pub prob_extremum: S,
    /// Set when θ ∈ {0, π} or pq = 0; the angle sets are then empty (every
    /// conditional state is the same) and prob_extremum defaults to 0.
    pub degenerate: bool,
}

/// Compute all special angles. In the degenerate regime (θ ∈ {0, π} or a
/// pure mixture weight) the purifying/equilibrating sets are empty and the
/// record is flagged.
pub fn special_angles<S: Real>(s: &ThetaPState<S>) -> SpecialAngles<S> {
    let (theta, p, q) = (s.theta(), s.p(), s.q());
    let pq = p * q;
    if theta == S::zero() || theta == S::PI() || pq == S::zero() {
        return SpecialAngles {
            purifying: Vec::new(),
            equilibrating: Vec::new(),
            prob_extremum: S::zero(),
            degenerate: true,
        };
    }

    let one = S::one();
    let purifying = vec![
        PurifyingAngle { phi: theta, outcome: Outcome::Minus, p_prime: S::zero() },
        PurifyingAngle { phi: -theta, outcome: Outcome::Minus, p_prime: one },
        PurifyingAngle { phi: S::PI() - theta, outcome: Outcome::Plus, p_prime: one },
        PurifyingAngle { phi: theta - S::PI(), outcome: Outcome::Plus, p_prime: S::zero() },
    ];

    let mut equilibrating: Vec<EquilibratingRoot<S>> = Vec::with_capacity(4);
    let num = (p - q) * theta.sin();
    let two_root_pq = S::two() * pq.sqrt();
    for den in [theta.cos() + two_root_pq, theta.cos() - two_root_pq] {
        let base = num.atan2(den);
        let partner = if base > S::zero() { base - S::PI() } else { base + S::PI() };
        for phi in [base, partner] {
            // Each root balances exactly one outcome; which one depends on
            // the ordering of p and q, so decide by evaluating the weights
            // instead of a sign convention. At p = q both outcomes balance
            // and the root keeps the φ > 0 ↦ − association.
            let outcome = match Outcome::BOTH.map(|o| {
                conditional_weight(s, phi, o)
                    .map(|(_, p_prime)| (p_prime - S::half()).abs() < S::tol(1e-8))
                    .unwrap_or(false)
            }) {
                [true, false] => Outcome::Plus,
                [false, true] => Outcome::Minus,
                _ => {
                    if phi > S::zero() {
                        Outcome::Minus
                    } else {
                        Outcome::Plus
                    }
                }
            };
            let dup = equilibrating
                .iter()
                .any(|r| r.outcome == outcome && (r.phi - phi).abs() < S::tol(1e-12));
            if !dup {
                equilibrating.push(EquilibratingRoot { phi, outcome });
            }
        }
    }

    SpecialAngles {
        purifying,
        equilibrating,
        prob_extremum: ((p - q) * theta.sin()).atan2(theta.cos()),
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::kron;
    use crate::states::{local_bloch, make_theta_state, reduce, PureQubit, Subsystem};

    const PI: f64 = std::f64::consts::PI;

    fn tp(theta: f64, p: f64) -> ThetaPState<f64> {
        ThetaPState::new(theta, p).unwrap()
    }

    #[test]
    fn projectors_along_z() {
        let (pp, pm) = projectors(&MeasurementSetting::<f64>::xz(0.0)).unwrap();
        assert!((pp.e[0][0].re - 1.0).abs() < 1e-15 && pp.e[1][1].re.abs() < 1e-15);
        assert!((pm.e[1][1].re - 1.0).abs() < 1e-15 && pm.e[0][0].re.abs() < 1e-15);
    }

    #[test]
    fn projectors_along_x_and_tilted() {
        let (pp, pm) = projectors(&MeasurementSetting::xz(PI / 2.0)).unwrap();
        for m in [&pp, &pm] {
            assert!((m.e[0][0].re - 0.5).abs() < 1e-15);
        }
        assert!((pp.e[0][1].re - 0.5).abs() < 1e-15);
        assert!((pm.e[0][1].re + 0.5).abs() < 1e-15);

        // φ=π/3: Π₊ = |φ⟩⟨φ| with ⟨0|φ⟩ = cos(π/6).
        let (pp, pm) = projectors(&MeasurementSetting::xz(PI / 3.0)).unwrap();
        assert!((pp.e[0][0].re - (PI / 6.0).cos().powi(2)).abs() < 1e-15);
        // Idempotent, orthogonal, complete.
        assert!((&(&pp * &pp) - &pp).norm() < 1e-15);
        assert!((&pp * &pm).norm() < 1e-15);
        assert!((&(&pp + &pm) - &Matrix::identity()).norm() < 1e-15);
    }

    #[test]
    fn general_direction_validated() {
        let bad = MeasurementSetting::BlochDirection { k: BlochVector::new(0.5, 0.5, 0.5) };
        assert!(matches!(projectors(&bad), Err(Error::NonUnitDirection { .. })));
        let ok = MeasurementSetting::BlochDirection {
            k: BlochVector::<f64>::new(0.0, 1.0, 0.0),
        };
        let (pp, _) = projectors(&ok).unwrap();
        assert!((pp.e[0][1].im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn probabilities_closed_form_and_trace_agree() {
        let s = tp(PI / 3.0, 0.5);
        let (rp, rm) = outcome_probabilities(&s, 0.0);
        assert!((rp - 0.75).abs() < 1e-15 && (rm - 0.25).abs() < 1e-15);

        let (rp, rm) = outcome_probabilities(&s, PI / 3.0);
        assert!((rp - 0.625).abs() < 1e-15);
        // r₋ = q·sin²θ at the purifying angle.
        assert!((rm - 0.5 * (PI / 3.0).sin().powi(2)).abs() < 1e-15);

        // Cross-check against Tr(ρ·(1⊗Π±)) on a non-symmetric point.
        let s2 = tp(1.1, 0.73);
        let rho = make_theta_state(&s2);
        let (pp, pm) = projectors(&MeasurementSetting::xz(0.9)).unwrap();
        let (rp2, rm2) = outcome_probabilities(&s2, 0.9);
        let tr_p = (rho.matrix() * &kron(&Matrix::identity(), &pp)).trace().re;
        let tr_m = (rho.matrix() * &kron(&Matrix::identity(), &pm)).trace().re;
        assert!((rp2 - tr_p).abs() < 1e-12);
        assert!((rm2 - tr_m).abs() < 1e-12);
    }

    #[test]
    fn probabilities_swap_under_phi_shift_by_pi() {
        let s = tp(0.8, 0.3);
        let (rp, rm) = outcome_probabilities(&s, 0.45);
        let (rp2, rm2) = outcome_probabilities(&s, 0.45 + PI);
        assert!((rp - rm2).abs() < 1e-12 && (rm - rp2).abs() < 1e-12);
    }

    #[test]
    fn phi_zero_conditions_to_marginal_exactly() {
        for p in [0.1, 0.3, 0.5, 0.62, 0.97] {
            let s = tp(PI / 3.0, p);
            for outcome in Outcome::BOTH {
                let out = conditional_state(&s, 0.0, outcome).unwrap();
                assert_eq!(out.p_prime, p, "p' must equal p bit-for-bit at φ=0");
                let rho_a = reduce(&make_theta_state(&s), Subsystem::A);
                assert!((out.state.matrix() - rho_a.matrix()).norm() < 1e-12);
            }
            let out_pi = conditional_state(&s, PI, Outcome::Plus).unwrap();
            assert_eq!(out_pi.p_prime, p);
        }
    }

    #[test]
    fn purifying_angle_yields_pure_factor() {
        let s = tp(PI / 3.0, 0.5);
        let out = conditional_state(&s, PI / 3.0, Outcome::Minus).unwrap();
        assert_eq!(out.p_prime, 0.0);
        assert!((out.purity - 1.0).abs() < 1e-15);
        let target = PureQubit::xz(-PI / 3.0).projector();
        assert!((out.state.matrix() - &target).norm() < 1e-14);
        // r₋ = q·sin²θ there.
        assert!((out.r - 0.375).abs() < 1e-15);
    }

    #[test]
    fn all_four_purifying_angles() {
        let s = tp(0.95, 0.68);
        for ang in special_angles(&s).purifying {
            let out = conditional_state(&s, ang.phi, ang.outcome).unwrap();
            assert!(
                (out.p_prime - ang.p_prime).abs() < 1e-12,
                "φ={}, outcome {:?}: p'={}, want {}",
                ang.phi,
                ang.outcome,
                out.p_prime,
                ang.p_prime
            );
            assert!((out.purity - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equilibrating_root_balances_weight() {
        // Root of the plus-branch arctangent at (π/3, 0.7).
        let s = tp(PI / 3.0, 0.7);
        let root = 0.239_843_632_452_358_f64;
        let out = conditional_state(&s, root, Outcome::Minus).unwrap();
        assert!((out.p_prime - 0.5).abs() < 1e-9);
        // Conditional purity at the balance point is the floor 1 − ½sin²θ.
        let purity = conditional_purity(&s, root, Outcome::Minus).unwrap();
        assert!((purity - 0.625).abs() < 1e-9);
    }

    #[test]
    fn all_equilibrating_roots_verify() {
        for (theta, p) in [(PI / 3.0, 0.7), (0.6, 0.55), (1.2, 0.9), (PI / 3.0, 0.5)] {
            let s = tp(theta, p);
            let roots = special_angles(&s).equilibrating;
            assert!(roots.len() >= 2, "at least two distinct roots");
            for r in roots {
                let out = conditional_state(&s, r.phi, r.outcome).unwrap();
                assert!(
                    (out.p_prime - 0.5).abs() < 1e-10,
                    "θ={theta}, p={p}, φ={}, {:?}: p'={}",
                    r.phi,
                    r.outcome,
                    out.p_prime
                );
            }
        }
    }

    #[test]
    fn equal_weights_equilibrating_roots_are_zero_and_pi() {
        let s = tp(PI / 3.0, 0.5);
        let sp = special_angles(&s);
        assert_eq!(sp.equilibrating.len(), 2);
        let plus: Vec<_> =
            sp.equilibrating.iter().filter(|r| r.outcome == Outcome::Plus).collect();
        let minus: Vec<_> =
            sp.equilibrating.iter().filter(|r| r.outcome == Outcome::Minus).collect();
        assert_eq!(plus.len(), 1);
        assert_eq!(minus.len(), 1);
        assert_eq!(plus[0].phi, 0.0);
        assert_eq!(minus[0].phi, PI);
        assert_eq!(sp.prob_extremum, 0.0);
    }

    #[test]
    fn prob_extremum_is_stationary() {
        let s = tp(PI / 3.0, 0.7);
        let phi0 = special_angles(&s).prob_extremum;
        let h = 1e-6;
        let r = |phi: f64| outcome_probabilities(&s, phi).0;
        let deriv = (r(phi0 + h) - r(phi0 - h)) / (2.0 * h);
        assert!(deriv.abs() < 1e-9, "dr₊/dφ = {deriv} at φ* = {phi0}");
        // tan φ* = (p−q)·tanθ.
        assert!((phi0.tan() - 0.4 * (PI / 3.0).tan()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cases_flagged() {
        for s in [tp(0.0, 0.5), tp(PI, 0.5), tp(1.0, 1.0), tp(1.0, 0.0)] {
            let sp = special_angles(&s);
            assert!(sp.degenerate);
            assert!(sp.purifying.is_empty() && sp.equilibrating.is_empty());
            assert_eq!(sp.prob_extremum, 0.0);
        }
    }

    #[test]
    fn zero_probability_outcome_rejected() {
        // Pure mixture weight (p=1) and φ at the angle orthogonal to |θ⟩'s
        // partner: the − outcome never fires.
        let s = tp(PI / 3.0, 1.0);
        let err = conditional_state(&s, PI / 3.0, Outcome::Minus);
        assert!(matches!(err, Err(Error::ZeroProbabilityOutcome { .. })));
        assert!(conditional_state(&s, PI / 3.0, Outcome::Plus).is_ok());
    }

    #[test]
    fn reconstruction_and_bounds_on_grid() {
        for &(theta, p) in &[(0.4, 0.2), (PI / 3.0, 0.5), (1.3, 0.85), (PI / 2.0, 0.6)] {
            let s = tp(theta, p);
            let rho_a = reduce(&make_theta_state(&s), Subsystem::A);
            let floor = 1.0 - 0.5 * theta.sin().powi(2);
            for k in 0..25 {
                let phi = -PI + 2.0 * PI * (k as f64 + 0.5) / 25.0;
                let plus = conditional_state(&s, phi, Outcome::Plus).unwrap();
                let minus = conditional_state(&s, phi, Outcome::Minus).unwrap();
                assert!((plus.r + minus.r - 1.0).abs() < 1e-12);
                let mix = &plus.state.matrix().scale(plus.r)
                    + &minus.state.matrix().scale(minus.r);
                assert!((&mix - rho_a.matrix()).norm() < 1e-12, "reconstruction");
                for out in [&plus, &minus] {
                    assert!(out.purity <= 1.0 + 1e-12);
                    assert!(out.purity >= floor - 1e-12);
                }
            }
        }
    }

    #[test]
    fn conditional_purity_at_quarter_turn_equal_weights() {
        let s = tp(PI / 3.0, 0.5);
        for outcome in Outcome::BOTH {
            let v = conditional_purity(&s, PI / 2.0, outcome).unwrap();
            assert!((v - 0.90625).abs() < 1e-12);
        }
    }

    #[test]
    fn conditional_states_remain_on_factor_segment() {
        // The conditional state must stay a mixture of the same two factors:
        // its Bloch vector is ((2p'−1)sinθ, 0, cosθ).
        let s = tp(1.05, 0.64);
        for phi in [-2.8, -1.1, 0.33, 2.0] {
            for outcome in Outcome::BOTH {
                let out = conditional_state(&s, phi, outcome).unwrap();
                let b = crate::linalg::bloch::density_to_bloch(&out.state);
                assert!((b.x - (2.0 * out.p_prime - 1.0) * 1.05f64.sin()).abs() < 1e-12);
                assert!(b.y.abs() < 1e-14);
                assert!((b.z - 1.05f64.cos()).abs() < 1e-12);
            }
        }
        let _ = local_bloch(&s);
    }
}
