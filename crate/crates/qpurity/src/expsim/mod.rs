//! Monte Carlo emulation of a finite-count polarization experiment on the
//! family states: binomial measurement statistics, probability estimation,
//! single-qubit tomography of conditional states, two-qubit preparation
//! tomography with a physicality projection, and the per-angle estimator
//! pipeline.
//!
//! Everything is deterministic under an explicit 64-bit seed: each logical
//! stage draws from its own stream (derived via SplitMix64 from the seed and
//! a documented stream id), so results are independent of evaluation order.
//! This module is deliberately `f64`-only — it is count statistics and RNG
//! plumbing, not closed-form algebra.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::linalg::bloch::{bloch_to_density, density_to_bloch, paulis, BlochVector};
use crate::linalg::eigen::eigen_hermitian;
use crate::linalg::entropy::vn_entropy_from_purity_rank2;
use crate::linalg::matrix::{kron, DensityMatrix, Matrix};
use crate::linalg::metrics::{fidelity, purity};
use crate::measurement::{conditional_state, projectors, MeasurementSetting, Outcome};
use crate::states::ThetaPState;

/// Stream ids: two-qubit preparation tomography, setting index 0..9.
pub const STREAM_PREP_TOMO: u64 = 1_000_000;
/// Stream ids: outcome counting on B, one per φ-grid index.
pub const STREAM_SCAN_COUNTS: u64 = 2_000_000;
/// Stream ids: conditional single-qubit tomography,
/// `3_000_000 + grid_index·8 + outcome·4 + axis`.
pub const STREAM_COND_TOMO: u64 = 3_000_000;
/// Stream ids: standalone single-qubit tomography, one per Pauli axis.
pub const STREAM_SINGLE_TOMO: u64 = 4_000_000;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A reproducible generator for one (seed, stream) pair: the pair is mixed
/// by SplitMix64 into a ChaCha12 key. Distinct streams under a fixed seed
/// are statistically independent and order-independent.
pub fn derive_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut state = seed ^ stream.wrapping_mul(0xA076_1D64_78BD_642F);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Optional detector imperfections; the default model is ideal (both
/// effects off). `efficiency` thins every true count binomially;
/// `dark_rate` adds spurious counts, Binomial(N, dark_rate/2) per outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub efficiency: f64,
    pub dark_rate: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel { efficiency: 1.0, dark_rate: 0.0 }
    }
}

impl NoiseModel {
    pub fn is_ideal(&self) -> bool {
        self.efficiency >= 1.0 && self.dark_rate <= 0.0
    }
}

/// Outcome counts for one measurement setting. Counts are exact integers;
/// estimation requires a positive total.
#[derive(Debug, Clone, PartialEq)]
pub struct CountRecord {
    pub setting: MeasurementSetting<f64>,
    pub n_plus: u64,
    pub n_minus: u64,
}

impl CountRecord {
    pub fn total(&self) -> u64 {
        self.n_plus + self.n_minus
    }
}

fn draw_binomial(rng: &mut impl Rng, n: u64, p: f64) -> u64 {
    let p = p.clamp(0.0, 1.0);
    Binomial::new(n, p).expect("clamped probability").sample(rng)
}

/// Simulate `n` projective measurements of a qubit state at the given
/// setting: `n_plus` is binomial with success probability Tr(ρ·Π₊).
pub fn simulate_counts(
    rho: &DensityMatrix<f64, 2>,
    setting: &MeasurementSetting<f64>,
    n: u64,
    rng: &mut impl Rng,
) -> Result<CountRecord> {
    let (proj_plus, _) = projectors(setting)?;
    let p_plus = (rho.matrix() * &proj_plus).trace().re;
    let n_plus = draw_binomial(rng, n, p_plus);
    Ok(CountRecord { setting: *setting, n_plus, n_minus: n - n_plus })
}

/// [`simulate_counts`] with noise: true counts are thinned by the detector
/// efficiency and dark counts are added to both outcomes. With the ideal
/// model this is byte-identical to the noiseless path (no extra RNG draws).
pub fn simulate_counts_noisy(
    rho: &DensityMatrix<f64, 2>,
    setting: &MeasurementSetting<f64>,
    n: u64,
    noise: &NoiseModel,
    rng: &mut impl Rng,
) -> Result<CountRecord> {
    let ideal = simulate_counts(rho, setting, n, rng)?;
    if noise.is_ideal() {
        return Ok(ideal);
    }
    let eta = noise.efficiency.clamp(0.0, 1.0);
    let half_dark = (noise.dark_rate / 2.0).clamp(0.0, 1.0);
    let n_plus = draw_binomial(rng, ideal.n_plus, eta) + draw_binomial(rng, n, half_dark);
    let n_minus = draw_binomial(rng, ideal.n_minus, eta) + draw_binomial(rng, n, half_dark);
    Ok(CountRecord { setting: *setting, n_plus, n_minus })
}

/// Convenience wrapper drawing from the (seed, stream) generator.
pub fn simulate_counts_seeded(
    rho: &DensityMatrix<f64, 2>,
    setting: &MeasurementSetting<f64>,
    n: u64,
    seed: u64,
    stream: u64,
) -> Result<CountRecord> {
    simulate_counts(rho, setting, n, &mut derive_rng(seed, stream))
}

/// Estimated outcome probabilities r̂± = n±/N. The pair sums to 1 exactly:
/// r̂₋ is stored as 1 − r̂₊.
pub fn estimate_r(c: &CountRecord) -> Result<(f64, f64)> {
    let total = c.total();
    if total == 0 {
        return Err(Error::EmptyCountRecord);
    }
    let r_plus = c.n_plus as f64 / total as f64;
    Ok((r_plus, 1.0 - r_plus))
}

/// A tomographic reconstruction: the raw linear-inversion estimate (possibly
/// unphysical), its physical projection, the settings and counts spent, and
/// the fidelity against the known true state.
#[derive(Debug, Clone)]
pub struct TomographyResult<const N: usize> {
    pub rho_raw: Matrix<f64, N>,
    pub rho_ml: DensityMatrix<f64, N>,
    pub settings_used: Vec<&'static str>,
    pub n_per_setting: u64,
    pub fidelity_vs_truth: f64,
}

const AXES: [(&str, BlochVector<f64>); 3] = [
    ("x", BlochVector { x: 1.0, y: 0.0, z: 0.0 }),
    ("y", BlochVector { x: 0.0, y: 1.0, z: 0.0 }),
    ("z", BlochVector { x: 0.0, y: 0.0, z: 1.0 }),
];

/// Project a Hermitian trace-1 2×2 estimate to the closest physical state:
/// radial clipping of the Bloch vector onto the unit ball. Idempotent.
pub fn ml_project_qubit(raw: &Matrix<f64, 2>) -> DensityMatrix<f64, 2> {
    let approx = DensityMatrix::new_unchecked(*raw);
    let b = density_to_bloch(&approx);
    let norm = b.norm();
    if norm <= 1.0 {
        return approx;
    }
    bloch_to_density(&BlochVector::new(b.x / norm, b.y / norm, b.z / norm))
        .expect("unit vector is physical")
}

/// Euclidean projection of a real vector onto the probability simplex
/// (Duchi et al.): sort descending, find the largest k with
/// v_k − (Σ_{i≤k} v_i − 1)/k > 0, subtract that threshold, clip at zero.
fn simplex_project(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if v - candidate > 0.0 {
            threshold = candidate;
        }
    }
    values.iter().map(|v| (v - threshold).max(0.0)).collect()
}

/// Project a Hermitian trace-1 4×4 estimate to the closest physical state in
/// Frobenius distance: eigenvalues are simplex-projected, eigenvectors kept.
/// Idempotent.
pub fn ml_project_two_qubits(raw: &Matrix<f64, 4>) -> DensityMatrix<f64, 4> {
    let (vals, vecs) = eigen_hermitian(raw).expect("raw estimate is Hermitian");
    let projected = simplex_project(&vals);
    let mut m = Matrix::<f64, 4>::zero();
    for (k, &w) in projected.iter().enumerate() {
        if w > 0.0 {
            let col = crate::linalg::eigen::column(&vecs, k);
            m = &m + &Matrix::outer(&col).scale(w);
        }
    }
    DensityMatrix::new_unchecked(m)
}

fn bloch_estimate_axis(
    rho: &DensityMatrix<f64, 2>,
    axis: BlochVector<f64>,
    n: u64,
    rng: &mut impl Rng,
) -> Result<f64> {
    let setting = MeasurementSetting::BlochDirection { k: axis };
    let c = simulate_counts(rho, &setting, n, rng)?;
    Ok((c.n_plus as f64 - c.n_minus as f64) / c.total() as f64)
}

/// Single-qubit tomography in the three mutually unbiased Pauli eigenbases:
/// each axis spends `n_per_setting` counts on the stream
/// `stream_base + axis`; the Bloch estimate r̂_a = (n₊ − n₋)/N feeds the
/// Bloch map, then the physical projection.
pub fn tomography_single_qubit_streamed(
    rho_true: &DensityMatrix<f64, 2>,
    n_per_setting: u64,
    seed: u64,
    stream_base: u64,
) -> Result<TomographyResult<2>> {
    let mut bloch_hat = [0.0; 3];
    for (axis_idx, (_, axis)) in AXES.iter().enumerate() {
        let mut rng = derive_rng(seed, stream_base + axis_idx as u64);
        bloch_hat[axis_idx] = bloch_estimate_axis(rho_true, *axis, n_per_setting, &mut rng)?;
    }
    let b = BlochVector::new(bloch_hat[0], bloch_hat[1], bloch_hat[2]);
    let sig = paulis::<f64>();
    let mut raw = Matrix::<f64, 2>::identity().scale(0.5);
    for (v, s) in [b.x, b.y, b.z].into_iter().zip(sig.iter()) {
        raw = &raw + &s.scale(0.5 * v);
    }
    let rho_ml = ml_project_qubit(&raw);
    Ok(TomographyResult {
        fidelity_vs_truth: fidelity(rho_true, &rho_ml),
        rho_raw: raw,
        rho_ml,
        settings_used: AXES.iter().map(|(name, _)| *name).collect(),
        n_per_setting,
    })
}

/// [`tomography_single_qubit_streamed`] on the default standalone streams.
pub fn tomography_single_qubit(
    rho_true: &DensityMatrix<f64, 2>,
    n_per_setting: u64,
    seed: u64,
) -> Result<TomographyResult<2>> {
    tomography_single_qubit_streamed(rho_true, n_per_setting, seed, STREAM_SINGLE_TOMO)
}

/// Split `n` shots over the four outcomes of a joint setting by sequential
/// binomial draws (an exact multinomial sample).
fn draw_multinomial4(rng: &mut impl Rng, n: u64, probs: [f64; 4]) -> [u64; 4] {
    let mut counts = [0u64; 4];
    let mut remaining = n;
    let mut mass_left = 1.0;
    for i in 0..3 {
        if remaining == 0 || mass_left <= 0.0 {
            break;
        }
        let conditional = (probs[i] / mass_left).clamp(0.0, 1.0);
        counts[i] = draw_binomial(rng, remaining, conditional);
        remaining -= counts[i];
        mass_left -= probs[i];
    }
    counts[3] = remaining;
    counts
}

const PAIR_NAMES: [&str; 9] = ["xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz"];

/// Two-qubit tomography from the nine joint Pauli settings: every setting
/// spends `n_per_setting` shots split multinomially over its four outcomes
/// (stream `STREAM_PREP_TOMO + setting_index`). The fifteen expectation
/// estimates (nine pair correlators; each single-qubit marginal averaged
/// over the three settings that measure it) feed linear inversion, then the
/// physical projection.
pub fn tomography_two_qubit(
    rho_true: &DensityMatrix<f64, 4>,
    n_per_setting: u64,
    seed: u64,
) -> Result<TomographyResult<4>> {
    let sig = paulis::<f64>();
    let mut pair_hat = [[0.0f64; 3]; 3];
    let mut single_a_hat = [0.0f64; 3];
    let mut single_b_hat = [0.0f64; 3];

    for (idx, name) in PAIR_NAMES.iter().enumerate() {
        let (a, b) = (idx / 3, idx % 3);
        let _ = name;
        let proj_a = axis_projectors(&AXES[a].1)?;
        let proj_b = axis_projectors(&AXES[b].1)?;
        let mut probs = [0.0f64; 4];
        for (o, p) in probs.iter_mut().enumerate() {
            let op = kron(&proj_a[o / 2], &proj_b[o % 2]);
            *p = (rho_true.matrix() * &op).trace().re.clamp(0.0, 1.0);
        }
        let mut rng = derive_rng(seed, STREAM_PREP_TOMO + idx as u64);
        let counts = draw_multinomial4(&mut rng, n_per_setting, probs);
        let total = n_per_setting as f64;
        let sgn = |bit: usize| if bit == 0 { 1.0 } else { -1.0 };
        let mut e_ab = 0.0;
        let mut e_a = 0.0;
        let mut e_b = 0.0;
        for (o, &c) in counts.iter().enumerate() {
            let w = c as f64 / total;
            e_ab += sgn(o / 2) * sgn(o % 2) * w;
            e_a += sgn(o / 2) * w;
            e_b += sgn(o % 2) * w;
        }
        pair_hat[a][b] = e_ab;
        // Marginals: average the three settings sharing the axis.
        single_a_hat[a] += e_a / 3.0;
        single_b_hat[b] += e_b / 3.0;
    }

    let id2 = Matrix::<f64, 2>::identity();
    let mut raw = kron(&id2, &id2).scale(0.25);
    for a in 0..3 {
        raw = &raw + &kron(&sig[a], &id2).scale(0.25 * single_a_hat[a]);
        raw = &raw + &kron(&id2, &sig[a]).scale(0.25 * single_b_hat[a]);
        for b in 0..3 {
            raw = &raw + &kron(&sig[a], &sig[b]).scale(0.25 * pair_hat[a][b]);
        }
    }
    let rho_ml = ml_project_two_qubits(&raw);
    Ok(TomographyResult {
        fidelity_vs_truth: fidelity(rho_true, &rho_ml),
        rho_raw: raw,
        rho_ml,
        settings_used: PAIR_NAMES.to_vec(),
        n_per_setting,
    })
}

fn axis_projectors(axis: &BlochVector<f64>) -> Result<[Matrix<f64, 2>; 2]> {
    let (plus, minus) = projectors(&MeasurementSetting::BlochDirection { k: *axis })?;
    Ok([plus, minus])
}

/// Finite-count estimates of every per-angle quantity at one measurement
/// angle. `None`/`skipped` marks a conditional branch with no observed
/// events (its weight in the averages is the observed r̂ ≈ 0).
#[derive(Debug, Clone)]
pub struct PhiEstimate {
    pub phi: f64,
    /// Estimated outcome probabilities (r̂₊, r̂₋); they sum to 1 exactly.
    pub r_hat: (f64, f64),
    /// Tomographic conditional-purity estimates per outcome.
    pub cond_purity_hat: (Option<f64>, Option<f64>),
    /// r̂₊·P̂₊ + r̂₋·P̂₋ over the observed branches.
    pub avg_cond_purity_hat: f64,
    /// Estimated measurement-dependent discord (conditional entropies from
    /// the estimated purities; the preparation-side reference S(A/B) is
    /// taken as known).
    pub discord_phi_hat: f64,
    /// Estimated quadratic information deficit (preparation purity known).
    pub info_deficit_hat: f64,
    pub skipped: (bool, bool),
}

/// Run the finite-count pipeline over a φ grid: count statistics on B
/// (stream `STREAM_SCAN_COUNTS + i`), conditional single-qubit tomography
/// per outcome (streams `STREAM_COND_TOMO + i·8 + outcome·4 + axis`), and
/// the derived estimators. Deterministic under (inputs, seed); grid points
/// use disjoint streams so they may be evaluated in any order.
pub fn run_experiment_pipeline(
    s: &ThetaPState<f64>,
    phi_grid: &[f64],
    n_per_setting: u64,
    seed: u64,
    noise: &NoiseModel,
) -> Result<Vec<PhiEstimate>> {
    let rho_b = crate::states::reduce(&crate::states::make_theta_state(s), crate::states::Subsystem::B);
    let s_cond_reference = crate::correlations::vn_conditional_entropy(s);
    let purity_ab_reference = crate::states::purity_ab(s);

    let mut records = Vec::with_capacity(phi_grid.len());
    for (i, &phi) in phi_grid.iter().enumerate() {
        let setting = MeasurementSetting::xz(phi);
        let mut rng = derive_rng(seed, STREAM_SCAN_COUNTS + i as u64);
        let counts = simulate_counts_noisy(&rho_b, &setting, n_per_setting, noise, &mut rng)?;
        let (r_plus_hat, r_minus_hat) = estimate_r(&counts)?;

        let mut cond_purity_hat = [None; 2];
        let mut skipped = [false; 2];
        let mut avg = 0.0;
        let mut avg_entropy = 0.0;
        let mut post_purity_hat = 0.0;
        for (o, outcome) in Outcome::BOTH.into_iter().enumerate() {
            let observed = if o == 0 { counts.n_plus } else { counts.n_minus };
            let r_hat = if o == 0 { r_plus_hat } else { r_minus_hat };
            let truth = conditional_state(s, phi, outcome);
            let (truth, any_events) = match truth {
                Ok(t) => (t, observed > 0),
                Err(_) => {
                    skipped[o] = true;
                    continue;
                }
            };
            if !any_events {
                skipped[o] = true;
                continue;
            }
            let stream = STREAM_COND_TOMO + (i as u64) * 8 + (o as u64) * 4;
            let tomo = tomography_single_qubit_streamed(
                &truth.state,
                n_per_setting,
                seed,
                stream,
            )?;
            let p_hat = purity(&tomo.rho_ml);
            cond_purity_hat[o] = Some(p_hat);
            avg += r_hat * p_hat;
            avg_entropy += r_hat * vn_entropy_from_purity_rank2(p_hat);
            post_purity_hat += r_hat * r_hat * p_hat;
        }

        records.push(PhiEstimate {
            phi,
            r_hat: (r_plus_hat, r_minus_hat),
            cond_purity_hat: (cond_purity_hat[0], cond_purity_hat[1]),
            avg_cond_purity_hat: avg,
            discord_phi_hat: avg_entropy - s_cond_reference,
            info_deficit_hat: 2.0 * (purity_ab_reference - post_purity_hat),
            skipped: (skipped[0], skipped[1]),
        });
    }
    Ok(records)
}
