//! Independent brute-force optimizers and dense-matrix recomputation paths.
//!
//! Nothing here uses the closed forms of [`crate::correlations`]: optima come
//! from grid scans with derivative-free refinement, and every measure is
//! recomputed from 4×4 matrices (projectors, partial traces, eigenvalues).
//! The test suites pit these paths against the closed-form modules.

use crate::error::{Error, Result};
use crate::linalg::bloch::BlochVector;
use crate::linalg::entropy::{entropy, EntropyFunction};
use crate::linalg::matrix::{
    kron, partial_trace_first, partial_trace_second, DensityMatrix, Matrix,
};
use crate::linalg::metrics::purity;
use crate::measurement::{normalize_phi, projectors, MeasurementSetting};
use crate::scalar::Real;
use crate::states::{make_theta_state, ThetaPState};

/// Grid points used by [`minimize_over_phi`].
pub const PHI_GRID_POINTS: usize = 720;

/// Refinement stops when the bracket is narrower than this (widened for
/// low-precision scalars).
const BRACKET_TOL: f64 = 1e-9;

/// Outcome of a one-dimensional scan: the evaluated grid, the refined
/// minimizer, its value, and how many refinement steps were spent on the
/// winning bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult<S: Real = f64> {
    pub grid: Vec<(S, S)>,
    pub arg_opt: S,
    pub value_opt: S,
    pub refinement_iterations: usize,
}

/// Outcome of a Bloch-sphere scan: the refined best direction (its `y`
/// component measures how far the optimum strays from the xz plane), the
/// attained value, and the number of pattern-search refinement steps.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereScanResult<S: Real = f64> {
    pub direction: BlochVector<S>,
    pub value_opt: S,
    pub grid_points: usize,
    pub refinement_iterations: usize,
}

fn check_finite<S: Real>(value: S, at: S) -> Result<S> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteObjective { at: at.as_f64() })
    }
}

/// Golden-section minimization of `f` on `[a, b]` down to the given bracket
/// width. Derivative-free on purpose: the objectives have cusps (conditional
/// entropies are non-smooth at purifying angles). Returns (arg, value,
/// iterations).
fn golden_section<S: Real>(
    f: &impl Fn(S) -> S,
    mut a: S,
    mut b: S,
    tol: S,
) -> Result<(S, S, usize)> {
    let invphi = (S::of(5.0).sqrt() - S::one()) * S::half();
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = check_finite(f(c), c)?;
    let mut fd = check_finite(f(d), d)?;
    let mut iterations = 0usize;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = check_finite(f(c), c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = check_finite(f(d), d)?;
        }
        iterations += 1;
    }
    let mid = (a + b) * S::half();
    let fmid = check_finite(f(mid), mid)?;
    // Report the best of the points actually evaluated.
    let (arg, val) = [(mid, fmid), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite values"))
        .expect("non-empty");
    Ok((arg, val, iterations))
}

/// Global minimization of a periodic objective over φ ∈ (−π, π]: a uniform
/// coarse grid (720 points) locates candidate basins; the best three cyclic
/// local minima are refined by golden section to a bracket narrower than
/// 1e-9, the least refined value wins, and flat bottoms get a final
/// parabola-vertex polish that recovers the noise-limited argmin.
/// Deterministic: identical inputs give bit-identical results.
pub fn minimize_over_phi<S: Real>(f: impl Fn(S) -> S) -> Result<ScanResult<S>> {
    minimize_over_phi_with(f, PHI_GRID_POINTS)
}

/// [`minimize_over_phi`] with an explicit grid resolution (≥ 8).
pub fn minimize_over_phi_with<S: Real>(
    f: impl Fn(S) -> S,
    n_grid: usize,
) -> Result<ScanResult<S>> {
    let n = n_grid.max(8);
    let period = S::two() * S::PI();
    let step = period / S::of(n as f64);
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        // Nodes −π + (i+1)·step: the last lands on +π, keeping the domain
        // convention (−π, π].
        let phi = -S::PI() + step * S::of((i + 1) as f64);
        let value = check_finite(f(phi), phi)?;
        grid.push((phi, value));
    }

    // Cyclic local minima, best three first.
    let mut basins: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = grid[(i + n - 1) % n].1;
            let next = grid[(i + 1) % n].1;
            grid[i].1 <= prev && grid[i].1 <= next
        })
        .collect();
    basins.sort_by(|&i, &j| {
        grid[i]
            .1
            .partial_cmp(&grid[j].1)
            .expect("finite values")
            .then(i.cmp(&j))
    });
    basins.truncate(3);

    let wrapped = |x: S| f(normalize_phi(x));
    let mut best: Option<(S, S, usize)> = None;
    for &i in &basins {
        // Unwrapped bracket around the basin node (may extend past ±π; the
        // objective is evaluated through normalize_phi).
        let x = grid[i].0;
        let (arg, val, iters) = golden_section(&wrapped, x - step, x + step, S::tol(BRACKET_TOL))?;
        let arg = normalize_phi(arg);
        let better = match &best {
            None => true,
            Some((_, v, _)) => val < *v,
        };
        if better {
            best = Some((arg, val, iters));
        }
    }
    let (arg_opt, value_opt, refinement_iterations) = best.expect("at least one basin");
    let arg_opt = normalize_phi(polish_flat_minimum(&wrapped, arg_opt));
    Ok(ScanResult { grid, arg_opt, value_opt, refinement_iterations })
}

/// Curvature below which a value-based search is noise-limited: the argmin
/// of a quadratic bottom is only determined to √(ε/curvature) by comparing
/// f64 values, which crosses 1e-7 near curvature 2e-2.
const FLAT_CURVATURE: f64 = 2.2e-2;
/// Half-width of the polish stencils.
const POLISH_STEP: f64 = 2e-3;

/// Sharpen the argmin of a flat-bottomed minimum. Golden section localizes
/// the argmin only to √(ε/curvature); when the measured curvature is small
/// enough for that to matter, a parabola vertex computed from stencils wide
/// enough to dominate rounding noise recovers it. Two stencil widths (h and
/// h/2) are combined by Richardson extrapolation, cancelling the O(h²) bias
/// a cubic term induces on a single-width vertex. Returns the input argmin
/// unchanged for well-curved minima or whenever a guard fails.
fn polish_flat_minimum<S: Real>(f: &impl Fn(S) -> S, x0: S) -> S {
    let h = S::tol(POLISH_STEP);
    let f0 = f(x0);
    if !f0.is_finite() {
        return x0;
    }
    // Signed vertex offset of the parabola through (±h, f(x0±h)) and (0, f0),
    // plus the measured span fm − 2f0 + fp (= curvature·h² for a parabola).
    let vertex = |h: S| -> Option<(S, S)> {
        let (fm, fp) = (f(x0 - h), f(x0 + h));
        if !fm.is_finite() || !fp.is_finite() {
            return None;
        }
        let span = fm - (f0 + f0) + fp;
        if span <= S::zero() {
            return None; // not convex at this scale: noise or a ridge
        }
        Some((S::half() * h * (fm - fp) / span, span))
    };
    let Some((v1, span1)) = vertex(h) else { return x0 };
    if span1 / (h * h) > S::tol(FLAT_CURVATURE) {
        return x0; // well-curved: golden section is already sharper
    }
    let Some((v2, _)) = vertex(h * S::half()) else { return x0 };
    let third = S::one() / S::of(3.0);
    let offset = (S::of(4.0) * v2 - v1) * third;
    // A vertex outside the stencil means the quadratic model is untrusted.
    if offset.abs() > h {
        return x0;
    }
    x0 + offset
}

/// Deterministic quasi-uniform unit directions: Fibonacci lattice.
fn fibonacci_direction<S: Real>(k: usize, n: usize) -> BlochVector<S> {
    let golden_angle = S::PI() * (S::of(3.0) - S::of(5.0).sqrt());
    let z = S::one() - S::two() * (S::of(k as f64) + S::half()) / S::of(n as f64);
    let r = (S::one() - z * z).max(S::zero()).sqrt();
    let az = golden_angle * S::of(k as f64);
    BlochVector::new(r * az.cos(), r * az.sin(), z)
}

/// Global minimization of a function of the measurement direction over the
/// whole Bloch sphere: a Fibonacci lattice (default ≥ 10,000 directions)
/// seeds a compass pattern search (8 tangent directions, halving step) run
/// down to step 1e-7. Deterministic.
pub fn scan_bloch_sphere<S: Real>(
    f: impl Fn(&BlochVector<S>) -> S,
    resolution: usize,
) -> Result<SphereScanResult<S>> {
    let n = resolution.max(10_000);
    let mut best_k = fibonacci_direction(0, n);
    let mut best_v = check_finite(f(&best_k), best_k.z)?;
    for k in 1..n {
        let dir = fibonacci_direction(k, n);
        let v = check_finite(f(&dir), dir.z)?;
        if v < best_v {
            best_v = v;
            best_k = dir;
        }
    }

    // Compass search on the sphere: probe 8 tangent offsets, renormalize,
    // halve the step on failure.
    let mut step = S::of(2.0) / S::of((n as f64).sqrt());
    let mut iterations = 0usize;
    let stop = S::tol(1e-7);
    while step > stop {
        let (u, v) = tangent_basis(&best_k);
        let mut improved = false;
        for j in 0..8 {
            let ang = S::of(j as f64) * S::FRAC_PI_2() * S::half();
            let (cu, cv) = (ang.cos() * step, ang.sin() * step);
            let cand = BlochVector::new(
                best_k.x + cu * u.x + cv * v.x,
                best_k.y + cu * u.y + cv * v.y,
                best_k.z + cu * u.z + cv * v.z,
            );
            let norm = cand.norm();
            let cand = BlochVector::new(cand.x / norm, cand.y / norm, cand.z / norm);
            let val = check_finite(f(&cand), cand.z)?;
            if val < best_v {
                best_v = val;
                best_k = cand;
                improved = true;
            }
        }
        if !improved {
            step = step * S::half();
        }
        iterations += 1;
        if iterations > 10_000 {
            break;
        }
    }
    Ok(SphereScanResult {
        direction: best_k,
        value_opt: best_v,
        grid_points: n,
        refinement_iterations: iterations,
    })
}

fn tangent_basis<S: Real>(k: &BlochVector<S>) -> (BlochVector<S>, BlochVector<S>) {
    // Cross with the axis least aligned with k.
    let seed = if k.z.abs() < S::of(0.9) {
        BlochVector::new(S::zero(), S::zero(), S::one())
    } else {
        BlochVector::new(S::one(), S::zero(), S::zero())
    };
    let u = cross(k, &seed);
    let un = u.norm();
    let u = BlochVector::new(u.x / un, u.y / un, u.z / un);
    let v = cross(k, &u);
    (u, v)
}

fn cross<S: Real>(a: &BlochVector<S>, b: &BlochVector<S>) -> BlochVector<S> {
    BlochVector::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

/// Average conditional purity of qubit A for a measurement of B along an
/// arbitrary unit direction, computed densely (projectors, partial traces —
/// no closed forms). Outcomes with probability ≤ 1e-12 contribute nothing.
pub fn avg_conditional_purity_direction<S: Real>(
    s: &ThetaPState<S>,
    direction: &BlochVector<S>,
) -> Result<S> {
    let rho = make_theta_state(s);
    let setting = MeasurementSetting::BlochDirection { k: *direction };
    let (pp, pm) = projectors(&setting)?;
    let id = Matrix::<S, 2>::identity();
    let mut acc = S::zero();
    for proj in [pp, pm] {
        let op = kron(&id, &proj);
        let selected = &(&op * rho.matrix()) * &op;
        let r = selected.trace().re;
        if r > S::tol(1e-12) {
            let cond_a = partial_trace_second(&selected);
            // Tr[(ρ_A|o)²]/r = purity·r for the unnormalized block.
            acc = acc + cond_a.norm_sqr() / r;
        }
    }
    Ok(acc)
}

/// Every measure of a family state at one measurement angle, recomputed from
/// matrices alone. `cond_purity` entries are `None` for outcomes with
/// vanishing probability.
#[derive(Debug, Clone)]
pub struct DenseRecord<S: Real = f64> {
    pub purity_ab: S,
    pub purity_a: S,
    pub purity_b: S,
    pub bloch_b: BlochVector<S>,
    /// Outcome probabilities (r₊, r₋).
    pub r: (S, S),
    /// Conditional purities of qubit A per outcome.
    pub cond_purity: (Option<S>, Option<S>),
    pub avg_cond_purity: S,
    /// Von Neumann entropies (bits).
    pub s_ab: S,
    pub s_b: S,
    pub s_cond: S,
    /// Measurement-dependent discord at this angle.
    pub discord_phi: S,
    /// Purity of the post-measurement global state Σ_o Π_o ρ Π_o.
    pub post_purity: S,
    pub info_deficit: S,
    pub renyi_deficit: S,
}

/// Rebuild every measure from 4×4 matrices: construct ρ_AB from its pure
/// factors, apply the projectors of the angle-φ measurement on B, take
/// partial traces, diagonalize for the entropies. No closed form from
/// [`crate::correlations`] or [`crate::measurement`] is consulted.
pub fn dense_recompute<S: Real>(s: &ThetaPState<S>, phi: S) -> DenseRecord<S> {
    let rho = make_theta_state(s);
    let rho_a = partial_trace_second(rho.matrix());
    let rho_b = partial_trace_first(rho.matrix());
    let vn = EntropyFunction::von_neumann();

    let (proj_plus, proj_minus) =
        projectors(&MeasurementSetting::xz(phi)).expect("xz setting is always unit");
    let id = Matrix::<S, 2>::identity();

    let mut r = [S::zero(); 2];
    let mut cond_purity = [None; 2];
    let mut avg = S::zero();
    let mut avg_entropy = S::zero();
    let mut post = Matrix::<S, 4>::zero();
    for (i, proj) in [proj_plus, proj_minus].into_iter().enumerate() {
        let op = kron(&id, &proj);
        let selected = &(&op * rho.matrix()) * &op;
        post = &post + &selected;
        let prob = selected.trace().re;
        r[i] = prob;
        if prob > S::tol(1e-12) {
            let block = partial_trace_second(&selected);
            let cond = DensityMatrix::new_unchecked(block.mul_scalar(
                num_complex::Complex::new(S::one() / prob, S::zero()),
            ));
            let pur = purity(&cond);
            cond_purity[i] = Some(pur);
            avg = avg + prob * pur;
            avg_entropy = avg_entropy + prob * entropy(&cond, &vn);
        }
    }
    let post = DensityMatrix::new_unchecked(post);

    let s_ab = entropy(&rho, &vn);
    let s_b = entropy(&DensityMatrix::new_unchecked(rho_b), &vn);
    let s_cond = s_ab - s_b;
    let purity_ab = purity(&rho);
    let post_purity = purity(&post);

    DenseRecord {
        purity_ab,
        purity_a: rho_a.norm_sqr(),
        purity_b: rho_b.norm_sqr(),
        bloch_b: crate::linalg::bloch::density_to_bloch(&DensityMatrix::new_unchecked(rho_b)),
        r: (r[0], r[1]),
        cond_purity: (cond_purity[0], cond_purity[1]),
        avg_cond_purity: avg,
        s_ab,
        s_b,
        s_cond,
        discord_phi: avg_entropy - s_cond,
        post_purity,
        info_deficit: S::two() * (purity_ab - post_purity),
        renyi_deficit: -(post_purity / purity_ab).log2(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{
        avg_conditional_purity, discord_phi, geometric_deficit, global_post_purity,
        info_deficit_phi, max_avg_conditional_purity, optimal_phi_deficit,
        renyi_deficit_phi, vn_conditional_entropy,
    };
    use crate::measurement::outcome_probabilities;

    const PI: f64 = std::f64::consts::PI;

    fn tp(theta: f64, p: f64) -> ThetaPState<f64> {
        ThetaPState::new(theta, p).unwrap()
    }

    fn mod_pi_distance(a: f64, b: f64) -> f64 {
        let mut d = (a - b).rem_euclid(PI);
        if d > PI / 2.0 {
            d = PI - d;
        }
        d
    }

    #[test]
    fn phi_minimizer_finds_discord_minimum() {
        let s = tp(PI / 3.0, 0.5);
        let res = minimize_over_phi(|phi| discord_phi(&s, phi)).unwrap();
        assert!(mod_pi_distance(res.arg_opt, PI / 2.0) < 1e-6);
        assert!((res.value_opt - 0.140_286_057_063_627).abs() < 1e-8);
        assert_eq!(res.grid.len(), PHI_GRID_POINTS);
        assert!(res.value_opt <= res.grid.iter().map(|g| g.1).fold(f64::INFINITY, f64::min));
    }

    #[test]
    fn phi_minimizer_constant_function() {
        let res = minimize_over_phi(|_phi: f64| 2.5).unwrap();
        assert_eq!(res.value_opt, 2.5);
        assert!(res.arg_opt > -PI && res.arg_opt <= PI);
    }

    #[test]
    fn phi_minimizer_matches_conditional_optimum() {
        let s = tp(PI / 3.0, 0.7);
        let res = minimize_over_phi(|phi| -avg_conditional_purity(&s, phi)).unwrap();
        assert!(mod_pi_distance(res.arg_opt, 1.343_835_247_753_225_8) < 1e-6);
        assert!((res.value_opt + max_avg_conditional_purity(&s)).abs() < 1e-10);
    }

    #[test]
    fn phi_minimizer_refines_to_tight_bracket() {
        let res = minimize_over_phi(|phi: f64| (phi - 0.3).powi(2)).unwrap();
        assert!((res.arg_opt - 0.3).abs() < 1e-8);
        assert!(res.refinement_iterations > 10);
        // Deterministic: bit-identical on rerun.
        let again = minimize_over_phi(|phi: f64| (phi - 0.3).powi(2)).unwrap();
        assert_eq!(res, again);
    }

    #[test]
    fn phi_minimizer_handles_boundary_basin() {
        // Minimum at the seam φ = π ≡ −π.
        let res = minimize_over_phi(|phi: f64| -phi.cos().powi(2) - 0.5 * phi.cos()).unwrap();
        assert!(mod_pi_distance(res.arg_opt, 0.0) < 1e-6);
    }

    #[test]
    fn phi_minimizer_rejects_non_finite() {
        let err = minimize_over_phi(|phi: f64| 1.0 / phi.sin()).unwrap_err();
        match err {
            Error::NonFiniteObjective { at } => assert!(at.is_finite()),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sphere_scan_recovers_known_pole() {
        let res = scan_bloch_sphere(|k: &BlochVector<f64>| -k.z, 10_000).unwrap();
        assert!((res.direction.z - 1.0).abs() < 1e-6);
        assert!((res.value_opt + 1.0).abs() < 1e-6);
        assert_eq!(res.grid_points, 10_000);
    }

    #[test]
    fn sphere_scan_stays_in_plane_for_conditional_purity() {
        let s = tp(PI / 3.0, 0.5);
        let res = scan_bloch_sphere(
            |k| -avg_conditional_purity_direction(&s, k).unwrap(),
            10_000,
        )
        .unwrap();
        assert!(res.direction.y.abs() < 1e-4);
        assert!((-res.value_opt - max_avg_conditional_purity(&s)).abs() < 1e-6);
        assert!(-res.value_opt <= max_avg_conditional_purity(&s) + 1e-9);
    }

    #[test]
    fn sphere_scan_confirms_in_plane_deficit_optimum() {
        let s = tp(PI / 3.0, 0.7);
        let dense = |k: &BlochVector<f64>| {
            // Post-measurement purity via the dense path for direction k.
            let rho = make_theta_state(&s);
            let setting = MeasurementSetting::BlochDirection { k: *k };
            let (pp, pm) = projectors(&setting).unwrap();
            let id = Matrix::<f64, 2>::identity();
            let mut post = Matrix::<f64, 4>::zero();
            for proj in [pp, pm] {
                let op = kron(&id, &proj);
                post = &post + &(&(&op * rho.matrix()) * &op);
            }
            -post.norm_sqr()
        };
        let res = scan_bloch_sphere(dense, 10_000).unwrap();
        assert!(res.direction.y.abs() < 1e-4);
        let best_closed = global_post_purity(&s, optimal_phi_deficit(&s).phi);
        assert!((-res.value_opt - best_closed).abs() < 1e-6);
    }

    #[test]
    fn dense_record_matches_closed_forms() {
        let s = tp(PI / 3.0, 0.5);
        let rec = dense_recompute(&s, PI / 2.0);
        let (c_plus, c_minus) = rec.cond_purity;
        assert!((c_plus.unwrap() - 0.90625).abs() < 1e-12);
        assert!((c_minus.unwrap() - 0.90625).abs() < 1e-12);

        // At θ=π/2 the measurement along x is classical: no discord there.
        let rec_cl = dense_recompute(&tp(PI / 2.0, 0.5), PI / 2.0);
        assert!(rec_cl.discord_phi.abs() < 1e-10);

        // Full-record equality at a generic point.
        let s7 = tp(PI / 3.0, 0.7);
        let phi = 0.5;
        let rec7 = dense_recompute(&s7, phi);
        let (r_plus, r_minus) = outcome_probabilities(&s7, phi);
        assert!((rec7.purity_ab - crate::states::purity_ab(&s7)).abs() < 1e-10);
        assert!((rec7.purity_b - crate::states::local_purity(&s7)).abs() < 1e-10);
        assert!((rec7.r.0 - r_plus).abs() < 1e-10);
        assert!((rec7.r.1 - r_minus).abs() < 1e-10);
        for (dense, outcome) in [
            (rec7.cond_purity.0, crate::measurement::Outcome::Plus),
            (rec7.cond_purity.1, crate::measurement::Outcome::Minus),
        ] {
            let closed = crate::measurement::conditional_purity(&s7, phi, outcome).unwrap();
            assert!((dense.unwrap() - closed).abs() < 1e-10);
        }
        assert!((rec7.avg_cond_purity - avg_conditional_purity(&s7, phi)).abs() < 1e-10);
        assert!((rec7.s_cond - vn_conditional_entropy(&s7)).abs() < 1e-10);
        assert!((rec7.discord_phi - discord_phi(&s7, phi)).abs() < 1e-10);
        assert!((rec7.post_purity - global_post_purity(&s7, phi)).abs() < 1e-10);
        assert!((rec7.info_deficit - info_deficit_phi(&s7, phi)).abs() < 1e-10);
        assert!((rec7.renyi_deficit - renyi_deficit_phi(&s7, phi)).abs() < 1e-10);
        let k = crate::states::local_bloch(&s7);
        assert!((rec7.bloch_b.x - k.x).abs() < 1e-10);
        assert!((rec7.bloch_b.z - k.z).abs() < 1e-10);

        // The dense deficit at the closed-form optimal angle reproduces the
        // geometric deficit.
        let opt = optimal_phi_deficit(&s7).phi;
        let rec_opt = dense_recompute(&s7, opt);
        assert!((rec_opt.info_deficit - geometric_deficit(&s7)).abs() < 1e-10);
    }

    #[test]
    fn dense_record_zero_probability_branch() {
        // p=1 and φ = θ−π: the plus outcome never fires.
        let s = tp(PI / 3.0, 1.0);
        let rec = dense_recompute(&s, PI / 3.0 - PI);
        assert!(rec.cond_purity.0.is_none());
        assert!(rec.r.0.abs() < 1e-12);
        assert!(rec.cond_purity.1.is_some());
        assert!((rec.avg_cond_purity - 1.0).abs() < 1e-10);
    }
}
