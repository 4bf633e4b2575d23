//! `qpurity verify`: cross-check the closed forms against the blind
//! optimizers (dense grid + golden-section refinement, eigen route) and
//! against dense matrix recomputation. Prints one PASS/FAIL line per check;
//! any FAIL exits with code 3.

use qpurity::correlations::{
    avg_conditional_purity, direction_angle, discord, discord_phi, geometric_deficit,
    global_post_purity, info_deficit_phi, max_avg_conditional_purity, optimal_direction_eigen,
    optimal_phi_conditional, optimal_phi_deficit, EigenKind,
};
use qpurity::measurement::outcome_probabilities;
use qpurity::oracle::{dense_recompute, minimize_over_phi};
use qpurity::states::{purity_ab, ThetaPState};

use crate::config::RunConfig;
use crate::{CliError, CliResult};

const PI: f64 = std::f64::consts::PI;
const VALUE_TOL: f64 = 1e-8;
const ANGLE_TOL: f64 = 1e-6;
const DENSE_TOL: f64 = 1e-10;
const EIGEN_TOL: f64 = 1e-8;

/// φ-curvature below which an argmin comparison at the tolerances above is
/// vacuous: with curvature c, double-precision noise ε limits any minimizer
/// (scan, eigen route, or closed form evaluated in f64) to ≈ √(ε/c) ≫ the
/// angle tolerances. Such near-flat objectives (θ near 0 or π, p near 0, ½,
/// or 1) keep their value checks; only the angle comparison is skipped.
const FLAT_CURVATURE_GATE: f64 = 1e-7;

struct Check {
    name: &'static str,
    tol: f64,
    outcome: Outcome,
}

enum Outcome {
    /// Comparison ran; holds the largest observed deviation.
    Measured(f64),
    /// Angle comparison skipped; holds the measured φ-curvature.
    FlatSkip(f64),
}

impl Check {
    fn failed(&self) -> bool {
        match self.outcome {
            Outcome::Measured(delta) => delta > self.tol,
            Outcome::FlatSkip(_) => false,
        }
    }
}

/// |f''| at `x` by central second difference, with the step matched to the
/// scan oracle's flat-minimum polish.
fn phi_curvature(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 2e-3;
    ((f(x - h) - 2.0 * f(x) + f(x + h)) / (h * h)).abs()
}

/// An angle-agreement check, demoted to a skip when the objective is too
/// flat at its optimum for any f64 minimizer to resolve the angle.
fn angle_check(
    name: &'static str,
    tol: f64,
    delta: f64,
    objective: impl Fn(f64) -> f64,
    arg_opt: f64,
) -> Check {
    let curvature = phi_curvature(objective, arg_opt);
    let outcome = if curvature < FLAT_CURVATURE_GATE {
        Outcome::FlatSkip(curvature)
    } else {
        Outcome::Measured(delta)
    };
    Check { name, tol, outcome }
}

/// |a − b| modulo π: measurement angles φ and φ±π label the same basis.
fn angle_delta_mod_pi(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(PI);
    if d > PI / 2.0 {
        d = PI - d;
    }
    d.abs()
}

fn oracle_err(e: qpurity::Error) -> CliError {
    CliError::Verification(format!("oracle failed to produce a comparison value: {e}"))
}

fn run_checks(s: &ThetaPState<f64>) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let degenerate = optimal_phi_conditional(s).degenerate;

    // Discord: closed-form minimum and minimizer vs blind φ scan.
    let (d_closed, d_phi_closed) = discord(s);
    let scan = minimize_over_phi(|phi| discord_phi(s, phi)).map_err(oracle_err)?;
    checks.push(Check {
        name: "discord value vs phi-scan oracle",
        tol: VALUE_TOL,
        outcome: Outcome::Measured((d_closed - scan.value_opt).abs()),
    });
    if !degenerate {
        checks.push(angle_check(
            "discord angle vs phi-scan oracle (mod pi)",
            ANGLE_TOL,
            angle_delta_mod_pi(d_phi_closed, scan.arg_opt),
            |phi| discord_phi(s, phi),
            scan.arg_opt,
        ));
    }

    // Maximal average conditional purity and its angle.
    let cond = optimal_phi_conditional(s);
    let scan = minimize_over_phi(|phi| -avg_conditional_purity(s, phi)).map_err(oracle_err)?;
    checks.push(Check {
        name: "max avg conditional purity vs phi-scan oracle",
        tol: VALUE_TOL,
        outcome: Outcome::Measured((max_avg_conditional_purity(s) + scan.value_opt).abs()),
    });
    if !degenerate {
        checks.push(angle_check(
            "conditional optimal angle vs phi-scan oracle (mod pi)",
            ANGLE_TOL,
            angle_delta_mod_pi(cond.phi, scan.arg_opt),
            |phi| -avg_conditional_purity(s, phi),
            scan.arg_opt,
        ));
    }

    // Post-measurement global purity maximum (information deficit minimum).
    let deficit = optimal_phi_deficit(s);
    let scan = minimize_over_phi(|phi| -global_post_purity(s, phi)).map_err(oracle_err)?;
    checks.push(Check {
        name: "min information deficit vs phi-scan oracle",
        tol: VALUE_TOL,
        outcome: Outcome::Measured(
            (global_post_purity(s, deficit.phi) + scan.value_opt).abs(),
        ),
    });
    if !degenerate {
        checks.push(angle_check(
            "deficit optimal angle vs phi-scan oracle (mod pi)",
            ANGLE_TOL,
            angle_delta_mod_pi(deficit.phi, scan.arg_opt),
            |phi| -global_post_purity(s, phi),
            scan.arg_opt,
        ));
    }

    // Dense matrix recomputation at a spread of angles.
    let mut dense_delta: f64 = 0.0;
    for phi in [0.0, 0.3, s.theta(), PI / 2.0, 2.5] {
        let record = dense_recompute(s, phi);
        let (r_plus, r_minus) = outcome_probabilities(s, phi);
        for delta in [
            (record.purity_ab - purity_ab(s)).abs(),
            (record.r.0 - r_plus).abs(),
            (record.r.1 - r_minus).abs(),
            (record.avg_cond_purity - avg_conditional_purity(s, phi)).abs(),
            (record.discord_phi - discord_phi(s, phi)).abs(),
            (record.info_deficit - info_deficit_phi(s, phi)).abs(),
        ] {
            dense_delta = dense_delta.max(delta);
        }
    }
    checks.push(Check {
        name: "closed forms vs dense matrix recomputation",
        tol: DENSE_TOL,
        outcome: Outcome::Measured(dense_delta),
    });

    // Eigen-route optimal directions vs the angle formulas. The eigenvector
    // direction degrades like ε/gap, and the eigenvalue gap tracks the
    // φ-curvature, so the same flatness gate applies.
    if !degenerate {
        let (k_cond, _) = optimal_direction_eigen(s, EigenKind::Conditional);
        checks.push(angle_check(
            "conditional optimal angle vs eigen route (mod pi)",
            EIGEN_TOL,
            angle_delta_mod_pi(direction_angle(&k_cond), cond.phi),
            |phi| -avg_conditional_purity(s, phi),
            cond.phi,
        ));
        let (k_def, _) = optimal_direction_eigen(s, EigenKind::Deficit);
        checks.push(angle_check(
            "deficit optimal angle vs eigen route (mod pi)",
            EIGEN_TOL,
            angle_delta_mod_pi(direction_angle(&k_def), deficit.phi),
            |phi| -global_post_purity(s, phi),
            deficit.phi,
        ));
        checks.push(Check {
            name: "geometric deficit consistency (2(P_AB - P'))",
            tol: VALUE_TOL,
            outcome: Outcome::Measured(
                (geometric_deficit(s)
                    - 2.0 * (purity_ab(s) - global_post_purity(s, deficit.phi)))
                .abs(),
            ),
        });
    }

    Ok(checks)
}

pub fn run(cfg: &RunConfig) -> CliResult {
    let s = super::state(cfg.theta, cfg.p)?;
    let checks = run_checks(&s)?;
    let mut failures = 0;
    let mut skips = 0;
    for check in &checks {
        match check.outcome {
            Outcome::Measured(delta) => {
                let status = if check.failed() { "FAIL" } else { "PASS" };
                println!(
                    "[verify] {}: {status} (max delta {delta:.3e}, tol {:.1e})",
                    check.name, check.tol
                );
            }
            Outcome::FlatSkip(curvature) => {
                skips += 1;
                println!(
                    "[verify] {}: SKIP (phi-curvature {curvature:.1e} below {FLAT_CURVATURE_GATE:.1e}; \
                     optimum angle is unconstrained at this flatness)",
                    check.name
                );
            }
        }
        if check.failed() {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} of {} verification checks failed",
            checks.len()
        )));
    }
    if skips > 0 {
        println!(
            "[verify] all {} checks passed ({skips} angle comparisons skipped on a flat objective)",
            checks.len() - skips
        );
    } else {
        println!("[verify] all {} checks passed", checks.len());
    }
    Ok(())
}
