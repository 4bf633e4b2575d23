//! `qpurity scan`: closed-form measurement-angle scan. One row per φ grid
//! point; all values analytic, so output is bit-identical across runs.

use qpurity::correlations::{avg_conditional_purity, discord_phi, info_deficit_phi};
use qpurity::measurement::{conditional_state, outcome_probabilities, Outcome};
use qpurity::states::ThetaPState;

use crate::config::RunConfig;
use crate::table::{write_out, Cell, Table};
use crate::CliResult;

/// Fixed scan schema: column order and names are stable output contract.
pub const SCAN_COLUMNS: &[&str] = &[
    "phi",
    "r_plus",
    "r_minus",
    "p_prime_plus",
    "p_prime_minus",
    "P_cond_plus",
    "P_cond_minus",
    "P_avg",
    "D_phi",
    "I2_phi",
];

/// Evaluate the scan schema on a φ grid. Conditional entries are missing
/// (CSV `nan`, JSON `null`) where the outcome has zero probability.
pub fn scan_table(s: &ThetaPState<f64>, phi_grid: &[f64]) -> Table {
    let mut table = Table::new(SCAN_COLUMNS);
    for &phi in phi_grid {
        let (r_plus, r_minus) = outcome_probabilities(s, phi);
        let mut p_prime = [None, None];
        let mut p_cond = [None, None];
        for (k, outcome) in Outcome::BOTH.into_iter().enumerate() {
            if let Ok(cond) = conditional_state(s, phi, outcome) {
                p_prime[k] = Some(cond.p_prime);
                p_cond[k] = Some(cond.purity);
            }
        }
        table.push(vec![
            Cell::Num(phi),
            Cell::Num(r_plus),
            Cell::Num(r_minus),
            p_prime[0].into(),
            p_prime[1].into(),
            p_cond[0].into(),
            p_cond[1].into(),
            Cell::Num(avg_conditional_purity(s, phi)),
            Cell::Num(discord_phi(s, phi)),
            Cell::Num(info_deficit_phi(s, phi)),
        ]);
    }
    table
}

pub fn run(cfg: &RunConfig) -> CliResult {
    let s = super::state(cfg.theta, cfg.p)?;
    let table = scan_table(&s, &cfg.phi_grid());
    write_out(cfg.out.as_deref(), &table.render(cfg.format))
}
