//! `qpurity report`: every closed-form measure of one family state, as
//! aligned text (default) or a single-row table in the requested format.

use qpurity::correlations::{correlation_report, CorrelationReport};

use crate::config::RunConfig;
use crate::table::{fmt17, write_out, Cell, Table};
use crate::CliResult;

const REPORT_COLUMNS: &[&str] = &[
    "theta",
    "p",
    "P_AB",
    "P_B",
    "P_cond_max",
    "phi_star_cond",
    "discord",
    "S_AB",
    "S_B",
    "S_cond",
    "C_AC",
    "I2_min",
    "phi_star_deficit",
    "I2_renyi_min",
    "theta_above_transition",
    "degenerate",
];

fn report_cells(r: &CorrelationReport<f64>) -> Vec<Cell> {
    vec![
        Cell::Num(r.theta),
        Cell::Num(r.p),
        Cell::Num(r.p_ab),
        Cell::Num(r.p_b),
        Cell::Num(r.p_cond_max),
        Cell::Num(r.phi_star_cond),
        Cell::Num(r.discord),
        Cell::Num(r.s_ab_vn),
        Cell::Num(r.s_b_vn),
        Cell::Num(r.s_cond_vn),
        Cell::Num(r.concurrence_ac),
        Cell::Num(r.i2_min),
        Cell::Num(r.phi_star_deficit),
        Cell::Num(r.i2_renyi_min),
        Cell::Bool(r.theta_c_flag),
        Cell::Bool(r.degenerate),
    ]
}

fn render_text(r: &CorrelationReport<f64>) -> String {
    let mut out = String::new();
    let width = REPORT_COLUMNS.iter().map(|c| c.len()).max().unwrap_or(0);
    for (name, cell) in REPORT_COLUMNS.iter().zip(report_cells(r)) {
        let value = match cell {
            Cell::Num(x) => fmt17(x),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Missing => "nan".into(),
        };
        out.push_str(&format!("{name:width$} = {value}\n"));
    }
    out
}

pub fn run(cfg: &RunConfig, verify: bool) -> CliResult {
    let s = super::state(cfg.theta, cfg.p)?;
    let report = correlation_report(&s);

    let body = if cfg.format_explicit {
        let mut table = Table::new(REPORT_COLUMNS);
        table.push(report_cells(&report));
        table.render(cfg.format)
    } else {
        render_text(&report)
    };
    write_out(cfg.out.as_deref(), &body)?;

    if verify {
        super::verify::run(cfg)?;
    }
    Ok(())
}
