//! `qpurity figure`: emit the data files behind the standard figures.
//!
//! fig1, fig4, fig5 are φ scans at θ = π/3 for p ∈ {0.5, 0.7} (the full scan
//! schema carries every curve: conditional weights for fig1, conditional
//! purities for fig4, discord/deficit for fig5). fig2 is a θ scan of the
//! optima. fig4 and fig5 additionally emit Monte Carlo point estimates with
//! a per-point seed column; rerunning with the same seed reproduces the
//! files byte for byte.

use std::path::{Path, PathBuf};

use qpurity::correlations::correlation_report;
use qpurity::expsim::{run_experiment_pipeline, NoiseModel};
use qpurity::states::ThetaPState;

use crate::config::RunConfig;
use crate::table::{write_file, Cell, Table};
use crate::{CliError, CliResult, FigureId, OutputFormat};

const PI: f64 = std::f64::consts::PI;
/// Figure panels are pinned to the standard parameters.
const FIGURE_THETA: f64 = PI / 3.0;
const FIGURE_P: [f64; 2] = [0.5, 0.7];
/// fig2 θ grid: [0, π/2] in steps of 0.0025π.
const FIG2_STEPS: usize = 200;
/// Monte Carlo overlays use a coarse φ grid.
const MC_POINTS: usize = 25;

const FIG2_COLUMNS: &[&str] = &[
    "theta",
    "P_cond_max",
    "discord",
    "I2_min",
    "phi_star_cond",
    "phi_star_deficit",
];

const MC_PURITY_COLUMNS: &[&str] = &[
    "phi",
    "seed",
    "r_plus_hat",
    "r_minus_hat",
    "P_cond_plus_hat",
    "P_cond_minus_hat",
    "P_avg_hat",
];

const MC_CORRELATION_COLUMNS: &[&str] = &["phi", "seed", "D_phi_hat", "I2_phi_hat"];

fn fig2_table(p: f64) -> Result<Table, CliError> {
    let mut table = Table::new(FIG2_COLUMNS);
    for i in 0..=FIG2_STEPS {
        let theta = 0.0025 * PI * i as f64;
        let s = super::state(theta, p)?;
        let r = correlation_report(&s);
        table.push(vec![
            Cell::Num(theta),
            Cell::Num(r.p_cond_max),
            Cell::Num(r.discord),
            Cell::Num(r.i2_min),
            Cell::Num(r.phi_star_cond),
            Cell::Num(r.phi_star_deficit),
        ]);
    }
    Ok(table)
}

/// Monte Carlo φ grid and per-point estimates. Each point runs the pipeline
/// on its own single-point grid with seed `base_seed + index`, so any row
/// can be reproduced in isolation from its seed column.
fn mc_estimates(
    s: &ThetaPState<f64>,
    cfg: &RunConfig,
    noise: &NoiseModel,
) -> Result<Vec<(f64, u64, qpurity::expsim::PhiEstimate)>, CliError> {
    let step = (cfg.phi_stop - cfg.phi_start) / (MC_POINTS - 1) as f64;
    let mut out = Vec::with_capacity(MC_POINTS);
    for i in 0..MC_POINTS {
        let phi = cfg.phi_start + step * i as f64;
        let seed = cfg.seed + i as u64;
        let mut estimates = run_experiment_pipeline(s, &[phi], cfg.counts, seed, noise)
            .map_err(|e| CliError::Usage(format!("Monte Carlo pipeline failed: {e}")))?;
        out.push((phi, seed, estimates.remove(0)));
    }
    Ok(out)
}

fn mc_purity_table(
    s: &ThetaPState<f64>,
    cfg: &RunConfig,
    noise: &NoiseModel,
) -> Result<Table, CliError> {
    let mut table = Table::new(MC_PURITY_COLUMNS);
    for (phi, seed, e) in mc_estimates(s, cfg, noise)? {
        table.push(vec![
            Cell::Num(phi),
            Cell::Int(seed),
            Cell::Num(e.r_hat.0),
            Cell::Num(e.r_hat.1),
            e.cond_purity_hat.0.into(),
            e.cond_purity_hat.1.into(),
            Cell::Num(e.avg_cond_purity_hat),
        ]);
    }
    Ok(table)
}

fn mc_correlation_table(
    s: &ThetaPState<f64>,
    cfg: &RunConfig,
    noise: &NoiseModel,
) -> Result<Table, CliError> {
    let mut table = Table::new(MC_CORRELATION_COLUMNS);
    for (phi, seed, e) in mc_estimates(s, cfg, noise)? {
        table.push(vec![
            Cell::Num(phi),
            Cell::Int(seed),
            Cell::Num(e.discord_phi_hat),
            Cell::Num(e.info_deficit_hat),
        ]);
    }
    Ok(table)
}

fn file_name(prefix: &str, p: f64, mc: bool, format: OutputFormat) -> String {
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let suffix = if mc { "_mc" } else { "" };
    format!("{prefix}_p{:03.0}{suffix}.{ext}", p * 100.0)
}

fn emit(dir: &Path, name: String, table: &Table, format: OutputFormat) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    write_file(&path, &table.render(format))?;
    Ok(path)
}

pub fn run(which: FigureId, cfg: &RunConfig) -> CliResult {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Io(format!("cannot create directory {}: {e}", dir.display())))?;

    let prefix = match which {
        FigureId::Fig1 => "fig1",
        FigureId::Fig2 => "fig2",
        FigureId::Fig4 => "fig4",
        FigureId::Fig5 => "fig5",
    };

    let mut written: Vec<PathBuf> = Vec::new();
    for p in FIGURE_P {
        match which {
            FigureId::Fig2 => {
                let table = fig2_table(p)?;
                written.push(emit(&dir, file_name(prefix, p, false, cfg.format), &table, cfg.format)?);
            }
            FigureId::Fig1 | FigureId::Fig4 | FigureId::Fig5 => {
                let s = super::state(FIGURE_THETA, p)?;
                let table = super::scan::scan_table(&s, &cfg.phi_grid());
                written.push(emit(&dir, file_name(prefix, p, false, cfg.format), &table, cfg.format)?);
                if which == FigureId::Fig4 {
                    let table = mc_purity_table(&s, cfg, &cfg.noise)?;
                    written.push(emit(&dir, file_name(prefix, p, true, cfg.format), &table, cfg.format)?);
                } else if which == FigureId::Fig5 {
                    let table = mc_correlation_table(&s, cfg, &cfg.noise)?;
                    written.push(emit(&dir, file_name(prefix, p, true, cfg.format), &table, cfg.format)?);
                }
            }
        }
    }

    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
