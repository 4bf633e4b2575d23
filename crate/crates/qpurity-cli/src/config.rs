//! Layered run configuration: built-in defaults, then an optional plain
//! key=value config file, then command-line flags — later layers win.

use std::path::{Path, PathBuf};

use qpurity::expsim::NoiseModel;

use crate::{CliError, CliResult, OutputFormat, ParamArgs};

const PI: f64 = std::f64::consts::PI;

/// Fully resolved parameters for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Family aperture, radians, ∈ [0, π].
    pub theta: f64,
    /// Mixture weight ∈ [0, 1].
    pub p: f64,
    /// Inclusive φ grid: start, stop, count (count ≥ 2).
    pub phi_start: f64,
    pub phi_stop: f64,
    pub phi_count: usize,
    /// Shots per measurement setting for Monte Carlo commands.
    pub counts: u64,
    /// Base RNG seed.
    pub seed: u64,
    pub format: OutputFormat,
    /// Whether the format came from a flag or config entry (as opposed to
    /// the default); `report` prints plain text unless a format was asked for.
    pub format_explicit: bool,
    pub out: Option<PathBuf>,
    /// Detector model for Monte Carlo commands (config-file keys
    /// `efficiency`, `dark_rate`; ideal by default).
    pub noise: NoiseModel,
}

/// The config-file/flag layer: every field optional.
#[derive(Default)]
struct Layer {
    theta: Option<f64>,
    p: Option<f64>,
    phi_start: Option<f64>,
    phi_stop: Option<f64>,
    phi_count: Option<usize>,
    counts: Option<u64>,
    seed: Option<u64>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    degrees: Option<bool>,
    efficiency: Option<f64>,
    dark_rate: Option<f64>,
}

impl RunConfig {
    pub fn resolve(args: &ParamArgs) -> Result<RunConfig, CliError> {
        let file_layer = match &args.config {
            Some(path) => parse_config_file(path)?,
            None => Layer::default(),
        };
        let flag_layer = Layer {
            theta: args.theta,
            p: args.p,
            phi_start: args.phi_start,
            phi_stop: args.phi_stop,
            phi_count: args.phi_count,
            counts: args.counts,
            seed: args.seed,
            format: args.format,
            out: args.out.clone(),
            degrees: args.degrees.then_some(true),
            efficiency: None,
            dark_rate: None,
        };

        let pick = |flag: Option<f64>, file: Option<f64>, default: f64| {
            flag.or(file).unwrap_or(default)
        };
        let degrees = flag_layer
            .degrees
            .or(file_layer.degrees)
            .unwrap_or(false);
        let angle = |x: f64| if degrees { x.to_radians() } else { x };

        let cfg = RunConfig {
            theta: angle(pick(flag_layer.theta, file_layer.theta, PI / 3.0)),
            p: pick(flag_layer.p, file_layer.p, 0.7),
            phi_start: angle(pick(flag_layer.phi_start, file_layer.phi_start, -PI)),
            phi_stop: angle(pick(flag_layer.phi_stop, file_layer.phi_stop, PI)),
            phi_count: flag_layer.phi_count.or(file_layer.phi_count).unwrap_or(241),
            counts: flag_layer.counts.or(file_layer.counts).unwrap_or(10_000),
            seed: flag_layer.seed.or(file_layer.seed).unwrap_or(7),
            format: flag_layer
                .format
                .or(file_layer.format)
                .unwrap_or(OutputFormat::Csv),
            format_explicit: flag_layer.format.or(file_layer.format).is_some(),
            out: flag_layer.out.or(file_layer.out),
            noise: NoiseModel {
                efficiency: file_layer.efficiency.unwrap_or(1.0),
                dark_rate: file_layer.dark_rate.unwrap_or(0.0),
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(0.0..=PI).contains(&self.theta) {
            return usage(format!("theta must lie in [0, π]; got {}", self.theta));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return usage(format!("p must lie in [0, 1]; got {}", self.p));
        }
        if self.phi_count < 2 {
            return usage(format!("phi-count must be ≥ 2; got {}", self.phi_count));
        }
        if !self.phi_start.is_finite() || !self.phi_stop.is_finite() {
            return usage("phi-start/phi-stop must be finite".into());
        }
        if self.counts == 0 {
            return usage("counts must be ≥ 1".into());
        }
        if !(0.0..=1.0).contains(&self.noise.efficiency) {
            return usage(format!(
                "efficiency must lie in [0, 1]; got {}",
                self.noise.efficiency
            ));
        }
        if !(0.0..=1.0).contains(&self.noise.dark_rate) {
            return usage(format!(
                "dark_rate must lie in [0, 1]; got {}",
                self.noise.dark_rate
            ));
        }
        Ok(())
    }

    /// The inclusive φ grid, computed by index (no accumulation drift).
    pub fn phi_grid(&self) -> Vec<f64> {
        let n = self.phi_count;
        let step = (self.phi_stop - self.phi_start) / (n - 1) as f64;
        (0..n).map(|i| self.phi_start + step * i as f64).collect()
    }
}

fn parse_config_file(path: &Path) -> Result<Layer, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config file {}: {e}", path.display())))?;
    let mut layer = Layer::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| {
            Err(CliError::Usage(format!(
                "{}:{}: {what}: {line}",
                path.display(),
                lineno + 1
            )))
        };
        let Some((key, value)) = line.split_once('=') else {
            return bad("expected key=value");
        };
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        macro_rules! num {
            () => {
                match value.parse() {
                    Ok(v) => Some(v),
                    Err(_) => return bad("invalid numeric value"),
                }
            };
        }
        match key.as_str() {
            "theta" => layer.theta = num!(),
            "p" => layer.p = num!(),
            "phi_start" => layer.phi_start = num!(),
            "phi_stop" => layer.phi_stop = num!(),
            "phi_count" => layer.phi_count = num!(),
            "counts" => layer.counts = num!(),
            "seed" => layer.seed = num!(),
            "efficiency" => layer.efficiency = num!(),
            "dark_rate" => layer.dark_rate = num!(),
            "format" => {
                layer.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return bad("format must be csv or json"),
                })
            }
            "out" => layer.out = Some(PathBuf::from(value)),
            "degrees" => {
                layer.degrees = Some(match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return bad("degrees must be true or false"),
                })
            }
            _ => return bad("unknown key"),
        }
    }
    Ok(layer)
}
