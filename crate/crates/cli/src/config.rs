//! JSON configuration schemas and their translation into core types.
//!
//! Parse errors surface serde_json's line/column diagnostics; semantic
//! errors name the offending field. Mode indices select grid-admissible
//! wave vectors `2π·m/L`, so seeded eigenmodes are exactly periodic on
//! the box.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::path::Path;

use rotowave_core::dispersion::{Branch, FluidParams, WaveVector};
use rotowave_core::simulator::{Grid, SimConfig};
use rotowave_core::sweep::{KRange, SweepSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionConfig {
    pub alpha: f64,
    pub c: f64,
    pub theta_list: Vec<f64>,
    pub k_range: KRangeConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KRangeConfig {
    pub k_min: f64,
    pub k_max: f64,
    pub n_samples: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub alpha: f64,
    pub c: f64,
    pub grid: GridConfig,
    pub mode: ModeConfig,
    #[serde(default = "default_dt_factor")]
    pub dt_factor: f64,
    pub n_steps: usize,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default)]
    pub probe: [usize; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n1: usize,
    pub n3: usize,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L3")]
    pub l3: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub m1: i64,
    pub m3: i64,
    pub branch: BranchConfig,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchConfig {
    Minus,
    Plus,
}

impl From<BranchConfig> for Branch {
    fn from(b: BranchConfig) -> Branch {
        match b {
            BranchConfig::Minus => Branch::Minus,
            BranchConfig::Plus => Branch::Plus,
        }
    }
}

fn default_dt_factor() -> f64 {
    0.1
}

fn default_record_every() -> usize {
    10
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("config parse error in {}", path.display()))
}

/// Load a dispersion sweep config and turn it into a validated spec.
pub fn load_sweep_spec(path: &Path) -> Result<SweepSpec> {
    let cfg: DispersionConfig = parse_json(path)?;
    let params = FluidParams::new(cfg.alpha, cfg.c).context("config fields alpha/c")?;
    let spec = SweepSpec {
        params,
        thetas: cfg.theta_list,
        k_range: KRange {
            k_min: cfg.k_range.k_min,
            k_max: cfg.k_range.k_max,
            n_samples: cfg.k_range.n_samples,
        },
    };
    spec.validate().context("config field k_range/theta_list")?;
    Ok(spec)
}

/// A fully validated simulation request.
pub struct SimulationSetup {
    pub config: SimConfig,
    pub kvec: WaveVector,
    pub branch: Branch,
    pub amplitude: f64,
}

/// Load a simulation config; every semantic failure names its field.
pub fn load_simulation(path: &Path) -> Result<SimulationSetup> {
    let cfg: SimulateConfig = parse_json(path)?;
    let params = FluidParams::new(cfg.alpha, cfg.c).context("config fields alpha/c")?;
    let grid = Grid::new(cfg.grid.n1, cfg.grid.n3, cfg.grid.l1, cfg.grid.l3)
        .context("config field grid")?;

    let (m1, m3) = (cfg.mode.m1, cfg.mode.m3);
    if m1 == 0 && m3 == 0 {
        bail!("config field mode: m1 and m3 must not both be zero");
    }
    // Nyquist modes cannot carry a traveling wave on a real grid.
    for (name, m, n) in [("m1", m1, grid.n1), ("m3", m3, grid.n3)] {
        let limit = (n / 2 - 1) as i64;
        if m.abs() > limit {
            bail!("config field mode.{name}: |{m}| exceeds the largest admissible index {limit}");
        }
    }
    if !(cfg.mode.amplitude.is_finite()) {
        bail!("config field mode.amplitude: must be finite");
    }
    if !cfg.dt_factor.is_finite() || cfg.dt_factor <= 0.0 {
        bail!("config field dt_factor: must be positive and finite");
    }

    let gamma_max = params.frequency_upper_bound(grid.max_wavenumber());
    let dt = cfg.dt_factor * 2.0 * std::f64::consts::PI / gamma_max;
    let config = SimConfig {
        params,
        grid,
        dt,
        n_steps: cfg.n_steps,
        record_every: cfg.record_every,
        probe: (cfg.probe[0], cfg.probe[1]),
    };
    // Catches stability violations and probe bounds before any output.
    config.validate().context("config")?;
    Ok(SimulationSetup {
        config,
        kvec: grid.mode_wave_vector(m1, m3),
        branch: cfg.mode.branch.into(),
        amplitude: cfg.mode.amplitude,
    })
}
