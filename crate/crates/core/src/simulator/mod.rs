//! Pseudo-spectral integration of the linearized four-field system on a
//! doubly periodic box.
//!
//! The evolved fields are the velocity components and the pressure
//! perturbation:
//!
//! ```text
//! ∂v1/∂t =  α·v2 − ∂p/∂x1
//! ∂v2/∂t = −α·v1
//! ∂v3/∂t =       − ∂p/∂x3
//! ∂p/∂t  = −c²(∂v1/∂x1 + ∂v3/∂x3)
//! ```
//!
//! Spatial derivatives are spectral (exact for band-limited fields), so
//! a grid-admissible eigenmode is represented exactly and the only
//! discretization error is the classical RK4 time stepping. The system
//! is linear, so no de-aliasing is applied — there is no quadratic
//! aliasing to remove. The quadratic invariant
//! `E = ∫ (v1²+v2²+v3²)/2 + p²/(2c²) dx` is conserved by the continuous
//! dynamics (the Coriolis term does no work) and tracks the integrator's
//! order discretely.

mod spectral;

pub use spectral::Spectral2d;

use thiserror::Error;

use crate::dispersion::{FluidParams, WaveVector};
use crate::planewave::{evaluate_mode, PlaneWaveMode};

/// RK4 is stable for purely oscillatory modes up to |γ·dt| ≈ 2.828;
/// 2.5 leaves a safety margin.
pub const RK4_STABILITY_LIMIT: f64 = 2.5;

/// Default time step as a fraction of the shortest resolved period.
pub const DEFAULT_DT_FACTOR: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("time step {dt} exceeds the RK4 stability bound {max_dt}")]
    StabilityViolation { dt: f64, max_dt: f64 },
    #[error("field values are not finite")]
    NonFiniteField,
}

/// Doubly periodic grid: power-of-two point counts, box lengths in
/// physical units. Admissible wave numbers are `2π·m/L` per axis with
/// `|m| ≤ n/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub n1: usize,
    pub n3: usize,
    pub l1: f64,
    pub l3: f64,
}

impl Grid {
    pub fn new(n1: usize, n3: usize, l1: f64, l3: f64) -> Result<Self, SimError> {
        for (name, n) in [("n1", n1), ("n3", n3)] {
            if n < 8 || !n.is_power_of_two() {
                return Err(SimError::InvalidGrid(format!(
                    "{name} = {n} must be a power of two >= 8"
                )));
            }
        }
        for (name, l) in [("l1", l1), ("l3", l3)] {
            if !l.is_finite() || l <= 0.0 {
                return Err(SimError::InvalidGrid(format!("{name} = {l} must be > 0")));
            }
        }
        Ok(Self { n1, n3, l1, l3 })
    }

    pub fn num_points(&self) -> usize {
        self.n1 * self.n3
    }

    pub fn cell_area(&self) -> f64 {
        (self.l1 / self.n1 as f64) * (self.l3 / self.n3 as f64)
    }

    pub fn index(&self, i1: usize, i3: usize) -> usize {
        i3 * self.n1 + i1
    }

    pub fn point(&self, i1: usize, i3: usize) -> (f64, f64) {
        (
            i1 as f64 * self.l1 / self.n1 as f64,
            i3 as f64 * self.l3 / self.n3 as f64,
        )
    }

    /// Wave vector of the grid mode with integer indices (m1, m3).
    pub fn mode_wave_vector(&self, m1: i64, m3: i64) -> WaveVector {
        let tau = 2.0 * std::f64::consts::PI;
        WaveVector::new(tau * m1 as f64 / self.l1, tau * m3 as f64 / self.l3)
    }

    /// Largest wave-number magnitude representable on the grid.
    pub fn max_wavenumber(&self) -> f64 {
        let k1 = std::f64::consts::PI * self.n1 as f64 / self.l1;
        let k3 = std::f64::consts::PI * self.n3 as f64 / self.l3;
        k1.hypot(k3)
    }
}

/// The four real fields plus the current time. Storage is row-major
/// with the x1 index fastest: `index = i3·n1 + i1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    pub v3: Vec<f64>,
    pub p: Vec<f64>,
    pub t: f64,
}

impl FieldState {
    pub fn zeros(grid: &Grid) -> Self {
        let n = grid.num_points();
        Self {
            v1: vec![0.0; n],
            v2: vec![0.0; n],
            v3: vec![0.0; n],
            p: vec![0.0; n],
            t: 0.0,
        }
    }

    /// Seed the grid with the real part of `amplitude · mode` at t = 0.
    pub fn from_mode(grid: &Grid, mode: &PlaneWaveMode, amplitude: f64) -> Self {
        let mut state = Self::zeros(grid);
        for i3 in 0..grid.n3 {
            for i1 in 0..grid.n1 {
                let values = evaluate_mode(mode, grid.point(i1, i3), 0.0);
                let idx = grid.index(i1, i3);
                state.v1[idx] = amplitude * values[0];
                state.v2[idx] = amplitude * values[1];
                state.v3[idx] = amplitude * values[2];
                state.p[idx] = amplitude * values[3];
            }
        }
        state
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.iter().all(|v| v.is_finite()))
    }

    /// Largest speed `|v|` on the grid; used for the nonlinearity
    /// diagnostic ε.
    pub fn max_speed(&self) -> f64 {
        let mut max = 0.0_f64;
        for i in 0..self.v1.len() {
            let s = self.v1[i] * self.v1[i] + self.v2[i] * self.v2[i] + self.v3[i] * self.v3[i];
            max = max.max(s);
        }
        max.sqrt()
    }

    pub fn fields(&self) -> [&Vec<f64>; 4] {
        [&self.v1, &self.v2, &self.v3, &self.p]
    }

    /// `self + factor · other`, keeping `t` from an explicit argument.
    fn add_scaled(&self, other: &FieldState, factor: f64, t: f64) -> FieldState {
        let comb = |a: &[f64], b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + factor * y).collect()
        };
        FieldState {
            v1: comb(&self.v1, &other.v1),
            v2: comb(&self.v2, &other.v2),
            v3: comb(&self.v3, &other.v3),
            p: comb(&self.p, &other.p),
            t,
        }
    }
}

/// Everything needed to run a simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub params: FluidParams,
    pub grid: Grid,
    pub dt: f64,
    pub n_steps: usize,
    /// Snapshot cadence in steps; the state at step 0 is always recorded.
    pub record_every: usize,
    /// Grid indices (i1, i3) of the probe point recorded every step.
    pub probe: (usize, usize),
}

impl SimConfig {
    /// Largest stable time step on this grid: `2.5/γ_max` with `γ_max`
    /// the acoustic-branch bound at the grid's largest wave number.
    pub fn max_stable_dt(params: &FluidParams, grid: &Grid) -> f64 {
        RK4_STABILITY_LIMIT / params.frequency_upper_bound(grid.max_wavenumber())
    }

    /// Default step: a tenth of the shortest resolved period.
    pub fn default_dt(params: &FluidParams, grid: &Grid) -> f64 {
        DEFAULT_DT_FACTOR * 2.0 * std::f64::consts::PI
            / params.frequency_upper_bound(grid.max_wavenumber())
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(SimError::InvalidConfig(format!(
                "dt = {} must be positive and finite",
                self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(SimError::InvalidConfig(
                "record_every must be >= 1".to_string(),
            ));
        }
        if self.probe.0 >= self.grid.n1 || self.probe.1 >= self.grid.n3 {
            return Err(SimError::InvalidConfig(format!(
                "probe ({}, {}) outside grid ({}, {})",
                self.probe.0, self.probe.1, self.grid.n1, self.grid.n3
            )));
        }
        let max_dt = Self::max_stable_dt(&self.params, &self.grid);
        if self.dt > max_dt {
            return Err(SimError::StabilityViolation {
                dt: self.dt,
                max_dt,
            });
        }
        Ok(())
    }
}

/// Record of a completed run: snapshots every `record_every` steps plus
/// per-step probe values `(v1, v2, v3, p)` and total energy.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub snapshots: Vec<FieldState>,
    pub probe_series: Vec<[f64; 4]>,
    pub energy_series: Vec<f64>,
    pub dt: f64,
}

/// Time tendencies of all four fields; spatial derivatives spectral.
/// The returned state carries the time at which the tendency was taken.
pub fn rhs(
    params: &FluidParams,
    spectral: &Spectral2d,
    state: &FieldState,
) -> Result<FieldState, SimError> {
    if !state.is_finite() {
        return Err(SimError::NonFiniteField);
    }
    let dp_dx1 = spectral.deriv_x1(&state.p);
    let dp_dx3 = spectral.deriv_x3(&state.p);
    let dv1_dx1 = spectral.deriv_x1(&state.v1);
    let dv3_dx3 = spectral.deriv_x3(&state.v3);

    let n = state.v1.len();
    let alpha = params.alpha;
    let c2 = params.c * params.c;
    let mut out = FieldState::zeros(spectral.grid());
    out.t = state.t;
    for i in 0..n {
        out.v1[i] = alpha * state.v2[i] - dp_dx1[i];
        out.v2[i] = -alpha * state.v1[i];
        out.v3[i] = -dp_dx3[i];
        out.p[i] = -c2 * (dv1_dx1[i] + dv3_dx3[i]);
    }
    Ok(out)
}

/// Advance the state by one classical RK4 step of size `config.dt`.
pub fn step(
    config: &SimConfig,
    spectral: &Spectral2d,
    state: &FieldState,
) -> Result<FieldState, SimError> {
    let max_dt = SimConfig::max_stable_dt(&config.params, &config.grid);
    if config.dt > max_dt {
        return Err(SimError::StabilityViolation {
            dt: config.dt,
            max_dt,
        });
    }
    let dt = config.dt;
    let t = state.t;
    let s1 = rhs(&config.params, spectral, state)?;
    let s2 = rhs(
        &config.params,
        spectral,
        &state.add_scaled(&s1, 0.5 * dt, t + 0.5 * dt),
    )?;
    let s3 = rhs(
        &config.params,
        spectral,
        &state.add_scaled(&s2, 0.5 * dt, t + 0.5 * dt),
    )?;
    let s4 = rhs(&config.params, spectral, &state.add_scaled(&s3, dt, t + dt))?;

    let n = state.v1.len();
    let w = dt / 6.0;
    let mut out = FieldState::zeros(&config.grid);
    out.t = t + dt;
    for i in 0..n {
        out.v1[i] = state.v1[i] + w * (s1.v1[i] + 2.0 * s2.v1[i] + 2.0 * s3.v1[i] + s4.v1[i]);
        out.v2[i] = state.v2[i] + w * (s1.v2[i] + 2.0 * s2.v2[i] + 2.0 * s3.v2[i] + s4.v2[i]);
        out.v3[i] = state.v3[i] + w * (s1.v3[i] + 2.0 * s2.v3[i] + 2.0 * s3.v3[i] + s4.v3[i]);
        out.p[i] = state.p[i] + w * (s1.p[i] + 2.0 * s2.p[i] + 2.0 * s3.p[i] + s4.p[i]);
    }
    Ok(out)
}

/// Discrete total energy: cell-area-weighted sum of
/// `(v1² + v2² + v3²)/2 + p²/(2c²)`.
pub fn total_energy(params: &FluidParams, grid: &Grid, state: &FieldState) -> f64 {
    let c2 = params.c * params.c;
    let mut sum = 0.0;
    for i in 0..state.v1.len() {
        let kinetic =
            state.v1[i] * state.v1[i] + state.v2[i] * state.v2[i] + state.v3[i] * state.v3[i];
        sum += 0.5 * kinetic + state.p[i] * state.p[i] / (2.0 * c2);
    }
    sum * grid.cell_area()
}

/// Integrate `n_steps` steps from `initial`, recording the probe and the
/// energy every step and a full snapshot every `record_every` steps.
/// Deterministic: identical inputs give bitwise identical records.
pub fn run(config: &SimConfig, initial: &FieldState) -> Result<RunRecord, SimError> {
    config.validate()?;
    if initial.v1.len() != config.grid.num_points() {
        return Err(SimError::InvalidConfig(
            "initial state does not match the grid".to_string(),
        ));
    }
    let spectral = Spectral2d::new(&config.grid);
    let probe_idx = config.grid.index(config.probe.0, config.probe.1);
    let probe_of = |s: &FieldState| [s.v1[probe_idx], s.v2[probe_idx], s.v3[probe_idx], s.p[probe_idx]];

    let mut record = RunRecord {
        snapshots: vec![initial.clone()],
        probe_series: vec![probe_of(initial)],
        energy_series: vec![total_energy(&config.params, &config.grid, initial)],
        dt: config.dt,
    };
    let mut state = initial.clone();
    for step_idx in 1..=config.n_steps {
        state = step(config, &spectral, &state)?;
        record.probe_series.push(probe_of(&state));
        record
            .energy_series
            .push(total_energy(&config.params, &config.grid, &state));
        if step_idx % config.record_every == 0 {
            record.snapshots.push(state.clone());
        }
    }
    Ok(record)
}
