//! Dispersion sweeps: evaluate both branches and their velocities over a
//! grid of wave numbers and propagation angles.
//!
//! Rows are independent, so the sweep is embarrassingly parallel; with
//! the `parallel` feature the rows are computed on the rayon pool.
//! Ordering and values are identical either way.

use thiserror::Error;

use crate::dispersion::{
    classify_regime, frequency_branches, group_velocity, phase_velocity, FluidParams,
    PropagationRegime, Velocity2, WaveVector,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    Invalid(String),
}

/// Linear range of wave-number magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KRange {
    pub k_min: f64,
    pub k_max: f64,
    pub n_samples: usize,
}

impl KRange {
    pub fn sample(&self, i: usize) -> f64 {
        if self.n_samples == 1 {
            self.k_min
        } else {
            self.k_min + (self.k_max - self.k_min) * i as f64 / (self.n_samples - 1) as f64
        }
    }
}

/// A full sweep request: one row per (theta, k) pair, angles in the
/// given order, wave numbers ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub params: FluidParams,
    pub thetas: Vec<f64>,
    pub k_range: KRange,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        let r = &self.k_range;
        if !r.k_min.is_finite() || r.k_min <= 0.0 {
            return Err(SweepError::Invalid(format!(
                "k_min = {} must be > 0",
                r.k_min
            )));
        }
        if !r.k_max.is_finite() || r.k_max < r.k_min {
            return Err(SweepError::Invalid(format!(
                "k_max = {} must be >= k_min",
                r.k_max
            )));
        }
        if r.n_samples < 2 {
            return Err(SweepError::Invalid(format!(
                "n_samples = {} must be >= 2",
                r.n_samples
            )));
        }
        if self.thetas.is_empty() {
            return Err(SweepError::Invalid("theta list is empty".to_string()));
        }
        for &t in &self.thetas {
            if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&t) {
                return Err(SweepError::Invalid(format!(
                    "theta = {t} outside [0, pi/2]"
                )));
            }
        }
        Ok(())
    }
}

/// One sweep row. Group velocities are `None` at branch degeneracies
/// (rendered as `NA` downstream); the regime classifies the acoustic
/// branch frequency at this angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub k: f64,
    pub gamma_minus: f64,
    pub gamma_plus: f64,
    pub vg_plus: Option<Velocity2>,
    pub vg_minus: Option<Velocity2>,
    pub vph_plus: Velocity2,
    pub regime: PropagationRegime,
}

fn compute_row(params: &FluidParams, theta: f64, k: f64) -> SweepRow {
    let kvec = WaveVector::from_polar(k, theta);
    let branches = frequency_branches(params, kvec).expect("k > 0 by validation");
    let vg_plus = group_velocity(params, kvec, branches.gamma_plus).ok();
    let vg_minus = group_velocity(params, kvec, branches.gamma_minus).ok();
    let vph_plus = phase_velocity(kvec, branches.gamma_plus).expect("k > 0 by validation");
    SweepRow {
        theta,
        k,
        gamma_minus: branches.gamma_minus,
        gamma_plus: branches.gamma_plus,
        vg_plus,
        vg_minus,
        vph_plus,
        regime: classify_regime(params, branches.gamma_plus, theta),
    }
}

fn sample_points(spec: &SweepSpec) -> Vec<(f64, f64)> {
    let mut points = Vec::with_capacity(spec.thetas.len() * spec.k_range.n_samples);
    for &theta in &spec.thetas {
        for i in 0..spec.k_range.n_samples {
            points.push((theta, spec.k_range.sample(i)));
        }
    }
    points
}

/// Compute all rows, in parallel when the `parallel` feature is active.
pub fn compute_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let points = sample_points(spec);
    Ok(crate::par::map_collect(&points, |&(theta, k)| {
        compute_row(&spec.params, theta, k)
    }))
}

/// Single-threaded row computation, always available; the benchmark
/// baseline the parallel path is compared against.
pub fn compute_rows_sequential(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    Ok(sample_points(spec)
        .iter()
        .map(|&(theta, k)| compute_row(&spec.params, theta, k))
        .collect())
}

/// Explicit rayon-pool row computation.
#[cfg(feature = "parallel")]
pub fn compute_rows_parallel(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    use rayon::prelude::*;
    spec.validate()?;
    Ok(sample_points(spec)
        .par_iter()
        .map(|&(theta, k)| compute_row(&spec.params, theta, k))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn spec(alpha: f64, thetas: Vec<f64>, n: usize) -> SweepSpec {
        SweepSpec {
            params: FluidParams::new(alpha, 1.0).unwrap(),
            thetas,
            k_range: KRange {
                k_min: 0.1,
                k_max: 10.0,
                n_samples: n,
            },
        }
    }

    #[test]
    fn validation_catches_bad_ranges() {
        let mut s = spec(1.0, vec![0.3], 10);
        s.k_range.k_min = 0.0;
        assert!(s.validate().is_err());
        let mut s = spec(1.0, vec![0.3], 1);
        assert!(s.validate().is_err());
        s = spec(1.0, vec![2.0], 10);
        assert!(s.validate().is_err());
        assert!(spec(1.0, vec![0.3], 10).validate().is_ok());
    }

    #[test]
    fn rest_fluid_rows_have_sound_speed_and_no_dispersion() {
        let rows = compute_rows(&spec(0.0, vec![0.4, 1.2], 20)).unwrap();
        for row in rows {
            assert!((row.gamma_plus - row.k).abs() <= 1e-12 * row.k);
            let vg = row.vg_plus.expect("nondegenerate at alpha = 0");
            assert!((vg.v1 - row.vph_plus.v1).abs() <= 1e-12);
            assert!((vg.v3 - row.vph_plus.v3).abs() <= 1e-12);
            // Inertial branch collapses to γ = 0: degenerate gradient.
            assert_eq!(row.gamma_minus, 0.0);
            assert!(row.vg_minus.is_none());
        }
    }

    #[test]
    fn forbidden_zone_never_sampled() {
        let rows = compute_rows(&spec(1.0, vec![FRAC_PI_3], 2000)).unwrap();
        for row in &rows {
            for g in [row.gamma_minus, row.gamma_plus] {
                assert!(!(g > 0.5 + 1e-6 && g < 1.0 - 1e-6), "gamma {g} in zone");
            }
        }
    }

    #[test]
    fn sequential_and_dispatch_agree_bitwise() {
        let s = spec(2.0, vec![0.0, 0.7, std::f64::consts::FRAC_PI_2], 50);
        let a = compute_rows(&s).unwrap();
        let b = compute_rows_sequential(&s).unwrap();
        assert_eq!(a, b);
        #[cfg(feature = "parallel")]
        {
            let c = compute_rows_parallel(&s).unwrap();
            assert_eq!(a, c);
        }
    }

    #[test]
    fn row_order_is_theta_then_k_ascending() {
        let s = spec(1.0, vec![0.2, 0.9], 3);
        let rows = compute_rows(&s).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].theta, 0.2);
        assert_eq!(rows[3].theta, 0.9);
        assert!(rows[0].k < rows[1].k && rows[1].k < rows[2].k);
        assert_eq!(rows[2].k, 10.0);
    }
}
