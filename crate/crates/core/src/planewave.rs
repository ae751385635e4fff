//! Exact plane-wave eigenmodes of the linearized rotating-fluid system.
//!
//! Substituting `exp(i(k·x + γt))` into the four field equations fixes
//! the amplitude ratios (polarization relations). With the pressure
//! amplitude normalized to one:
//!
//! ```text
//! A_v1 = −γk₁/(γ² − α²)
//! A_v2 = iα·A_v1/γ
//! A_v3 = −k₃/γ
//! A_p  = 1
//! ```
//!
//! valid away from the singular frequencies γ = 0 and γ = α. Physical
//! fields are the real part of the complex mode, i.e. the superposition
//! of the ±γ conjugate pair; spectral diagnostics therefore see a single
//! line at |γ|.

use num_complex::Complex64;
use thiserror::Error;

use crate::dispersion::{frequency_branches, Branch, DispersionError, FluidParams, WaveVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModeError {
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    #[error("polarization singular at gamma={gamma} (gamma = 0 or gamma = alpha)")]
    SingularPolarization { gamma: f64 },
    #[error("phase speed must be positive, got {0}")]
    NonPositivePhaseSpeed(f64),
}

/// A single eigenmode: wave vector, branch frequency and the complex
/// amplitude 4-tuple in field order (v1, v2, v3, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveMode {
    pub kvec: WaveVector,
    pub gamma: f64,
    pub amplitudes: [Complex64; 4],
}

/// Construct the eigenmode on the requested dispersion branch,
/// pressure-normalized.
///
/// Rejects the measure-zero singular polarizations (γ = 0, reached by
/// the inertial branch at θ = π/2, and γ = α) instead of regularizing
/// them.
pub fn build_eigenmode(
    params: &FluidParams,
    kvec: WaveVector,
    branch: Branch,
) -> Result<PlaneWaveMode, ModeError> {
    let gamma = frequency_branches(params, kvec)?.get(branch);
    let a2 = params.alpha * params.alpha;
    let g2 = gamma * gamma;
    if gamma == 0.0 || g2 == a2 {
        return Err(ModeError::SingularPolarization { gamma });
    }
    let a_v1 = Complex64::new(-gamma * kvec.k1 / (g2 - a2), 0.0);
    let a_v2 = Complex64::i() * params.alpha / gamma * a_v1;
    let a_v3 = Complex64::new(-kvec.k3 / gamma, 0.0);
    let a_p = Complex64::new(1.0, 0.0);
    Ok(PlaneWaveMode {
        kvec,
        gamma,
        amplitudes: [a_v1, a_v2, a_v3, a_p],
    })
}

/// Real field values `(v1, v2, v3, p)` of the mode at a point and time:
/// the real part of `A·exp(i(k·x + γt))`.
pub fn evaluate_mode(mode: &PlaneWaveMode, point: (f64, f64), t: f64) -> [f64; 4] {
    let phase = mode.kvec.k1 * point.0 + mode.kvec.k3 * point.1 + mode.gamma * t;
    let rot = Complex64::from_polar(1.0, phase);
    mode.amplitudes.map(|a| (a * rot).re)
}

/// Nonlinearity parameter ε = v₀/v_ph: velocity amplitude over phase
/// speed. The linearized equations are trustworthy only for ε ≪ 1;
/// callers should warn when ε ≥ 0.1.
pub fn linearity_parameter(v0: f64, vph_magnitude: f64) -> Result<f64, ModeError> {
    if vph_magnitude.is_nan() || vph_magnitude <= 0.0 {
        return Err(ModeError::NonPositivePhaseSpeed(vph_magnitude));
    }
    Ok(v0 / vph_magnitude)
}

/// Residuals of the four linearized field equations for a modal
/// amplitude tuple; all four vanish exactly on an eigenmode.
///
/// Equation order: x1-momentum, x2-momentum, x3-momentum, continuity.
pub fn mode_equation_residuals(params: &FluidParams, mode: &PlaneWaveMode) -> [Complex64; 4] {
    let i = Complex64::i();
    let [v1, v2, v3, p] = mode.amplitudes;
    let g = mode.gamma;
    let (k1, k3) = (mode.kvec.k1, mode.kvec.k3);
    let alpha = params.alpha;
    let c2 = params.c * params.c;
    [
        i * g * v1 - alpha * v2 + i * k1 * p,
        i * g * v2 + alpha * v1,
        i * g * v3 + i * k3 * p,
        i * g * p / c2 + i * k1 * v1 + i * k3 * v3,
    ]
}
