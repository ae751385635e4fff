//! Analytic dispersion theory for small-amplitude waves in a rotating
//! compressible fluid.
//!
//! Plane waves `exp(i(k·x + γt))` in a fluid rotating about the x3 axis
//! obey the quartic relation
//!
//! ```text
//! γ⁴ − γ²α² − c²γ²k² + c²α²k₃² = 0
//! ```
//!
//! which is a quadratic `X² − (α² + c²k²)·X + c²α²k₃² = 0` in `X = γ²`.
//! Its discriminant satisfies `D ≥ (α² − c²k²)² ≥ 0`, so both roots are
//! real and non-negative: the inertial (lower) branch `γ₋ ≤ α|cosθ|` and
//! the acoustic (upper) branch `γ₊ ≥ max(α, ck)`. Everything in this
//! module is a closed-form consequence of that relation: the inverse map
//! `k(γ, θ)`, group and phase velocities, the oblique forbidden zone
//! `α·cosθ < γ < α`, evanescent decay at `θ = π/2`, and the
//! characteristic cone bounding group-velocity directions.
//!
//! Frequencies are reported non-negative throughout; `±γ` describe the
//! same physical mode since real fields superpose the conjugate pair.

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

use crate::dd::Dd;

/// Group-velocity denominators below `1e-12·max(1, γ²)` are treated as a
/// branch crossing rather than returning huge values.
pub const GROUP_DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("invalid fluid parameters: alpha={alpha} must be finite and >= 0, c={c} finite and > 0")]
    InvalidParams { alpha: f64, c: f64 },
    #[error("wave vector has zero magnitude")]
    ZeroWaveVector,
    #[error("frequency must be non-negative, got {0}")]
    NegativeFrequency(f64),
    #[error("angle must lie in [0, pi/2], got {0}")]
    AngleOutOfRange(f64),
    #[error("group velocity degenerate: branch crossing or zero frequency at k=({k1}, {k3}), gamma={gamma}")]
    DegenerateGroupVelocity { k1: f64, k3: f64, gamma: f64 },
    #[error("group angle undefined: requires k3 != 0 and gamma != alpha")]
    GroupAngleSingular,
    #[error("characteristic cone degenerates to the rotation axis at gamma = 0")]
    ZeroFrequencyCone,
}

/// Bulk properties of the rotating fluid.
///
/// `alpha` is twice the angular velocity of the rotation about x3 and `c`
/// the sound speed. The equilibrium density is fixed at one, so `p` is a
/// kinematic pressure throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    pub alpha: f64,
    pub c: f64,
    pub rho0: f64,
}

impl FluidParams {
    pub fn new(alpha: f64, c: f64) -> Result<Self, DispersionError> {
        if !alpha.is_finite() || alpha < 0.0 || !c.is_finite() || c <= 0.0 {
            return Err(DispersionError::InvalidParams { alpha, c });
        }
        Ok(Self { alpha, c, rho0: 1.0 })
    }

    /// Upper bound `sqrt(α² + c²k²)` on the acoustic branch frequency for
    /// wave numbers up to `k` (the sum of the quadratic's roots).
    pub fn frequency_upper_bound(&self, k: f64) -> f64 {
        (self.alpha * self.alpha + self.c * self.c * k * k).sqrt()
    }
}

/// 2D wave vector in the (x1, x3) plane; x3 is the rotation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub k1: f64,
    pub k3: f64,
}

impl WaveVector {
    pub fn new(k1: f64, k3: f64) -> Self {
        Self { k1, k3 }
    }

    /// Wave vector of magnitude `k` at angle `theta` from the rotation
    /// axis. The endpoints `theta = 0` and `theta = pi/2` map to exact
    /// axis-aligned vectors so that degenerate geometry stays exact.
    pub fn from_polar(k: f64, theta: f64) -> Self {
        if theta == 0.0 {
            Self { k1: 0.0, k3: k }
        } else if theta == FRAC_PI_2 {
            Self { k1: k, k3: 0.0 }
        } else {
            Self {
                k1: k * theta.sin(),
                k3: k * theta.cos(),
            }
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.k1.hypot(self.k3)
    }

    pub fn magnitude_squared(&self) -> f64 {
        self.k1 * self.k1 + self.k3 * self.k3
    }

    /// Angle to the rotation axis, folded into [0, pi/2]; the dispersion
    /// relation only sees cos²θ. Returns 0 for the zero vector.
    pub fn angle_from_axis(&self) -> f64 {
        if self.k1 == 0.0 && self.k3 == 0.0 {
            0.0
        } else {
            self.k1.abs().atan2(self.k3.abs())
        }
    }
}

/// The two non-negative frequency roots at a fixed wave vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionBranches {
    /// Inertial branch, `γ₋ ≤ α|cosθ|`.
    pub gamma_minus: f64,
    /// Acoustic branch, `γ₊ ≥ max(α, ck)`.
    pub gamma_plus: f64,
}

/// Branch selector for operations that work per branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
}

impl DispersionBranches {
    pub fn get(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Minus => self.gamma_minus,
            Branch::Plus => self.gamma_plus,
        }
    }
}

/// Velocity in the (x1, x3) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity2 {
    pub v1: f64,
    pub v3: f64,
}

impl Velocity2 {
    pub fn magnitude(&self) -> f64 {
        self.v1.hypot(self.v3)
    }
}

/// Classification of a (frequency, angle) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropagationRegime {
    /// A real wave number exists at this frequency and angle.
    Propagating,
    /// Oblique forbidden zone `α·cosθ < γ < α`: no real wave number.
    Forbidden,
    /// `θ = π/2` with `γ < α`: disturbances decay spatially at `decay_rate`.
    EvanescentPerpendicular { decay_rate: f64 },
    /// `θ = 0`: waves of any frequency propagate along the axis,
    /// including step-like ones at `γ = 0`.
    AxialAnyFrequency,
}

impl PropagationRegime {
    /// Stable lowercase tag, used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            PropagationRegime::Propagating => "propagating",
            PropagationRegime::Forbidden => "forbidden",
            PropagationRegime::EvanescentPerpendicular { .. } => "evanescent_perpendicular",
            PropagationRegime::AxialAnyFrequency => "axial_any_frequency",
        }
    }
}

/// Result of inverting the dispersion relation at fixed (γ, θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WavenumberResult {
    /// Real wave number `k = (|γ|/c)·sqrt((α²−γ²)/(α²cos²θ−γ²))`.
    Propagating { k: f64 },
    /// `θ = 0`: `k = γ/c` for every frequency.
    AxialAnyFrequency { k: f64 },
    /// Oblique forbidden zone: no real wave number exists.
    Forbidden,
    /// `θ = π/2`, `γ < α`: imaginary wave number `iκ` with `κ = sqrt(α²−γ²)/c`.
    EvanescentPerpendicular { decay_rate: f64 },
}

/// Residual `F(γ) = γ⁴ − γ²α² − c²γ²k² + c²α²k₃²` of the dispersion
/// relation; zero exactly when (γ, k) lies on a branch.
///
/// Evaluated in compensated (double-double) arithmetic: near a root the
/// two `c²γ²k²`-sized terms cancel almost completely, and a naive
/// evaluation would return rounding noise of order `ε·c²k²γ²` instead
/// of the true residual.
pub fn dispersion_residual(params: &FluidParams, kvec: WaveVector, gamma: f64) -> f64 {
    residual_compensated(params, kvec, gamma).to_f64()
}

fn residual_compensated(params: &FluidParams, kvec: WaveVector, gamma: f64) -> Dd {
    let g2 = Dd::product(gamma, gamma);
    let a2 = Dd::product(params.alpha, params.alpha);
    let c2 = Dd::product(params.c, params.c);
    let k_sq = Dd::product(kvec.k1, kvec.k1).add(Dd::product(kvec.k3, kvec.k3));
    let k3_sq = Dd::product(kvec.k3, kvec.k3);
    let t1 = g2.mul(g2);
    let t2 = g2.mul(a2).neg();
    let t3 = c2.mul(g2).mul(k_sq).neg();
    let t4 = c2.mul(a2).mul(k3_sq);
    t1.add(t2).add(t3.add(t4))
}

/// One Newton step on the compensated residual. The stable quadratic
/// solve leaves a few ulps of error in γ, which the tight residual
/// tolerances can resolve when c²k² is large; a single polished step
/// brings the root to within ~half an ulp.
fn polish_root(params: &FluidParams, kvec: WaveVector, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return gamma;
    }
    let f = residual_compensated(params, kvec, gamma).to_f64();
    if f == 0.0 {
        return gamma;
    }
    let s = params.alpha * params.alpha + params.c * params.c * kvec.magnitude_squared();
    let fp = 2.0 * gamma * (2.0 * gamma * gamma - s);
    if fp == 0.0 || !fp.is_finite() {
        return gamma;
    }
    let correction = f / fp;
    // A large correction means the derivative is untrustworthy (branch
    // crossing); keep the unpolished root there.
    if !correction.is_finite() || correction.abs() > 1e-6 * gamma {
        return gamma;
    }
    gamma - correction
}

/// Discriminant `D = (α² + c²k²)² − 4c²α²k₃²` of the quadratic in `γ²`.
///
/// `D ≥ (α² − c²k²)² ≥ 0` always; `D = 0` (branch crossing) only at
/// `θ = 0` with `α = ck`.
pub fn branch_discriminant(params: &FluidParams, kvec: WaveVector) -> f64 {
    let c2 = params.c * params.c;
    let a2 = params.alpha * params.alpha;
    let s = a2 + c2 * kvec.magnitude_squared();
    let p = c2 * a2 * kvec.k3 * kvec.k3;
    s * s - 4.0 * p
}

/// Both non-negative frequency branches at the given wave vector.
///
/// Solves the quadratic in `X = γ²` with the numerically stable form:
/// the larger root directly from `(S + √D)/2` (no cancellation, both
/// terms positive) and the smaller via the product of roots `P/X₊`,
/// which stays accurate when `ck ≫ α` or `cosθ ≈ 0`.
pub fn frequency_branches(
    params: &FluidParams,
    kvec: WaveVector,
) -> Result<DispersionBranches, DispersionError> {
    let k_sq = kvec.magnitude_squared();
    if k_sq == 0.0 {
        return Err(DispersionError::ZeroWaveVector);
    }
    let c2 = params.c * params.c;
    let a2 = params.alpha * params.alpha;
    let s = a2 + c2 * k_sq;
    let p = c2 * a2 * kvec.k3 * kvec.k3;
    // Clamp shields the provable bound D >= (a2 - c2 k2)^2 from rounding.
    let d = (s * s - 4.0 * p).max(0.0);
    let x_plus = 0.5 * (s + d.sqrt());
    let x_minus = if x_plus > 0.0 { p / x_plus } else { 0.0 };
    Ok(DispersionBranches {
        gamma_minus: polish_root(params, kvec, x_minus.sqrt()),
        gamma_plus: polish_root(params, kvec, x_plus.sqrt()),
    })
}

/// Invert the dispersion relation: the wave number (or non-propagating
/// regime) at frequency `gamma` and propagation angle `theta`.
pub fn wavenumber_from_frequency(
    params: &FluidParams,
    gamma: f64,
    theta: f64,
) -> Result<WavenumberResult, DispersionError> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(DispersionError::NegativeFrequency(gamma));
    }
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(DispersionError::AngleOutOfRange(theta));
    }
    let alpha = params.alpha;
    let c = params.c;
    if theta == 0.0 {
        return Ok(WavenumberResult::AxialAnyFrequency { k: gamma / c });
    }
    if theta == FRAC_PI_2 {
        return Ok(if gamma < alpha {
            WavenumberResult::EvanescentPerpendicular {
                decay_rate: (alpha * alpha - gamma * gamma).sqrt() / c,
            }
        } else {
            WavenumberResult::Propagating {
                k: (gamma * gamma - alpha * alpha).sqrt() / c,
            }
        });
    }
    // Oblique: k = (γ/c)·sqrt(num/den). Forbidden when numerator and
    // denominator have opposite signs, i.e. α·cosθ < γ < α.
    let g2 = gamma * gamma;
    let num = alpha * alpha - g2;
    let den = alpha * alpha * theta.cos().powi(2) - g2;
    if gamma == 0.0 {
        // Degenerate point k = 0 shared by both branch limits.
        return Ok(WavenumberResult::Propagating { k: 0.0 });
    }
    if num > 0.0 && den < 0.0 {
        return Ok(WavenumberResult::Forbidden);
    }
    if den == 0.0 {
        // Lower zone boundary γ = α·cosθ: k grows without bound.
        return Ok(WavenumberResult::Propagating { k: f64::INFINITY });
    }
    Ok(WavenumberResult::Propagating {
        k: gamma / c * (num / den).sqrt(),
    })
}

/// Group velocity `∂γ/∂k` on a dispersion branch:
///
/// ```text
/// v_g = γ/(2γ² − α² − c²k²) · (c²k₁, c²(γ² − α²)k₃/γ²)
/// ```
///
/// The denominator equals `±√D` on the acoustic/inertial branch; it
/// vanishes only at the branch crossing (θ = 0 with α = ck), where the
/// gradient is undefined. `γ = 0` (the flat inertial branch at θ = π/2)
/// is likewise rejected: the branch has a conical point there.
pub fn group_velocity(
    params: &FluidParams,
    kvec: WaveVector,
    gamma: f64,
) -> Result<Velocity2, DispersionError> {
    let c2 = params.c * params.c;
    let a2 = params.alpha * params.alpha;
    let g2 = gamma * gamma;
    let denom = 2.0 * g2 - a2 - c2 * kvec.magnitude_squared();
    if gamma == 0.0 || denom.abs() < GROUP_DEGENERACY_TOL * g2.max(1.0) {
        return Err(DispersionError::DegenerateGroupVelocity {
            k1: kvec.k1,
            k3: kvec.k3,
            gamma,
        });
    }
    Ok(Velocity2 {
        v1: gamma * c2 * kvec.k1 / denom,
        v3: c2 * kvec.k3 * (g2 - a2) / (gamma * denom),
    })
}

/// Phase velocity `γ·k/k²`.
pub fn phase_velocity(kvec: WaveVector, gamma: f64) -> Result<Velocity2, DispersionError> {
    let k_sq = kvec.magnitude_squared();
    if k_sq == 0.0 {
        return Err(DispersionError::ZeroWaveVector);
    }
    Ok(Velocity2 {
        v1: gamma * kvec.k1 / k_sq,
        v3: gamma * kvec.k3 / k_sq,
    })
}

/// Classify a (frequency, angle) pair. Boundary frequencies
/// `γ ∈ {α·cosθ, α}` are classified `Propagating`: the forbidden zone is
/// the open interval.
///
/// Expects `gamma >= 0` and `theta` in `[0, pi/2]`.
pub fn classify_regime(params: &FluidParams, gamma: f64, theta: f64) -> PropagationRegime {
    debug_assert!(gamma >= 0.0, "classify_regime expects gamma >= 0");
    debug_assert!(
        (0.0..=FRAC_PI_2).contains(&theta),
        "classify_regime expects theta in [0, pi/2]"
    );
    let alpha = params.alpha;
    if theta == 0.0 {
        PropagationRegime::AxialAnyFrequency
    } else if theta == FRAC_PI_2 {
        if gamma < alpha {
            PropagationRegime::EvanescentPerpendicular {
                decay_rate: (alpha * alpha - gamma * gamma).sqrt() / params.c,
            }
        } else {
            PropagationRegime::Propagating
        }
    } else if alpha * theta.cos() < gamma && gamma < alpha {
        PropagationRegime::Forbidden
    } else {
        PropagationRegime::Propagating
    }
}

/// Angle between the group velocity and the rotation axis:
/// `θ_gr = arctan[(γ²/(γ² − α²))·(k₁/k₃)]`, in (−π/2, π/2).
///
/// Negative on the inertial branch for k₁, k₃ > 0: energy there runs
/// opposite to the transverse phase direction.
pub fn group_angle(
    params: &FluidParams,
    kvec: WaveVector,
    gamma: f64,
) -> Result<f64, DispersionError> {
    let g2 = gamma * gamma;
    let a2 = params.alpha * params.alpha;
    if kvec.k3 == 0.0 || g2 == a2 {
        return Err(DispersionError::GroupAngleSingular);
    }
    Ok((g2 / (g2 - a2) * (kvec.k1 / kvec.k3)).atan())
}

/// Whether `point = (x1, x3)` lies inside the characteristic cone
/// `|x₃| > (sqrt(α²−γ²)/γ)·|x₁|` that bounds all group-velocity
/// directions at frequency `gamma`.
///
/// For `γ ≥ α` the cone opens up completely and every point qualifies;
/// at `γ = 0` it collapses to the axis and the query is rejected.
pub fn inside_characteristic_cone(
    params: &FluidParams,
    gamma: f64,
    point: (f64, f64),
) -> Result<bool, DispersionError> {
    if gamma < 0.0 {
        return Err(DispersionError::NegativeFrequency(gamma));
    }
    if gamma == 0.0 {
        return Err(DispersionError::ZeroFrequencyCone);
    }
    if gamma >= params.alpha {
        return Ok(true);
    }
    let slope = (params.alpha * params.alpha - gamma * gamma).sqrt() / gamma;
    Ok(point.1.abs() > slope * point.0.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, SQRT_2};

    const ALPHA2_K11: (f64, f64) = (0.8740320488976421, 2.288245611270737); // X = 3 ∓ √5

    fn params(alpha: f64, c: f64) -> FluidParams {
        FluidParams::new(alpha, c).unwrap()
    }

    /// Independent quadratic-formula oracle for X² − SX + P = 0.
    fn quadratic_oracle(alpha: f64, c: f64, k1: f64, k3: f64) -> (f64, f64) {
        let s = alpha * alpha + c * c * (k1 * k1 + k3 * k3);
        let p = c * c * alpha * alpha * k3 * k3;
        let sq = (s * s - 4.0 * p).sqrt();
        (((s - sq) / 2.0).sqrt(), ((s + sq) / 2.0).sqrt())
    }

    #[test]
    fn params_validation() {
        assert!(FluidParams::new(-1.0, 1.0).is_err());
        assert!(FluidParams::new(1.0, 0.0).is_err());
        assert!(FluidParams::new(f64::NAN, 1.0).is_err());
        assert_eq!(params(1.0, 2.0).rho0, 1.0);
    }

    #[test]
    fn residual_rest_fluid() {
        let p = params(0.0, 1.0);
        assert_eq!(dispersion_residual(&p, WaveVector::new(1.0, 0.0), 1.0), 0.0);
    }

    #[test]
    fn residual_axial_sound() {
        let p = params(1.0, 1.0);
        for k3 in [0.3, 1.0, 7.5] {
            let r = dispersion_residual(&p, WaveVector::new(0.0, k3), k3);
            assert!(r.abs() <= 1e-12 * k3.powi(4).max(1.0), "k3={k3}: {r}");
        }
    }

    #[test]
    fn residual_quadratic_oracle_root() {
        // α=2, c=1, k=(1,1): X² − 6X + 4 = 0, X = 3 ± √5.
        let p = params(2.0, 1.0);
        let k = WaveVector::new(1.0, 1.0);
        let gamma = (3.0 + 5.0_f64.sqrt()).sqrt();
        assert!(dispersion_residual(&p, k, gamma).abs() < 1e-12);
        // The rounded literal still satisfies the relation to 1e-6.
        assert!(dispersion_residual(&p, k, 2.2882456).abs() <= 1e-6);
    }

    #[test]
    fn branches_rest_fluid() {
        let b = frequency_branches(&params(0.0, 1.0), WaveVector::new(3.0, 4.0)).unwrap();
        assert_eq!(b.gamma_minus, 0.0);
        assert!((b.gamma_plus - 5.0).abs() < 1e-14);
    }

    #[test]
    fn branches_match_quadratic_oracle() {
        let b = frequency_branches(&params(2.0, 1.0), WaveVector::new(1.0, 1.0)).unwrap();
        let (gm, gp) = quadratic_oracle(2.0, 1.0, 1.0, 1.0);
        assert!((b.gamma_minus - gm).abs() < 1e-14);
        assert!((b.gamma_plus - gp).abs() < 1e-14);
        assert!((b.gamma_minus - ALPHA2_K11.0).abs() < 1e-14);
        assert!((b.gamma_plus - ALPHA2_K11.1).abs() < 1e-14);
    }

    #[test]
    fn branches_perpendicular() {
        let b = frequency_branches(&params(1.0, 1.0), WaveVector::new(1.0, 0.0)).unwrap();
        assert_eq!(b.gamma_minus, 0.0);
        assert!((b.gamma_plus - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn branches_zero_wave_vector() {
        assert_eq!(
            frequency_branches(&params(1.0, 1.0), WaveVector::new(0.0, 0.0)),
            Err(DispersionError::ZeroWaveVector)
        );
    }

    #[test]
    fn wavenumber_rest_fluid() {
        let p = params(0.0, 1.0);
        for theta in [0.2, 1.0, FRAC_PI_3] {
            match wavenumber_from_frequency(&p, 2.0, theta).unwrap() {
                WavenumberResult::Propagating { k } => assert!((k - 2.0).abs() < 1e-14),
                other => panic!("expected propagating, got {other:?}"),
            }
        }
    }

    #[test]
    fn wavenumber_perpendicular_propagating() {
        match wavenumber_from_frequency(&params(1.0, 1.0), SQRT_2, FRAC_PI_2).unwrap() {
            WavenumberResult::Propagating { k } => assert!((k - 1.0).abs() < 1e-15),
            other => panic!("expected propagating, got {other:?}"),
        }
    }

    #[test]
    fn wavenumber_forbidden_zone() {
        // α=1, θ=π/3: zone is (0.5, 1).
        match wavenumber_from_frequency(&params(1.0, 1.0), 0.75, FRAC_PI_3).unwrap() {
            WavenumberResult::Forbidden => {}
            other => panic!("expected forbidden, got {other:?}"),
        }
    }

    #[test]
    fn wavenumber_axial_any_frequency() {
        let p = params(1.0, 2.0);
        match wavenumber_from_frequency(&p, 0.0, 0.0).unwrap() {
            WavenumberResult::AxialAnyFrequency { k } => assert_eq!(k, 0.0),
            other => panic!("expected axial, got {other:?}"),
        }
        match wavenumber_from_frequency(&p, 3.0, 0.0).unwrap() {
            WavenumberResult::AxialAnyFrequency { k } => assert!((k - 1.5).abs() < 1e-15),
            other => panic!("expected axial, got {other:?}"),
        }
    }

    #[test]
    fn wavenumber_evanescent() {
        match wavenumber_from_frequency(&params(1.0, 1.0), 0.5, FRAC_PI_2).unwrap() {
            WavenumberResult::EvanescentPerpendicular { decay_rate } => {
                assert!((decay_rate - 0.75_f64.sqrt()).abs() < 1e-15);
            }
            other => panic!("expected evanescent, got {other:?}"),
        }
    }

    #[test]
    fn wavenumber_negative_frequency_rejected() {
        assert!(matches!(
            wavenumber_from_frequency(&params(1.0, 1.0), -0.1, 0.3),
            Err(DispersionError::NegativeFrequency(_))
        ));
    }

    #[test]
    fn group_velocity_rest_fluid() {
        let v = group_velocity(&params(0.0, 1.0), WaveVector::new(3.0, 4.0), 5.0).unwrap();
        assert!((v.v1 - 0.6).abs() < 1e-15);
        assert!((v.v3 - 0.8).abs() < 1e-15);
    }

    #[test]
    fn group_velocity_perpendicular() {
        let v = group_velocity(&params(1.0, 1.0), WaveVector::new(1.0, 0.0), SQRT_2).unwrap();
        assert!((v.v1 - 1.0 / SQRT_2).abs() < 1e-15);
        assert_eq!(v.v3, 0.0);
    }

    #[test]
    fn group_velocity_axial_sound() {
        let v = group_velocity(&params(1.0, 1.0), WaveVector::new(0.0, 2.0), 2.0).unwrap();
        assert_eq!(v.v1, 0.0);
        assert!((v.v3 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn group_velocity_branch_crossing_rejected() {
        // θ=0 with α = ck: D = 0, denominator vanishes.
        let err = group_velocity(&params(1.0, 1.0), WaveVector::new(0.0, 1.0), 1.0);
        assert!(matches!(
            err,
            Err(DispersionError::DegenerateGroupVelocity { .. })
        ));
        // γ = 0 flat branch is a conical point.
        assert!(group_velocity(&params(1.0, 1.0), WaveVector::new(2.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn phase_velocity_examples() {
        let v = phase_velocity(WaveVector::new(3.0, 4.0), 5.0).unwrap();
        assert!((v.v1 - 0.6).abs() < 1e-15 && (v.v3 - 0.8).abs() < 1e-15);

        // θ=π/2 exhibits normal dispersion: |v_ph| > |v_g|.
        let vph = phase_velocity(WaveVector::new(1.0, 0.0), SQRT_2).unwrap();
        assert!((vph.v1 - SQRT_2).abs() < 1e-15);
        let vg = group_velocity(&params(1.0, 1.0), WaveVector::new(1.0, 0.0), SQRT_2).unwrap();
        assert!(vg.magnitude() < vph.magnitude());

        let axial = phase_velocity(WaveVector::new(0.0, 4.0), 4.0).unwrap();
        assert!((axial.v3 - 1.0).abs() < 1e-15 && axial.v1 == 0.0);

        assert!(phase_velocity(WaveVector::new(0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = params(1.0, 1.0);
        assert_eq!(
            classify_regime(&p, 0.75, FRAC_PI_3),
            PropagationRegime::Forbidden
        );
        match classify_regime(&p, 0.5, FRAC_PI_2) {
            PropagationRegime::EvanescentPerpendicular { decay_rate } => {
                assert!((decay_rate - 0.75_f64.sqrt()).abs() < 1e-15);
            }
            other => panic!("expected evanescent, got {other:?}"),
        }
        assert_eq!(
            classify_regime(&p, 0.0, 0.0),
            PropagationRegime::AxialAnyFrequency
        );
    }

    #[test]
    fn classify_boundaries_propagate() {
        // The forbidden zone is open: its endpoints still propagate.
        let p = params(1.0, 1.0);
        let cos = FRAC_PI_3.cos();
        assert_eq!(
            classify_regime(&p, cos, FRAC_PI_3),
            PropagationRegime::Propagating
        );
        assert_eq!(
            classify_regime(&p, 1.0, FRAC_PI_3),
            PropagationRegime::Propagating
        );
        assert_eq!(
            classify_regime(&p, 1.0, FRAC_PI_2),
            PropagationRegime::Propagating
        );
    }

    #[test]
    fn group_angle_examples() {
        // No rotation: group direction is the wave-vector direction.
        let g = group_angle(&params(0.0, 1.0), WaveVector::new(1.0, 1.0), SQRT_2).unwrap();
        assert!((g - std::f64::consts::FRAC_PI_4).abs() < 1e-15);

        let axial = group_angle(&params(1.0, 1.0), WaveVector::new(0.0, 2.0), 2.0).unwrap();
        assert_eq!(axial, 0.0);

        // Inertial branch at α=2, k=(1,1): γ² = 3 − √5.
        let gm = ALPHA2_K11.0;
        let th = group_angle(&params(2.0, 1.0), WaveVector::new(1.0, 1.0), gm).unwrap();
        assert!((th - (-0.23182380450040302)).abs() < 1e-12);

        assert!(group_angle(&params(1.0, 1.0), WaveVector::new(1.0, 0.0), 2.0).is_err());
        assert!(group_angle(&params(1.0, 1.0), WaveVector::new(1.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn cone_examples() {
        let p = params(1.0, 1.0);
        assert!(inside_characteristic_cone(&p, 0.5, (0.0, 1.0)).unwrap());
        assert!(!inside_characteristic_cone(&p, 0.5, (1.0, 0.0)).unwrap());
        // γ = 1/√2 gives unit slope.
        let g = 1.0 / SQRT_2;
        assert!(inside_characteristic_cone(&p, g, (1.0, 1.001)).unwrap());
        assert!(!inside_characteristic_cone(&p, g, (1.0, 0.999)).unwrap());
        // Above α the cone opens completely.
        assert!(inside_characteristic_cone(&p, 2.0, (5.0, 0.0)).unwrap());
        assert!(matches!(
            inside_characteristic_cone(&p, 0.0, (1.0, 1.0)),
            Err(DispersionError::ZeroFrequencyCone)
        ));
    }

    fn instance_strategy() -> impl Strategy<Value = (f64, f64, f64, f64)> {
        // (alpha, c, k magnitude, theta)
        (
            0.0..10.0_f64,
            0.1..10.0_f64,
            1e-3..100.0_f64,
            0.0..FRAC_PI_2,
        )
    }

    proptest! {
        #[test]
        fn prop_residual_on_branch((alpha, c, k, theta) in instance_strategy()) {
            // Target bound 1e-10·max(1, γ⁴). Near the sampling corner
            // (ck ~ 10³ with γ₋ ~ 1) one ulp of γ moves the residual by
            // |F'|·ulp ≈ 4e-10, so no f64 root can beat that floor when
            // the true root falls mid-ulp; allow the larger of the two,
            // which still demands a near-correctly-rounded root.
            let p = params(alpha, c);
            let kv = WaveVector::from_polar(k, theta);
            let s = alpha * alpha + c * c * kv.magnitude_squared();
            let b = frequency_branches(&p, kv).unwrap();
            for g in [b.gamma_minus, b.gamma_plus] {
                let r = dispersion_residual(&p, kv, g);
                let slope = (2.0 * g * (2.0 * g * g - s)).abs();
                let floor = 2.0 * slope * g * f64::EPSILON;
                let bound = (1e-10 * g.powi(4).max(1.0)).max(floor);
                prop_assert!(r.abs() <= bound, "residual {r} at gamma {g}, bound {bound}");
            }
        }

        #[test]
        fn prop_branch_ordering((alpha, c, k, theta) in instance_strategy()) {
            let p = params(alpha, c);
            let kv = WaveVector::from_polar(k, theta);
            let b = frequency_branches(&p, kv).unwrap();
            let cos = kv.k3.abs() / kv.magnitude();
            prop_assert!(b.gamma_minus <= alpha * cos + 1e-12);
            prop_assert!(b.gamma_plus >= alpha - 1e-12);
            prop_assert!(b.gamma_plus >= c * kv.magnitude() - 1e-12);
        }

        #[test]
        fn prop_no_rotation_reduction((c, k, theta) in (0.1..10.0_f64, 1e-3..100.0_f64, 0.0..FRAC_PI_2)) {
            let p = params(0.0, c);
            let kv = WaveVector::from_polar(k, theta);
            let b = frequency_branches(&p, kv).unwrap();
            let vg = group_velocity(&p, kv, b.gamma_plus).unwrap();
            let vph = phase_velocity(kv, b.gamma_plus).unwrap();
            prop_assert!((vg.v1 - vph.v1).abs() <= 1e-12 * vph.magnitude().max(1.0));
            prop_assert!((vg.v3 - vph.v3).abs() <= 1e-12 * vph.magnitude().max(1.0));
        }

        #[test]
        fn prop_axial_sonic_reduction((alpha, c, k) in (0.0..10.0_f64, 0.1..10.0_f64, 1e-3..100.0_f64)) {
            // On axis the sonic branch γ = ck propagates dispersion-free;
            // the other branch is flat (γ ≡ α) and carries zero group velocity.
            prop_assume!((c * k - alpha).abs() > 1e-6 * (c * k).max(alpha));
            let p = params(alpha, c);
            let kv = WaveVector::new(0.0, k);
            let b = frequency_branches(&p, kv).unwrap();
            let sonic = if c * k > alpha { b.gamma_plus } else { b.gamma_minus };
            prop_assert!((sonic - c * k).abs() <= 1e-10 * (c * k));
            let vg = group_velocity(&p, kv, sonic).unwrap();
            let vph = phase_velocity(kv, sonic).unwrap();
            prop_assert!((vg.v1 - vph.v1).abs() <= 1e-12 * c.max(1.0));
            prop_assert!((vg.v3 - vph.v3).abs() <= 1e-12 * c.max(1.0));
        }

        #[test]
        fn prop_perpendicular_subluminal((alpha, c, k) in (1e-2..10.0_f64, 0.1..10.0_f64, 1e-3..100.0_f64)) {
            let p = params(alpha, c);
            let kv = WaveVector::new(k, 0.0);
            let b = frequency_branches(&p, kv).unwrap();
            let vg = group_velocity(&p, kv, b.gamma_plus).unwrap();
            let vph = phase_velocity(kv, b.gamma_plus).unwrap();
            // |v_g|·|v_ph| = c², with |v_g| strictly below |v_ph|.
            let prod = vg.magnitude() * vph.magnitude();
            prop_assert!((prod - c * c).abs() <= 1e-10 * c * c);
            prop_assert!(vg.magnitude() < vph.magnitude());
        }

        #[test]
        fn prop_denominator_identity((alpha, c, k, theta) in instance_strategy()) {
            let p = params(alpha, c);
            let kv = WaveVector::from_polar(k, theta);
            let s = alpha * alpha + c * c * kv.magnitude_squared();
            let d = branch_discriminant(&p, kv);
            prop_assume!(d.sqrt() >= 1e-3 * s); // away from the branch crossing
            let b = frequency_branches(&p, kv).unwrap();
            let dp = 2.0 * b.gamma_plus * b.gamma_plus - s;
            let dm = 2.0 * b.gamma_minus * b.gamma_minus - s;
            prop_assert!((dp - d.sqrt()).abs() <= 1e-10 * d.sqrt());
            prop_assert!((dm + d.sqrt()).abs() <= 1e-10 * d.sqrt());
        }

        #[test]
        fn prop_round_trip((alpha, c, k, theta) in (0.1..10.0_f64, 0.1..10.0_f64, 1e-2..100.0_f64, 1e-3..1.5_f64)) {
            let p = params(alpha, c);
            let kv = WaveVector::from_polar(k, theta);
            let b = frequency_branches(&p, kv).unwrap();
            for g in [b.gamma_minus, b.gamma_plus] {
                let g2 = g * g;
                let a2 = alpha * alpha;
                let bound2 = a2 * theta.cos().powi(2);
                // Skip ill-conditioned inversions right next to the zone
                // boundaries, where dk/dγ blows up.
                if (g2 - a2).abs() < 1e-5 * g2.max(a2) || (g2 - bound2).abs() < 1e-5 * g2.max(bound2) {
                    continue;
                }
                match wavenumber_from_frequency(&p, g, theta).unwrap() {
                    WavenumberResult::Propagating { k: kr } => {
                        prop_assert!((kr - k).abs() <= 1e-9 * k, "branch gamma={g}: {kr} vs {k}");
                    }
                    other => prop_assert!(false, "branch frequency classified {other:?}"),
                }
            }
        }

        #[test]
        fn prop_group_angle_matches_velocity((alpha, c, k, theta) in (0.0..10.0_f64, 0.1..10.0_f64, 1e-2..100.0_f64, 1e-3..1.5_f64)) {
            let p = params(alpha, c);
            let kv = WaveVector::from_polar(k, theta);
            let b = frequency_branches(&p, kv).unwrap();
            for g in [b.gamma_minus, b.gamma_plus] {
                let (Ok(th_gr), Ok(vg)) = (group_angle(&p, kv, g), group_velocity(&p, kv, g)) else {
                    continue;
                };
                let from_vg = vg.v1.atan2(vg.v3);
                prop_assert!((th_gr - from_vg).abs() <= 1e-9, "{th_gr} vs {from_vg}");
            }
        }

        #[test]
        fn prop_classification_matches_inversion(
            (alpha, c, gamma, theta) in (0.0..5.0_f64, 0.1..5.0_f64, 0.0..6.0_f64, 0.0..=FRAC_PI_2),
        ) {
            // classify_regime and wavenumber_from_frequency partition the
            // (γ, θ) plane identically, boundaries included.
            let p = params(alpha, c);
            let regime = classify_regime(&p, gamma, theta);
            let inverted = wavenumber_from_frequency(&p, gamma, theta).unwrap();
            let consistent = matches!(
                (&regime, &inverted),
                (PropagationRegime::Propagating, WavenumberResult::Propagating { .. })
                    | (PropagationRegime::Forbidden, WavenumberResult::Forbidden)
                    | (
                        PropagationRegime::EvanescentPerpendicular { .. },
                        WavenumberResult::EvanescentPerpendicular { .. }
                    )
                    | (
                        PropagationRegime::AxialAnyFrequency,
                        WavenumberResult::AxialAnyFrequency { .. }
                    )
            );
            prop_assert!(consistent, "classified {regime:?} but inverted to {inverted:?}");
        }

        #[test]
        fn prop_forbidden_zone_empty(k in 1e-3..100.0_f64) {
            // No branch frequency at θ=π/3, α=1 may fall inside (0.5, 1).
            let p = params(1.0, 1.0);
            let b = frequency_branches(&p, WaveVector::from_polar(k, FRAC_PI_3)).unwrap();
            for g in [b.gamma_minus, b.gamma_plus] {
                prop_assert!(!(g > 0.5 + 1e-6 && g < 1.0 - 1e-6), "gamma {g} inside zone at k {k}");
            }
        }
    }
}
