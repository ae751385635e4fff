//! Independent oracles tying the analytic theory and the simulator
//! together: brute-force root finding for the frequency branches,
//! finite-difference group velocities, spectral frequency extraction
//! from probe series, and a discrete residual of the governing
//! fourth-order operator.
//!
//! These deliberately avoid the closed-form paths they check: roots come
//! from sign scanning and bisection rather than the quadratic formula,
//! and group velocities from Richardson-extrapolated central differences
//! rather than the gradient expression.

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::dispersion::{
    branch_discriminant, frequency_branches, Branch, DispersionError, FluidParams, Velocity2,
    WaveVector,
};
use crate::simulator::{FieldState, Grid, Spectral2d};

/// Grid resolution of the bisection oracle.
pub const ORACLE_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    #[error("finite-difference stencil crosses a branch degeneracy")]
    DegenerateStencil,
    #[error("need at least {needed} snapshots, got {got}")]
    TooFewSnapshots { needed: usize, got: usize },
    #[error("snapshots are not uniformly spaced in time")]
    NonUniformSpacing,
    #[error("series too short: need at least {needed} samples, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("series is identically zero")]
    AllZeroSeries,
    #[error("field is identically zero across the snapshot stack")]
    ZeroField,
    #[error("sample spacing must be positive, got {0}")]
    InvalidSampleSpacing(f64),
}

/// Spectral peak location from a windowed transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// Interpolated peak frequency, radians per time, >= 0.
    pub peak_frequency: f64,
    /// Window-limited resolution `2π/(N·dt)`.
    pub resolution: f64,
    /// Approximate amplitude of the underlying sinusoid at the peak.
    pub amplitude: f64,
}

/// All non-negative roots of the dispersion quartic by dense scanning
/// and bisection, independent of the quadratic-formula solver.
///
/// Scans `F(γ)` on a uniform grid over `[0, α + ck + 1]` — an upper
/// bound since `γ₊² ≤ α² + c²k²` — refining every sign change by
/// bisection. Candidates closer than two grid steps are merged: right at
/// a root the naive polynomial is rounding noise and can flicker in
/// sign. A tangency (double root, only at θ = 0 with α = ck) produces no
/// sign change at all and is recovered from the interior minimum of `F`,
/// reported twice. Returns the roots sorted ascending; expects `k > 0`.
pub fn quartic_roots_bruteforce(params: &FluidParams, kvec: WaveVector) -> Vec<f64> {
    debug_assert!(kvec.magnitude_squared() > 0.0);
    let hi = params.alpha + params.c * kvec.magnitude() + 1.0;
    let n = ORACLE_GRID_POINTS;
    let step = hi / (n - 1) as f64;
    // The oracle's own polynomial, written out rather than shared with
    // the dispersion module.
    let c2 = params.c * params.c;
    let a2 = params.alpha * params.alpha;
    let k_sq = kvec.magnitude_squared();
    let k3_sq = kvec.k3 * kvec.k3;
    let f = move |g: f64| {
        let g2 = g * g;
        g2 * g2 - g2 * a2 - c2 * g2 * k_sq + c2 * a2 * k3_sq
    };

    let values: Vec<f64> = (0..n).map(|i| f(i as f64 * step)).collect();
    let mut roots = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if v == 0.0 {
            roots.push(i as f64 * step);
        }
    }
    for i in 0..n - 1 {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 || fb == 0.0 || (fa > 0.0) == (fb > 0.0) {
            continue;
        }
        roots.push(bisect(&f, i as f64 * step, (i + 1) as f64 * step, fa));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * step);

    if roots.is_empty() {
        // Tangency or a dip narrower than the grid step: refine around
        // the interior minimum of F.
        if let Some((gm, fm)) = refine_interior_minimum(&f, &values, step) {
            if fm < 0.0 {
                let left = (gm - step).max(0.0);
                roots.push(bisect(&f, left, gm, f(left)));
                roots.push(bisect(&f, gm, gm + step, fm));
                roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * step);
            } else {
                roots.push(gm);
            }
        }
    }
    if roots.len() == 1 {
        // The quartic has exactly two non-negative roots counting
        // multiplicity, so a lone candidate is a double root at grid
        // resolution.
        roots.push(roots[0]);
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b || b - a < 1e-13 {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section refinement of the smallest interior grid value of `f`.
fn refine_interior_minimum(
    f: &impl Fn(f64) -> f64,
    values: &[f64],
    step: f64,
) -> Option<(f64, f64)> {
    let n = values.len();
    let i_min = (1..n - 1).min_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap())?;
    let (mut a, mut b) = ((i_min - 1) as f64 * step, (i_min + 1) as f64 * step);
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    let (mut x1, mut x2) = (a + phi * (b - a), b - phi * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..120 {
        if b - a < 1e-14 * b.max(1.0) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - phi * (b - a);
            f2 = f(x2);
        }
    }
    let gm = 0.5 * (a + b);
    Some((gm, f(gm)))
}

/// Group velocity from Richardson-extrapolated central differences of
/// the branch frequency, step `h = 1e-5` per wave-number component.
///
/// Errors when the stencil straddles a degeneracy: a branch crossing
/// (tiny discriminant) or the conical point of the inertial branch at
/// k3 = 0.
pub fn finite_difference_group_velocity(
    params: &FluidParams,
    kvec: WaveVector,
    branch: Branch,
) -> Result<Velocity2, VerifyError> {
    let h = 1e-5;
    let gamma_at = |k1: f64, k3: f64| -> Result<f64, VerifyError> {
        let kv = WaveVector::new(k1, k3);
        let s = params.alpha * params.alpha + params.c * params.c * kv.magnitude_squared();
        if branch_discriminant(params, kv).sqrt() < 1e-6 * s {
            return Err(VerifyError::DegenerateStencil);
        }
        Ok(frequency_branches(params, kv)?.get(branch))
    };
    // Branch crossing at the expansion point itself.
    let s0 = params.alpha * params.alpha + params.c * params.c * kvec.magnitude_squared();
    if branch_discriminant(params, kvec).sqrt() < 1e-6 * s0 {
        return Err(VerifyError::DegenerateStencil);
    }
    // The inertial branch has a |k3| kink where it touches zero.
    if branch == Branch::Minus && kvec.k3.abs() <= 2.0 * h {
        return Err(VerifyError::DegenerateStencil);
    }
    let central = |dk1: f64, dk3: f64, hh: f64| -> Result<f64, VerifyError> {
        let plus = gamma_at(kvec.k1 + dk1 * hh, kvec.k3 + dk3 * hh)?;
        let minus = gamma_at(kvec.k1 - dk1 * hh, kvec.k3 - dk3 * hh)?;
        Ok((plus - minus) / (2.0 * hh))
    };
    let richardson = |dk1: f64, dk3: f64| -> Result<f64, VerifyError> {
        let d_h = central(dk1, dk3, h)?;
        let d_h2 = central(dk1, dk3, 0.5 * h)?;
        Ok((4.0 * d_h2 - d_h) / 3.0)
    };
    Ok(Velocity2 {
        v1: richardson(1.0, 0.0)?,
        v3: richardson(0.0, 1.0)?,
    })
}

/// Dominant frequency of a uniformly sampled real series via a
/// Hann-windowed DFT with quadratic peak interpolation on the
/// log-magnitude spectrum.
///
/// The Hann window suppresses leakage from the mirror line at −γ that a
/// real signal always carries. A constant series legitimately peaks at
/// zero frequency; an all-zero series is rejected.
pub fn extract_frequency(series: &[f64], dt: f64) -> Result<FrequencyEstimate, VerifyError> {
    let n = series.len();
    if n < 64 {
        return Err(VerifyError::SeriesTooShort { needed: 64, got: n });
    }
    if dt.is_nan() || dt <= 0.0 {
        return Err(VerifyError::InvalidSampleSpacing(dt));
    }
    if series.iter().all(|&v| v == 0.0) {
        return Err(VerifyError::AllZeroSeries);
    }

    let mut buf: Vec<Complex64> = series
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let w = 0.5 - 0.5 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos();
            Complex64::new(v * w, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let mag: Vec<f64> = buf[..=half].iter().map(|c| c.norm()).collect();
    let peak = (0..=half)
        .max_by(|&a, &b| mag[a].partial_cmp(&mag[b]).unwrap())
        .unwrap();

    // Quadratic interpolation on log magnitude, skipped at the spectrum
    // edges or when a neighbor underflows.
    let mut delta = 0.0;
    if peak > 0 && peak < half && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0 {
        let (la, lb, lc) = (mag[peak - 1].ln(), mag[peak].ln(), mag[peak + 1].ln());
        let denom = la - 2.0 * lb + lc;
        if denom != 0.0 {
            delta = (0.5 * (la - lc) / denom).clamp(-0.5, 0.5);
        }
    }

    let bin_width = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    // Hann window has coherent gain 1/2: a unit cosine peaks at n/4.
    let amplitude = mag[peak] / (n as f64 / 4.0);
    Ok(FrequencyEstimate {
        peak_frequency: (peak as f64 + delta) * bin_width,
        resolution: bin_width,
        amplitude,
    })
}

/// Field selector for [`operator_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSelect {
    V1,
    V2,
    V3,
    P,
}

impl FieldSelect {
    pub const ALL: [FieldSelect; 4] = [
        FieldSelect::V1,
        FieldSelect::V2,
        FieldSelect::V3,
        FieldSelect::P,
    ];

    fn of<'a>(&self, state: &'a FieldState) -> &'a [f64] {
        match self {
            FieldSelect::V1 => &state.v1,
            FieldSelect::V2 => &state.v2,
            FieldSelect::V3 => &state.v3,
            FieldSelect::P => &state.p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldSelect::V1 => "v1",
            FieldSelect::V2 => "v2",
            FieldSelect::V3 => "v3",
            FieldSelect::P => "p",
        }
    }
}

/// Discrete residual of the governing fourth-order operator
///
/// ```text
/// L[u] = ∂²/∂t²[ (1/c²)·∂²u/∂t² − ∇²u + (α²/c²)·u ] − α²·∂²u/∂x3²
/// ```
///
/// applied to one field of a stack of uniformly spaced snapshots.
/// Spatial operators are spectral; both time derivatives use centered
/// second-order stencils (the composition reproduces the classical
/// 5-point fourth-derivative weights 1, −4, 6, −4, 1). Every field of a
/// true solution satisfies `L[u] = 0`, so for exact snapshots the
/// returned normalized L²-residual shrinks as the square of the
/// snapshot spacing.
pub fn operator_residual(
    params: &FluidParams,
    grid: &Grid,
    snapshots: &[FieldState],
    field: FieldSelect,
) -> Result<f64, VerifyError> {
    let n = snapshots.len();
    if n < 5 {
        return Err(VerifyError::TooFewSnapshots { needed: 5, got: n });
    }
    let tau = snapshots[1].t - snapshots[0].t;
    if tau.is_nan() || tau <= 0.0 {
        return Err(VerifyError::NonUniformSpacing);
    }
    for w in snapshots.windows(2) {
        let d = w[1].t - w[0].t;
        if (d - tau).abs() > 1e-9 * tau {
            return Err(VerifyError::NonUniformSpacing);
        }
    }

    let spectral = Spectral2d::new(grid);
    let fields: Vec<&[f64]> = snapshots.iter().map(|s| field.of(s)).collect();
    let npts = grid.num_points();
    let c2 = params.c * params.c;
    let a2 = params.alpha * params.alpha;
    let tau2 = tau * tau;

    // Bracket B = u_tt/c² − ∇²u + (α²/c²)u at one snapshot index.
    let bracket = |j: usize| -> Vec<f64> {
        let lap = spectral.laplacian(fields[j]);
        (0..npts)
            .map(|i| {
                let utt = (fields[j - 1][i] - 2.0 * fields[j][i] + fields[j + 1][i]) / tau2;
                utt / c2 - lap[i] + a2 / c2 * fields[j][i]
            })
            .collect()
    };

    let mut residual_sq = 0.0;
    let mut norm_sq = 0.0;
    // Each center needs its two neighbors; plain indexing is clearest.
    #[allow(clippy::needless_range_loop)]
    for j in 2..n - 2 {
        let (bm, b0, bp) = (bracket(j - 1), bracket(j), bracket(j + 1));
        let d33 = spectral.second_deriv_x3(fields[j]);
        for i in 0..npts {
            let btt = (bm[i] - 2.0 * b0[i] + bp[i]) / tau2;
            let lu = btt - a2 * d33[i];
            residual_sq += lu * lu;
            norm_sq += fields[j][i] * fields[j][i];
        }
    }
    if norm_sq == 0.0 {
        return Err(VerifyError::ZeroField);
    }
    Ok((residual_sq / norm_sq).sqrt())
}
