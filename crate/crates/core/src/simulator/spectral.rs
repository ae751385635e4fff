//! Spectral derivatives on a doubly periodic grid.
//!
//! Derivatives are exact for band-limited fields: forward FFT along one
//! axis, multiply by the derivative symbol, inverse FFT. First
//! derivatives zero the Nyquist mode (its odd symbol is ambiguous on a
//! real grid); even derivatives keep it.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::Grid;

pub struct Spectral2d {
    grid: Grid,
    fwd_x1: Arc<dyn Fft<f64>>,
    inv_x1: Arc<dyn Fft<f64>>,
    fwd_x3: Arc<dyn Fft<f64>>,
    inv_x3: Arc<dyn Fft<f64>>,
    d1_x1: Vec<Complex64>,
    d1_x3: Vec<Complex64>,
    d2_x1: Vec<Complex64>,
    d2_x3: Vec<Complex64>,
}

/// Signed mode number for bin `j` of an `n`-point axis.
fn mode_number(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

fn derivative_symbols(n: usize, length: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for j in 0..n {
        let k = 2.0 * PI * mode_number(j, n) as f64 / length;
        let k1 = if j == n / 2 { 0.0 } else { k };
        first.push(Complex64::new(0.0, k1));
        second.push(Complex64::new(-k * k, 0.0));
    }
    (first, second)
}

impl Spectral2d {
    pub fn new(grid: &Grid) -> Self {
        let mut planner = FftPlanner::new();
        let (d1_x1, d2_x1) = derivative_symbols(grid.n1, grid.l1);
        let (d1_x3, d2_x3) = derivative_symbols(grid.n3, grid.l3);
        Self {
            grid: *grid,
            fwd_x1: planner.plan_fft_forward(grid.n1),
            inv_x1: planner.plan_fft_inverse(grid.n1),
            fwd_x3: planner.plan_fft_forward(grid.n3),
            inv_x3: planner.plan_fft_inverse(grid.n3),
            d1_x1,
            d1_x3,
            d2_x1,
            d2_x3,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn deriv_x1(&self, f: &[f64]) -> Vec<f64> {
        self.apply_x1(f, &self.d1_x1).0
    }

    pub fn deriv_x3(&self, f: &[f64]) -> Vec<f64> {
        self.apply_x3(f, &self.d1_x3).0
    }

    pub fn second_deriv_x3(&self, f: &[f64]) -> Vec<f64> {
        self.apply_x3(f, &self.d2_x3).0
    }

    /// 2D Laplacian `∂²/∂x1² + ∂²/∂x3²`.
    pub fn laplacian(&self, f: &[f64]) -> Vec<f64> {
        let mut out = self.apply_x1(f, &self.d2_x1).0;
        let d33 = self.apply_x3(f, &self.d2_x3).0;
        for (o, d) in out.iter_mut().zip(d33.iter()) {
            *o += d;
        }
        out
    }

    /// Apply a spectral symbol along x1. Returns the real result and the
    /// largest imaginary residue left by the round trip.
    fn apply_x1(&self, f: &[f64], symbol: &[Complex64]) -> (Vec<f64>, f64) {
        let (n1, n3) = (self.grid.n1, self.grid.n3);
        let mut out = vec![0.0; f.len()];
        let mut buf = vec![Complex64::default(); n1];
        let mut leak = 0.0_f64;
        let norm = 1.0 / n1 as f64;
        for i3 in 0..n3 {
            let row = &f[i3 * n1..(i3 + 1) * n1];
            for (b, &v) in buf.iter_mut().zip(row.iter()) {
                *b = Complex64::new(v, 0.0);
            }
            self.fwd_x1.process(&mut buf);
            for (b, s) in buf.iter_mut().zip(symbol.iter()) {
                *b *= s;
            }
            self.inv_x1.process(&mut buf);
            for (o, b) in out[i3 * n1..(i3 + 1) * n1].iter_mut().zip(buf.iter()) {
                *o = b.re * norm;
                leak = leak.max((b.im * norm).abs());
            }
        }
        (out, leak)
    }

    /// Apply a spectral symbol along x3 (strided columns).
    fn apply_x3(&self, f: &[f64], symbol: &[Complex64]) -> (Vec<f64>, f64) {
        let (n1, n3) = (self.grid.n1, self.grid.n3);
        let mut out = vec![0.0; f.len()];
        let mut buf = vec![Complex64::default(); n3];
        let mut leak = 0.0_f64;
        let norm = 1.0 / n3 as f64;
        for i1 in 0..n1 {
            for (i3, b) in buf.iter_mut().enumerate() {
                *b = Complex64::new(f[i3 * n1 + i1], 0.0);
            }
            self.fwd_x3.process(&mut buf);
            for (b, s) in buf.iter_mut().zip(symbol.iter()) {
                *b *= s;
            }
            self.inv_x3.process(&mut buf);
            for (i3, b) in buf.iter().enumerate() {
                out[i3 * n1 + i1] = b.re * norm;
                leak = leak.max((b.im * norm).abs());
            }
        }
        (out, leak)
    }
}
