//! Rayon vs sequential throughput for the batch-evaluation paths.
//!
//! Run `cargo bench -p rotowave-core` for the parallel build and
//! `cargo bench -p rotowave-core --no-default-features` for the
//! sequential fallback alone. With the feature on, both paths are
//! benchmarked side by side in one report.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use rotowave_core::dispersion::FluidParams;
use rotowave_core::planewave::build_eigenmode;
use rotowave_core::simulator::{run, FieldState, Grid, SimConfig};
use rotowave_core::sweep::{compute_rows_sequential, KRange, SweepSpec};
use rotowave_core::Branch;

fn sweep_spec(n_samples: usize) -> SweepSpec {
    SweepSpec {
        params: FluidParams::new(1.0, 1.0).unwrap(),
        thetas: vec![0.0, 0.3, 0.7, 1.1, std::f64::consts::FRAC_PI_2],
        k_range: KRange {
            k_min: 1e-3,
            k_max: 100.0,
            n_samples,
        },
    }
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("dispersion_sweep");
    for &n in &[2_000usize, 20_000] {
        let spec = sweep_spec(n);
        let rows = spec.thetas.len() as u64 * n as u64;
        group.throughput(Throughput::Elements(rows));
        group.bench_with_input(BenchmarkId::new("sequential", rows), &spec, |b, s| {
            b.iter(|| compute_rows_sequential(s).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", rows), &spec, |b, s| {
            b.iter(|| rotowave_core::sweep::compute_rows_parallel(s).unwrap())
        });
    }
    group.finish();
}

fn bench_simulator_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulator_run");
    for &n in &[32usize, 64] {
        let params = FluidParams::new(1.0, 1.0).unwrap();
        let grid = Grid::new(n, n, 2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI).unwrap();
        let mode = build_eigenmode(&params, grid.mode_wave_vector(1, 1), Branch::Plus).unwrap();
        let initial = FieldState::from_mode(&grid, &mode, 1e-3);
        let config = SimConfig {
            params,
            grid,
            dt: SimConfig::default_dt(&params, &grid),
            n_steps: 50,
            record_every: 50,
            probe: (0, 0),
        };
        group.bench_with_input(BenchmarkId::new("steps50", n), &config, |b, cfg| {
            b.iter(|| run(cfg, &initial).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_simulator_step);
criterion_main!(benches);
