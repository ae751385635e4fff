//! Machine-readable artifacts: CSV tables, the snapshot binary format
//! and the verification report.
//!
//! Floats are written as Rust's shortest round-trip decimals, so parsing
//! a value back yields bit-identical f64s. Undefined entries are the
//! literal token `NA`. All text files are UTF-8 with LF line endings and
//! contain no timestamps: identical invocations produce identical bytes.

use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

use rotowave_core::simulator::{Grid, RunRecord};
use rotowave_core::suite::CheckResult;
use rotowave_core::sweep::SweepRow;
use rotowave_core::Velocity2;

/// Magic prefix of the snapshot binary format.
pub const SNAPSHOT_MAGIC: &[u8; 8] = b"RWSNAP01";

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt_velocity(v: &Option<Velocity2>) -> (String, String) {
    match v {
        Some(v) => (fmt(v.v1), fmt(v.v3)),
        None => ("NA".to_string(), "NA".to_string()),
    }
}

pub fn write_dispersion_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut out = String::new();
    out.push_str(
        "theta,k,gamma_minus,gamma_plus,vg1_plus,vg3_plus,vg1_minus,vg3_minus,vph1_plus,vph3_plus,regime\n",
    );
    for row in rows {
        let (vg1p, vg3p) = fmt_opt_velocity(&row.vg_plus);
        let (vg1m, vg3m) = fmt_opt_velocity(&row.vg_minus);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt(row.theta),
            fmt(row.k),
            fmt(row.gamma_minus),
            fmt(row.gamma_plus),
            vg1p,
            vg3p,
            vg1m,
            vg3m,
            fmt(row.vph_plus.v1),
            fmt(row.vph_plus.v3),
            row.regime.tag(),
        ));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_probe_csv(path: &Path, record: &RunRecord) -> Result<()> {
    let mut out = String::from("t,v1,v2,v3,p\n");
    for (i, probe) in record.probe_series.iter().enumerate() {
        let t = i as f64 * record.dt;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt(t),
            fmt(probe[0]),
            fmt(probe[1]),
            fmt(probe[2]),
            fmt(probe[3])
        ));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_energy_csv(path: &Path, record: &RunRecord) -> Result<()> {
    let mut out = String::from("t,E\n");
    for (i, e) in record.energy_series.iter().enumerate() {
        let t = i as f64 * record.dt;
        out.push_str(&format!("{},{}\n", fmt(t), fmt(*e)));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

/// Write each recorded snapshot as `snapshot_NNNNNN.bin`.
///
/// Layout (all little-endian): the 8-byte magic `RWSNAP01`, `u32` n1,
/// `u32` n3, `f64` L1, `f64` L3, `f64` t, then the four fields v1, v2,
/// v3, p in order, each n1·n3 `f64`s with the x1 index fastest.
pub fn write_snapshots(dir: &Path, grid: &Grid, record: &RunRecord) -> Result<()> {
    for (idx, snap) in record.snapshots.iter().enumerate() {
        let path = dir.join(format!("snapshot_{idx:06}.bin"));
        let mut buf: Vec<u8> = Vec::with_capacity(44 + 32 * grid.num_points());
        buf.extend_from_slice(SNAPSHOT_MAGIC);
        buf.extend_from_slice(&(grid.n1 as u32).to_le_bytes());
        buf.extend_from_slice(&(grid.n3 as u32).to_le_bytes());
        buf.extend_from_slice(&grid.l1.to_le_bytes());
        buf.extend_from_slice(&grid.l3.to_le_bytes());
        buf.extend_from_slice(&snap.t.to_le_bytes());
        for field in snap.fields() {
            for v in field {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        std::fs::write(&path, buf).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    scope: &'a str,
    passed: bool,
    checks: Vec<CheckDoc<'a>>,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    check_name: &'a str,
    status: &'a str,
    measured: f64,
    tolerance: f64,
}

pub fn write_report_json(path: &Path, scope: &str, results: &[CheckResult]) -> Result<()> {
    let doc = ReportDoc {
        scope,
        passed: rotowave_core::suite::all_passed(results),
        checks: results
            .iter()
            .map(|r| CheckDoc {
                check_name: r.name,
                status: r.status.as_str(),
                measured: r.measured,
                tolerance: r.tolerance,
            })
            .collect(),
    };
    let mut file = std::fs::File::create(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    serde_json::to_writer_pretty(&mut file, &doc)?;
    writeln!(file)?;
    Ok(())
}
