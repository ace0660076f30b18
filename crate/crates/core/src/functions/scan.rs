//! Lattice sweeps: holomorphy fractions, value ranges and CSV export.

use std::io::{self, Write};

use super::catalog::PlaneFunction;
use super::verify::{gcr_check, wave_residual, CheckError};
use crate::grid::{Lattice, PlaneBox};

/// One lattice point of a [`gcr_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub r1: f64,
    pub r2: f64,
    pub holomorphic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcrScan {
    pub lattice: Lattice,
    pub rows: Vec<ScanRow>,
    pub max_r1: f64,
    pub max_r2: f64,
    pub fraction_holomorphic: f64,
}

impl GcrScan {
    /// `x,y,u,v,r1,r2`, one row per lattice point, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,y,u,v,r1,r2")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                sig17(r.x),
                sig17(r.y),
                sig17(r.u),
                sig17(r.v),
                sig17(r.r1),
                sig17(r.r2)
            )?;
        }
        Ok(())
    }
}

/// 17 significant digits in scientific notation.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn sample(f: &PlaneFunction, x: f64, y: f64) -> Result<(f64, f64), CheckError> {
    let (u, v) = f.eval(x, y);
    if u.is_finite() && v.is_finite() {
        Ok((u, v))
    } else {
        Err(CheckError::NonFiniteSample {
            name: if u.is_finite() { "v" } else { "u" },
            x,
            y,
        })
    }
}

/// Runs [`gcr_check`] over every lattice point in row-major order.
pub fn gcr_scan(
    f: &PlaneFunction,
    lattice: &Lattice,
    step: f64,
    tol: f64,
) -> Result<GcrScan, CheckError> {
    let mut rows = Vec::with_capacity(lattice.len());
    let (mut max_r1, mut max_r2) = (0.0f64, 0.0f64);
    let mut holo = 0usize;
    for (_, _, x, y) in lattice.points() {
        let (u, v) = sample(f, x, y)?;
        let rep = gcr_check(f, (x, y), step, tol)?;
        max_r1 = max_r1.max(rep.r1.abs());
        max_r2 = max_r2.max(rep.r2.abs());
        holo += usize::from(rep.holomorphic);
        rows.push(ScanRow {
            x,
            y,
            u,
            v,
            r1: rep.r1,
            r2: rep.r2,
            holomorphic: rep.holomorphic,
        });
    }
    Ok(GcrScan {
        lattice: *lattice,
        fraction_holomorphic: holo as f64 / rows.len() as f64,
        rows,
        max_r1,
        max_r2,
    })
}

/// Largest `|residual|` of the wave (or Laplace) operator over the lattice,
/// as `(max_u, max_v)`.
pub fn max_wave_residual(
    f: &PlaneFunction,
    lattice: &Lattice,
    step: f64,
) -> Result<(f64, f64), CheckError> {
    let mut acc = (0.0f64, 0.0f64);
    for (_, _, x, y) in lattice.points() {
        let (a, b) = wave_residual(f, (x, y), step)?;
        acc = (acc.0.max(a.abs()), acc.1.max(b.abs()));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub bounds: PlaneBox,
    pub grid: (usize, usize),
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    /// `max(|u|, |v|)` over the lattice.
    pub sup_abs: f64,
}

pub fn bounds_scan(f: &PlaneFunction, lattice: &Lattice) -> Result<BoundsReport, CheckError> {
    let mut u_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut v_range = u_range;
    let mut sup_abs = 0.0f64;
    for (_, _, x, y) in lattice.points() {
        let (u, v) = sample(f, x, y)?;
        u_range = (u_range.0.min(u), u_range.1.max(u));
        v_range = (v_range.0.min(v), v_range.1.max(v));
        sup_abs = sup_abs.max(u.abs()).max(v.abs());
    }
    Ok(BoundsReport {
        bounds: lattice.bounds,
        grid: (lattice.nx, lattice.ny),
        u_range,
        v_range,
        sup_abs,
    })
}
