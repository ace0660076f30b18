//! Finite-difference holomorphy checks.
//!
//! For `w = u + h·v` the generalized Cauchy–Riemann conditions are
//! `u_x = v_y`, `u_y = v_x`, and they force both components to solve the wave
//! equation `u_xx - u_yy = 0`. The complex analogue is `u_x = v_y`,
//! `u_y = -v_x` with the Laplace equation `u_xx + u_yy = 0`.

use thiserror::Error;

use super::catalog::{Kind, PlaneFunction};

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_SECOND_STEP: f64 = 1e-4;
pub const DEFAULT_HOLO_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CheckError {
    #[error("non-finite sample of {name} at ({x}, {y})")]
    NonFiniteSample { name: &'static str, x: f64, y: f64 },
    #[error("step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
}

/// Central-difference first partials at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub u_x: f64,
    pub u_y: f64,
    pub v_x: f64,
    pub v_y: f64,
}

impl Partials {
    pub fn max_abs(&self) -> f64 {
        self.u_x
            .abs()
            .max(self.u_y.abs())
            .max(self.v_x.abs())
            .max(self.v_y.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GcrReport {
    pub point: (f64, f64),
    /// `u_x - v_y`
    pub r1: f64,
    /// `u_y - v_x` (hyperbolic) or `u_y + v_x` (complex)
    pub r2: f64,
    pub step: f64,
    pub partials: Partials,
    pub holomorphic: bool,
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

fn check_step(step: f64) -> Result<(), CheckError> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(CheckError::BadStep(step))
    }
}

pub fn partials(f: &PlaneFunction, (x, y): (f64, f64), step: f64) -> Result<Partials, CheckError> {
    check_step(step)?;
    let (uxp, vxp) = sample(f, x + step, y)?;
    let (uxm, vxm) = sample(f, x - step, y)?;
    let (uyp, vyp) = sample(f, x, y + step)?;
    let (uym, vym) = sample(f, x, y - step)?;
    let d = 2.0 * step;
    Ok(Partials {
        u_x: (uxp - uxm) / d,
        u_y: (uyp - uym) / d,
        v_x: (vxp - vxm) / d,
        v_y: (vyp - vym) / d,
    })
}

/// Checks the kind-appropriate Cauchy–Riemann conditions at `p`.
///
/// The point counts as holomorphic when
/// `max(|r1|, |r2|) <= tol * (1 + max |partial|)`.
pub fn gcr_check(
    f: &PlaneFunction,
    p: (f64, f64),
    step: f64,
    tol: f64,
) -> Result<GcrReport, CheckError> {
    let d = partials(f, p, step)?;
    let r1 = d.u_x - d.v_y;
    let r2 = match f.kind() {
        Kind::Hyperbolic => d.u_y - d.v_x,
        Kind::Complex => d.u_y + d.v_x,
    };
    let holomorphic = r1.abs().max(r2.abs()) <= tol * (1.0 + d.max_abs());
    Ok(GcrReport {
        point: p,
        r1,
        r2,
        step,
        partials: d,
        holomorphic,
    })
}

/// Second-difference residuals `(res_u, res_v)` of the wave operator
/// `∂xx - ∂yy` (hyperbolic) or the Laplacian `∂xx + ∂yy` (complex).
pub fn wave_residual(
    f: &PlaneFunction,
    (x, y): (f64, f64),
    step: f64,
) -> Result<(f64, f64), CheckError> {
    check_step(step)?;
    let (u0, v0) = sample(f, x, y)?;
    let (uxp, vxp) = sample(f, x + step, y)?;
    let (uxm, vxm) = sample(f, x - step, y)?;
    let (uyp, vyp) = sample(f, x, y + step)?;
    let (uym, vym) = sample(f, x, y - step)?;
    let h2 = step * step;
    let u_xx = (uxp - 2.0 * u0 + uxm) / h2;
    let u_yy = (uyp - 2.0 * u0 + uym) / h2;
    let v_xx = (vxp - 2.0 * v0 + vxm) / h2;
    let v_yy = (vyp - 2.0 * v0 + vym) / h2;
    Ok(match f.kind() {
        Kind::Hyperbolic => (u_xx - u_yy, v_xx - v_yy),
        Kind::Complex => (u_xx + u_yy, v_xx + v_yy),
    })
}
