//! Hyperbolic polar coordinates and the exponential map.
//!
//! Off the null cone every point can be written as `s·ρ·e^{hθ}` where the
//! prefactor `s` is one of `1, -1, h, -h` depending on which of the four
//! sectors cut out by the lines `x = ±y` it lies in. Multiplication then
//! scales `ρ` and adds `θ` (a hyperbolic rotation), with the prefactors
//! multiplied in the ring.

use std::fmt;

use thiserror::Error;

use crate::number::{ElementClass, HyperbolicNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolarError {
    #[error("point lies on the null cone x² = y²; polar form undefined")]
    OnNullCone,
    #[error("exponential overflowed")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    /// `x² > y²`, `x > 0`; prefactor `1`.
    Right,
    /// `x² > y²`, `x < 0`; prefactor `-1`.
    Left,
    /// `x² < y²`, `y > 0`; prefactor `h`.
    Top,
    /// `x² < y²`, `y < 0`; prefactor `-h`.
    Bottom,
    NullCone,
}

impl Quadrant {
    /// The prefactor `s` in `z = s·ρ·e^{hθ}`. `None` on the cone.
    pub fn prefactor(self) -> Option<HyperbolicNumber> {
        use HyperbolicNumber as H;
        match self {
            Quadrant::Right => Some(H::ONE),
            Quadrant::Left => Some(-H::ONE),
            Quadrant::Top => Some(H::H),
            Quadrant::Bottom => Some(-H::H),
            Quadrant::NullCone => None,
        }
    }

    fn from_prefactor(s: HyperbolicNumber) -> Self {
        match (s.x(), s.y()) {
            (x, _) if x > 0.5 => Quadrant::Right,
            (x, _) if x < -0.5 => Quadrant::Left,
            (_, y) if y > 0.5 => Quadrant::Top,
            (_, y) if y < -0.5 => Quadrant::Bottom,
            _ => Quadrant::NullCone,
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quadrant::Right => "Right",
            Quadrant::Left => "Left",
            Quadrant::Top => "Top",
            Quadrant::Bottom => "Bottom",
            Quadrant::NullCone => "NullCone",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub rho: f64,
    pub theta: f64,
    pub quadrant: Quadrant,
}

/// Sector of `z`. The cone test reuses [`HyperbolicNumber::classify`]'s band.
pub fn quadrant_of(z: HyperbolicNumber, tol: f64) -> Quadrant {
    if z.classify(tol) != ElementClass::Invertible {
        return Quadrant::NullCone;
    }
    let c = z.to_idempotent();
    // x² - y² = ξη
    if (c.xi > 0.0) == (c.eta > 0.0) {
        if z.x() > 0.0 {
            Quadrant::Right
        } else {
            Quadrant::Left
        }
    } else if z.y() > 0.0 {
        Quadrant::Top
    } else {
        Quadrant::Bottom
    }
}

pub fn to_polar(z: HyperbolicNumber, tol: f64) -> Result<PolarForm, PolarError> {
    let quadrant = quadrant_of(z, tol);
    if quadrant == Quadrant::NullCone {
        return Err(PolarError::OnNullCone);
    }
    let c = z.to_idempotent();
    let (a, b) = (c.xi.abs(), c.eta.abs());
    // artanh(r) = ½ ln((1+r)/(1-r)) with r = y/x (or x/y); scaling numerator
    // and denominator by x (or y) turns the ratio into |ξ|/|η|.
    debug_assert!(a > 0.0 && b > 0.0);
    let theta = 0.5 * (a.ln() - b.ln());
    let prod = a * b;
    let rho = if prod.is_normal() {
        prod.sqrt()
    } else {
        a.sqrt() * b.sqrt()
    };
    Ok(PolarForm {
        rho,
        theta,
        quadrant,
    })
}

pub fn from_polar(p: PolarForm) -> Result<HyperbolicNumber, PolarError> {
    let (c, s) = (p.theta.cosh(), p.theta.sinh());
    let r = p.rho;
    let z = match p.quadrant {
        Quadrant::Right => HyperbolicNumber::raw(r * c, r * s),
        Quadrant::Left => HyperbolicNumber::raw(-r * c, -r * s),
        Quadrant::Top => HyperbolicNumber::raw(r * s, r * c),
        Quadrant::Bottom => HyperbolicNumber::raw(-r * s, -r * c),
        Quadrant::NullCone => return Err(PolarError::OnNullCone),
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(PolarError::Overflow)
    }
}

/// `e^z = e^x (cosh y + h sinh y)`.
pub fn exp(z: HyperbolicNumber) -> Result<HyperbolicNumber, PolarError> {
    let ex = z.x().exp();
    let out = HyperbolicNumber::raw(ex * z.y().cosh(), ex * z.y().sinh());
    if out.is_finite() {
        Ok(out)
    } else {
        Err(PolarError::Overflow)
    }
}

/// Multiplies through polar forms: `ρ` multiplies, `θ` adds, prefactors
/// multiply in the ring.
pub fn polar_mul(
    a: HyperbolicNumber,
    z: HyperbolicNumber,
    tol: f64,
) -> Result<HyperbolicNumber, PolarError> {
    let pa = to_polar(a, tol)?;
    let pz = to_polar(z, tol)?;
    let s = pa.quadrant.prefactor().expect("off-cone") * pz.quadrant.prefactor().expect("off-cone");
    from_polar(PolarForm {
        rho: pa.rho * pz.rho,
        theta: pa.theta + pz.theta,
        quadrant: Quadrant::from_prefactor(s),
    })
}
