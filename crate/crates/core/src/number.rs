//! The hyperbolic number plane.
//!
//! A hyperbolic (split-complex) number is `z = x + h·y` with `h² = +1` and
//! `h` not real. The ring is commutative but has divisors of zero: every
//! nonzero point on the lines `x = ±y` (the null cone) annihilates some other
//! nonzero point.
//!
//! Values are stored in the `(x, y)` basis. The idempotent basis
//! `n1 = (1+h)/2`, `n2 = (1-h)/2` diagonalizes multiplication:
//! `z = ξ·n1 + η·n2` with `ξ = x + y`, `η = x - y`, and products and quotients
//! act componentwise on `(ξ, η)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Default relative band for "is this coordinate zero" decisions.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("non-finite component ({which}) rejected")]
    NonFinite { which: &'static str },
    /// The divisor sits on the null cone. `axis` is `None` when the divisor is zero itself.
    #[error("division by a divisor of zero on the null cone ({})", describe_axis(*.axis))]
    DivisionByZeroDivisor { axis: Option<Axis> },
}

fn describe_axis(axis: Option<Axis>) -> &'static str {
    match axis {
        Some(Axis::N1) => "n1 axis, eta = 0",
        Some(Axis::N2) => "n2 axis, xi = 0",
        None => "zero",
    }
}

/// `z = x + h·y`, both components finite.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperbolicNumber {
    x: f64,
    y: f64,
}

/// Coordinates in the idempotent basis: `z = xi·n1 + eta·n2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdempotentCoords {
    pub xi: f64,
    pub eta: f64,
}

/// Which idempotent axis a divisor of zero lies on.
///
/// Points with `eta = 0` are multiples of `n1`; points with `xi = 0` are
/// multiples of `n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    N1,
    N2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Zero,
    ZeroDivisor(Axis),
    Invertible,
}

impl HyperbolicNumber {
    pub const ZERO: Self = Self { x: 0.0, y: 0.0 };
    pub const ONE: Self = Self { x: 1.0, y: 0.0 };
    /// The unipotent `h`.
    pub const H: Self = Self { x: 0.0, y: 1.0 };
    /// `n1 = (1 + h) / 2`.
    pub const N1: Self = Self { x: 0.5, y: 0.5 };
    /// `n2 = (1 - h) / 2`.
    pub const N2: Self = Self { x: 0.5, y: -0.5 };

    pub fn new(x: f64, y: f64) -> Result<Self, AlgebraError> {
        if !x.is_finite() {
            return Err(AlgebraError::NonFinite { which: "x" });
        }
        if !y.is_finite() {
            return Err(AlgebraError::NonFinite { which: "y" });
        }
        Ok(Self { x, y })
    }

    /// Builds a value without the finiteness check. Arithmetic results go
    /// through here; callers that can overflow must check [`Self::is_finite`].
    pub(crate) const fn raw(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64) -> Result<Self, AlgebraError> {
        Self::new(x, 0.0)
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(self) -> f64 {
        self.y
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `x - h·y`.
    pub fn conjugate(self) -> Self {
        Self::raw(self.x, -self.y)
    }

    /// The hyperbolic invariant `z·z̄ = x² - y²`. Not sign-definite.
    pub fn modulus(self) -> f64 {
        self.x * self.x - self.y * self.y
    }

    pub fn to_idempotent(self) -> IdempotentCoords {
        IdempotentCoords {
            xi: self.x + self.y,
            eta: self.x - self.y,
        }
    }

    pub fn from_idempotent(c: IdempotentCoords) -> Self {
        c.to_hyperbolic()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::raw(self.x * s, self.y * s)
    }

    /// Classifies `self` as zero, divisor of zero or invertible.
    ///
    /// An idempotent coordinate counts as zero when
    /// `|c| <= tol * max(1, |xi|, |eta|)`.
    pub fn classify(self, tol: f64) -> ElementClass {
        debug_assert!(tol >= 0.0);
        let IdempotentCoords { xi, eta } = self.to_idempotent();
        let band = tol * 1f64.max(xi.abs()).max(eta.abs());
        let xi_zero = xi.abs() <= band;
        let eta_zero = eta.abs() <= band;
        match (xi_zero, eta_zero) {
            (true, true) => ElementClass::Zero,
            (false, true) => ElementClass::ZeroDivisor(Axis::N1),
            (true, false) => ElementClass::ZeroDivisor(Axis::N2),
            (false, false) => ElementClass::Invertible,
        }
    }

    /// `self / w`, computed componentwise in the idempotent basis.
    pub fn divide(self, w: Self, tol: f64) -> Result<Self, AlgebraError> {
        match w.classify(tol) {
            ElementClass::Invertible => {}
            ElementClass::Zero => return Err(AlgebraError::DivisionByZeroDivisor { axis: None }),
            ElementClass::ZeroDivisor(axis) => {
                return Err(AlgebraError::DivisionByZeroDivisor { axis: Some(axis) })
            }
        }
        let num = self.to_idempotent();
        let den = w.to_idempotent();
        Ok(IdempotentCoords {
            xi: num.xi / den.xi,
            eta: num.eta / den.eta,
        }
        .to_hyperbolic())
    }

    pub fn inverse(self, tol: f64) -> Result<Self, AlgebraError> {
        Self::ONE.divide(self, tol)
    }
}

impl IdempotentCoords {
    pub fn new(xi: f64, eta: f64) -> Self {
        Self { xi, eta }
    }

    pub fn to_hyperbolic(self) -> HyperbolicNumber {
        HyperbolicNumber::raw(0.5 * (self.xi + self.eta), 0.5 * (self.xi - self.eta))
    }
}

impl From<HyperbolicNumber> for IdempotentCoords {
    fn from(z: HyperbolicNumber) -> Self {
        z.to_idempotent()
    }
}

impl From<IdempotentCoords> for HyperbolicNumber {
    fn from(c: IdempotentCoords) -> Self {
        c.to_hyperbolic()
    }
}

impl Add for HyperbolicNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::raw(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for HyperbolicNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::raw(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for HyperbolicNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw(-self.x, -self.y)
    }
}

impl Mul for HyperbolicNumber {
    type Output = Self;
    // h·h = +1
    fn mul(self, rhs: Self) -> Self {
        Self::raw(
            self.x * rhs.x + self.y * rhs.y,
            self.x * rhs.y + self.y * rhs.x,
        )
    }
}

impl std::iter::Sum for HyperbolicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

/// Formats a float with the shortest round-trip decimal, folding `-0` to `0`.
pub(crate) fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn fmt_signed_pair(f: &mut fmt::Formatter<'_>, a: f64, b: f64, unit: &str) -> fmt::Result {
    let sign = if b < 0.0 { '-' } else { '+' };
    write!(f, "{} {} {}{}", fmt_real(a), sign, fmt_real(b.abs()), unit)
}

/// Renders as `x + yh` (or `x - yh`).
impl fmt::Display for HyperbolicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed_pair(f, self.x, self.y, "h")
    }
}

/// Renders as `ξ·n1 + η·n2`.
impl fmt::Display for IdempotentCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.eta < 0.0 { '-' } else { '+' };
        write!(
            f,
            "{}·n1 {} {}·n2",
            fmt_real(self.xi),
            sign,
            fmt_real(self.eta.abs())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hn(x: f64, y: f64) -> HyperbolicNumber {
        HyperbolicNumber::new(x, y).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(hn(1.0, 2.0) + hn(3.0, -2.0), hn(4.0, 0.0));
        assert_eq!(HyperbolicNumber::ZERO + hn(1.5, -7.0), hn(1.5, -7.0));
        assert_eq!(hn(1.0, 1.0) + hn(-1.0, -1.0), HyperbolicNumber::ZERO);
    }

    #[test]
    fn unipotent_and_idempotents() {
        use HyperbolicNumber as H;
        assert_eq!(H::H * H::H, H::ONE);
        assert_eq!(H::N1 * H::N2, H::ZERO);
        assert_eq!(H::N1 * H::N1, H::N1);
        assert_eq!(H::N2 * H::N2, H::N2);
        assert_eq!(H::N1 + H::N2, H::ONE);
        assert_eq!(H::N1 - H::N2, H::H);
        assert_eq!(H::N1.conjugate(), H::N2);
        assert_eq!(H::N2.conjugate(), H::N1);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(hn(3.0, 2.0).conjugate(), hn(3.0, -2.0));
        let z = hn(1.5, -0.25);
        assert_eq!(z.conjugate().conjugate(), z);
        let c = z.to_idempotent();
        let cc = z.conjugate().to_idempotent();
        assert_eq!((cc.xi, cc.eta), (c.eta, c.xi));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(hn(1.0, 0.0).modulus(), 1.0);
        assert_eq!(hn(1.0, 1.0).modulus(), 0.0);
        assert_eq!(hn(0.0, 1.0).modulus(), -1.0);
        let z = hn(3.0, 1.0);
        let c = z.to_idempotent();
        assert_eq!(z.modulus(), c.xi * c.eta);
    }

    #[test]
    fn idempotent_coordinates() {
        assert_eq!(
            hn(3.0, 1.0).to_idempotent(),
            IdempotentCoords::new(4.0, 2.0)
        );
        assert_eq!(
            HyperbolicNumber::N1.to_idempotent(),
            IdempotentCoords::new(1.0, 0.0)
        );
        assert_eq!(
            hn(-2.5, 0.0).to_idempotent(),
            IdempotentCoords::new(-2.5, -2.5)
        );
        assert_eq!(
            IdempotentCoords::new(4.0, 2.0).to_hyperbolic(),
            hn(3.0, 1.0)
        );
        assert_eq!(
            IdempotentCoords::new(1.0, 1.0).to_hyperbolic(),
            HyperbolicNumber::ONE
        );
        assert_eq!(
            IdempotentCoords::new(1.0, -1.0).to_hyperbolic(),
            HyperbolicNumber::H
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            hn(1.0, 1.0).classify(DEFAULT_TOL),
            ElementClass::ZeroDivisor(Axis::N1)
        );
        assert_eq!(
            hn(1.0, -1.0).classify(DEFAULT_TOL),
            ElementClass::ZeroDivisor(Axis::N2)
        );
        assert_eq!(hn(0.0, 0.0).classify(DEFAULT_TOL), ElementClass::Zero);
        assert_eq!(hn(2.0, 1.0).classify(DEFAULT_TOL), ElementClass::Invertible);
    }

    #[test]
    fn classify_band_is_scale_aware() {
        // eta = 1e-3 is tiny next to xi = 2e12, but not next to xi = 2.
        let big = hn(1e12, 1e12 - 1e-3);
        assert_eq!(
            big.classify(DEFAULT_TOL),
            ElementClass::ZeroDivisor(Axis::N1)
        );
        let small = hn(1.0, 1.0 - 1e-3);
        assert_eq!(small.classify(DEFAULT_TOL), ElementClass::Invertible);
        assert_eq!(small.classify(1e-2), ElementClass::ZeroDivisor(Axis::N1));
    }

    #[test]
    fn divide_examples() {
        let z = hn(3.0, 1.0);
        let w = hn(2.0, 1.0);
        let r = z.divide(w, DEFAULT_TOL).unwrap();
        // oracle: multiply back directly
        let back = r * w;
        assert!((back.x() - 3.0).abs() < 1e-15 && (back.y() - 1.0).abs() < 1e-15);
        assert!((r.x() - 5.0 / 3.0).abs() < 1e-15);
        assert!((r.y() + 1.0 / 3.0).abs() < 1e-15);

        assert_eq!(w.divide(w, DEFAULT_TOL).unwrap(), HyperbolicNumber::ONE);
        assert_eq!(
            z.divide(hn(1.0, 1.0), DEFAULT_TOL),
            Err(AlgebraError::DivisionByZeroDivisor {
                axis: Some(Axis::N1)
            })
        );
        assert_eq!(
            z.divide(HyperbolicNumber::ZERO, DEFAULT_TOL),
            Err(AlgebraError::DivisionByZeroDivisor { axis: None })
        );
        // both on the same axis: still refused
        assert!(hn(2.0, 2.0).divide(hn(1.0, 1.0), DEFAULT_TOL).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(hn(2.0, 0.0).inverse(DEFAULT_TOL).unwrap(), hn(0.5, 0.0));
        assert_eq!(
            HyperbolicNumber::H.inverse(DEFAULT_TOL).unwrap(),
            HyperbolicNumber::H
        );
        assert!(matches!(
            hn(1.0, -1.0).inverse(DEFAULT_TOL),
            Err(AlgebraError::DivisionByZeroDivisor {
                axis: Some(Axis::N2)
            })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(HyperbolicNumber::new(f64::NAN, 0.0).is_err());
        assert!(HyperbolicNumber::new(0.0, f64::INFINITY).is_err());
        assert!(HyperbolicNumber::real(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(hn(0.0, 0.0).to_string(), "0 + 0h");
        assert_eq!(hn(-0.0, -0.0).to_string(), "0 + 0h");
        assert_eq!(hn(1.25, -0.75).to_string(), "1.25 - 0.75h");
        assert_eq!(hn(3.0, 1.0).to_idempotent().to_string(), "4·n1 + 2·n2");
        assert_eq!(hn(0.0, 1.0).to_idempotent().to_string(), "1·n1 - 1·n2");
    }
}
