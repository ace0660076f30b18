use std::fmt;
use std::sync::Arc;

use crate::number::{HyperbolicNumber, IdempotentCoords};
use crate::polar;

/// Which algebra `w = u + (h|i)·v` lives in. Decides the sign in the second
/// Cauchy–Riemann condition and the second-order operator (wave vs Laplace).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Hyperbolic,
    Complex,
}

type EvalFn = dyn Fn(f64, f64) -> (f64, f64) + Send + Sync;

/// A map `(x, y) -> (u, v)` standing for `w = u(x,y) + h·v(x,y)` (or `+ i·v`).
#[derive(Clone)]
pub struct PlaneFunction {
    name: String,
    kind: Kind,
    eval: Arc<EvalFn>,
}

impl PlaneFunction {
    pub fn new<F>(name: impl Into<String>, kind: Kind, eval: F) -> Self
    where
        F: Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            kind,
            eval: Arc::new(eval),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.eval)(x, y)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
}

impl fmt::Debug for PlaneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneFunction")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

/// Largest double strictly below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;
/// Smallest positive subnormal.
const ABOVE_ZERO: f64 = 5e-324;

/// The logistic function `1 / (1 + e^{-t})`.
///
/// The value always lies in the open interval `(0, 1)`: where the exact
/// result is closer to an endpoint than the nearest interior double, it
/// saturates at that interior double instead of rounding onto the endpoint.
pub fn logistic(t: f64) -> f64 {
    let s = if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    };
    s.clamp(ABOVE_ZERO, BELOW_ONE)
}

/// `σ'(t) = σ(t)(1 - σ(t))`.
pub fn logistic_prime(t: f64) -> f64 {
    let s = logistic(t);
    s * (1.0 - s)
}

/// Real scalar activations that can be lifted into the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealActivation {
    Logistic,
    Tanh,
    Identity,
}

impl RealActivation {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            RealActivation::Logistic => logistic(t),
            RealActivation::Tanh => t.tanh(),
            RealActivation::Identity => t,
        }
    }

    pub fn derivative(self, t: f64) -> f64 {
        match self {
            RealActivation::Logistic => logistic_prime(t),
            RealActivation::Tanh => {
                let th = t.tanh();
                1.0 - th * th
            }
            RealActivation::Identity => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RealActivation::Logistic => "logistic",
            RealActivation::Tanh => "tanh",
            RealActivation::Identity => "identity",
        }
    }
}

/// `f(z) = r(x + y)·(1 + h)`, i.e. `u = v = r(x + y)`. Holomorphic for any
/// differentiable `r`, since every partial equals `r'(x + y)`.
pub fn lift_real<R>(name: impl Into<String>, r: R) -> PlaneFunction
where
    R: Fn(f64) -> f64 + Send + Sync + 'static,
{
    PlaneFunction::new(name, Kind::Hyperbolic, move |x, y| {
        let s = r(x + y);
        (s, s)
    })
}

pub fn lift_activation(r: RealActivation) -> PlaneFunction {
    lift_real(format!("lift-{}", r.name()), move |t| r.apply(t))
}

/// `u = v = 1 / (1 + e^{-x} e^{-y})`: bounded, non-constant and holomorphic.
pub fn holo_counterexample() -> PlaneFunction {
    PlaneFunction::new("holo", Kind::Hyperbolic, |x, y| {
        let s = logistic(x + y);
        (s, s)
    })
}

/// The hyperbolic logistic `1 / (1 + e^{-z})`, evaluated through the
/// idempotent basis: `σ(ξ)·n1 + σ(η)·n2`.
pub fn logistic_idempotent() -> PlaneFunction {
    PlaneFunction::new("idem-logistic", Kind::Hyperbolic, |x, y| {
        let a = logistic(x + y);
        let b = logistic(x - y);
        (0.5 * (a + b), 0.5 * (a - b))
    })
}

/// Same as [`logistic_idempotent`] but assembled with the ring's own
/// basis change. Used to cross-check the closed form.
pub fn logistic_idempotent_via_basis(z: HyperbolicNumber) -> HyperbolicNumber {
    let c = z.to_idempotent();
    HyperbolicNumber::from_idempotent(IdempotentCoords::new(logistic(c.xi), logistic(c.eta)))
}

/// `σ(x) + h·σ(y)`: a componentwise activation, not holomorphic.
pub fn split_logistic() -> PlaneFunction {
    PlaneFunction::new("split-logistic", Kind::Hyperbolic, |x, y| {
        (logistic(x), logistic(y))
    })
}

/// `e^z = e^x cosh y + h·e^x sinh y`. Overflow yields non-finite samples.
pub fn hyperbolic_exp_fn() -> PlaneFunction {
    PlaneFunction::new(
        "exp",
        Kind::Hyperbolic,
        |x, y| match HyperbolicNumber::new(x, y).map(polar::exp) {
            Ok(Ok(w)) => (w.x(), w.y()),
            _ => (f64::INFINITY, f64::INFINITY),
        },
    )
}

pub fn hyperbolic_identity() -> PlaneFunction {
    PlaneFunction::new("id", Kind::Hyperbolic, |x, y| (x, y))
}

pub fn hyperbolic_conjugate() -> PlaneFunction {
    PlaneFunction::new("conj", Kind::Hyperbolic, |x, y| (x, -y))
}

/// `σ(x) + i·σ(y)`, the usual split activation of complex networks.
pub fn complex_split_logistic() -> PlaneFunction {
    PlaneFunction::new("complex-split", Kind::Complex, |x, y| {
        (logistic(x), logistic(y))
    })
}

pub fn complex_identity() -> PlaneFunction {
    PlaneFunction::new("complex-id", Kind::Complex, |x, y| (x, y))
}

pub fn complex_conjugate() -> PlaneFunction {
    PlaneFunction::new("complex-conj", Kind::Complex, |x, y| (x, -y))
}

/// `z² = (x² - y²) + i·2xy`.
pub fn complex_square() -> PlaneFunction {
    PlaneFunction::new("complex-square", Kind::Complex, |x, y| {
        (x * x - y * y, 2.0 * x * y)
    })
}

/// Names accepted by [`by_name`].
pub const CATALOG: &[&str] = &[
    "exp",
    "holo",
    "holo-tanh",
    "idem-logistic",
    "split-logistic",
    "id",
    "conj",
    "complex-split",
    "complex-id",
    "complex-conj",
    "complex-square",
];

pub fn by_name(name: &str) -> Option<PlaneFunction> {
    let f = match name {
        "exp" => hyperbolic_exp_fn(),
        "holo" => holo_counterexample(),
        "holo-tanh" => {
            let mut f = lift_activation(RealActivation::Tanh);
            f.name = "holo-tanh".into();
            f
        }
        "idem-logistic" => logistic_idempotent(),
        "split-logistic" => split_logistic(),
        "id" => hyperbolic_identity(),
        "conj" => hyperbolic_conjugate(),
        "complex-split" => complex_split_logistic(),
        "complex-id" => complex_identity(),
        "complex-conj" => complex_conjugate(),
        "complex-square" => complex_square(),
        _ => return None,
    };
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_stays_open() {
        assert_eq!(logistic(0.0), 0.5);
        for t in [-1e308, -800.0, -100.0, -40.0, 40.0, 100.0, 800.0, 1e308] {
            let s = logistic(t);
            assert!(s > 0.0 && s < 1.0, "σ({t}) = {s}");
        }
        assert_eq!(logistic(100.0), BELOW_ONE);
        assert!((logistic(2.0) - 1.0 / (1.0 + (-2.0f64).exp())).abs() < 1e-16);
        assert!((logistic(-2.0) - 1.0 / (1.0 + 2.0f64.exp())).abs() < 1e-16);
    }

    #[test]
    fn holo_examples() {
        let f = holo_counterexample();
        assert_eq!(f.eval(0.0, 0.0), (0.5, 0.5));
        let (u, v) = f.eval(20.0, 20.0);
        assert!((u - 1.0).abs() < 1e-8 && (v - 1.0).abs() < 1e-8);
        let (u, v) = f.eval(-20.0, -20.0);
        assert!(u.abs() < 1e-8 && v.abs() < 1e-8);
        for &(x, y) in &[(-700.0, -700.0), (700.0, 700.0), (3.0, -1.0), (-1e300, 5.0)] {
            let (u, v) = f.eval(x, y);
            assert!(u > 0.0 && u < 1.0 && u == v);
        }
    }

    #[test]
    fn lift_examples() {
        let t = lift_activation(RealActivation::Tanh);
        assert_eq!(t.eval(1.0, -1.0), (0.0, 0.0));
        let id = lift_real("id", |t| t);
        assert_eq!(id.eval(2.0, 3.0), (5.0, 5.0));
        let lifted = lift_activation(RealActivation::Logistic);
        let holo = holo_counterexample();
        for j in 0..21 {
            for i in 0..21 {
                let x = -3.0 + 0.3 * i as f64;
                let y = -3.0 + 0.3 * j as f64;
                assert_eq!(lifted.eval(x, y), holo.eval(x, y));
            }
        }
    }

    #[test]
    fn idempotent_logistic_examples() {
        let f = logistic_idempotent();
        assert_eq!(f.eval(0.0, 0.0), (0.5, 0.0));
        assert!(f.eval(3.0, 0.0).1.abs() < 0.05);
        assert!(f.eval(2.0, 2.0).1.abs() > 0.2);
        assert!(f.eval(-2.0, 2.0).1.abs() > 0.2);
        for &(x, y) in &[(0.3, -1.2), (4.0, 4.5), (-7.0, 0.1)] {
            let (u, v) = f.eval(x, y);
            let w = logistic_idempotent_via_basis(HyperbolicNumber::new(x, y).unwrap());
            assert!((u - w.x()).abs() <= 1e-14 && (v - w.y()).abs() <= 1e-14);
        }
    }

    #[test]
    fn split_and_exp_examples() {
        let s = split_logistic();
        assert_eq!(s.eval(0.0, 0.0), (0.5, 0.5));
        let (u, v) = s.eval(20.0, -20.0);
        assert!((u - 1.0).abs() < 1e-8 && v.abs() < 1e-8);
        assert_eq!(complex_split_logistic().eval(0.0, 0.0), (0.5, 0.5));

        let e = hyperbolic_exp_fn();
        assert_eq!(e.eval(0.0, 0.0), (1.0, 0.0));
        let (u, _) = e.eval(5.0, 5.0);
        assert!(u > 4f64.exp());
        assert!(e.eval(800.0, 0.0).0.is_infinite());
    }

    #[test]
    fn catalog_resolves_every_name() {
        for name in CATALOG {
            let f = by_name(name).unwrap();
            assert_eq!(f.name(), *name);
        }
        assert!(by_name("nope").is_none());
    }
}
