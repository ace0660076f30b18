//! Hyperbolic (split-complex) numbers `x + h·y` with `h² = +1`, numerical
//! holomorphy checks for plane functions, bounded holomorphic activations and
//! a small hyperbolic-valued feed-forward network that uses them.

pub mod cli;
pub mod functions;
pub mod grid;
pub mod network;
pub mod number;
pub mod polar;

pub use number::{
    AlgebraError, Axis, ElementClass, HyperbolicNumber, IdempotentCoords, DEFAULT_TOL,
};
