//! Activation catalog and numerical holomorphy verification.

mod catalog;
mod scan;
mod verify;

pub use catalog::{
    by_name, complex_conjugate, complex_identity, complex_split_logistic, complex_square,
    holo_counterexample, hyperbolic_conjugate, hyperbolic_exp_fn, hyperbolic_identity,
    lift_activation, lift_real, logistic, logistic_idempotent, logistic_idempotent_via_basis,
    logistic_prime, split_logistic, Kind, PlaneFunction, RealActivation, CATALOG,
};
pub use scan::{bounds_scan, gcr_scan, max_wave_residual, sig17, BoundsReport, GcrScan, ScanRow};
pub use verify::{
    gcr_check, partials, wave_residual, CheckError, GcrReport, Partials, DEFAULT_HOLO_TOL,
    DEFAULT_SECOND_STEP, DEFAULT_STEP,
};
