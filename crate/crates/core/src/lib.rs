//! Traveling waves of a dissipative relaxing medium: coefficient reductions,
//! dispersion relations, one-soliton solutions of the coupled characteristic
//! system, Hirota bilinear checks, residual verification and time integrators.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod error;
pub mod grid;
pub mod hirota;
pub mod medium;
pub mod quad;
pub mod sim;
pub mod soliton;
pub mod verify;

pub use dispersion::{alpha_critical, solve_complex_omega, solve_real, ComplexWave, RealWave};
pub use error::{Error, Result};
pub use grid::{Axis, Grid2};
pub use hirota::{bilinear_residual, AlphaVariant, Atom, BilinearReport, TauFunction};
pub use medium::{HighFreqCoeffs, LowFreqCoeffs, MediumParams, ReducedParams};
pub use soliton::{classify, profile, MomentumShape, ProfileSamples, Shape, ShapeClass};
pub use verify::{DerivativeMethod, ResidualReport};
