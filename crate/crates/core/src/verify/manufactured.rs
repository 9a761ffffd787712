//! Manufactured solutions for the real coupled system.
//!
//! Smooth Gaussian fields are pushed through the residual operator; the
//! forcing that makes them exact solutions is written out by hand below, so
//! the verifier can be checked against an independently derived value.

use serde::Serialize;

use super::fields::{Gaussian, ScalarField, Zero};
use super::{jet_with, system19_point, DerivativeMethod};
use crate::grid::Grid2;

/// Gaussian pair `u* = G_u`, `Z* = (sigma + tau)/2 + G_z` with a fixed `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Manufactured {
    pub u: Gaussian,
    pub z: Gaussian,
    pub alpha: f64,
}

impl Default for Manufactured {
    fn default() -> Self {
        Self {
            u: Gaussian::new(0.8, 0.4, -0.3, 1.5),
            z: Gaussian::new(-0.6, -0.5, 0.2, 1.8).with_linear(0.5, 0.5),
            alpha: 0.3,
        }
    }
}

impl Manufactured {
    /// Forcing `[f1, f2]` such that `(u*, Z*)` solves system (19) with the
    /// forcing moved to the right-hand side.
    pub fn forcing(&self, s: f64, t: f64) -> [f64; 2] {
        let (gu, gz) = (self.u, self.z);
        let u = gu.bump(s, t);
        let b = gz.bump(s, t);
        let (ps, pt) = (s - gu.s0, t - gu.t0);
        let (qs, qt) = (s - gz.s0, t - gz.t0);
        let (wu, wz) = (gu.width * gu.width, gz.width * gz.width);
        // for a Gaussian, (d_s^2 - d_t^2) G = 4 (ds^2 - dt^2) / w^4 G and (d_s + d_t) G = -2 (ds + dt) / w^2 G
        let u_wave = 4.0 * (ps * ps - pt * pt) / (wu * wu) * u;
        let u_plus = -2.0 * (ps + pt) / wu * u;
        let z_wave = 4.0 * (qs * qs - qt * qt) / (wz * wz) * b;
        let z_plus = gz.lin_s + gz.lin_t - 2.0 * (qs + qt) / wz * b;
        [u_wave - z_plus * u + self.alpha * u_plus, z_wave + (u + 1.0) * u_plus]
    }

    /// Largest `|residual - forcing|` over the grid.
    pub fn max_error(&self, grid: &Grid2, method: DerivativeMethod) -> f64 {
        grid.points().fold(0.0f64, |m, (s, t)| {
            let r = system19_point(&jet_with(&self.u, s, t, method), &jet_with(&self.z, s, t, method), self.alpha);
            let f = self.forcing(s, t);
            m.max((r[0] - f[0]).abs()).max((r[1] - f[1]).abs())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceCheck {
    pub method: DerivativeMethod,
    pub error_h: f64,
    pub error_h2: f64,
    pub ratio: f64,
    pub nominal: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub analytic_max_error: f64,
    pub zero_field_residual: f64,
    pub convergence: Vec<ConvergenceCheck>,
    pub passed: bool,
}

/// Analytic-path error must stay below this.
pub const ANALYTIC_TOL: f64 = 1e-10;
/// Accepted relative deviation of an observed convergence ratio from `2^order`.
pub const RATIO_BAND: f64 = 0.2;

fn convergence(m: &Manufactured, grid: &Grid2, method: DerivativeMethod) -> ConvergenceCheck {
    let nominal = 2f64.powi(method.order().unwrap_or(0) as i32);
    let error_h = m.max_error(grid, method);
    let error_h2 = m.max_error(grid, method.halved());
    let ratio = error_h / error_h2;
    let passed = (ratio - nominal).abs() <= RATIO_BAND * nominal;
    ConvergenceCheck { method, error_h, error_h2, ratio, nominal, passed }
}

/// Runs the manufactured-solution checks on the default pair.
pub fn manufactured_selftest() -> SelfTestReport {
    let m = Manufactured::default();
    let grid = Grid2::square(-6.0, 6.0, 61);
    let analytic_max_error = m.max_error(&grid, DerivativeMethod::Analytic);
    let zero_field_residual = grid.points().fold(0.0f64, |acc, (s, t)| {
        let r = system19_point(&jet_with(&Zero, s, t, DerivativeMethod::fd2()), &Zero.jet(s, t), m.alpha);
        acc.max(r[0].abs()).max(r[1].abs())
    });
    let convergence = vec![
        convergence(&m, &grid, DerivativeMethod::fd2_uniform(0.1)),
        convergence(&m, &grid, DerivativeMethod::fd4_uniform(0.2)),
    ];
    let passed = analytic_max_error < ANALYTIC_TOL
        && zero_field_residual == 0.0
        && convergence.iter().all(|c| c.passed);
    SelfTestReport { analytic_max_error, zero_field_residual, convergence, passed }
}
