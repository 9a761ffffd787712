//! Residual of the reduced equation in physical coordinates `(y, eta)`,
//!
//! ```text
//! d_y (d_eta + u d_y + (u^2/2) d_y) u + alpha u_y + u
//!   = u_y_eta + d_y^2 (u^2/2 + u^3/6) + alpha u_y + u
//! ```
//!
//! Only single-valued (kink) profiles can be resampled onto `(y, eta)`.

use std::collections::BTreeMap;

use super::{DerivativeMethod, EquationResidual, ResidualReport};
use crate::dispersion::RealWave;
use crate::error::{domain, Error, Result};
use crate::grid::{Axis, Grid2};
use crate::soliton::{eval_uz, ProfileSamples, CUSP_TOL};

/// Derivatives of `u(y, eta)` needed by the physical operator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhysJet {
    pub u: f64,
    pub u_y: f64,
    pub u_eta: f64,
    pub u_yy: f64,
    pub u_y_eta: f64,
}

/// Operator value on a jet. With `cubic = false` the `d_y((u^2/2) u_y)` term
/// is dropped.
pub fn eq11_operator(j: &PhysJet, alpha: f64, cubic: bool) -> f64 {
    let quad = j.u_y * j.u_y + j.u * j.u_yy;
    let cub = if cubic { j.u * j.u_y * j.u_y + 0.5 * j.u * j.u * j.u_yy } else { 0.0 };
    j.u_y_eta + quad + cub + alpha * j.u_y + j.u
}

/// The real soliton viewed as a function of `(y, eta)`, where
/// `y = -Z(sigma, tau) + C` and `eta = (sigma - tau)/2`.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalSoliton {
    pub wave: RealWave,
    pub c: f64,
}

impl PhysicalSoliton {
    /// Fails unless `sigma -> y` is single valued along fixed `eta`.
    pub fn new(wave: RealWave, c: f64) -> Result<Self> {
        if wave.singularity_measure() >= 1.0 - CUSP_TOL {
            return Err(domain("profile is multivalued in y; verify in (sigma, tau) frame"));
        }
        Ok(Self { wave, c })
    }

    /// `sigma` with `tau = sigma - 2 eta` landing on `y`, by safeguarded Newton.
    pub fn invert(&self, y: f64, eta: f64) -> Result<f64> {
        let w = &self.wave;
        let g = |s: f64| -eval_uz(w, s, s - 2.0 * eta).1 + self.c - y;
        // dg/dsigma = -(Z_s + Z_t) = -(1 - 2 (k^2 - w^2) sech^2 theta) < 0
        let dg = |s: f64| {
            let th = w.theta(s, s - 2.0 * eta);
            -(1.0 - 2.0 * (w.k * w.k - w.omega * w.omega) * crate::soliton::sech2(th))
        };
        let span = 8.0 * (w.k + w.omega).abs() + 1.0;
        let guess = eta - (y - self.c);
        let (mut lo, mut hi) = (guess - span, guess + span);
        while g(lo) < 0.0 {
            lo -= span;
        }
        while g(hi) > 0.0 {
            hi += span;
        }
        let mut s = guess.clamp(lo, hi);
        for _ in 0..100 {
            let v = g(s);
            if v == 0.0 {
                return Ok(s);
            }
            if v > 0.0 {
                lo = s;
            } else {
                hi = s;
            }
            let mut next = s - v / dg(s);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - s).abs() <= 4.0 * f64::EPSILON * (1.0 + s.abs()) {
                return Ok(next);
            }
            s = next;
        }
        Err(Error::NumericalAbort { step: 100, reason: format!("inversion did not converge at y = {y}, eta = {eta}") })
    }

    pub fn u(&self, y: f64, eta: f64) -> Result<f64> {
        let s = self.invert(y, eta)?;
        Ok(eval_uz(&self.wave, s, s - 2.0 * eta).0)
    }

    /// Fourth-order central-difference jet with step `h` in both directions.
    pub fn jet_fd4(&self, y: f64, eta: f64, h: f64) -> Result<PhysJet> {
        let mut vals = [[0.0; 5]; 5];
        for (i, row) in vals.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.u(y + (i as f64 - 2.0) * h, eta + (j as f64 - 2.0) * h)?;
            }
        }
        let c1 = [1.0, -8.0, 0.0, 8.0, -1.0];
        let c2 = [-1.0, 16.0, -30.0, 16.0, -1.0];
        let d1y: f64 = (0..5).map(|i| c1[i] * vals[i][2]).sum::<f64>() / (12.0 * h);
        let d1e: f64 = (0..5).map(|j| c1[j] * vals[2][j]).sum::<f64>() / (12.0 * h);
        let d2y: f64 = (0..5).map(|i| c2[i] * vals[i][2]).sum::<f64>() / (12.0 * h * h);
        let mut mixed = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                mixed += c1[i] * c1[j] * vals[i][j];
            }
        }
        Ok(PhysJet { u: vals[2][2], u_y: d1y, u_eta: d1e, u_yy: d2y, u_y_eta: mixed / (144.0 * h * h) })
    }
}

/// Default finite-difference step in `(y, eta)`.
pub const PHYSICAL_STEP: f64 = 0.05;

/// Residual of the physical-frame equation at every interior row of a kink
/// profile. Rows within `2 h` of the sampled `y` range are skipped.
pub fn eq11_residual_physical(samples: &ProfileSamples, alpha: f64) -> Result<ResidualReport> {
    eq11_residual_physical_with(samples, alpha, PHYSICAL_STEP)
}

pub fn eq11_residual_physical_with(samples: &ProfileSamples, alpha: f64, h: f64) -> Result<ResidualReport> {
    let field = PhysicalSoliton::new(samples.wave, samples.c)?;
    let (ymin, ymax) = samples.rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.y), b.max(r.y)));
    let mut linf = 0.0f64;
    let mut sq = 0.0;
    let mut scale = 0.0f64;
    let mut count = 0usize;
    for r in &samples.rows {
        if r.y - ymin < 2.0 * h || ymax - r.y < 2.0 * h {
            continue;
        }
        let eta = 0.5 * (r.sigma - samples.tau);
        let j = field.jet_fd4(r.y, eta, h)?;
        let res = eq11_operator(&j, alpha, true);
        linf = linf.max(res.abs());
        sq += res * res;
        count += 1;
        for t in [j.u_y_eta, j.u_y * j.u_y, j.u * j.u_yy, alpha * j.u_y, j.u] {
            scale = scale.max(t.abs());
        }
    }
    let rms = if count > 0 { (sq / count as f64).sqrt() } else { 0.0 };
    let sig = Axis::new(samples.rows[0].sigma, samples.rows[samples.rows.len() - 1].sigma, samples.rows.len());
    Ok(ResidualReport {
        system: "11".into(),
        equations: vec![EquationResidual { equation: "eq11".into(), linf, l2: rms, scale }],
        grid: Grid2::new(sig, Axis::new(samples.tau, samples.tau, 1)),
        method: DerivativeMethod::fd4_uniform(h),
        normalization: scale,
        extra: BTreeMap::from([("rows_evaluated".to_string(), count as f64)]),
        note: Some("kink profile resampled onto (y, eta); l2 is the RMS over evaluated rows".into()),
    })
}
