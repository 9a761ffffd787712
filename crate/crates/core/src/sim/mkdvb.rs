//! Pseudospectral integrator for the modified KdV-Burgers equation on a
//! periodic domain,
//!
//! ```text
//! p_t = -v_e p_x - c2 (p^2)_xx - c3 (p^3)_x + beta_e p_xx - gamma_e p_xxx,
//! c2 = alpha_e v_e^3,  c3 = a_e v_e^3.
//! ```
//!
//! The linear part is integrated exactly by an integrating factor and the
//! nonlinear part by classical RK4 in the transformed variable (Lawson RK4).
//! Nonlinear products are dealiased with the 2/3 rule.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::medium::{low_freq_coeffs, MediumParams};

/// Coefficients of the equation, already multiplied out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MkdvbCoeffs {
    pub v_e: f64,
    /// `alpha_e v_e^3`.
    pub quad: f64,
    /// `a_e v_e^3`.
    pub cubic: f64,
    pub beta_e: f64,
    pub gamma_e: f64,
}

impl MkdvbCoeffs {
    pub fn from_medium(m: &MediumParams) -> Result<Self> {
        let lf = low_freq_coeffs(m)?;
        let v3 = m.v_e.powi(3);
        Ok(Self { v_e: m.v_e, quad: m.alpha_e * v3, cubic: m.a_e * v3, beta_e: lf.beta_e, gamma_e: lf.gamma_e })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimStateMKdVB {
    /// Period; nodes are `x_j = j L / n`.
    pub length: f64,
    pub p: Vec<f64>,
    pub coeffs: MkdvbCoeffs,
    pub t: f64,
}

impl SimStateMKdVB {
    pub fn from_fn(length: f64, n: usize, coeffs: MkdvbCoeffs, f: impl Fn(f64) -> f64) -> Self {
        let p = (0..n).map(|j| f(j as f64 * length / n as f64)).collect();
        Self { length, p, coeffs, t: 0.0 }
    }

    pub fn dx(&self) -> f64 {
        self.length / self.p.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.p.iter().sum::<f64>() / self.p.len() as f64
    }

    /// `sqrt(sum p^2 dx)`.
    pub fn l2(&self) -> f64 {
        (self.p.iter().map(|x| x * x).sum::<f64>() * self.dx()).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnapshotNorms {
    pub t: f64,
    pub mean: f64,
    pub l2: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryMkdvb {
    pub dt: f64,
    pub snapshots: Vec<SimStateMKdVB>,
}

impl TrajectoryMkdvb {
    pub fn norms(&self) -> Vec<SnapshotNorms> {
        self.snapshots
            .iter()
            .map(|s| SnapshotNorms {
                t: s.t,
                mean: s.mean(),
                l2: s.l2(),
                max_abs: s.p.iter().fold(0.0f64, |m, x| m.max(x.abs())),
            })
            .collect()
    }

    pub fn last(&self) -> &SimStateMKdVB {
        self.snapshots.last().expect("trajectory always holds the initial state")
    }
}

/// Amplitude above which the solution is declared blown up.
pub const BLOW_UP: f64 = 1e8;

struct Spectral {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    /// Wavenumber for even-order symbols.
    kappa: Vec<f64>,
    /// Wavenumber for odd-order symbols (Nyquist set to zero).
    kappa_odd: Vec<f64>,
    keep: Vec<bool>,
    coeffs: MkdvbCoeffs,
    scratch: Vec<Complex64>,
}

impl Spectral {
    fn new(n: usize, length: f64, coeffs: MkdvbCoeffs) -> Self {
        let mut planner = FftPlanner::new();
        let base = 2.0 * PI / length;
        let idx = |j: usize| if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let kappa: Vec<f64> = (0..n).map(|j| base * idx(j)).collect();
        let kappa_odd = (0..n).map(|j| if n.is_multiple_of(2) && j == n / 2 { 0.0 } else { kappa[j] }).collect();
        let keep = (0..n).map(|j| 3.0 * idx(j).abs() < n as f64).collect();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            kappa,
            kappa_odd,
            keep,
            coeffs,
            scratch: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    fn linear_symbol(&self, j: usize) -> Complex64 {
        let c = &self.coeffs;
        let (k, ko) = (self.kappa[j], self.kappa_odd[j]);
        Complex64::new(-c.beta_e * k * k, -c.v_e * ko + c.gamma_e * ko * ko * ko)
    }

    fn physical(&mut self, hat: &[Complex64]) -> Vec<f64> {
        self.scratch.copy_from_slice(hat);
        self.inv.process(&mut self.scratch);
        let s = 1.0 / self.n as f64;
        self.scratch.iter().map(|z| z.re * s).collect()
    }

    fn spectral(&mut self, p: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    /// Transformed nonlinear term with the 2/3 mask applied.
    fn nonlinear(&mut self, hat: &[Complex64]) -> Vec<Complex64> {
        let p = self.physical(hat);
        let (c2, c3) = (self.coeffs.quad, self.coeffs.cubic);
        let sq: Vec<f64> = p.iter().map(|x| x * x).collect();
        let cu: Vec<f64> = p.iter().map(|x| x * x * x).collect();
        let (sq_hat, cu_hat) = (self.spectral(&sq), self.spectral(&cu));
        (0..self.n)
            .map(|j| {
                if !self.keep[j] {
                    return Complex64::new(0.0, 0.0);
                }
                let (k, ko) = (self.kappa[j], self.kappa_odd[j]);
                // -c2 (i k)^2 sq - c3 (i k) cu
                c2 * k * k * sq_hat[j] - Complex64::new(0.0, c3 * ko) * cu_hat[j]
            })
            .collect()
    }
}

/// Advances `init` over `[t, t + t_end]` with fixed step `dt`.
pub fn evolve_mkdvb(init: &SimStateMKdVB, t_end: f64, dt: f64, snapshot_every: usize) -> Result<TrajectoryMkdvb> {
    let n = init.p.len();
    if n < 4 {
        return Err(domain(format!("mKdV-Burgers grid needs at least 4 nodes, got {n}")));
    }
    if !(init.length > 0.0) {
        return Err(domain(format!("period must be > 0, got {}", init.length)));
    }
    let (steps, dt) = super::step_count(t_end, dt)?;
    let every = snapshot_every.max(1);
    let mut sp = Spectral::new(n, init.length, init.coeffs);
    let e_half: Vec<Complex64> = (0..n).map(|j| (sp.linear_symbol(j) * (0.5 * dt)).exp()).collect();
    let e_full: Vec<Complex64> = e_half.iter().map(|e| e * e).collect();

    let mut u = sp.spectral(&init.p);
    let mut snapshots = vec![init.clone()];
    let mut tmp = vec![Complex64::new(0.0, 0.0); n];
    for step in 1..=steps {
        let k1 = sp.nonlinear(&u);
        for j in 0..n {
            tmp[j] = e_half[j] * (u[j] + 0.5 * dt * k1[j]);
        }
        let k2 = sp.nonlinear(&tmp);
        for j in 0..n {
            tmp[j] = e_half[j] * u[j] + 0.5 * dt * k2[j];
        }
        let k3 = sp.nonlinear(&tmp);
        for j in 0..n {
            tmp[j] = e_full[j] * u[j] + dt * e_half[j] * k3[j];
        }
        let k4 = sp.nonlinear(&tmp);
        for j in 0..n {
            u[j] = e_full[j] * u[j]
                + dt / 6.0 * (e_full[j] * k1[j] + 2.0 * e_half[j] * (k2[j] + k3[j]) + k4[j]);
        }
        let bad = u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite());
        if step % every == 0 || step == steps || bad {
            let p = sp.physical(&u);
            if bad || p.iter().any(|x| !x.is_finite() || x.abs() > BLOW_UP) {
                return Err(Error::NumericalAbort { step, reason: "mKdV-Burgers solution blew up".into() });
            }
            snapshots.push(SimStateMKdVB { p, t: init.t + step as f64 * dt, length: init.length, coeffs: init.coeffs });
        }
    }
    Ok(TrajectoryMkdvb { dt, snapshots })
}
