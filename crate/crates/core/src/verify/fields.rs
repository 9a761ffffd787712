//! Scalar fields on the `(sigma, tau)` plane with closed-form derivatives.

use num_complex::Complex64;

use crate::dispersion::{ComplexWave, RealWave};
use crate::soliton::{complex_amplitude, sech2, ComplexCompanion};

/// Value and derivatives up to second order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub s: f64,
    pub t: f64,
    pub ss: f64,
    pub tt: f64,
    pub st: f64,
}

impl Jet {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `d_sigma + d_tau`.
    #[inline]
    pub fn plus(&self) -> f64 {
        self.s + self.t
    }

    /// `d_sigma^2 - d_tau^2`.
    #[inline]
    pub fn wave(&self) -> f64 {
        self.ss - self.tt
    }
}

pub trait ScalarField: Sync {
    fn value(&self, s: f64, t: f64) -> f64;
    fn jet(&self, s: f64, t: f64) -> Jet;
}

impl<F: ScalarField + ?Sized> ScalarField for &F {
    fn value(&self, s: f64, t: f64) -> f64 {
        (**self).value(s, t)
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        (**self).jet(s, t)
    }
}

/// Field identically zero.
pub struct Zero;

impl ScalarField for Zero {
    fn value(&self, _: f64, _: f64) -> f64 {
        0.0
    }
    fn jet(&self, _: f64, _: f64) -> Jet {
        Jet::zero()
    }
}

/// `u` of the real one-soliton.
pub struct SolitonU(pub RealWave);
/// `Z` of the real one-soliton.
pub struct SolitonZ(pub RealWave);

/// Derivatives of `c (tanh(theta) + 1)` with `theta = k s - w t + theta0`.
fn tanh_jet(w: &RealWave, c: f64, s: f64, t: f64) -> Jet {
    let th = w.theta(s, t);
    let (tn, sh) = (th.tanh(), sech2(th));
    let d1 = c * sh;
    let d2 = -2.0 * c * sh * tn;
    let (k, om) = (w.k, w.omega);
    Jet { v: c * (tn + 1.0), s: k * d1, t: -om * d1, ss: k * k * d2, tt: om * om * d2, st: -k * om * d2 }
}

impl ScalarField for SolitonU {
    fn value(&self, s: f64, t: f64) -> f64 {
        crate::soliton::eval_uz(&self.0, s, t).0
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let a = 4.0 * (self.0.omega + self.0.k).powi(2);
        tanh_jet(&self.0, a, s, t)
    }
}

impl ScalarField for SolitonZ {
    fn value(&self, s: f64, t: f64) -> f64 {
        crate::soliton::eval_uz(&self.0, s, t).1
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let b = -2.0 * (self.0.omega + self.0.k);
        let j = tanh_jet(&self.0, b, s, t);
        Jet { v: 0.5 * (s + t) + j.v, s: 0.5 + j.s, t: 0.5 + j.t, ..j }
    }
}

/// Complex soliton and its derivatives, `Q = A exp(phi)` with
/// `phi = -ln cosh(theta_r) + i theta_im`.
fn complex_q_jet(cw: &ComplexWave, s: f64, t: f64) -> (Complex64, Complex64, Complex64, Complex64, Complex64, Complex64) {
    let th = cw.theta(s, t);
    let (tn, sh) = (th.re.tanh(), sech2(th.re));
    let (k, w) = (cw.k, cw.omega);
    let q = Complex64::from_polar(complex_amplitude(cw) / th.re.cosh(), th.im);
    let ps = Complex64::new(-k.re * tn, k.im);
    let pt = Complex64::new(w.re * tn, -w.im);
    let pss = -k.re * k.re * sh;
    let ptt = -w.re * w.re * sh;
    let pst = k.re * w.re * sh;
    (q, q * ps, q * pt, q * (pss + ps * ps), q * (ptt + pt * pt), q * (pst + ps * pt))
}

/// Real part of the complex soliton.
pub struct ComplexQr(pub ComplexWave);
/// Imaginary part of the complex soliton.
pub struct ComplexQi(pub ComplexWave);

impl ScalarField for ComplexQr {
    fn value(&self, s: f64, t: f64) -> f64 {
        crate::soliton::eval_complex_q(&self.0, s, t).0
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let (v, ds, dt, dss, dtt, dst) = complex_q_jet(&self.0, s, t);
        Jet { v: v.re, s: ds.re, t: dt.re, ss: dss.re, tt: dtt.re, st: dst.re }
    }
}

impl ScalarField for ComplexQi {
    fn value(&self, s: f64, t: f64) -> f64 {
        crate::soliton::eval_complex_q(&self.0, s, t).1
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let (v, ds, dt, dss, dtt, dst) = complex_q_jet(&self.0, s, t);
        Jet { v: v.im, s: ds.im, t: dt.im, ss: dss.im, tt: dtt.im, st: dst.im }
    }
}

/// Quadrature-reconstructed `Z` of the complex soliton.
pub struct CompanionZ(pub ComplexCompanion);

impl ScalarField for CompanionZ {
    fn value(&self, s: f64, t: f64) -> f64 {
        self.0.z(s, t)
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let cw = self.0.wave();
        let th = cw.theta(s, t).re;
        let (kr, wr) = (cw.k.re, cw.omega.re);
        let (d1, d2) = (self.0.w_prime(th), self.0.w_second(th));
        Jet {
            v: self.0.z(s, t),
            s: 0.5 + kr * d1,
            t: 0.5 - wr * d1,
            ss: kr * kr * d2,
            tt: wr * wr * d2,
            st: -kr * wr * d2,
        }
    }
}

/// `offset(s, t) + amp exp(-((s - s0)^2 + (t - t0)^2) / width^2)` with an
/// optional linear part `(lin_s s + lin_t t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub amp: f64,
    pub s0: f64,
    pub t0: f64,
    pub width: f64,
    pub lin_s: f64,
    pub lin_t: f64,
}

impl Gaussian {
    pub fn new(amp: f64, s0: f64, t0: f64, width: f64) -> Self {
        Self { amp, s0, t0, width, lin_s: 0.0, lin_t: 0.0 }
    }

    pub fn with_linear(mut self, lin_s: f64, lin_t: f64) -> Self {
        self.lin_s = lin_s;
        self.lin_t = lin_t;
        self
    }

    /// Gaussian part only.
    pub fn bump(&self, s: f64, t: f64) -> f64 {
        let (ds, dt) = (s - self.s0, t - self.t0);
        self.amp * (-(ds * ds + dt * dt) / (self.width * self.width)).exp()
    }
}

impl ScalarField for Gaussian {
    fn value(&self, s: f64, t: f64) -> f64 {
        self.bump(s, t) + self.lin_s * s + self.lin_t * t
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let g = self.bump(s, t);
        let w2 = self.width * self.width;
        let (ds, dt) = (s - self.s0, t - self.t0);
        let (gs, gt) = (-2.0 * ds / w2 * g, -2.0 * dt / w2 * g);
        Jet {
            v: g + self.lin_s * s + self.lin_t * t,
            s: gs + self.lin_s,
            t: gt + self.lin_t,
            ss: (4.0 * ds * ds / (w2 * w2) - 2.0 / w2) * g,
            tt: (4.0 * dt * dt / (w2 * w2) - 2.0 / w2) * g,
            st: 4.0 * ds * dt / (w2 * w2) * g,
        }
    }
}

/// `base + eps * pert`, for linearity checks.
pub struct Perturbed<A, B> {
    pub base: A,
    pub pert: B,
    pub eps: f64,
}

impl<A: ScalarField, B: ScalarField> ScalarField for Perturbed<A, B> {
    fn value(&self, s: f64, t: f64) -> f64 {
        self.base.value(s, t) + self.eps * self.pert.value(s, t)
    }
    fn jet(&self, s: f64, t: f64) -> Jet {
        let (a, b, e) = (self.base.jet(s, t), self.pert.jet(s, t), self.eps);
        Jet {
            v: a.v + e * b.v,
            s: a.s + e * b.s,
            t: a.t + e * b.t,
            ss: a.ss + e * b.ss,
            tt: a.tt + e * b.tt,
            st: a.st + e * b.st,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{jet_with, DerivativeMethod};

    fn check_fd(field: &dyn ScalarField, pts: &[(f64, f64)]) {
        let m = DerivativeMethod::Fd4 { h1: 1e-3, h2: 1e-2 };
        for &(s, t) in pts {
            let a = field.jet(s, t);
            let f = jet_with(field, s, t, m);
            for (x, y) in [(a.v, f.v), (a.s, f.s), (a.t, f.t), (a.ss, f.ss), (a.tt, f.tt), (a.st, f.st)] {
                assert!((x - y).abs() < 1e-7 * (1.0 + x.abs()), "analytic {x} vs fd {y} at ({s}, {t})");
            }
        }
    }

    #[test]
    fn analytic_jets_agree_with_differences() {
        let pts = [(0.0, 0.0), (1.3, -0.4), (-2.2, 3.1)];
        let w = RealWave::new(0.24, 0.1).unwrap().with_theta0(0.2);
        check_fd(&SolitonU(w), &pts);
        check_fd(&SolitonZ(w), &pts);
        let cw = ComplexWave::new(Complex64::new(1.1, 0.3), 0.1);
        check_fd(&ComplexQr(cw), &pts);
        check_fd(&ComplexQi(cw), &pts);
        check_fd(&CompanionZ(ComplexCompanion::new(&cw).unwrap()), &pts);
        check_fd(&Gaussian::new(0.7, 0.3, -0.2, 1.4).with_linear(0.5, 0.25), &pts);
    }
}
