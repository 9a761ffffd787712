//! Exact one-soliton fields, their tau-function representation, physical
//! profiles and shape classification.
//!
//! The real soliton lives in characteristic coordinates `(sigma, tau)`:
//!
//! ```text
//! u = 4 (omega + k)^2 (tanh(theta) + 1)
//! Z = (sigma + tau) / 2 - 2 (omega + k) (tanh(theta) + 1),   theta = k sigma - omega tau + theta0
//! ```
//!
//! The physical coordinate is `y = -Z + C`. Whether `sigma -> y` folds back
//! on itself (loop), touches a stationary point (cusp) or stays monotone
//! (kink) is decided by the sign of `dZ/dsigma = (1 - 4 (omega + k) k sech^2 theta) / 2`.

use serde::{Serialize, Serializer};

use crate::dispersion::{alpha_critical, ComplexWave, RealWave};
use crate::error::{domain, Error, Result};
use crate::hirota::{Atom, TauFunction};
use crate::quad;

/// Default relative tolerance separating the cusp from loop and kink.
pub const CUSP_TOL: f64 = 1e-9;

#[inline]
pub(crate) fn sech2(x: f64) -> f64 {
    let c = x.cosh();
    1.0 / (c * c)
}

/// `(u, Z)` of the real one-soliton.
pub fn eval_uz(w: &RealWave, sigma: f64, tau: f64) -> (f64, f64) {
    let s = w.omega + w.k;
    let t1 = w.theta(sigma, tau).tanh() + 1.0;
    (4.0 * s * s * t1, 0.5 * (sigma + tau) - 2.0 * s * t1)
}

/// Tau functions `F = 1 + E`, `G = 8 (omega + k)^2 E`, `E = exp(2 theta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauPair {
    pub f: TauFunction,
    pub g: TauFunction,
}

impl TauPair {
    /// `u = G / F`.
    pub fn u(&self, sigma: f64, tau: f64) -> f64 {
        self.g.eval(sigma, tau) / self.f.eval(sigma, tau)
    }

    /// `Z = (sigma + tau) / 2 + 2 (d_tau - d_sigma) ln F`.
    pub fn z(&self, sigma: f64, tau: f64) -> f64 {
        let (fs, ft) = self.f.gradient(sigma, tau);
        0.5 * (sigma + tau) + 2.0 * (ft - fs) / self.f.eval(sigma, tau)
    }
}

pub fn tau_pair(w: &RealWave) -> TauPair {
    let s = w.omega + w.k;
    let e0 = (2.0 * w.theta0).exp();
    let (a, b) = (2.0 * w.k, -2.0 * w.omega);
    TauPair {
        f: TauFunction::new(vec![Atom::new(1.0, 0.0, 0.0), Atom::new(e0, a, b)]),
        g: TauFunction::new(vec![Atom::new(8.0 * s * s * e0, a, b)]),
    }
}

/// Amplitude `4 (Re k + Re omega)` of the complex soliton.
pub fn complex_amplitude(cw: &ComplexWave) -> f64 {
    4.0 * (cw.k.re + cw.omega.re)
}

/// `(Re Q, Im Q)` with `Q = A sech(Re theta) exp(i Im theta)`.
pub fn eval_complex_q(cw: &ComplexWave, sigma: f64, tau: f64) -> (f64, f64) {
    let th = cw.theta(sigma, tau);
    let m = complex_amplitude(cw) / th.re.cosh();
    let (s, c) = th.im.sin_cos();
    (m * c, m * s)
}

/// Companion field `Z` of the complex soliton, obtained by integrating
/// `Z_sigma_sigma - Z_tau_tau = -(Q^r (Q^r_sigma + Q^r_tau) + Q^im (Q^im_sigma + Q^im_tau))`
/// in the traveling frame.
///
/// With `Z = (sigma + tau)/2 + W(theta_r)` the equation reduces to
/// `W'' = -8 (k_r + omega_r) (sech^2)'`; `W'` is taken to decay and `W -> 0`
/// on the side reached as `sigma -> -inf`. `W` itself is tabulated by
/// cumulative Gauss-Legendre quadrature of `W'`.
#[derive(Debug, Clone)]
pub struct ComplexCompanion {
    wave: ComplexWave,
    /// `W' = slope * sech^2(theta_r)`.
    slope: f64,
    /// Integration starts from `theta = -inf` when true, `+inf` otherwise.
    from_below: bool,
    table_theta: Vec<f64>,
    table_w: Vec<f64>,
}

const COMPANION_SPAN: f64 = 40.0;
const COMPANION_PANEL: f64 = 0.05;

impl ComplexCompanion {
    pub fn new(cw: &ComplexWave) -> Result<Self> {
        if cw.k.re == 0.0 || !cw.k.re.is_finite() {
            return Err(Error::NumericalAbort {
                step: 0,
                reason: format!("|Q| does not decay in sigma (Re k = {}); companion quadrature undefined", cw.k.re),
            });
        }
        let slope = -8.0 * (cw.k.re + cw.omega.re);
        let from_below = cw.k.re > 0.0;
        let panels = (2.0 * COMPANION_SPAN / COMPANION_PANEL).round() as usize;
        let table_theta: Vec<f64> =
            (0..=panels).map(|i| -COMPANION_SPAN + i as f64 * COMPANION_PANEL).collect();
        let integrand = |x: f64| sech2(x);
        let mut table_w = vec![0.0; table_theta.len()];
        if from_below {
            for i in 1..table_theta.len() {
                table_w[i] = table_w[i - 1] + quad::gauss8(integrand, table_theta[i - 1], table_theta[i]);
            }
        } else {
            for i in (0..table_theta.len() - 1).rev() {
                table_w[i] = table_w[i + 1] - quad::gauss8(integrand, table_theta[i], table_theta[i + 1]);
            }
        }
        if table_w.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalAbort { step: 0, reason: "companion quadrature not finite".into() });
        }
        Ok(Self { wave: *cw, slope, from_below, table_theta, table_w })
    }

    /// `W(theta_r)` from the quadrature table.
    pub fn w(&self, theta_r: f64) -> f64 {
        let lo = -COMPANION_SPAN;
        let last = self.table_theta.len() - 1;
        let x = theta_r.clamp(lo, COMPANION_SPAN);
        let i = (((x - lo) / COMPANION_PANEL).floor() as usize).min(last - 1);
        let base = self.table_w[i] + quad::gauss8(sech2, self.table_theta[i], x);
        // beyond the table sech^2 < 1e-34; the integral is flat to double precision
        self.slope * base
    }

    pub fn w_prime(&self, theta_r: f64) -> f64 {
        self.slope * sech2(theta_r)
    }

    pub fn w_second(&self, theta_r: f64) -> f64 {
        -2.0 * self.slope * sech2(theta_r) * theta_r.tanh()
    }

    pub fn z(&self, sigma: f64, tau: f64) -> f64 {
        0.5 * (sigma + tau) + self.w(self.wave.theta(sigma, tau).re)
    }

    pub fn integrates_from_below(&self) -> bool {
        self.from_below
    }

    pub fn wave(&self) -> &ComplexWave {
        &self.wave
    }
}

/// Roots of `1 - 4 (omega + k) k sech^2 theta = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularPoints {
    None,
    /// Degenerate double root at `theta`.
    Double(f64),
    Pair(f64, f64),
}

impl SingularPoints {
    pub fn count(&self) -> usize {
        match self {
            Self::None => 0,
            Self::Double(_) => 1,
            Self::Pair(..) => 2,
        }
    }

    pub fn thetas(&self) -> Vec<f64> {
        match *self {
            Self::None => vec![],
            Self::Double(t) => vec![t],
            Self::Pair(a, b) => vec![a, b],
        }
    }
}

impl Serialize for SingularPoints {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.thetas().serialize(s)
    }
}

pub fn singular_thetas(w: &RealWave) -> SingularPoints {
    let m = w.singularity_measure();
    if (m - 1.0).abs() <= CUSP_TOL {
        SingularPoints::Double(0.0)
    } else if m > 1.0 {
        let t = m.sqrt().acosh();
        SingularPoints::Pair(-t, t)
    } else {
        SingularPoints::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Loop,
    Cusp,
    Kink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MomentumShape {
    #[serde(rename = "loop-like")]
    LoopLike,
    #[serde(rename = "cusp-like")]
    CuspLike,
    #[serde(rename = "hump-like")]
    HumpLike,
}

impl Shape {
    pub fn momentum(self) -> MomentumShape {
        match self {
            Self::Loop => MomentumShape::LoopLike,
            Self::Cusp => MomentumShape::CuspLike,
            Self::Kink => MomentumShape::HumpLike,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeClass {
    #[serde(rename = "class")]
    pub shape: Shape,
    pub momentum_shape: MomentumShape,
    pub singular_thetas: SingularPoints,
    pub alpha_critical: f64,
}

/// Classifies the real soliton by comparing `alpha` with the critical value
/// at the wave's velocity, using the relative tolerance
/// `tol * max(1, alpha_critical)` for the cusp.
pub fn classify(w: &RealWave, tol: f64) -> Result<ShapeClass> {
    if !(w.v > 0.0 && w.v < 1.0) {
        return Err(domain(format!("classification needs 0 < v < 1, got {}", w.v)));
    }
    let ac = alpha_critical(w.v)?;
    let shape = if (w.alpha - ac).abs() <= tol * ac.max(1.0) {
        Shape::Cusp
    } else if w.alpha < ac {
        Shape::Loop
    } else {
        Shape::Kink
    };
    let singular = match shape {
        Shape::Cusp => SingularPoints::Double(0.0),
        Shape::Loop => {
            let t = w.singularity_measure().max(1.0).sqrt().acosh();
            SingularPoints::Pair(-t, t)
        }
        Shape::Kink => SingularPoints::None,
    };
    Ok(ShapeClass { shape, momentum_shape: shape.momentum(), singular_thetas: singular, alpha_critical: ac })
}

/// `(xi, zeta) = ((sigma - tau)/2, -(sigma + tau)/2)`.
pub fn map_coordinates(sigma: f64, tau: f64) -> (f64, f64) {
    (0.5 * (sigma - tau), -0.5 * (sigma + tau))
}

pub fn unmap_coordinates(xi: f64, zeta: f64) -> (f64, f64) {
    (xi - zeta, -xi - zeta)
}

/// One sample of a parametric profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub sigma: f64,
    pub theta: f64,
    pub u: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub y: f64,
    pub pi: f64,
    #[serde(rename = "dZdsigma")]
    pub dz_dsigma: f64,
}

/// Parametric sweep in `sigma` at fixed `tau`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileSamples {
    pub wave: RealWave,
    pub tau: f64,
    /// Gauge constant in `y = -Z + C`.
    pub c: f64,
    pub rows: Vec<ProfileRow>,
}

/// How the sampled map `sigma -> y` behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "turning_points")]
pub enum Monotonicity {
    Strict,
    /// Monotone with stationary points where `dZ/dsigma` vanishes.
    Degenerate(usize),
    NonMonotone(usize),
}

impl Monotonicity {
    pub fn turning_points(&self) -> usize {
        match *self {
            Self::Strict => 0,
            Self::Degenerate(n) | Self::NonMonotone(n) => n,
        }
    }
}

impl ProfileSamples {
    /// Sign changes of successive `y` increments; when there are none, rows with
    /// `|dZ/dsigma| <= tol` count as degenerate stationary points.
    pub fn monotonicity(&self, tol: f64) -> Monotonicity {
        let mut turns = 0;
        let mut last_sign = 0.0;
        for pair in self.rows.windows(2) {
            let d = pair[1].y - pair[0].y;
            if d == 0.0 {
                continue;
            }
            let s = d.signum();
            if last_sign != 0.0 && s != last_sign {
                turns += 1;
            }
            last_sign = s;
        }
        if turns > 0 {
            return Monotonicity::NonMonotone(turns);
        }
        let stationary = self.rows.iter().filter(|r| r.dz_dsigma.abs() <= tol).count();
        if stationary > 0 {
            Monotonicity::Degenerate(stationary)
        } else {
            Monotonicity::Strict
        }
    }
}

fn profile_row(w: &RealWave, sigma: f64, tau: f64, c: f64) -> ProfileRow {
    let s = w.omega + w.k;
    let theta = w.theta(sigma, tau);
    let (u, z) = eval_uz(w, sigma, tau);
    let sh = sech2(theta);
    ProfileRow {
        sigma,
        theta,
        u,
        z,
        y: -z + c,
        pi: 4.0 * s * s * (w.k - w.omega) * sh,
        dz_dsigma: 0.5 * (1.0 - 4.0 * s * w.k * sh),
    }
}

/// `n` uniformly spaced rows on `[sigma_min, sigma_max]` at fixed `tau`.
pub fn profile(w: &RealWave, tau: f64, sigma_min: f64, sigma_max: f64, n: usize, c: f64) -> Result<ProfileSamples> {
    if n < 2 {
        return Err(domain(format!("profile needs n >= 2, got {n}")));
    }
    if !(sigma_min < sigma_max) {
        return Err(domain(format!("profile needs sigma_min < sigma_max, got [{sigma_min}, {sigma_max}]")));
    }
    let axis = crate::grid::Axis::new(sigma_min, sigma_max, n);
    let rows = axis.nodes().map(|s| profile_row(w, s, tau, c)).collect();
    Ok(ProfileSamples { wave: *w, tau, c, rows })
}

/// `y` from the hodograph integral at fixed `zeta`:
/// `y = zeta + int_{-inf}^{xi} (u + u^2/2) dxi' + y0`.
///
/// Along fixed `zeta` the phase advances as `(k + omega) dxi`, so the lower
/// limit is truncated where `theta` is 40 units below its value at `xi`.
pub fn hodograph_y(w: &RealWave, xi: f64, zeta: f64, y0: f64) -> Result<f64> {
    let rate = w.k + w.omega;
    if rate <= 0.0 {
        return Err(domain("hodograph integral needs k + omega > 0"));
    }
    let integrand = |x: f64| {
        let (s, t) = unmap_coordinates(x, zeta);
        let (u, _) = eval_uz(w, s, t);
        u + 0.5 * u * u
    };
    let lower = xi - 40.0 / rate;
    Ok(zeta + quad::composite(integrand, lower, xi, 0.1 / rate) + y0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn wave(v: f64, alpha: f64) -> RealWave {
        RealWave::new(v, alpha).unwrap()
    }

    #[test]
    fn eval_at_origin() {
        let w = wave(0.24, 0.1);
        let s = w.k + w.omega;
        assert_eq!(eval_uz(&w, 0.0, 0.0), (4.0 * s * s, -2.0 * s));
        // oracle value from a high-precision root of the dispersion relation
        assert!((eval_uz(&w, 0.0, 0.0).0 - 1.50874784992463).abs() < 1e-12);
    }

    #[test]
    fn left_boundary() {
        let w = wave(0.24, 0.1);
        let (u, z) = eval_uz(&w, -200.0, 0.0);
        assert_eq!(u, 0.0);
        assert!((z + 100.0).abs() < 1e-12);
    }

    #[test]
    fn tau_pair_reproduces_fields() {
        let w = wave(0.24, 0.8).with_theta0(0.3);
        let tp = tau_pair(&w);
        for i in 0..10 {
            for j in 0..10 {
                let (s, t) = (-4.5 + i as f64, -4.5 + j as f64);
                let (u, z) = eval_uz(&w, s, t);
                assert!((tp.u(s, t) - u).abs() < 1e-12);
                assert!((tp.z(s, t) - z).abs() < 1e-12);
            }
        }
        // (d_tau - d_sigma) ln F at theta = 0 equals -(omega + k)
        let w = wave(0.24, 0.8);
        let (fs, ft) = tp_grad(&w);
        assert!(((ft - fs) + (w.k + w.omega)).abs() < 1e-14);
    }

    fn tp_grad(w: &RealWave) -> (f64, f64) {
        let tp = tau_pair(w);
        let (fs, ft) = tp.f.gradient(0.0, 0.0);
        let f = tp.f.eval(0.0, 0.0);
        (fs / f, ft / f)
    }

    #[test]
    fn annihilated_amplitude() {
        let w = RealWave { v: -1.0, alpha: 0.0, k: 0.5, omega: -0.5, theta0: 0.0 };
        let tp = tau_pair(&w);
        assert_eq!(tp.g.eval(1.0, 2.0), 0.0);
        assert_eq!(eval_uz(&w, 1.0, 2.0).0, 0.0);
    }

    #[test]
    fn complex_q_examples() {
        let cw = ComplexWave::new(Complex64::new(1.3, 0.4), 0.2);
        let cw0 = ComplexWave { theta0: -cw.theta(0.0, 0.0), ..cw };
        let (qr, qi) = eval_complex_q(&cw0, 0.0, 0.0);
        assert!((qr - complex_amplitude(&cw0)).abs() < 1e-15 && qi.abs() < 1e-15);

        let real = ComplexWave::new(Complex64::new(1.25, 0.0), 0.3);
        assert_eq!(real.omega.im, 0.0);
        for s in [-3.0, 0.0, 2.5] {
            assert_eq!(eval_complex_q(&real, s, 0.7).1, 0.0);
        }

        let a = complex_amplitude(&cw).abs();
        let (qr, qi) = eval_complex_q(&cw, 30.0, 0.0);
        let th = cw.theta(30.0, 0.0).re;
        assert!(((qr * qr + qi * qi).sqrt() - a / th.cosh()).abs() < 1e-20);
        assert!((qr * qr + qi * qi).sqrt() <= 2.0 * a * (-th.abs()).exp() * (1.0 + 1e-12));
    }

    #[test]
    fn companion_matches_closed_form() {
        for k in [Complex64::new(1.3, 0.4), Complex64::new(-1.1, 0.2)] {
            let cw = ComplexWave::new(k, 0.1);
            let comp = ComplexCompanion::new(&cw).unwrap();
            let slope = -8.0 * (cw.k.re + cw.omega.re);
            for th in [-45.0f64, -10.0, -0.3, 0.0, 1.7, 12.0, 45.0] {
                let exact = if k.re > 0.0 { slope * (th.tanh() + 1.0) } else { slope * (th.tanh() - 1.0) };
                assert!((comp.w(th) - exact).abs() < 1e-12 * (1.0 + slope.abs()), "theta {th}");
            }
        }
        let cw = ComplexWave { k: Complex64::new(0.0, 1.0), ..ComplexWave::new(Complex64::new(1.0, 0.0), 0.0) };
        assert!(ComplexCompanion::new(&cw).is_err());
    }

    #[test]
    fn singular_examples() {
        assert_eq!(singular_thetas(&wave(0.24, 0.8)), SingularPoints::None);
        assert!((wave(0.24, 0.8).singularity_measure() - 0.710306398656339).abs() < 1e-12);
        let ac = alpha_critical(0.24).unwrap();
        assert_eq!(singular_thetas(&wave(0.24, ac)), SingularPoints::Double(0.0));
        match singular_thetas(&wave(0.24, 0.1)) {
            SingularPoints::Pair(a, b) => {
                assert!((b - 0.450184016271196).abs() < 1e-12 && a == -b);
                let w = wave(0.24, 0.1);
                assert!((1.0 - w.singularity_measure() * sech2(b)).abs() < 1e-13);
            }
            other => panic!("expected pair, got {other:?}"),
        }
    }

    #[test]
    fn classify_figure_cases() {
        let c = classify(&wave(0.24, 0.1), CUSP_TOL).unwrap();
        assert_eq!((c.shape, c.momentum_shape), (Shape::Loop, MomentumShape::LoopLike));
        let c = classify(&wave(0.24, 0.351648275547), CUSP_TOL).unwrap();
        assert_eq!((c.shape, c.momentum_shape), (Shape::Cusp, MomentumShape::CuspLike));
        let c = classify(&wave(0.24, 0.8), CUSP_TOL).unwrap();
        assert_eq!((c.shape, c.momentum_shape), (Shape::Kink, MomentumShape::HumpLike));
        assert!(classify(&wave(-0.2, 0.1), CUSP_TOL).is_err());
        assert!(classify(&wave(0.0, 0.1), CUSP_TOL).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        assert_eq!(map_coordinates(0.0, 0.0), (0.0, 0.0));
        assert_eq!(map_coordinates(2.0, 0.0), (1.0, -1.0));
        assert_eq!(unmap_coordinates(1.0, -1.0), (2.0, 0.0));
        for (s, t) in [(0.3, -1.7), (12.5, 3.25), (-7.1, 0.01)] {
            let (x, z) = map_coordinates(s, t);
            let (s2, t2) = unmap_coordinates(x, z);
            assert!((s2 - s).abs() < 1e-15 * (1.0 + s.abs()) && (t2 - t).abs() < 1e-15 * (1.0 + t.abs()));
        }
    }

    #[test]
    fn profile_invariants() {
        for alpha in [0.1, 0.351648275547, 0.8] {
            let w = wave(0.24, alpha);
            let p = profile(&w, 0.0, -20.0, 20.0, 401, 0.7).unwrap();
            let s = w.k + w.omega;
            for r in &p.rows {
                assert!((r.y + r.z - 0.7).abs() < 1e-12);
                assert!((r.pi - 4.0 * s * s * (w.k - w.omega) * sech2(r.theta)).abs() < 1e-12);
                // closed-form derivative of Z against the tanh expression
                let dz = 0.5 - 2.0 * s * w.k * sech2(r.theta);
                assert!((r.dz_dsigma - dz).abs() < 1e-12);
            }
        }
        let w = wave(0.24, 0.1);
        assert!(profile(&w, 0.0, 1.0, 1.0, 10, 0.0).is_err());
        assert!(profile(&w, 0.0, 0.0, 1.0, 1, 0.0).is_err());
    }

    #[test]
    fn profile_shapes() {
        let kink = profile(&wave(0.24, 0.8), 0.0, -20.0, 20.0, 801, 0.0).unwrap();
        assert_eq!(kink.monotonicity(1e-9), Monotonicity::Strict);
        let mut by_y = kink.rows.clone();
        by_y.sort_by(|a, b| a.y.total_cmp(&b.y));
        assert!(by_y.windows(2).all(|p| p[1].u < p[0].u) || by_y.windows(2).all(|p| p[1].u > p[0].u));

        let lp = profile(&wave(0.24, 0.1), 0.0, -20.0, 20.0, 801, 0.0).unwrap();
        assert_eq!(lp.monotonicity(1e-9), Monotonicity::NonMonotone(2));

        let ac = alpha_critical(0.24).unwrap();
        let cusp = profile(&wave(0.24, ac), 0.0, -20.0, 20.0, 801, 0.0).unwrap();
        assert_eq!(cusp.monotonicity(1e-9), Monotonicity::Degenerate(1));
    }

    #[test]
    fn hodograph_quadrature_matches_antiderivative() {
        // closed form along fixed zeta: theta advances at rate k + omega and
        // int_{-inf}^{theta} (1 + tanh)   = L,   L = ln(1 + e^{2 theta})
        // int_{-inf}^{theta} (1 + tanh)^2 = 2 L - (tanh + 1)
        let w = wave(0.24, 0.8);
        let (rate, amp) = (w.k + w.omega, 4.0 * (w.k + w.omega).powi(2));
        for (xi, zeta) in [(-3.0, 0.5), (0.0, 0.0), (2.0, -1.0)] {
            let (s, t) = unmap_coordinates(xi, zeta);
            let th = w.theta(s, t);
            let l = (2.0 * th).exp().ln_1p();
            let exact = zeta + (amp * l + 0.5 * amp * amp * (2.0 * l - (th.tanh() + 1.0))) / rate;
            let y = hodograph_y(&w, xi, zeta, 0.0).unwrap();
            assert!((y - exact).abs() < 1e-10, "{y} vs {exact}");
        }
    }
}
