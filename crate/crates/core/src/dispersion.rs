//! Dispersion relations of the coupled real system and of the complex
//! short-pulse system, and the critical dissipative parameter at which the
//! real soliton changes shape.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Traveling-wave parameters of the real coupled system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealWave {
    pub v: f64,
    pub alpha: f64,
    pub k: f64,
    pub omega: f64,
    pub theta0: f64,
}

impl RealWave {
    /// Solves the dispersion relation for `(v, alpha)` with zero phase.
    pub fn new(v: f64, alpha: f64) -> Result<Self> {
        solve_real(v, alpha)
    }

    pub fn with_theta0(mut self, theta0: f64) -> Self {
        self.theta0 = theta0;
        self
    }

    /// Phase `k sigma - omega tau + theta0`.
    #[inline]
    pub fn theta(&self, sigma: f64, tau: f64) -> f64 {
        self.k * sigma - self.omega * tau + self.theta0
    }

    /// `4 (omega + k) k`, the quantity compared against 1 by the shape
    /// classification.
    pub fn singularity_measure(&self) -> f64 {
        4.0 * (self.omega + self.k) * self.k
    }

    pub fn residual(&self) -> f64 {
        real_dispersion_residual(self.k, self.omega, self.alpha)
    }
}

/// Wave parameters of the complex short-pulse system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexWave {
    pub k: Complex64,
    pub omega: Complex64,
    pub alpha: f64,
    pub theta0: Complex64,
}

impl ComplexWave {
    /// Picks the preferred root (largest `Re(k + omega)`).
    pub fn new(k: Complex64, alpha: f64) -> Self {
        let [omega, _] = solve_complex_omega(k, alpha);
        Self { k, omega, alpha, theta0: Complex64::new(0.0, 0.0) }
    }

    #[inline]
    pub fn theta(&self, sigma: f64, tau: f64) -> Complex64 {
        self.k * sigma - self.omega * tau + self.theta0
    }

    /// `k^2 - omega^2 + alpha (k - omega) - 1`.
    pub fn residual(&self) -> Complex64 {
        complex_dispersion_residual(self.k, self.omega, self.alpha)
    }

    /// Factored form `(k - omega)(k + omega + alpha) - 1`.
    pub fn factored_residual(&self) -> Complex64 {
        (self.k - self.omega) * (self.k + self.omega + self.alpha) - 1.0
    }
}

/// Dissipative parameter at which the real soliton is cusp-shaped.
pub fn alpha_critical(v: f64) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        return Err(domain(format!("alpha_critical needs 0 < v < 1, got {v}")));
    }
    Ok(v * (1.0 + v).sqrt() / (1.0 - v))
}

/// Positive-`k` branch of the real dispersion relation at velocity `v`.
pub fn solve_real(v: f64, alpha: f64) -> Result<RealWave> {
    if !(v > -1.0 && v < 1.0) {
        return Err(domain(format!("wave velocity must satisfy -1 < v < 1, got {v}")));
    }
    if !alpha.is_finite() {
        return Err(domain(format!("alpha must be finite, got {alpha}")));
    }
    let a = alpha * (1.0 - v);
    let k = 1.0 / (a + (a * a + 4.0 * (1.0 - v * v)).sqrt());
    Ok(RealWave { v, alpha, k, omega: k * v, theta0: 0.0 })
}

pub fn real_dispersion_residual(k: f64, omega: f64, alpha: f64) -> f64 {
    4.0 * (k * k - omega * omega) + 2.0 * alpha * (k - omega) - 1.0
}

pub fn complex_dispersion_residual(k: Complex64, omega: Complex64, alpha: f64) -> Complex64 {
    k * k - omega * omega + alpha * (k - omega) - 1.0
}

/// Both roots `omega` of the complex dispersion relation for wave number `k`,
/// ordered by descending `Re(k + omega)`.
///
/// Solved through `s = k - omega`, which satisfies `s^2 - (2k + alpha) s + 1 = 0`;
/// the larger-modulus root is formed first and the other from `s1 s2 = 1`.
pub fn solve_complex_omega(k: Complex64, alpha: f64) -> [Complex64; 2] {
    let b = 2.0 * k + alpha;
    let disc = (b * b - 4.0).sqrt();
    let (p, m) = (b + disc, b - disc);
    let big = if p.norm() >= m.norm() { p } else { m } * 0.5;
    let (s1, s2) = if big.norm() == 0.0 {
        // b^2 = 4 with b = 0 is impossible, so this only guards NaN input
        (big, big)
    } else {
        (big, big.inv())
    };
    let mut roots = [k - s1, k - s2];
    if (k + roots[1]).re > (k + roots[0]).re {
        roots.swap(0, 1);
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn critical_alpha_examples() {
        assert!((alpha_critical(0.24).unwrap() - 0.351648275547).abs() < 1e-10);
        assert!((alpha_critical(0.5).unwrap() - 1.5f64.sqrt()).abs() < 1e-12);
        assert!(alpha_critical(1e-12).unwrap() < 1e-11);
        for v in [0.0, -0.3, 1.0, 1.5, f64::NAN] {
            assert!(alpha_critical(v).is_err());
        }
    }

    #[test]
    fn solve_real_examples() {
        let w = solve_real(0.0, 0.0).unwrap();
        assert_eq!((w.k, w.omega), (0.5, 0.0));

        // oracle: high-precision root of 4(k^2-w^2)+2a(k-w)-1 with w = kv
        let w = solve_real(0.24, 0.1).unwrap();
        assert!((w.k - 0.495286683241096).abs() < 1e-13);
        assert!((w.omega - 0.118868803977863).abs() < 1e-13);

        let w = solve_real(0.24, 0.351_648_275_547_159_3).unwrap();
        assert!((w.k - 1.0 / (2.0 * 1.24f64.sqrt())).abs() < 1e-14);

        assert!(solve_real(1.0, 0.1).is_err());
        assert!(solve_real(-1.0, 0.1).is_err());
    }

    #[test]
    fn residual_examples() {
        assert_eq!(real_dispersion_residual(0.5, 0.0, 0.0), 0.0);
        assert!(real_dispersion_residual(0.495287, 0.118869, 0.1).abs() < 1e-5);
        assert_eq!(real_dispersion_residual(1.0, 1.0, 3.7), -1.0);
    }

    #[test]
    fn complex_examples() {
        let c = |re| Complex64::new(re, 0.0);
        let r = solve_complex_omega(c(1.0), 0.0);
        assert!(r[0].norm() < 1e-8 && r[1].norm() < 1e-8);

        let r = solve_complex_omega(c(1.25), 0.0);
        assert!((r[0] - c(0.75)).norm() < 1e-15);
        assert!((r[1] - c(-0.75)).norm() < 1e-15);

        let k = Complex64::new(1.0, 0.5);
        for w in solve_complex_omega(k, 0.2) {
            assert!(complex_dispersion_residual(k, w, 0.2).norm() < 1e-12);
            assert!(((k - w) * (k + w + 0.2) - 1.0).norm() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn real_residual_vanishes(v in -0.99f64..0.99, alpha in 0.0f64..5.0) {
            let w = solve_real(v, alpha).unwrap();
            prop_assert!(w.residual().abs() < 1e-12);
            prop_assert!(w.k > 0.0);
            prop_assert_eq!(w.omega, w.k * v);
        }

        #[test]
        fn rationalized_root_agrees(v in -0.99f64..0.99, alpha in 0.0f64..5.0) {
            let w = solve_real(v, alpha).unwrap();
            let a = alpha * (1.0 - v);
            let alt = (-a + (a * a + 4.0 * (1.0 - v * v)).sqrt()) / (4.0 * (1.0 - v * v));
            prop_assert!((w.k - alt).abs() < 1e-13);
        }

        #[test]
        fn threshold_chain(v in 0.01f64..0.99, eps in 1e-9f64..1e-2) {
            let ac = alpha_critical(v).unwrap();
            let at = |alpha: f64| {
                let w = solve_real(v, alpha).unwrap();
                4.0 * w.k * w.k * (1.0 + v)
            };
            prop_assert!((at(ac) - 1.0).abs() < 1e-12);
            prop_assert!(at(ac * (1.0 - eps)) > 1.0);
            prop_assert!(at(ac * (1.0 + eps)) < 1.0);
        }

        #[test]
        fn vieta(kr in -5.0f64..5.0, ki in -5.0f64..5.0, alpha in 0.0f64..2.0) {
            let k = Complex64::new(kr, ki);
            let [w1, w2] = solve_complex_omega(k, alpha);
            prop_assert!((w1 * w2 + (k * k + alpha * k - 1.0)).norm() < 1e-12 * (1.0 + k.norm_sqr()));
            prop_assert!((w1 + w2 + alpha).norm() < 1e-12 * (1.0 + k.norm()));
            prop_assert!((k + w1).re >= (k + w2).re);
        }
    }
}
