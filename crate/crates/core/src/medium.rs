//! Relaxing-medium constants and the scaled coefficients of the reduced
//! model equations.
//!
//! The high-frequency pair `(beta_f, gamma_f)` drives both reductions of the
//! short-pulse type; the low-frequency pair `(beta_e, gamma_e)` feeds the
//! modified KdV-Burgers integrator in [`crate::sim::mkdvb`].

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Result};

/// Physical constants of a barotropic medium under relaxation.
///
/// The quadratic and cubic state coefficients are taken as given; no
/// equation of state is assumed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    /// Relaxation time.
    pub tau: f64,
    /// Equilibrium (low-frequency) sound speed.
    pub v_e: f64,
    /// Frozen (high-frequency) sound speed.
    pub v_f: f64,
    pub alpha_e: f64,
    pub a_e: f64,
    pub alpha_f: f64,
    pub a_f: f64,
}

impl Default for MediumParams {
    fn default() -> Self {
        Self { tau: 1.0, v_e: 1.0, v_f: 2.0, alpha_e: 0.0, a_e: 1.0, alpha_f: 0.0, a_f: 1.0 }
    }
}

impl MediumParams {
    /// Checks `tau`, `v_e`, `v_f` are positive and every field is finite.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("tau", self.tau),
            ("v_e", self.v_e),
            ("v_f", self.v_f),
            ("alpha_e", self.alpha_e),
            ("a_e", self.a_e),
            ("alpha_f", self.alpha_f),
            ("a_f", self.a_f),
        ];
        for (name, x) in fields {
            finite(name, x)?;
        }
        for (name, x) in &fields[..3] {
            if *x <= 0.0 {
                return Err(domain(format!("{name} must be > 0, got {x}")));
            }
        }
        Ok(())
    }
}

/// Dissipative and dispersive coefficients of the high-frequency equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighFreqCoeffs {
    pub beta_f: f64,
    pub gamma_f: f64,
}

/// Dissipative and dispersive coefficients of the low-frequency equation.
/// `gamma_e` changes sign at `v_f^2 = 5 v_e^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowFreqCoeffs {
    pub beta_e: f64,
    pub gamma_e: f64,
}

/// Dimensionless dissipative parameter plus the coordinate and field scale
/// factors of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub alpha: f64,
    pub y_scale: f64,
    pub eta_scale: f64,
    pub p_scale: f64,
}

pub fn high_freq_coeffs(m: &MediumParams) -> Result<HighFreqCoeffs> {
    m.validate()?;
    let (tau, ve2, vf2) = (m.tau, m.v_e * m.v_e, m.v_f * m.v_f);
    let beta_f = (vf2 - ve2) / (tau * ve2 * m.v_f);
    let gamma_f = (vf2 * vf2 - ve2 * ve2) / (2.0 * tau * tau * ve2 * ve2 * vf2);
    Ok(HighFreqCoeffs { beta_f: finite("beta_f", beta_f)?, gamma_f: finite("gamma_f", gamma_f)? })
}

pub fn low_freq_coeffs(m: &MediumParams) -> Result<LowFreqCoeffs> {
    m.validate()?;
    let (tau, ve, ve2, vf2) = (m.tau, m.v_e, m.v_e * m.v_e, m.v_f * m.v_f);
    let beta_e = ve2 * tau * (vf2 - ve2) / (2.0 * vf2);
    let gamma_e = ve2 * ve * tau * tau * (vf2 - ve2) * (vf2 - 5.0 * ve2) / (8.0 * vf2 * vf2);
    Ok(LowFreqCoeffs { beta_e: finite("beta_e", beta_e)?, gamma_e: finite("gamma_e", gamma_e)? })
}

fn positive_gamma_f(m: &MediumParams) -> Result<HighFreqCoeffs> {
    let hf = high_freq_coeffs(m)?;
    if hf.gamma_f <= 0.0 {
        return Err(domain(format!(
            "gamma_f must be > 0 (requires v_f > v_e), got gamma_f = {}",
            hf.gamma_f
        )));
    }
    if m.a_f <= 0.0 {
        return Err(domain(format!("a_f must be > 0, got {}", m.a_f)));
    }
    Ok(hf)
}

/// Scaling for the case without quadratic high-frequency nonlinearity
/// (`alpha_f = 0`), which yields the dissipative short-pulse equation.
/// `alpha` does not depend on `a_f`.
pub fn reduce_swsp(m: &MediumParams) -> Result<ReducedParams> {
    let HighFreqCoeffs { beta_f, gamma_f } = positive_gamma_f(m)?;
    let r = ReducedParams {
        alpha: beta_f * (1.0 / (6.0 * gamma_f)).sqrt(),
        y_scale: (gamma_f / 6.0).sqrt(),
        eta_scale: (1.5 * gamma_f).sqrt() * m.v_f,
        p_scale: 1.0 / (m.v_f * m.a_f.sqrt()),
    };
    check_reduced(r)
}

/// Scaling for the combined quadratic-cubic case (`alpha_f != 0`).
pub fn reduce_combined(m: &MediumParams) -> Result<ReducedParams> {
    let HighFreqCoeffs { beta_f, gamma_f } = positive_gamma_f(m)?;
    if m.alpha_f == 0.0 {
        return Err(domain("alpha_f = 0: use the short-pulse reduction (reduce_swsp) instead"));
    }
    let (af, qf, vf) = (m.a_f, m.alpha_f, m.v_f);
    let r = ReducedParams {
        alpha: (beta_f / (qf * vf)) * (3.0 * af / (2.0 * gamma_f)).sqrt(),
        y_scale: (1.0 / qf) * (1.5 * af * gamma_f).sqrt(),
        eta_scale: (gamma_f / (6.0 * af)).sqrt() * qf * vf * vf,
        p_scale: qf / (3.0 * af),
    };
    check_reduced(r)
}

fn check_reduced(r: ReducedParams) -> Result<ReducedParams> {
    finite("alpha", r.alpha)?;
    finite("y_scale", r.y_scale)?;
    finite("eta_scale", r.eta_scale)?;
    finite("p_scale", r.p_scale)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn medium(tau: f64, v_e: f64, v_f: f64) -> MediumParams {
        MediumParams { tau, v_e, v_f, ..Default::default() }
    }

    #[test]
    fn high_freq_examples() {
        let c = high_freq_coeffs(&medium(1.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(c.beta_f, 1.5, max_relative = 1e-15);
        assert_relative_eq!(c.gamma_f, 1.875, max_relative = 1e-15);

        let c = high_freq_coeffs(&medium(1.0, 1.0, 1.0)).unwrap();
        assert_eq!((c.beta_f, c.gamma_f), (0.0, 0.0));

        let c = high_freq_coeffs(&medium(2.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(c.beta_f, 0.75, max_relative = 1e-15);
        assert_relative_eq!(c.gamma_f, 0.46875, max_relative = 1e-15);
    }

    #[test]
    fn low_freq_examples() {
        let c = low_freq_coeffs(&medium(1.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(c.beta_e, 0.375, max_relative = 1e-15);
        assert_relative_eq!(c.gamma_e, -0.0234375, max_relative = 1e-15);

        let c = low_freq_coeffs(&medium(1.0, 1.0, 1.0)).unwrap();
        assert_eq!((c.beta_e, c.gamma_e), (0.0, 0.0));

        // v_f^2 = 5 rounds to exactly 5.0 after squaring sqrt(5)
        let c = low_freq_coeffs(&medium(1.0, 1.0, 5f64.sqrt())).unwrap();
        assert!(c.gamma_e.abs() < 1e-15);
    }

    #[test]
    fn swsp_reduction() {
        let r = reduce_swsp(&medium(1.0, 1.0, 2.0)).unwrap();
        assert!((r.alpha - 0.4472136).abs() < 1e-7);
        let m4 = MediumParams { a_f: 4.0, ..medium(1.0, 1.0, 2.0) };
        let r4 = reduce_swsp(&m4).unwrap();
        assert_eq!(r4.alpha, r.alpha);
        assert_relative_eq!(r4.p_scale, 0.5 * r.p_scale, max_relative = 1e-15);
    }

    #[test]
    fn combined_reduction() {
        let m = MediumParams { alpha_f: 1.0, ..medium(1.0, 1.0, 2.0) };
        let r = reduce_combined(&m).unwrap();
        assert!((r.alpha - 0.6708204).abs() < 1e-7);
        let m2 = MediumParams { alpha_f: 2.0, ..m };
        let r2 = reduce_combined(&m2).unwrap();
        assert!((r2.alpha - 0.3354102).abs() < 1e-7);
    }

    #[test]
    fn degenerate_media_rejected() {
        let m = MediumParams { alpha_f: 1.0, ..medium(1.0, 1.0, 1.0) };
        assert!(matches!(reduce_swsp(&m), Err(crate::Error::Domain(ref s)) if s.contains("gamma_f")));
        assert!(matches!(reduce_combined(&m), Err(crate::Error::Domain(_))));
        let m = MediumParams { a_f: 0.0, ..medium(1.0, 1.0, 2.0) };
        assert!(matches!(reduce_swsp(&m), Err(crate::Error::Domain(ref s)) if s.contains("a_f")));
        let m = medium(1.0, 1.0, 2.0);
        assert!(matches!(reduce_combined(&m), Err(crate::Error::Domain(ref s)) if s.contains("reduce_swsp")));
        assert!(high_freq_coeffs(&medium(0.0, 1.0, 2.0)).is_err());
        assert!(high_freq_coeffs(&medium(1.0, -1.0, 2.0)).is_err());
    }

    #[test]
    fn overflow_is_invalid_parameter() {
        let m = medium(1e-200, 1.0, 2.0);
        assert!(matches!(high_freq_coeffs(&m), Err(crate::Error::InvalidParameter(_))));
    }

    proptest! {
        #[test]
        fn sign_structure(tau in 0.01f64..10.0, v_e in 0.1f64..10.0, ratio in 1.001f64..5.0) {
            let m = medium(tau, v_e, v_e * ratio);
            let hf = high_freq_coeffs(&m).unwrap();
            let lf = low_freq_coeffs(&m).unwrap();
            prop_assert!(hf.beta_f > 0.0 && hf.gamma_f > 0.0 && lf.beta_e > 0.0);
            let root5 = 5f64.sqrt();
            if (ratio - root5).abs() > 1e-9 {
                prop_assert_eq!(lf.gamma_e < 0.0, ratio < root5);
            }
        }

        #[test]
        fn scaling_laws(tau in 0.01f64..10.0, s in 0.1f64..10.0, a_f in 0.1f64..10.0, alpha_f in 0.1f64..5.0) {
            let m = MediumParams { tau, v_e: 1.0, v_f: 1.7, alpha_f, a_f, ..Default::default() };
            let ms = MediumParams { tau: tau * s, ..m };
            let (c, cs) = (high_freq_coeffs(&m).unwrap(), high_freq_coeffs(&ms).unwrap());
            prop_assert!((cs.beta_f * s / c.beta_f - 1.0).abs() < 1e-12);
            prop_assert!((cs.gamma_f * s * s / c.gamma_f - 1.0).abs() < 1e-12);

            let ma = MediumParams { a_f: a_f * s, alpha_f: alpha_f * 2.0, ..m };
            let (r, ra) = (reduce_combined(&m).unwrap(), reduce_combined(&ma).unwrap());
            prop_assert!((ra.alpha / r.alpha - s.sqrt() / 2.0).abs() < 1e-12);
            prop_assert_eq!(reduce_swsp(&m).unwrap().alpha, reduce_swsp(&ma).unwrap().alpha);
            prop_assert_eq!(reduce_combined(&m).unwrap(), r);
        }
    }
}
