//! Parametric `u(y)` and `pi(y)` datasets for the three regimes at a fixed
//! velocity.

use std::path::Path;

use anyhow::Result;
use relaxwave::soliton::{Monotonicity, ProfileSamples};
use relaxwave::{alpha_critical, classify, profile, solve_real, ShapeClass};
use serde::Serialize;

use crate::output::{csv, json, svg_plot, write_file};

/// Relative tolerance for the cusp test and for stationary points of `y`.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// An `alpha` given either literally or as the critical value at `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Critical,
    Value(f64),
}

impl AlphaSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("critical") {
            return Ok(Self::Critical);
        }
        s.parse()
            .map(Self::Value)
            .map_err(|_| relaxwave::Error::InvalidParameter(format!("alpha `{s}` is neither a number nor `critical`")).into())
    }

    pub fn resolve(self, v: f64) -> relaxwave::Result<f64> {
        match self {
            Self::Critical => alpha_critical(v),
            Self::Value(a) => Ok(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub v: f64,
    pub alphas: Vec<AlphaSpec>,
    pub tau: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub n: usize,
    pub svg: bool,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self {
            v: 0.24,
            alphas: vec![AlphaSpec::Critical, AlphaSpec::Value(0.1), AlphaSpec::Value(0.8)],
            tau: 0.0,
            sigma_min: -20.0,
            sigma_max: 20.0,
            n: 801,
            svg: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    U,
    Pi,
}

/// One panel: a parametric curve over the shared `sigma` samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub panel: char,
    pub alpha: f64,
    pub quantity: Quantity,
    pub classification: ShapeClass,
    pub monotonicity: Monotonicity,
    #[serde(skip)]
    pub samples: ProfileSamples,
}

impl Dataset {
    pub fn stem(&self) -> String {
        let q = match self.quantity {
            Quantity::U => "u",
            Quantity::Pi => "pi",
        };
        format!("panel_{}_{q}", self.panel)
    }

    /// `(sigma, y, value)` per sample.
    pub fn points(&self) -> Vec<[f64; 3]> {
        self.samples
            .rows
            .iter()
            .map(|r| {
                let val = match self.quantity {
                    Quantity::U => r.u,
                    Quantity::Pi => r.pi,
                };
                [r.sigma, r.y, val]
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let label = match self.quantity {
            Quantity::U => "u",
            Quantity::Pi => "pi",
        };
        csv(&["sigma", "y", label], self.points().into_iter().map(|p| p.to_vec()))
    }
}

/// Two datasets per `alpha`, panels lettered in order.
pub fn datasets(spec: &FigureSpec) -> Result<Vec<Dataset>> {
    let mut out = Vec::new();
    for (i, a) in spec.alphas.iter().enumerate() {
        let alpha = a.resolve(spec.v)?;
        let w = solve_real(spec.v, alpha)?;
        let class = classify(&w, CLASSIFY_TOL)?;
        let samples = profile(&w, spec.tau, spec.sigma_min, spec.sigma_max, spec.n, 0.0)?;
        let mono = samples.monotonicity(CLASSIFY_TOL);
        for (j, q) in [Quantity::U, Quantity::Pi].into_iter().enumerate() {
            let panel = (b'a' + ((2 * i + j) % 26) as u8) as char;
            out.push(Dataset {
                panel,
                alpha,
                quantity: q,
                classification: class.clone(),
                monotonicity: mono,
                samples: samples.clone(),
            });
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Manifest<'a> {
    v: f64,
    tau: f64,
    sigma_min: f64,
    sigma_max: f64,
    samples: usize,
    panels: Vec<PanelEntry<'a>>,
}

#[derive(Serialize)]
struct PanelEntry<'a> {
    file: String,
    #[serde(flatten)]
    data: &'a Dataset,
}

/// Writes one CSV (and optionally SVG) per dataset plus `figure.json`.
pub fn write(spec: &FigureSpec, dir: &Path) -> Result<Vec<Dataset>> {
    let data = datasets(spec)?;
    let mut panels = Vec::new();
    for d in &data {
        let stem = d.stem();
        write_file(&dir.join(format!("{stem}.csv")), &d.to_csv())?;
        if spec.svg {
            let label = match d.quantity {
                Quantity::U => "u",
                Quantity::Pi => "π",
            };
            let pts: Vec<(f64, f64)> = d.points().iter().map(|p| (p[1], p[2])).collect();
            let title = format!("({}) alpha = {}, {:?}", d.panel, d.alpha, d.classification.shape);
            write_file(&dir.join(format!("{stem}.svg")), &svg_plot(&title, "y", label, &pts))?;
        }
        panels.push(PanelEntry { file: format!("{stem}.csv"), data: d });
    }
    let manifest = Manifest {
        v: spec.v,
        tau: spec.tau,
        sigma_min: spec.sigma_min,
        sigma_max: spec.sigma_max,
        samples: spec.n,
        panels,
    };
    write_file(&dir.join("figure.json"), &json(&manifest)?)?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use relaxwave::Shape;

    #[test]
    fn default_panels() {
        let d = datasets(&FigureSpec::default()).unwrap();
        assert_eq!(d.len(), 6);
        let shapes: Vec<Shape> = d.iter().step_by(2).map(|x| x.classification.shape).collect();
        assert_eq!(shapes, vec![Shape::Cusp, Shape::Loop, Shape::Kink]);
        assert_eq!(d.iter().map(|x| x.panel).collect::<String>(), "abcdef");
    }

    #[test]
    fn critical_literal_matches_computed() {
        let lit = FigureSpec { alphas: vec![AlphaSpec::Value(alpha_critical(0.24).unwrap())], ..Default::default() };
        let sym = FigureSpec { alphas: vec![AlphaSpec::Critical], ..Default::default() };
        let (a, b) = (datasets(&lit).unwrap(), datasets(&sym).unwrap());
        assert_eq!(a[0].to_csv(), b[0].to_csv());
    }

    #[test]
    fn refined_sampling_agrees_on_shared_sigma() {
        let base = FigureSpec::default();
        let fine = FigureSpec { n: 2 * base.n - 1, ..base.clone() };
        let (a, b) = (datasets(&base).unwrap(), datasets(&fine).unwrap());
        for (x, y) in a.iter().zip(&b) {
            let (pa, pb) = (x.points(), y.points());
            for (i, p) in pa.iter().enumerate() {
                let q = pb[2 * i];
                assert!((0..3).all(|c| (p[c] - q[c]).abs() <= 1e-12), "panel {} row {i}", x.panel);
            }
        }
    }

    #[test]
    fn alpha_spec_parsing() {
        assert_eq!(AlphaSpec::parse(" Critical ").unwrap(), AlphaSpec::Critical);
        assert_eq!(AlphaSpec::parse("0.8").unwrap(), AlphaSpec::Value(0.8));
        assert!(AlphaSpec::parse("big").is_err());
    }
}
