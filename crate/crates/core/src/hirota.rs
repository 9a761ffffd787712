//! Hirota bilinear derivatives on sums of exponentials.
//!
//! A [`TauFunction`] is a finite sum of atoms `c exp(a sigma + b tau)`. On a
//! pair of atoms the bilinear derivative has the closed form
//!
//! ```text
//! D_sigma^m D_tau^n (f . g) = c1 c2 (a1 - a2)^m (b1 - b2)^n exp((a1 + a2) sigma + (b1 + b2) tau)
//! ```
//!
//! and it extends to sums by bilinearity.

use serde::Serialize;

use crate::dispersion::RealWave;
use crate::error::{domain, Result};
use crate::grid::Grid2;
use crate::soliton::tau_pair;

/// Highest total derivative order accepted by [`d_op`].
pub const MAX_ORDER: u32 = 8;

/// `coeff * exp(a sigma + b tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub coeff: f64,
    pub a: f64,
    pub b: f64,
}

impl Atom {
    pub fn new(coeff: f64, a: f64, b: f64) -> Self {
        Self { coeff, a, b }
    }

    #[inline]
    pub fn eval(&self, sigma: f64, tau: f64) -> f64 {
        self.coeff * (self.a * sigma + self.b * tau).exp()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TauFunction {
    pub atoms: Vec<Atom>,
}

impl TauFunction {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![Atom::new(c, 0.0, 0.0)])
    }

    pub fn eval(&self, sigma: f64, tau: f64) -> f64 {
        self.atoms.iter().map(|t| t.eval(sigma, tau)).sum()
    }

    /// First partial derivatives `(f_sigma, f_tau)`.
    pub fn gradient(&self, sigma: f64, tau: f64) -> (f64, f64) {
        self.atoms.iter().fold((0.0, 0.0), |(ds, dt), t| {
            let e = t.eval(sigma, tau);
            (ds + t.a * e, dt + t.b * e)
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.atoms.iter().map(|t| Atom { coeff: s * t.coeff, ..*t }).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Self::new(atoms)
    }

    /// Ordinary pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for f in &self.atoms {
            for g in &other.atoms {
                atoms.push(Atom::new(f.coeff * g.coeff, f.a + g.a, f.b + g.b));
            }
        }
        Self::new(atoms)
    }

    /// Merges atoms with identical exponents (exact float equality) and drops
    /// zero coefficients. Merging follows first-appearance order.
    pub fn simplify(&self) -> Self {
        let mut out: Vec<Atom> = Vec::new();
        for t in &self.atoms {
            match out.iter_mut().find(|o| o.a == t.a && o.b == t.b) {
                Some(o) => o.coeff += t.coeff,
                None => out.push(*t),
            }
        }
        out.retain(|t| t.coeff != 0.0);
        Self::new(out)
    }
}

/// Closed-form `D_sigma^m D_tau^n (f . g)`.
pub fn d_op(m: u32, n: u32, f: &TauFunction, g: &TauFunction) -> Result<TauFunction> {
    bilinear(&[(1.0, m, n)], f, g)
}

/// Applies a polynomial `sum c_i D_sigma^{m_i} D_tau^{n_i}` to `(f . g)`.
pub fn bilinear(poly: &[(f64, u32, u32)], f: &TauFunction, g: &TauFunction) -> Result<TauFunction> {
    if let Some(&(_, m, n)) = poly.iter().find(|&&(_, m, n)| m + n > MAX_ORDER) {
        return Err(domain(format!("bilinear order m + n = {} exceeds {MAX_ORDER}", m + n)));
    }
    let mut atoms = Vec::with_capacity(f.atoms.len() * g.atoms.len());
    for p in &f.atoms {
        for q in &g.atoms {
            let (da, db) = (p.a - q.a, p.b - q.b);
            let symbol: f64 = poly.iter().map(|&(c, m, n)| c * da.powi(m as i32) * db.powi(n as i32)).sum();
            atoms.push(Atom::new(p.coeff * q.coeff * symbol, p.a + q.a, p.b + q.b));
        }
    }
    Ok(TauFunction::new(atoms))
}

/// Reading of the alpha term in the first bilinear equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaVariant {
    /// `alpha (D_sigma + D_tau)^2`, as printed.
    SquaredAlpha,
    /// `alpha (D_sigma + D_tau)`.
    LinearAlpha,
}

impl AlphaVariant {
    pub fn name(self) -> &'static str {
        match self {
            Self::SquaredAlpha => "squared",
            Self::LinearAlpha => "linear",
        }
    }
}

/// Normalized residuals of both bilinear equations for the one-soliton tau
/// pair of a wave.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilinearReport {
    pub variant: AlphaVariant,
    /// `max |line 1| / max_i max |term_i|` over the grid.
    pub line1_linf: f64,
    pub line2_linf: f64,
    /// Un-normalized maxima.
    pub line1_abs: f64,
    pub line2_abs: f64,
    pub line1_scale: f64,
    pub line2_scale: f64,
    pub grid: Grid2,
}

/// The two lines of the bilinear system, split into individually normalizable terms.
pub fn bilinear_terms(w: &RealWave, variant: AlphaVariant) -> Result<(Vec<TauFunction>, Vec<TauFunction>)> {
    let tp = tau_pair(w);
    let (f, g) = (&tp.f, &tp.g);
    let alpha = w.alpha;
    let alpha_term = match variant {
        AlphaVariant::SquaredAlpha => vec![(alpha, 2, 0), (2.0 * alpha, 1, 1), (alpha, 0, 2)],
        AlphaVariant::LinearAlpha => vec![(alpha, 1, 0), (alpha, 0, 1)],
    };
    let line1 = vec![
        d_op(2, 0, f, g)?,
        d_op(0, 2, f, g)?.scale(-1.0),
        bilinear(&alpha_term, f, g)?,
        f.mul(g).scale(-1.0),
    ];
    // (D_sigma - D_tau)^2 = D_sigma^2 - 2 D_sigma D_tau + D_tau^2
    let line2 = vec![
        bilinear(&[(1.0, 2, 0), (-2.0, 1, 1), (1.0, 0, 2)], f, f)?,
        g.mul(g).scale(-0.5),
        g.mul(f).scale(-1.0),
    ];
    Ok((line1, line2))
}

pub fn bilinear_residual(w: &RealWave, variant: AlphaVariant, grid: &Grid2) -> Result<BilinearReport> {
    let (line1, line2) = bilinear_terms(w, variant)?;
    let (line1_abs, line1_scale) = line_maxima(&line1, grid);
    let (line2_abs, line2_scale) = line_maxima(&line2, grid);
    Ok(BilinearReport {
        variant,
        line1_linf: normalized(line1_abs, line1_scale),
        line2_linf: normalized(line2_abs, line2_scale),
        line1_abs,
        line2_abs,
        line1_scale,
        line2_scale,
        grid: *grid,
    })
}

fn normalized(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Returns `(max |sum of terms|, max over terms of max |term|)`.
fn line_maxima(terms: &[TauFunction], grid: &Grid2) -> (f64, f64) {
    let mut total = 0.0f64;
    let mut scale = 0.0f64;
    for (s, t) in grid.points() {
        let vals: Vec<f64> = terms.iter().map(|f| f.eval(s, t)).collect();
        total = total.max(vals.iter().sum::<f64>().abs());
        scale = vals.iter().fold(scale, |acc, v| acc.max(v.abs()));
    }
    (total, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exp_sum() -> impl Strategy<Value = TauFunction> {
        proptest::collection::vec((-2.0f64..2.0, -1.0f64..1.0, -1.0f64..1.0), 1..4)
            .prop_map(|v| TauFunction::new(v.into_iter().map(|(c, a, b)| Atom::new(c, a, b)).collect()))
    }

    #[test]
    fn single_atom_rule() {
        let (a, b) = (0.7, -0.3);
        let f = TauFunction::new(vec![Atom::new(1.0, a, 0.0)]);
        let g = TauFunction::new(vec![Atom::new(1.0, b, 0.0)]);
        let r = d_op(1, 0, &f, &g).unwrap();
        assert_eq!(r.atoms, vec![Atom::new(a - b, a + b, 0.0)]);
    }

    #[test]
    fn second_order_on_constant() {
        let (k, w) = (0.4, 0.1);
        let f = TauFunction::constant(1.0);
        let g = TauFunction::new(vec![Atom::new(1.0, 2.0 * k, -2.0 * w)]);
        let r = d_op(2, 0, &f, &g).unwrap();
        assert!((r.atoms[0].coeff - 4.0 * k * k).abs() < 1e-15);
        assert_eq!((r.atoms[0].a, r.atoms[0].b), (2.0 * k, -2.0 * w));
    }

    #[test]
    fn order_bound() {
        let f = TauFunction::constant(1.0);
        assert!(d_op(5, 4, &f, &f).is_err());
        assert!(d_op(4, 4, &f, &f).is_ok());
    }

    #[test]
    fn variants_coincide_without_dissipation() {
        let w = RealWave::new(0.3, 0.0).unwrap();
        let grid = Grid2::square(-10.0, 10.0, 21);
        let a = bilinear_residual(&w, AlphaVariant::SquaredAlpha, &grid).unwrap();
        let b = bilinear_residual(&w, AlphaVariant::LinearAlpha, &grid).unwrap();
        assert!((a.line1_linf - b.line1_linf).abs() < 1e-15);
        assert_eq!(a.line2_linf, b.line2_linf);
    }

    #[test]
    fn simplify_merges() {
        let f = TauFunction::new(vec![Atom::new(1.0, 1.0, 0.0), Atom::new(2.0, 0.0, 0.0), Atom::new(-1.0, 1.0, 0.0)]);
        assert_eq!(f.simplify().atoms, vec![Atom::new(2.0, 0.0, 0.0)]);
    }

    proptest! {
        #[test]
        fn odd_self_bilinear_vanishes(f in exp_sum(), m in 0u32..4, n in 0u32..4, s in -2.0f64..2.0, t in -2.0f64..2.0) {
            prop_assume!((m + n) % 2 == 1);
            let r = d_op(m, n, &f, &f).unwrap();
            let scale: f64 = f.atoms.iter().map(|a| a.eval(s, t).abs()).sum::<f64>().powi(2).max(1.0);
            prop_assert!(r.eval(s, t).abs() < 1e-13 * scale);
        }

        #[test]
        fn bilinearity(f1 in exp_sum(), f2 in exp_sum(), g in exp_sum(), m in 0u32..3, n in 0u32..3, s in -1.0f64..1.0, t in -1.0f64..1.0) {
            let lhs = d_op(m, n, &f1.add(&f2), &g).unwrap().eval(s, t);
            let rhs = d_op(m, n, &f1, &g).unwrap().eval(s, t) + d_op(m, n, &f2, &g).unwrap().eval(s, t);
            prop_assert!((lhs - rhs).abs() < 1e-13 * (1.0 + lhs.abs()));
        }

        #[test]
        fn swap_symmetry(f in exp_sum(), g in exp_sum(), m in 0u32..4, n in 0u32..4, s in -1.0f64..1.0, t in -1.0f64..1.0) {
            let a = d_op(m, n, &f, &g).unwrap().eval(s, t);
            let b = d_op(m, n, &g, &f).unwrap().eval(s, t);
            let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }
}
