//! Method-of-lines integration of the coupled system in characteristic
//! coordinates:
//!
//! ```text
//! u_tau_tau = u_sigma_sigma - (Z_sigma + Z_tau) u + alpha (u_sigma + u_tau) - f1
//! Z_tau_tau = Z_sigma_sigma + (u + 1)(u_sigma + u_tau) - f2
//! ```
//!
//! with optional forcing `(f1, f2)`. The state carries `(u, u_tau, Z, Z_tau)`;
//! `sigma` derivatives use fourth-order central stencils and time stepping is
//! classical RK4. The two outermost nodes on each side are Dirichlet nodes
//! driven by the supplied boundary fields.

use serde::Serialize;

use crate::dispersion::RealWave;
use crate::error::{domain, Error, Result};
use crate::grid::Axis;
use crate::verify::fields::{ScalarField, SolitonU, SolitonZ};
use crate::verify::manufactured::Manufactured;

/// Grid values of the four unknowns at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimState19 {
    pub sigma: Axis,
    pub tau: f64,
    pub u: Vec<f64>,
    pub u_t: Vec<f64>,
    pub z: Vec<f64>,
    pub z_t: Vec<f64>,
}

impl SimState19 {
    /// Samples two fields (and their `tau` derivatives) at time `tau`.
    pub fn from_fields(u: &impl ScalarField, z: &impl ScalarField, sigma: Axis, tau: f64) -> Self {
        let (mut uu, mut ut, mut zz, mut zt) = (vec![], vec![], vec![], vec![]);
        for s in sigma.nodes() {
            let (ju, jz) = (u.jet(s, tau), z.jet(s, tau));
            uu.push(ju.v);
            ut.push(ju.t);
            zz.push(jz.v);
            zt.push(jz.t);
        }
        Self { sigma, tau, u: uu, u_t: ut, z: zz, z_t: zt }
    }

    /// The printed one-soliton at time `tau`.
    pub fn from_wave(w: &RealWave, sigma: Axis, tau: f64) -> Self {
        Self::from_fields(&SolitonU(*w), &SolitonZ(*w), sigma, tau)
    }

    pub fn zeros(sigma: Axis) -> Self {
        let n = sigma.n;
        Self { sigma, tau: 0.0, u: vec![0.0; n], u_t: vec![0.0; n], z: vec![0.0; n], z_t: vec![0.0; n] }
    }

    fn is_finite(&self) -> bool {
        [&self.u, &self.u_t, &self.z, &self.z_t].iter().all(|v| v.iter().all(|x| x.is_finite()))
    }
}

/// Time-dependent Dirichlet data taken from two space-time fields.
pub struct FieldBoundary<U, Z> {
    pub u: U,
    pub z: Z,
}

impl<U: ScalarField, Z: ScalarField> FieldBoundary<U, Z> {
    /// `[u, u_t, u_tt, z, z_t, z_tt]`.
    fn at(&self, s: f64, t: f64) -> [f64; 6] {
        let (a, b) = (self.u.jet(s, t), self.z.jet(s, t));
        [a.v, a.t, a.tt, b.v, b.t, b.tt]
    }
}

impl FieldBoundary<SolitonU, SolitonZ> {
    /// Exact traces of the printed one-soliton.
    pub fn soliton(w: &RealWave) -> Self {
        Self { u: SolitonU(*w), z: SolitonZ(*w) }
    }
}

pub trait Forcing19: Sync {
    fn at(&self, s: f64, t: f64) -> [f64; 2];
}

impl Forcing19 for Manufactured {
    fn at(&self, s: f64, t: f64) -> [f64; 2] {
        self.forcing(s, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sim19Options {
    pub alpha: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Store a snapshot every this many steps (the final state is always stored).
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory19 {
    pub alpha: f64,
    /// Step actually used (`t_end` divided into equal steps).
    pub dt: f64,
    pub snapshots: Vec<SimState19>,
}

impl Trajectory19 {
    pub fn last(&self) -> &SimState19 {
        self.snapshots.last().expect("trajectory always holds the initial state")
    }
}

const BOUNDARY_LAYERS: usize = 2;

struct Rhs<'a, U, Z> {
    sigma: Axis,
    alpha: f64,
    boundary: &'a FieldBoundary<U, Z>,
    forcing: Option<&'a dyn Forcing19>,
}

type Fields = [Vec<f64>; 4];

impl<U: ScalarField, Z: ScalarField> Rhs<'_, U, Z> {
    fn eval(&self, tau: f64, y: &Fields, out: &mut Fields) {
        let n = self.sigma.n;
        let h = self.sigma.spacing();
        let [u, p, z, q] = y;
        let (c1, c2) = (1.0 / (12.0 * h), 1.0 / (12.0 * h * h));
        for i in 0..n {
            let s = self.sigma.node(i);
            if i < BOUNDARY_LAYERS || i + BOUNDARY_LAYERS >= n {
                let b = self.boundary.at(s, tau);
                out[0][i] = b[1];
                out[1][i] = b[2];
                out[2][i] = b[4];
                out[3][i] = b[5];
                continue;
            }
            let d1 = |f: &[f64]| c1 * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
            let d2 = |f: &[f64]| c2 * (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]);
            let (us, uss, zs, zss) = (d1(u), d2(u), d1(z), d2(z));
            let plus = us + p[i];
            let f = self.forcing.map_or([0.0; 2], |f| f.at(s, tau));
            out[0][i] = p[i];
            out[1][i] = uss - (zs + q[i]) * u[i] + self.alpha * plus - f[0];
            out[2][i] = q[i];
            out[3][i] = zss + (u[i] + 1.0) * plus - f[1];
        }
    }
}

fn axpy(y: &Fields, k: &Fields, a: f64, out: &mut Fields) {
    for c in 0..4 {
        for ((o, yv), kv) in out[c].iter_mut().zip(&y[c]).zip(&k[c]) {
            *o = yv + a * kv;
        }
    }
}

/// Integrates from `init` to `init.tau + opts.t_end`.
///
/// Requires `dt <= sigma_spacing / 2` and at least five nodes.
pub fn evolve_system19<U: ScalarField, Z: ScalarField>(
    init: &SimState19,
    opts: &Sim19Options,
    boundary: &FieldBoundary<U, Z>,
    forcing: Option<&dyn Forcing19>,
) -> Result<Trajectory19> {
    let n = init.sigma.n;
    if n < 2 * BOUNDARY_LAYERS + 1 {
        return Err(domain(format!("need at least {} sigma nodes, got {n}", 2 * BOUNDARY_LAYERS + 1)));
    }
    if [&init.u, &init.u_t, &init.z, &init.z_t].iter().any(|v| v.len() != n) {
        return Err(Error::GridMismatch("state vectors do not match the sigma axis".into()));
    }
    let h = init.sigma.spacing();
    let (steps, dt) = super::step_count(opts.t_end, opts.dt)?;
    if dt > 0.5 * h {
        return Err(domain(format!("CFL violated: dt = {dt} exceeds h/2 = {}", 0.5 * h)));
    }
    let every = opts.snapshot_every.max(1);
    let rhs = Rhs { sigma: init.sigma, alpha: opts.alpha, boundary, forcing };

    let mut y: Fields = [init.u.clone(), init.u_t.clone(), init.z.clone(), init.z_t.clone()];
    let zero = || -> Fields { std::array::from_fn(|_| vec![0.0; n]) };
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (zero(), zero(), zero(), zero(), zero());
    let mut snapshots = vec![init.clone()];
    let t0 = init.tau;

    for step in 1..=steps {
        let t = t0 + (step - 1) as f64 * dt;
        rhs.eval(t, &y, &mut k1);
        axpy(&y, &k1, 0.5 * dt, &mut tmp);
        rhs.eval(t + 0.5 * dt, &tmp, &mut k2);
        axpy(&y, &k2, 0.5 * dt, &mut tmp);
        rhs.eval(t + 0.5 * dt, &tmp, &mut k3);
        axpy(&y, &k3, dt, &mut tmp);
        rhs.eval(t + dt, &tmp, &mut k4);
        for c in 0..4 {
            for i in 0..n {
                y[c][i] += dt / 6.0 * (k1[c][i] + 2.0 * k2[c][i] + 2.0 * k3[c][i] + k4[c][i]);
            }
        }
        let t_new = t0 + step as f64 * dt;
        for i in (0..BOUNDARY_LAYERS).chain(n - BOUNDARY_LAYERS..n) {
            let b = boundary.at(init.sigma.node(i), t_new);
            y[0][i] = b[0];
            y[1][i] = b[1];
            y[2][i] = b[3];
            y[3][i] = b[4];
        }
        let state = SimState19 {
            sigma: init.sigma,
            tau: t_new,
            u: y[0].clone(),
            u_t: y[1].clone(),
            z: y[2].clone(),
            z_t: y[3].clone(),
        };
        if !state.is_finite() {
            return Err(Error::NumericalAbort { step, reason: "non-finite value in system (19) state".into() });
        }
        if step % every == 0 || step == steps {
            snapshots.push(state);
        }
    }
    Ok(Trajectory19 { alpha: opts.alpha, dt, snapshots })
}

/// Distance between a snapshot and reference fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorNorms {
    pub tau: f64,
    pub u_linf: f64,
    pub u_l2: f64,
    pub z_linf: f64,
    pub z_l2: f64,
}

impl ErrorNorms {
    pub fn linf(&self) -> f64 {
        self.u_linf.max(self.z_linf)
    }
}

pub fn compare_to_fields(traj: &Trajectory19, u: &impl ScalarField, z: &impl ScalarField) -> Result<Vec<ErrorNorms>> {
    traj.snapshots
        .iter()
        .map(|st| {
            let n = st.sigma.n;
            if st.u.len() != n || st.z.len() != n {
                return Err(Error::GridMismatch(format!("snapshot at tau = {} has wrong length", st.tau)));
            }
            let h = st.sigma.spacing();
            let mut e = ErrorNorms { tau: st.tau, u_linf: 0.0, u_l2: 0.0, z_linf: 0.0, z_l2: 0.0 };
            for (i, s) in st.sigma.nodes().enumerate() {
                let du = st.u[i] - u.value(s, st.tau);
                let dz = st.z[i] - z.value(s, st.tau);
                e.u_linf = e.u_linf.max(du.abs());
                e.z_linf = e.z_linf.max(dz.abs());
                e.u_l2 += du * du * h;
                e.z_l2 += dz * dz * h;
            }
            e.u_l2 = e.u_l2.sqrt();
            e.z_l2 = e.z_l2.sqrt();
            Ok(e)
        })
        .collect()
}

/// Error norms of a trajectory against the printed one-soliton.
pub fn compare_to_exact(traj: &Trajectory19, w: &RealWave) -> Result<Vec<ErrorNorms>> {
    compare_to_fields(traj, &SolitonU(*w), &SolitonZ(*w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    /// Unchanged under refinement: a property of the model.
    ModelLevel,
    /// Shrinks at the scheme's order under refinement.
    Numerical,
    Inconclusive,
}

/// Compares a discrepancy measured at spacing `h` against the one at `h/2`.
/// Within 1% counts as model level; a reduction of at least 80% of the
/// fourth-order factor 16 counts as numerical.
pub fn classify_discrepancy(coarse: f64, fine: f64) -> DiscrepancyKind {
    if fine == 0.0 {
        return if coarse == 0.0 { DiscrepancyKind::ModelLevel } else { DiscrepancyKind::Numerical };
    }
    let ratio = coarse / fine;
    if (ratio - 1.0).abs() <= 0.01 {
        DiscrepancyKind::ModelLevel
    } else if ratio >= 0.8 * 16.0 {
        DiscrepancyKind::Numerical
    } else {
        DiscrepancyKind::Inconclusive
    }
}
