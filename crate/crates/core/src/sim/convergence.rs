//! Refinement studies of the system (19) integrator against a forced
//! manufactured solution.

use std::time::Instant;

use serde::Serialize;

use super::system19::{compare_to_fields, evolve_system19, FieldBoundary, SimState19, Sim19Options, Trajectory19};
use crate::error::Result;
use crate::grid::Axis;
use crate::verify::fields::Gaussian;
use crate::verify::manufactured::Manufactured;

/// Errors at successive refinements and the observed orders between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderEstimate {
    pub steps: Vec<f64>,
    pub errors: Vec<f64>,
    pub orders: Vec<f64>,
    pub required: f64,
    pub pass: bool,
}

impl OrderEstimate {
    fn new(steps: Vec<f64>, errors: Vec<f64>, required: f64) -> Self {
        let orders: Vec<f64> = errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect();
        let pass = orders.iter().all(|&p| p >= required);
        Self { steps, errors, orders, required, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sim19Convergence {
    pub space: OrderEstimate,
    pub time: OrderEstimate,
    pub seconds: f64,
}

impl Sim19Convergence {
    pub fn pass(&self) -> bool {
        self.space.pass && self.time.pass
    }
}

/// Minimum observed spatial order accepted for the fourth-order stencils.
pub const SPACE_ORDER: f64 = 3.8;
/// Minimum observed temporal order.
pub const TIME_ORDER: f64 = 2.0;

const EXTENT: f64 = 10.0;
const T_END: f64 = 1.0;

/// Manufactured pair used for refinement: narrow enough that spatial error
/// dominates at the coarse grids.
pub fn refinement_problem() -> Manufactured {
    Manufactured {
        u: Gaussian::new(0.8, 0.4, -0.3, 1.0),
        z: Gaussian::new(-0.6, -0.5, 0.2, 1.2).with_linear(0.5, 0.5),
        alpha: 0.3,
    }
}

fn run(m: &Manufactured, n: usize, dt: f64) -> Result<Trajectory19> {
    let axis = Axis::new(-EXTENT, EXTENT, n);
    let init = SimState19::from_fields(&m.u, &m.z, axis, 0.0);
    let opts = Sim19Options { alpha: m.alpha, t_end: T_END, dt, snapshot_every: usize::MAX };
    evolve_system19(&init, &opts, &FieldBoundary { u: m.u, z: m.z }, Some(m))
}

fn max_error(m: &Manufactured, tr: &Trajectory19) -> Result<f64> {
    Ok(compare_to_fields(tr, &m.u, &m.z)?.iter().fold(0.0f64, |a, e| a.max(e.linf())))
}

/// Spatial triplet `n = 101, 201, 401` at a small fixed step, and a temporal
/// triplet at `n = 401` measured by successive differences of the final state.
pub fn sim19_convergence() -> Result<Sim19Convergence> {
    let start = Instant::now();
    let m = refinement_problem();

    let ns = [101usize, 201, 401];
    let dt_fine = 0.005;
    let mut space_err = Vec::new();
    for &n in &ns {
        space_err.push(max_error(&m, &run(&m, n, dt_fine)?)?);
    }
    let hs = ns.iter().map(|&n| 2.0 * EXTENT / (n - 1) as f64).collect();

    let dts = [0.025, 0.0125, 0.00625];
    let mut finals = Vec::new();
    for &dt in &dts {
        finals.push(run(&m, 401, dt)?.last().clone());
    }
    let diff = |a: &SimState19, b: &SimState19| {
        let d = |x: &[f64], y: &[f64]| x.iter().zip(y).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
        d(&a.u, &b.u).max(d(&a.z, &b.z))
    };
    let time_err = vec![diff(&finals[0], &finals[1]), diff(&finals[1], &finals[2])];

    Ok(Sim19Convergence {
        space: OrderEstimate::new(hs, space_err, SPACE_ORDER),
        time: OrderEstimate::new(dts[..2].to_vec(), time_err, TIME_ORDER),
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_meet_thresholds() {
        let c = sim19_convergence().unwrap();
        assert!(c.pass(), "{c:?}");
    }
}
