//! Fixed-step time integrators for the coupled characteristic system and the
//! modified KdV-Burgers equation.

pub mod convergence;
pub mod mkdvb;
pub mod system19;

pub use convergence::{sim19_convergence, OrderEstimate, Sim19Convergence};
pub use mkdvb::{evolve_mkdvb, MkdvbCoeffs, SimStateMKdVB, TrajectoryMkdvb};
pub use system19::{
    classify_discrepancy, compare_to_exact, compare_to_fields, evolve_system19, DiscrepancyKind, ErrorNorms,
    FieldBoundary, SimState19, Sim19Options, Trajectory19,
};

/// Number of fixed steps covering `[0, t_end]` with steps no longer than `dt`,
/// and the resulting uniform step.
pub(crate) fn step_count(t_end: f64, dt: f64) -> crate::Result<(usize, f64)> {
    if !(dt > 0.0) || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(crate::error::domain(format!("need dt > 0 and t_end >= 0, got dt = {dt}, t_end = {t_end}")));
    }
    if t_end == 0.0 {
        return Ok((0, dt));
    }
    let n = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    Ok((n, t_end / n as f64))
}
