use serde::{Deserialize, Serialize};

/// Uniformly spaced closed interval `[min, max]` with `n` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Self {
        Self { min, max, n }
    }

    pub fn spacing(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.max - self.min) / (self.n - 1) as f64
        }
    }

    /// Node `i`, computed as `min + i h` except the last node which is `max` exactly.
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Same interval, spacing halved.
    pub fn refined(&self) -> Self {
        Self { n: 2 * self.n - 1, ..*self }
    }
}

/// Tensor grid over `(sigma, tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2 {
    pub sigma: Axis,
    pub tau: Axis,
}

impl Grid2 {
    pub fn new(sigma: Axis, tau: Axis) -> Self {
        Self { sigma, tau }
    }

    pub fn square(min: f64, max: f64, n: usize) -> Self {
        Self::new(Axis::new(min, max, n), Axis::new(min, max, n))
    }

    /// `[-15, 15]^2` with 301 points per axis.
    pub fn verify_default() -> Self {
        Self::square(-15.0, 15.0, 301)
    }

    /// `[-10, 10]^2` with 101 points per axis.
    pub fn bilinear_default() -> Self {
        Self::square(-10.0, 10.0, 101)
    }

    pub fn len(&self) -> usize {
        self.sigma.n * self.tau.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in row-major order: `tau` outer, `sigma` inner.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.tau.n).flat_map(move |j| {
            let t = self.tau.node(j);
            (0..self.sigma.n).map(move |i| (self.sigma.node(i), t))
        })
    }

    pub fn refined(&self) -> Self {
        Self::new(self.sigma.refined(), self.tau.refined())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_nodes() {
        let a = Axis::new(-1.0, 1.0, 5);
        assert_eq!(a.spacing(), 0.5);
        assert_eq!(a.nodes().collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(a.refined().n, 9);
        assert_eq!(Grid2::square(0.0, 1.0, 3).points().count(), 9);
    }
}
