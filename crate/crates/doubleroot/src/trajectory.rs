//! Time-stamped zero trajectories with provenance and per-sample diagnostics.

use crate::error::{Error, Result};
use crate::poly::{C64, ZeroState};

/// Which pipeline produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed-form coefficient flows plus algebraic root recovery.
    Algebraic,
    /// Adaptive Runge-Kutta integration of the explicit zero system.
    DirectIntegration,
}

/// Per-sample quality numbers.
///
/// `double_root_separation` is the distance between the paired roots of the
/// reconstructed polynomial, `branch_distance` the gap between the tracked
/// double zero and the midpoint of that pair; both are the pipeline's own
/// precision estimate. The residuals are `|p(x1)|` and `|p'(x1)|` scaled by
/// `max(1, max_m |y_m|)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SampleDiagnostics {
    pub double_root_separation: f64,
    pub branch_distance: f64,
    pub p_residual: f64,
    pub dp_residual: f64,
}

/// Labeled zero trajectory on a fixed sample grid.
#[derive(Debug, Clone)]
pub struct TrackedTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ZeroState>,
    /// Reconstructed left-out coefficient at each sample.
    pub ybar: Vec<C64>,
    pub diagnostics: Vec<SampleDiagnostics>,
    pub provenance: Provenance,
}

impl TrackedTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Number of zeros N.
    pub fn n(&self) -> usize {
        self.states.first().map_or(0, ZeroState::n)
    }

    /// Index of the sample closest to `t`.
    pub fn nearest_sample(&self, t: f64) -> Option<usize> {
        if self.times.is_empty() {
            return None;
        }
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (k, &tk) in self.times.iter().enumerate() {
            let d = (tk - t).abs();
            if d < dist {
                dist = d;
                best = k;
            }
        }
        Some(best)
    }

    /// Sample at time `t`, required to sit on the grid within `tol`.
    pub fn state_at(&self, t: f64, tol: f64) -> Result<&ZeroState> {
        let k = self
            .nearest_sample(t)
            .ok_or_else(|| Error::InvalidGrid("empty trajectory".to_string()))?;
        if (self.times[k] - t).abs() > tol {
            return Err(Error::TrajectoryTooShort {
                covered: *self.times.last().unwrap(),
                required: t,
            });
        }
        Ok(&self.states[k])
    }

    /// Max-norm distance between two samples over positions and velocities.
    pub fn state_distance(a: &ZeroState, b: &ZeroState) -> f64 {
        let mut d: f64 = 0.0;
        for (za, zb) in a.positions().iter().zip(b.positions()) {
            d = d.max((za - zb).norm());
        }
        for (za, zb) in a.velocities().iter().zip(b.velocities()) {
            d = d.max((za - zb).norm());
        }
        d
    }

    /// Max-norm distance over positions only.
    pub fn position_distance(a: &ZeroState, b: &ZeroState) -> f64 {
        a.positions()
            .iter()
            .zip(b.positions())
            .map(|(za, zb)| (za - zb).norm())
            .fold(0.0, f64::max)
    }
}
