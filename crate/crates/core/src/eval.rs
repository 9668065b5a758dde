//! Trajectory scoring, ranking and sim-to-real gap metrics.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::genome::{DesignGenome, HEATMAP_SIDE};
use crate::math::Vec3;
use crate::physics::engine::simulate;
use crate::physics::params::{MaterialParams, SimParams};
use crate::physics::trajectory::Trajectory;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// Displacements below this are treated as "did not move": the heading is
/// undefined and gap ratios are not formed.
pub const HEADING_EPSILON: f64 = 1e-5;

/// Net horizontal center-of-mass displacement, m: the Euclidean distance in
/// the plane between the final sample and the post-settle origin.
pub fn fitness(traj: &Trajectory) -> f64 {
    let d = traj.displacement();
    d.horizontal_norm()
}

/// Planar direction of net displacement in (-pi, pi], or `None` when the
/// design moved less than [`HEADING_EPSILON`].
pub fn heading(traj: &Trajectory) -> Option<f64> {
    if fitness(traj) < HEADING_EPSILON {
        return None;
    }
    let d = traj.displacement();
    let h = d.y.atan2(d.x);
    // atan2 can return -pi for points on the negative x axis.
    Some(if h <= -PI { h + 2.0 * PI } else { h })
}

/// Absolute wrapped difference between two headings, in [0, pi].
pub fn heading_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    if d > PI {
        2.0 * PI - d
    } else {
        d
    }
}

/// Score of one evaluated genome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub genome_index: u32,
    /// Fitness, m. Zero for aborted evaluations.
    pub fitness: f64,
    /// Final horizontal center-of-mass position, m.
    pub final_xy: [f64; 2],
    /// Movement heading, rad; `None` below the displacement threshold.
    pub heading: Option<f64>,
    /// Set when the simulation hit a non-finite state.
    pub aborted: bool,
}

/// Simulate and score one genome. Numerical instability is captured in the
/// `aborted` flag with zero fitness rather than propagated.
pub fn evaluate(genome: &DesignGenome, sp: &SimParams, mp: &MaterialParams) -> EvalResult {
    match simulate(genome, sp, mp) {
        Ok(traj) => {
            let f = traj.final_com();
            EvalResult {
                genome_index: genome.index(),
                fitness: fitness(&traj),
                final_xy: [f.x, f.y],
                heading: heading(&traj),
                aborted: false,
            }
        }
        Err(_) => EvalResult {
            genome_index: genome.index(),
            fitness: 0.0,
            final_xy: [0.0, 0.0],
            heading: None,
            aborted: true,
        },
    }
}

/// The `k` highest-fitness results, fittest first; ties broken by ascending
/// genome index.
pub fn top_k(results: &[EvalResult], k: usize) -> Vec<EvalResult> {
    let mut ranked: Vec<EvalResult> = results.to_vec();
    ranked.sort_by(|a, b| {
        b.fitness.total_cmp(&a.fitness).then_with(|| a.genome_index.cmp(&b.genome_index))
    });
    ranked.truncate(k);
    ranked
}

/// Discrepancy between a simulated and a recorded trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapMetrics {
    /// Simulated over real fitness; `None` when either is below the
    /// displacement threshold.
    pub displacement_ratio: Option<f64>,
    /// Wrapped angular difference of the two headings, rad in [0, pi];
    /// `None` when either heading is undefined.
    pub heading_gap: Option<f64>,
    /// Distance between the final horizontal positions after translating
    /// both trajectories to start at the origin, m.
    pub final_position_error: f64,
}

/// Gap computation rejected an empty trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapError {
    pub which: &'static str,
}

impl fmt::Display for GapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} trajectory has no samples", self.which)
    }
}

impl core::error::Error for GapError {}

/// Compare a simulated trajectory against a recorded one.
pub fn reality_gap(sim: &Trajectory, real: &Trajectory) -> Result<GapMetrics, GapError> {
    if sim.is_empty() {
        return Err(GapError { which: "simulated" });
    }
    if real.is_empty() {
        return Err(GapError { which: "real" });
    }
    let fit_sim = fitness(sim);
    let fit_real = fitness(real);
    let displacement_ratio = (fit_sim >= HEADING_EPSILON && fit_real >= HEADING_EPSILON)
        .then(|| fit_sim / fit_real);
    let heading_gap = match (heading(sim), heading(real)) {
        (Some(a), Some(b)) => Some(self::heading_gap(a, b)),
        _ => None,
    };
    let error = sim.displacement() - real.displacement();
    Ok(GapMetrics {
        displacement_ratio,
        heading_gap,
        final_position_error: error.horizontal_norm(),
    })
}

/// Fitness values arranged on the 81x81 nested projection grid.
#[derive(Clone, Debug)]
pub struct HeatmapGrid {
    /// Row-major cells, row 0 first (the bottom, all-empty row).
    cells: Vec<f64>,
    max_fitness: f64,
}

/// Grid assembly rejected a result set that does not cover the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeatmapError {
    WrongCount(usize),
    DuplicateIndex(u32),
    IndexOutOfRange(u32),
}

impl fmt::Display for HeatmapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeatmapError::WrongCount(n) => {
                write!(f, "expected {} results, got {n}", crate::genome::DESIGN_COUNT)
            }
            HeatmapError::DuplicateIndex(i) => write!(f, "duplicate genome index {i}"),
            HeatmapError::IndexOutOfRange(i) => write!(f, "genome index {i} out of range"),
        }
    }
}

impl core::error::Error for HeatmapError {}

impl HeatmapGrid {
    /// Arrange one result per design onto the grid. Requires exactly 6561
    /// results with distinct genome indices.
    pub fn from_results(results: &[EvalResult]) -> Result<HeatmapGrid, HeatmapError> {
        if results.len() != crate::genome::DESIGN_COUNT as usize {
            return Err(HeatmapError::WrongCount(results.len()));
        }
        let mut cells = alloc::vec![f64::NAN; HEATMAP_SIDE * HEATMAP_SIDE];
        let mut max_fitness = 0.0f64;
        for r in results {
            let genome = DesignGenome::from_index(r.genome_index)
                .map_err(|_| HeatmapError::IndexOutOfRange(r.genome_index))?;
            let cell = genome.heatmap_cell();
            let slot = cell.row as usize * HEATMAP_SIDE + cell.col as usize;
            if !cells[slot].is_nan() {
                return Err(HeatmapError::DuplicateIndex(r.genome_index));
            }
            cells[slot] = r.fitness;
            max_fitness = max_fitness.max(r.fitness);
        }
        Ok(HeatmapGrid { cells, max_fitness })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row * HEATMAP_SIDE + col]
    }

    /// Largest fitness in the sweep; the grayscale normalization.
    pub fn max_fitness(&self) -> f64 {
        self.max_fitness
    }

    /// 8-bit gray level: 255 scaled by fitness over the sweep maximum.
    /// An all-zero sweep renders black everywhere.
    pub fn gray(&self, row: usize, col: usize) -> u8 {
        if self.max_fitness <= 0.0 {
            return 0;
        }
        (255.0 * self.get(row, col) / self.max_fitness).round() as u8
    }
}
