//! Soft voxel-robot simulation and design-space search primitives.
//!
//! The crate covers three layers:
//!
//! * [`genome`] — the ternary 2x2x2 design space: encoding, enumeration,
//!   horizontal symmetries, and the nested 81x81 heatmap projection.
//! * [`physics`] — a deterministic mass-beam lattice simulator: damped
//!   beams between face-adjacent voxels, ground contact with stick-slip
//!   Coulomb friction, self-collision beams, sinusoidal volumetric
//!   actuation, and velocity-first integration with automatic substepping.
//! * [`eval`] — trajectory scoring (net planar displacement), heading and
//!   sim-to-real gap metrics, ranking, and heatmap assembly.
//!
//! Everything here is pure computation over owned state; IO, file formats
//! and the parallel sweep harness live in the companion CLI crate. The
//! crate builds without `std` (with `alloc`) when the `libm` feature
//! replaces the standard float intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod math;

pub mod eval;
pub mod genome;
pub mod physics;

pub use eval::{
    evaluate, fitness, heading, heading_gap, reality_gap, top_k, EvalResult, GapMetrics,
    HeatmapGrid, HEADING_EPSILON,
};
pub use genome::{
    enumerate_designs, DesignGenome, GenomeError, HeatmapCell, LatticeCoord, VoxelKind,
    DESIGN_COUNT, HEATMAP_SIDE, SITE_COUNT,
};
pub use math::{Quat, Vec3};
pub use physics::{
    actuation_volume, build_lattice, refine_highres, rest_length_multiplier, simulate,
    simulate_highres, simulate_state, step, MaterialParams, SimAbort, SimParams, SimState,
    Trajectory, TrajectorySample,
};
