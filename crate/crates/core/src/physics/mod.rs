//! Mass-beam lattice physics for soft voxel robots.

pub mod actuation;
pub mod beam;
pub mod collision;
pub mod contact;
pub mod engine;
pub mod lattice;
pub mod params;
pub mod state;
pub mod trajectory;

pub use actuation::{actuation_volume, rest_length_multiplier};
pub use beam::beam_forces;
pub use collision::collision_update;
pub use contact::ground_contact;
pub use engine::{simulate, simulate_highres, simulate_state, step, SimAbort};
pub use lattice::{build_lattice, refine_highres};
pub use params::{MaterialParams, ParamError, SimParams};
pub use state::{Beam, BeamAxis, BeamStiffness, ForceAccumulators, SimState, VoxelNode};
pub use trajectory::{Trajectory, TrajectorySample};
