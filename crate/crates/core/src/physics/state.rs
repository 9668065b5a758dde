//! Simulation state: point-mass voxel nodes joined by damped beams.

use alloc::vec::Vec;

use crate::genome::{DesignGenome, VoxelKind};
use crate::math::{Quat, Vec3};

use super::params::MaterialParams;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// One voxel (or subvoxel) represented as an oriented point mass.
#[derive(Clone, Copy, Debug)]
pub struct VoxelNode {
    /// Cell coordinate on the build lattice (0..2 per axis, or 0..6 in
    /// high-resolution mode).
    pub cell: [u8; 3],
    /// Material kind; never `Empty`.
    pub kind: VoxelKind,
    pub position: Vec3,
    pub velocity: Vec3,
    pub orientation: Quat,
    pub angular_velocity: Vec3,
    /// Node mass, kg: density times edge cubed.
    pub mass: f64,
}

/// Lattice direction a beam was built along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeamAxis {
    X,
    Y,
    Z,
}

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

impl BeamAxis {
    /// Rotation taking the beam-local +x axis onto this lattice direction.
    pub fn frame_rotation(self) -> Quat {
        match self {
            BeamAxis::X => Quat::IDENTITY,
            // +90 degrees about z maps +x to +y.
            BeamAxis::Y => Quat::new(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2),
            // -90 degrees about y maps +x to +z.
            BeamAxis::Z => Quat::new(FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0),
        }
    }

    pub fn unit(self) -> Vec3 {
        match self {
            BeamAxis::X => Vec3::X,
            BeamAxis::Y => Vec3::Y,
            BeamAxis::Z => Vec3::Z,
        }
    }
}

/// Damped elastic beam between two nodes.
#[derive(Clone, Copy, Debug)]
pub struct Beam {
    pub node_a: u32,
    pub node_b: u32,
    /// Unactuated rest length, m.
    pub rest_length: f64,
    pub axis: BeamAxis,
    /// Damping ratio carried by this beam.
    pub zeta: f64,
    /// Fraction of the actuation rest-length change this beam receives:
    /// 1 for active-active pairs, 1/2 for mixed pairs, 0 for passive pairs.
    pub actuation_weight: f64,
    /// Collision beams are temporary, axial-only and repulsive-only.
    pub temporary: bool,
}

impl Beam {
    /// Rest length under the given actuation length multiplier.
    pub fn actuated_rest_length(&self, multiplier: f64) -> f64 {
        self.rest_length * (1.0 + self.actuation_weight * (multiplier - 1.0))
    }
}

/// Precomputed stiffness and damping coefficients shared by the beams of one
/// lattice. Cross-section A = L^2, second moment I = L^4/12, torsion
/// constant J = L^4/6, G = E/(2(1+nu)). Damping uses c = zeta 2 sqrt(k m)
/// per mode; node masses and inertias are uniform within a lattice.
#[derive(Clone, Copy, Debug)]
pub struct BeamStiffness {
    /// Damping ratio the coefficients were derived for.
    pub zeta: f64,
    /// E A / L, N/m.
    pub k_axial: f64,
    /// 12 E I / L^3, N/m (transverse).
    pub k_shear: f64,
    /// 6 E I / L^2, N/rad (bend force coupling).
    pub f_lateral: f64,
    /// E I / L, N m/rad (bend moment scale).
    pub m_bend: f64,
    /// G J / L, N m/rad.
    pub k_torsion: f64,
    pub c_axial: f64,
    pub c_shear: f64,
    pub c_bend: f64,
    pub c_torsion: f64,
}

impl BeamStiffness {
    pub fn derive(
        mp: &MaterialParams,
        edge: f64,
        length: f64,
        mass: f64,
        inertia: f64,
        zeta: f64,
    ) -> BeamStiffness {
        let e = mp.youngs_modulus;
        let g = mp.shear_modulus();
        let area = edge * edge;
        let second_moment = edge * edge * edge * edge / 12.0;
        let torsion_const = edge * edge * edge * edge / 6.0;
        let k_axial = e * area / length;
        let k_shear = 12.0 * e * second_moment / (length * length * length);
        let f_lateral = 6.0 * e * second_moment / (length * length);
        let m_bend = e * second_moment / length;
        let k_torsion = g * torsion_const / length;
        BeamStiffness {
            zeta,
            k_axial,
            k_shear,
            f_lateral,
            m_bend,
            k_torsion,
            c_axial: zeta * 2.0 * (k_axial * mass).sqrt(),
            c_shear: zeta * 2.0 * (k_shear * mass).sqrt(),
            c_bend: zeta * 2.0 * (4.0 * m_bend * inertia).sqrt(),
            c_torsion: zeta * 2.0 * (k_torsion * inertia).sqrt(),
        }
    }
}

/// Per-node force and torque accumulators returned by the force operations.
#[derive(Clone, Debug, Default)]
pub struct ForceAccumulators {
    pub force: Vec<Vec3>,
    pub torque: Vec<Vec3>,
}

impl ForceAccumulators {
    pub fn zeroed(n: usize) -> ForceAccumulators {
        ForceAccumulators { force: alloc::vec![Vec3::ZERO; n], torque: alloc::vec![Vec3::ZERO; n] }
    }
}

/// Full state of one simulated design.
#[derive(Clone, Debug)]
pub struct SimState {
    pub genome: DesignGenome,
    pub highres: bool,
    pub nodes: Vec<VoxelNode>,
    pub permanent_beams: Vec<Beam>,
    pub temporary_beams: Vec<Beam>,
    /// Indices of nodes on the outer surface of the body (a lattice face
    /// neighbor is missing), eligible for self-collision.
    pub surface_nodes: Vec<u32>,
    /// Simulated time, s.
    pub clock: f64,
    /// Constant external force per node, N. Zero unless a caller injects
    /// loads (used by friction characterization).
    pub external_force: Vec<Vec3>,

    pub(crate) step_index: u32,
    /// Edge length / lattice spacing of one node's cube, m.
    pub(crate) node_edge: f64,
    pub(crate) node_inertia: f64,
    pub(crate) lattice_stiffness: BeamStiffness,
    pub(crate) collision_stiffness: BeamStiffness,
    pub(crate) contact_k: f64,
    pub(crate) contact_c: f64,
    pub(crate) substeps: u32,
    /// Actuation rest-length multiplier at the current clock.
    pub(crate) actuation_multiplier: f64,
    /// Row-major node adjacency of the permanent beam set.
    pub(crate) bonded: Vec<bool>,
    /// All non-bonded surface node pairs; source pool for collision checks.
    pub(crate) collision_pool: Vec<(u32, u32)>,
    /// Pool pairs currently within the broad-phase radius.
    pub(crate) collision_candidates: Vec<(u32, u32)>,
    /// Node positions when the candidate list was last rebuilt; empty until
    /// the first refresh.
    pub(crate) candidate_anchor: Vec<Vec3>,
    pub(crate) scratch_force: Vec<Vec3>,
    pub(crate) scratch_torque: Vec<Vec3>,
}

impl SimState {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Lattice spacing (node cube edge), m.
    pub fn node_edge(&self) -> f64 {
        self.node_edge
    }

    /// Internal substeps taken per reported timestep.
    pub fn substeps(&self) -> u32 {
        self.substeps
    }

    /// Reported steps taken so far.
    pub fn step_index(&self) -> u32 {
        self.step_index
    }

    /// Mass-weighted center of mass; the origin for an empty state.
    pub fn com(&self) -> Vec3 {
        if self.nodes.is_empty() {
            return Vec3::ZERO;
        }
        let mut sum = Vec3::ZERO;
        let mut mass = 0.0;
        for node in &self.nodes {
            sum += node.position * node.mass;
            mass += node.mass;
        }
        sum * (1.0 / mass)
    }

    /// Mass-weighted center-of-mass velocity; zero for an empty state.
    pub fn com_velocity(&self) -> Vec3 {
        if self.nodes.is_empty() {
            return Vec3::ZERO;
        }
        let mut sum = Vec3::ZERO;
        let mut mass = 0.0;
        for node in &self.nodes {
            sum += node.velocity * node.mass;
            mass += node.mass;
        }
        sum * (1.0 / mass)
    }

    /// Whether two nodes are joined by a permanent beam.
    pub fn is_bonded(&self, a: u32, b: u32) -> bool {
        self.bonded[a as usize * self.nodes.len() + b as usize]
    }
}
