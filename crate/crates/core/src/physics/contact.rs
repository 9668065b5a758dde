//! Ground-plane penalty contact with stick-slip Coulomb friction.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::Vec3;

use super::params::MaterialParams;
use super::state::{SimState, VoxelNode};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// Contact force for every node given the already-accumulated applied
/// forces (`applied[i]` must hold all non-contact forces acting on node
/// `i`; its tangential part feeds the stiction budget).
///
/// A node is in contact when its bottom face penetrates the plane z = 0,
/// i.e. when its center is below half an edge length. The normal force is a
/// critically damped penalty; the tangential force is static friction (full
/// cancellation of the applied load up to mu_s N) below the stick speed
/// threshold and kinetic friction (mu_k N opposing the slide) above it.
pub fn ground_contact(state: &SimState, mp: &MaterialParams, applied: &[Vec3]) -> Vec<Vec3> {
    let mut out = vec![Vec3::ZERO; state.node_count()];
    for (i, node) in state.nodes.iter().enumerate() {
        out[i] = contact_force(
            node.position,
            node.velocity,
            applied[i],
            state.node_edge * 0.5,
            state.contact_k,
            state.contact_c,
            mp,
        );
    }
    out
}

pub(crate) fn accumulate(
    nodes: &[VoxelNode],
    half_edge: f64,
    k: f64,
    c: f64,
    mp: &MaterialParams,
    forces: &mut [Vec3],
) {
    for (i, node) in nodes.iter().enumerate() {
        forces[i] += contact_force(node.position, node.velocity, forces[i], half_edge, k, c, mp);
    }
}

fn contact_force(
    position: Vec3,
    velocity: Vec3,
    applied: Vec3,
    half_edge: f64,
    k: f64,
    c: f64,
    mp: &MaterialParams,
) -> Vec3 {
    let penetration = half_edge - position.z;
    if penetration <= 0.0 {
        return Vec3::ZERO;
    }
    // Penalty normal with vertical damping, never adhesive.
    let normal = (k * penetration - c * velocity.z).max(0.0);

    let tangential_velocity = Vec3::new(velocity.x, velocity.y, 0.0);
    let speed = tangential_velocity.norm();
    let friction = if speed < mp.stick_threshold {
        let load = Vec3::new(applied.x, applied.y, 0.0);
        let magnitude = load.norm();
        if magnitude <= mp.static_friction * normal {
            -load
        } else if let Some(direction) = load.normalized() {
            // Breakaway: kinetic friction opposing the applied load.
            direction * (-mp.kinetic_friction * normal)
        } else {
            Vec3::ZERO
        }
    } else {
        tangential_velocity * (-mp.kinetic_friction * normal / speed)
    };

    Vec3::new(friction.x, friction.y, normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::DesignGenome;
    use crate::physics::lattice::build_lattice;
    use crate::physics::params::SimParams;

    fn single_node_state() -> (SimState, MaterialParams) {
        let sp = SimParams::default();
        let mp = MaterialParams::default();
        (build_lattice(&DesignGenome::parse("10000000").unwrap(), &sp, &mp), mp)
    }

    #[test]
    fn node_above_plane_feels_nothing() {
        let (mut state, mp) = single_node_state();
        state.nodes[0].position.z = 0.02;
        let forces = ground_contact(&state, &mp, &[Vec3::ZERO]);
        assert_eq!(forces[0], Vec3::ZERO);
    }

    #[test]
    fn resting_penetration_balances_weight() {
        let (mut state, mp) = single_node_state();
        let weight = state.nodes[0].mass * 9.81;
        let penetration = weight / state.contact_k;
        state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
        let forces = ground_contact(&state, &mp, &[Vec3::new(0.0, 0.0, -weight)]);
        assert!((forces[0].z - weight).abs() <= 1e-12 * weight);
    }

    #[test]
    fn sliding_feels_kinetic_friction_exactly() {
        let (mut state, mp) = single_node_state();
        let penetration = 1e-7;
        state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
        state.nodes[0].velocity = Vec3::new(0.1, 0.0, 0.0);
        let forces = ground_contact(&state, &mp, &[Vec3::ZERO]);
        let normal = state.contact_k * penetration;
        let tangent = Vec3::new(forces[0].x, forces[0].y, 0.0);
        assert!((tangent.norm() - mp.kinetic_friction * normal).abs() <= 1e-9 * normal);
        assert!(forces[0].x < 0.0, "friction opposes the velocity");
        assert_eq!(forces[0].y, 0.0);
    }

    #[test]
    fn small_lateral_load_is_cancelled_by_stiction() {
        let (mut state, mp) = single_node_state();
        let penetration = 1e-7;
        state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
        let normal = state.contact_k * penetration;
        let load = Vec3::new(0.4 * mp.static_friction * normal, 0.0, 0.0);
        let forces = ground_contact(&state, &mp, &[load]);
        assert_eq!(forces[0].x, -load.x);
        assert_eq!(forces[0].y, 0.0);
    }

    #[test]
    fn breakaway_switches_to_kinetic() {
        let (mut state, mp) = single_node_state();
        let penetration = 1e-7;
        state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
        let normal = state.contact_k * penetration;
        let load = Vec3::new(1.5 * mp.static_friction * normal, 0.0, 0.0);
        let forces = ground_contact(&state, &mp, &[load]);
        assert!((forces[0].x + mp.kinetic_friction * normal).abs() <= 1e-12 * normal);
    }

    #[test]
    fn fast_downward_motion_increases_normal_but_never_pulls() {
        let (mut state, mp) = single_node_state();
        let penetration = 1e-7;
        state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
        state.nodes[0].velocity.z = -0.01;
        let pressing = ground_contact(&state, &mp, &[Vec3::ZERO]);
        assert!(pressing[0].z > state.contact_k * penetration);

        // Rapid separation would make the damped normal negative; clamp.
        state.nodes[0].velocity.z = 1.0;
        let separating = ground_contact(&state, &mp, &[Vec3::ZERO]);
        assert_eq!(separating[0].z, 0.0);
    }
}
