//! Beam elastic and damping forces.
//!
//! Each beam is evaluated in a co-rotational frame whose x axis follows the
//! chord between its endpoints, so the lateral displacement degrees of
//! freedom vanish and the element reduces to axial stretch, endpoint
//! rotations (bending and torsion), and their damped rates. The bending
//! terms are the standard two-node beam stiffness relations.

use crate::math::{Quat, Vec3};

use super::state::{Beam, BeamStiffness, ForceAccumulators, SimState, VoxelNode};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// Forces and torques exerted by all current beams (permanent and
/// temporary). Equal and opposite per beam, so the per-node sums cancel.
pub fn beam_forces(state: &SimState) -> ForceAccumulators {
    let mut acc = ForceAccumulators::zeroed(state.node_count());
    accumulate(
        &state.nodes,
        &state.permanent_beams,
        &state.lattice_stiffness,
        state.actuation_multiplier,
        &mut acc.force,
        &mut acc.torque,
    );
    accumulate(
        &state.nodes,
        &state.temporary_beams,
        &state.collision_stiffness,
        state.actuation_multiplier,
        &mut acc.force,
        &mut acc.torque,
    );
    acc
}

pub(crate) fn accumulate(
    nodes: &[VoxelNode],
    beams: &[Beam],
    stiff: &BeamStiffness,
    multiplier: f64,
    forces: &mut [Vec3],
    torques: &mut [Vec3],
) {
    for beam in beams {
        apply(nodes, beam, stiff, multiplier, forces, torques);
    }
}

fn apply(
    nodes: &[VoxelNode],
    beam: &Beam,
    stiff: &BeamStiffness,
    multiplier: f64,
    forces: &mut [Vec3],
    torques: &mut [Vec3],
) {
    let a = beam.node_a as usize;
    let b = beam.node_b as usize;
    let na = &nodes[a];
    let nb = &nodes[b];

    let raw = nb.position - na.position;
    let len = raw.norm();
    if len < 1e-12 {
        // Coincident endpoints give no direction to push along.
        return;
    }
    let x_axis = raw * (1.0 / len);
    let v_rel = nb.velocity - na.velocity;
    let u_dot = v_rel.dot(x_axis);

    if beam.temporary {
        // Collision response: axial spring-damper, repulsive only.
        let f = stiff.k_axial * (len - beam.rest_length) + stiff.c_axial * u_dot;
        let f = f.min(0.0);
        forces[a] += x_axis * f;
        forces[b] -= x_axis * f;
        return;
    }

    // Axial stretch against the actuated rest length. Positive f is tension
    // and pulls the endpoints together.
    let rest = beam.actuated_rest_length(multiplier);
    let f_axial = stiff.k_axial * (len - rest) + stiff.c_axial * u_dot;
    forces[a] += x_axis * f_axial;
    forces[b] -= x_axis * f_axial;

    // Transverse relative velocity damping (shear mode).
    let v_t = v_rel - x_axis * u_dot;
    forces[a] += v_t * stiff.c_shear;
    forces[b] -= v_t * stiff.c_shear;

    // Endpoint rotations relative to the chord frame.
    let q1 = na.orientation * beam.axis.frame_rotation();
    let q2 = nb.orientation * beam.axis.frame_rotation();
    let y_seed = q1.rotate(Vec3::Y);
    let mut y_axis = y_seed - x_axis * y_seed.dot(x_axis);
    if y_axis.norm_squared() < 1e-6 {
        let alt = q1.rotate(Vec3::Z);
        y_axis = alt - x_axis * alt.dot(x_axis);
    }
    let y_axis = match y_axis.normalized() {
        Some(v) => v,
        None => return, // both seed axes parallel to the chord; skip
    };
    let z_axis = x_axis.cross(y_axis);
    let frame_conj = Quat::from_basis(x_axis, y_axis, z_axis).conjugate();
    let theta1 = (frame_conj * q1).rotation_vector();
    let theta2 = (frame_conj * q2).rotation_vector();

    // Bending in the x-y plane (rotations about z).
    let sum_z = theta1.z + theta2.z;
    let lateral_y = stiff.f_lateral * sum_z;
    forces[a] -= y_axis * lateral_y;
    forces[b] += y_axis * lateral_y;
    torques[a] += z_axis * (-stiff.m_bend * (4.0 * theta1.z + 2.0 * theta2.z));
    torques[b] += z_axis * (-stiff.m_bend * (2.0 * theta1.z + 4.0 * theta2.z));

    // Bending in the x-z plane (rotations about y); coupling sign flips.
    let sum_y = theta1.y + theta2.y;
    let lateral_z = stiff.f_lateral * sum_y;
    forces[a] += z_axis * lateral_z;
    forces[b] -= z_axis * lateral_z;
    torques[a] += y_axis * (-stiff.m_bend * (4.0 * theta1.y + 2.0 * theta2.y));
    torques[b] += y_axis * (-stiff.m_bend * (2.0 * theta1.y + 4.0 * theta2.y));

    // Torsion with twist-rate damping.
    let w_rel = nb.angular_velocity - na.angular_velocity;
    let twist = stiff.k_torsion * (theta2.x - theta1.x) + stiff.c_torsion * w_rel.dot(x_axis);
    torques[a] += x_axis * twist;
    torques[b] -= x_axis * twist;

    // Bending-rate damping on the transverse relative angular velocity.
    let w_t = w_rel - x_axis * w_rel.dot(x_axis);
    torques[a] += w_t * stiff.c_bend;
    torques[b] -= w_t * stiff.c_bend;
}
