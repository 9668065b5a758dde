//! Self-collision handling between surface nodes.
//!
//! Non-bonded surface node pairs closer than one lattice spacing are joined
//! by a temporary underdamped beam until they separate. A broad phase keeps
//! a candidate list of pairs within a margin radius, rebuilt only when some
//! node has drifted far enough to invalidate it.

use super::beam;
use super::state::{Beam, BeamAxis, ForceAccumulators, SimState};

/// Rebuild the temporary beam set from current positions and return the
/// forces those beams exert.
pub fn collision_update(state: &mut SimState) -> ForceAccumulators {
    refresh_temporary_beams(state);
    let mut acc = ForceAccumulators::zeroed(state.node_count());
    beam::accumulate(
        &state.nodes,
        &state.temporary_beams,
        &state.collision_stiffness,
        state.actuation_multiplier,
        &mut acc.force,
        &mut acc.torque,
    );
    acc
}

pub(crate) fn refresh_temporary_beams(state: &mut SimState) {
    let spacing = state.node_edge;
    let margin = 0.5 * spacing;

    let stale = if state.candidate_anchor.len() != state.nodes.len() {
        true
    } else {
        let limit_sq = (0.5 * margin) * (0.5 * margin);
        state
            .nodes
            .iter()
            .zip(&state.candidate_anchor)
            .any(|(node, anchor)| (node.position - *anchor).norm_squared() > limit_sq)
    };

    if stale {
        let reach_sq = (spacing + margin) * (spacing + margin);
        state.collision_candidates.clear();
        for &(a, b) in &state.collision_pool {
            let d = state.nodes[b as usize].position - state.nodes[a as usize].position;
            if d.norm_squared() < reach_sq {
                state.collision_candidates.push((a, b));
            }
        }
        state.candidate_anchor.clear();
        state.candidate_anchor.extend(state.nodes.iter().map(|n| n.position));
    }

    state.temporary_beams.clear();
    let threshold_sq = spacing * spacing;
    for &(a, b) in &state.collision_candidates {
        let d = state.nodes[b as usize].position - state.nodes[a as usize].position;
        if d.norm_squared() < threshold_sq {
            state.temporary_beams.push(Beam {
                node_a: a,
                node_b: b,
                rest_length: spacing,
                axis: BeamAxis::X,
                zeta: state.collision_stiffness.zeta,
                actuation_weight: 0.0,
                temporary: true,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::DesignGenome;
    use crate::math::Vec3;
    use crate::physics::lattice::build_lattice;
    use crate::physics::params::{MaterialParams, SimParams};

    /// Two disconnected voxels: sites 0 and 5 share no face.
    fn detached_pair() -> SimState {
        let g = DesignGenome::parse("10000100").unwrap();
        build_lattice(&g, &SimParams::default(), &MaterialParams::default())
    }

    #[test]
    fn distant_pair_gets_no_beam() {
        let mut state = detached_pair();
        let edge = state.node_edge();
        state.nodes[1].position = state.nodes[0].position + Vec3::new(1.2 * edge, 0.0, 0.0);
        collision_update(&mut state);
        assert!(state.temporary_beams.is_empty());
    }

    #[test]
    fn intersecting_pair_gets_a_repulsive_beam() {
        let mut state = detached_pair();
        let edge = state.node_edge();
        state.nodes[1].position = state.nodes[0].position + Vec3::new(0.8 * edge, 0.0, 0.0);
        let acc = collision_update(&mut state);
        assert_eq!(state.temporary_beams.len(), 1);
        assert!(state.temporary_beams[0].temporary);
        assert_eq!(state.temporary_beams[0].zeta, 0.8);
        assert!(acc.force[0].x < 0.0 && acc.force[1].x > 0.0, "pushes the pair apart");

        // Resolves once they separate again.
        state.nodes[1].position = state.nodes[0].position + Vec3::new(1.01 * edge, 0.0, 0.0);
        collision_update(&mut state);
        assert!(state.temporary_beams.is_empty());
    }

    #[test]
    fn bonded_neighbors_never_collide() {
        let g = DesignGenome::parse("11000000").unwrap();
        let mut state = build_lattice(&g, &SimParams::default(), &MaterialParams::default());
        let edge = state.node_edge();
        state.nodes[1].position = state.nodes[0].position + Vec3::new(0.5 * edge, 0.0, 0.0);
        collision_update(&mut state);
        assert!(state.temporary_beams.is_empty());
    }

    #[test]
    fn candidate_list_tracks_large_motion() {
        let mut state = detached_pair();
        let edge = state.node_edge();
        // Far apart: candidate list is empty after the first refresh.
        state.nodes[1].position = state.nodes[0].position + Vec3::new(5.0 * edge, 0.0, 0.0);
        collision_update(&mut state);
        assert!(state.collision_candidates.is_empty());

        // Teleporting back within reach must trigger a rebuild.
        state.nodes[1].position = state.nodes[0].position + Vec3::new(0.9 * edge, 0.0, 0.0);
        collision_update(&mut state);
        assert_eq!(state.temporary_beams.len(), 1);
    }
}
