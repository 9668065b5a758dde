//! Lattice construction: genomes to node/beam assemblies.

use alloc::vec;
use alloc::vec::Vec;

use crate::genome::{DesignGenome, LatticeCoord, VoxelKind};
use crate::math::{Quat, Vec3};

use super::engine::substep_count;
use super::params::{MaterialParams, SimParams};
use super::state::{Beam, BeamAxis, BeamStiffness, SimState, VoxelNode};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// Build the standard lattice: one node per non-empty voxel.
///
/// Nodes start at rest on top of the ground plane (bottom faces touching
/// z = 0), with one permanent beam per face-adjacent pair of material
/// voxels.
pub fn build_lattice(genome: &DesignGenome, sp: &SimParams, mp: &MaterialParams) -> SimState {
    build(genome, sp, mp, 1)
}

/// Build the refined lattice: each non-empty voxel becomes a 3x3x3 block of
/// subvoxels at a third of the edge length, with blocks fused across shared
/// faces. Actuation drives only the six beams joining each active block's
/// centermost subvoxel to its face-center subvoxels.
pub fn refine_highres(genome: &DesignGenome, sp: &SimParams, mp: &MaterialParams) -> SimState {
    build(genome, sp, mp, 3)
}

fn build(genome: &DesignGenome, sp: &SimParams, mp: &MaterialParams, factor: usize) -> SimState {
    let side = 2 * factor;
    let spacing = sp.voxel_edge / factor as f64;
    let half = spacing * 0.5;
    let mass = mp.density * spacing * spacing * spacing;
    // Solid cube about its center.
    let inertia = mass * spacing * spacing / 6.0;

    let linear = |x: usize, y: usize, z: usize| x + side * (y + side * z);

    let mut occupancy: Vec<Option<u32>> = vec![None; side * side * side];
    let mut nodes: Vec<VoxelNode> = Vec::new();
    for z in 0..side {
        for y in 0..side {
            for x in 0..side {
                let coarse = LatticeCoord::new((x / factor) as u8, (y / factor) as u8, (z / factor) as u8);
                let kind = genome.site(coarse);
                if !kind.is_material() {
                    continue;
                }
                occupancy[linear(x, y, z)] = Some(nodes.len() as u32);
                nodes.push(VoxelNode {
                    cell: [x as u8, y as u8, z as u8],
                    kind,
                    position: Vec3::new(x as f64 * spacing, y as f64 * spacing, z as f64 * spacing + half),
                    velocity: Vec3::ZERO,
                    orientation: Quat::IDENTITY,
                    angular_velocity: Vec3::ZERO,
                    mass,
                });
            }
        }
    }

    let n = nodes.len();
    let mut beams: Vec<Beam> = Vec::new();
    let mut bonded = vec![false; n * n];
    let mut surface = vec![false; n];
    let activity = |kind: VoxelKind| if kind == VoxelKind::Active { 1.0 } else { 0.0 };

    for (idx, node) in nodes.iter().enumerate() {
        let [x, y, z] = node.cell.map(usize::from);
        let neighbors = [
            (x + 1 < side).then(|| (linear(x + 1, y, z), BeamAxis::X)),
            (y + 1 < side).then(|| (linear(x, y + 1, z), BeamAxis::Y)),
            (z + 1 < side).then(|| (linear(x, y, z + 1), BeamAxis::Z)),
        ];
        for (cell, axis) in neighbors.into_iter().flatten() {
            let Some(other) = occupancy[cell] else { continue };
            let weight = if factor == 1 {
                0.5 * (activity(node.kind) + activity(nodes[other as usize].kind))
            } else {
                0.0
            };
            beams.push(Beam {
                node_a: idx as u32,
                node_b: other,
                rest_length: spacing,
                axis,
                zeta: mp.lattice_zeta,
                actuation_weight: weight,
                temporary: false,
            });
            bonded[idx * n + other as usize] = true;
            bonded[other as usize * n + idx] = true;
        }

        // A node is on the body surface when any face neighbor is missing.
        let mut exposed = false;
        for (dx, dy, dz) in [(1i32, 0i32, 0i32), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)] {
            let (nx, ny, nz) = (x as i32 + dx, y as i32 + dy, z as i32 + dz);
            let inside = (0..side as i32).contains(&nx)
                && (0..side as i32).contains(&ny)
                && (0..side as i32).contains(&nz);
            if !inside || occupancy[linear(nx as usize, ny as usize, nz as usize)].is_none() {
                exposed = true;
                break;
            }
        }
        surface[idx] = exposed;
    }

    // High-res actuation: each active voxel expands only the six beams from
    // its centermost subvoxel to the face-center subvoxels.
    if factor == 3 {
        for coarse in LatticeCoord::all() {
            if genome.site(coarse) != VoxelKind::Active {
                continue;
            }
            let center = [
                3 * coarse.x as usize + 1,
                3 * coarse.y as usize + 1,
                3 * coarse.z as usize + 1,
            ];
            let center_idx = occupancy[linear(center[0], center[1], center[2])].unwrap();
            for (dx, dy, dz) in [(1i32, 0i32, 0i32), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)] {
                let face = [
                    (center[0] as i32 + dx) as usize,
                    (center[1] as i32 + dy) as usize,
                    (center[2] as i32 + dz) as usize,
                ];
                let face_idx = occupancy[linear(face[0], face[1], face[2])].unwrap();
                let (lo, hi) = if center_idx < face_idx {
                    (center_idx, face_idx)
                } else {
                    (face_idx, center_idx)
                };
                let beam = beams
                    .iter_mut()
                    .find(|b| b.node_a == lo && b.node_b == hi)
                    .expect("center-to-face beam exists inside a full block");
                beam.actuation_weight = 1.0;
            }
        }
    }

    let surface_nodes: Vec<u32> =
        (0..n as u32).filter(|&i| surface[i as usize]).collect();
    let mut collision_pool = Vec::new();
    for (i, &a) in surface_nodes.iter().enumerate() {
        for &b in &surface_nodes[i + 1..] {
            if !bonded[a as usize * n + b as usize] {
                collision_pool.push((a, b));
            }
        }
    }

    let lattice_stiffness = BeamStiffness::derive(mp, spacing, spacing, mass, inertia, mp.lattice_zeta);
    let collision_stiffness =
        BeamStiffness::derive(mp, spacing, spacing, mass, inertia, mp.collision_zeta);
    let contact_k = mp.contact_stiffness_for(spacing);
    let contact_c = 2.0 * (contact_k * mass).sqrt();
    let substeps = substep_count(
        sp,
        &lattice_stiffness,
        &collision_stiffness,
        contact_k,
        contact_c,
        mass,
        inertia,
        n,
        !beams.is_empty(),
    );

    SimState {
        genome: *genome,
        highres: factor != 1,
        external_force: vec![Vec3::ZERO; n],
        scratch_force: vec![Vec3::ZERO; n],
        scratch_torque: vec![Vec3::ZERO; n],
        nodes,
        permanent_beams: beams,
        temporary_beams: Vec::new(),
        surface_nodes,
        clock: 0.0,
        step_index: 0,
        node_edge: spacing,
        node_inertia: inertia,
        lattice_stiffness,
        collision_stiffness,
        contact_k,
        contact_c,
        substeps,
        actuation_multiplier: 1.0,
        bonded,
        collision_pool,
        collision_candidates: Vec::new(),
        candidate_anchor: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> (SimParams, MaterialParams) {
        (SimParams::default(), MaterialParams::default())
    }

    /// Oracle: count face-adjacent pairs of material cells by brute force.
    fn face_adjacent_pairs(cells: &[[u8; 3]]) -> usize {
        let mut count = 0;
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                let d: u32 = a
                    .iter()
                    .zip(b)
                    .map(|(p, q)| (*p as i32 - *q as i32).unsigned_abs())
                    .sum();
                if d == 1 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn full_cube_has_eight_nodes_and_twelve_beams() {
        let (sp, mp) = defaults();
        let g = DesignGenome::uniform(VoxelKind::Passive);
        let state = build_lattice(&g, &sp, &mp);
        assert_eq!(state.node_count(), 8);
        let cells: Vec<[u8; 3]> = state.nodes.iter().map(|n| n.cell).collect();
        assert_eq!(face_adjacent_pairs(&cells), 12);
        assert_eq!(state.permanent_beams.len(), 12);
        // Every voxel of a 2x2x2 body is on the surface.
        assert_eq!(state.surface_nodes.len(), 8);
        // Passive body: nothing actuates.
        assert!(state.permanent_beams.iter().all(|b| b.actuation_weight == 0.0));
    }

    #[test]
    fn single_voxel_has_no_beams() {
        let (sp, mp) = defaults();
        let g = DesignGenome::parse("20000000").unwrap();
        let state = build_lattice(&g, &sp, &mp);
        assert_eq!(state.node_count(), 1);
        assert!(state.permanent_beams.is_empty());
        assert_eq!(state.nodes[0].position, Vec3::new(0.0, 0.0, 0.005));
        assert_eq!(state.nodes[0].mass, 1e-3);
    }

    #[test]
    fn empty_genome_builds_empty_state() {
        let (sp, mp) = defaults();
        let state = build_lattice(&DesignGenome::uniform(VoxelKind::Empty), &sp, &mp);
        assert!(state.is_empty());
        assert!(state.permanent_beams.is_empty());
        assert_eq!(state.com(), Vec3::ZERO);
    }

    #[test]
    fn mixed_beams_average_endpoint_activity() {
        let (sp, mp) = defaults();
        // Site 0 active, site 1 passive: one beam along x with weight 1/2.
        let g = DesignGenome::parse("21000000").unwrap();
        let state = build_lattice(&g, &sp, &mp);
        assert_eq!(state.permanent_beams.len(), 1);
        assert_eq!(state.permanent_beams[0].actuation_weight, 0.5);
        let g = DesignGenome::parse("22000000").unwrap();
        let state = build_lattice(&g, &sp, &mp);
        assert_eq!(state.permanent_beams[0].actuation_weight, 1.0);
    }

    #[test]
    fn bottom_layer_rests_on_the_plane() {
        let (sp, mp) = defaults();
        let state = build_lattice(&DesignGenome::uniform(VoxelKind::Active), &sp, &mp);
        for node in &state.nodes {
            let expect_z = node.cell[2] as f64 * sp.voxel_edge + sp.voxel_edge / 2.0;
            assert_eq!(node.position.z, expect_z);
        }
    }

    #[test]
    fn highres_expands_each_voxel_to_27_subvoxels() {
        let (sp, mp) = defaults();
        let g = DesignGenome::uniform(VoxelKind::Passive);
        let state = refine_highres(&g, &sp, &mp);
        assert_eq!(state.node_count(), 216);
        assert_eq!(state.node_edge(), sp.voxel_edge / 3.0);
        assert!((state.nodes[0].mass - 1e-3 / 27.0).abs() < 1e-18);

        // Oracle: beam count equals face-adjacent pairs of the fine lattice.
        let cells: Vec<[u8; 3]> = state.nodes.iter().map(|n| n.cell).collect();
        assert_eq!(state.permanent_beams.len(), face_adjacent_pairs(&cells));
        // 54 intra-block beams per block plus 9 per shared face.
        assert_eq!(state.permanent_beams.len(), 8 * 54 + 12 * 9);
    }

    #[test]
    fn highres_active_block_actuates_exactly_six_center_beams() {
        let (sp, mp) = defaults();
        let g = DesignGenome::parse("20000000").unwrap();
        let state = refine_highres(&g, &sp, &mp);
        assert_eq!(state.node_count(), 27);
        let actuated: Vec<&Beam> =
            state.permanent_beams.iter().filter(|b| b.actuation_weight > 0.0).collect();
        assert_eq!(actuated.len(), 6);
        for beam in actuated {
            let ends = [
                state.nodes[beam.node_a as usize].cell,
                state.nodes[beam.node_b as usize].cell,
            ];
            assert!(ends.contains(&[1, 1, 1]), "actuated beam must touch the block center");
        }

        // A passive voxel actuates nothing.
        let g = DesignGenome::parse("10000000").unwrap();
        let state = refine_highres(&g, &sp, &mp);
        assert!(state.permanent_beams.iter().all(|b| b.actuation_weight == 0.0));
    }

    #[test]
    fn highres_interior_subvoxels_are_not_surface() {
        let (sp, mp) = defaults();
        let g = DesignGenome::uniform(VoxelKind::Passive);
        let state = refine_highres(&g, &sp, &mp);
        // The fine body is a 6x6x6 cube; interior 4x4x4 nodes are buried.
        assert_eq!(state.surface_nodes.len(), 216 - 64);
        for &i in &state.surface_nodes {
            let cell = state.nodes[i as usize].cell;
            assert!(cell.iter().any(|&c| c == 0 || c == 5));
        }
    }

    #[test]
    fn collision_pool_excludes_bonded_pairs() {
        let (sp, mp) = defaults();
        let g = DesignGenome::uniform(VoxelKind::Passive);
        let state = build_lattice(&g, &sp, &mp);
        // 8 choose 2 pairs minus the 12 bonded edges.
        assert_eq!(state.collision_pool.len(), 28 - 12);
        for &(a, b) in &state.collision_pool {
            assert!(!state.is_bonded(a, b));
        }
    }

    #[test]
    fn node_count_matches_material_count_for_sampled_genomes() {
        let (sp, mp) = defaults();
        for idx in [0u32, 1, 2, 40, 3280, 4000, 6560] {
            let g = DesignGenome::from_index(idx).unwrap();
            let state = build_lattice(&g, &sp, &mp);
            assert_eq!(state.node_count(), g.material_count());
            // In a body of at most 2x2x2 voxels every node is exposed.
            assert_eq!(state.surface_nodes.len(), g.material_count());
        }
    }
}
