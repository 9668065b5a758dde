//! Time integration: velocity-first (semi-implicit) Euler with automatic
//! substepping below the damped stability limit.

use alloc::vec::Vec;
use core::fmt;

use crate::genome::DesignGenome;
use crate::math::{Quat, Vec3};

use super::actuation::{actuation_volume, rest_length_multiplier};
use super::beam;
use super::collision;
use super::contact;
use super::lattice::{build_lattice, refine_highres};
use super::params::{MaterialParams, SimParams};
use super::state::{BeamStiffness, SimState};
use super::trajectory::{Trajectory, TrajectorySample};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use crate::math::FloatExt;

/// A simulation hit a non-finite position or velocity. Signals numerical
/// instability rather than silently corrupting sweep output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimAbort {
    pub genome: DesignGenome,
    pub highres: bool,
    /// Reported step at which the non-finite value appeared.
    pub step: u32,
}

impl fmt::Display for SimAbort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "non-finite state at step {} while simulating genome {}{}",
            self.step,
            self.genome,
            if self.highres { " (high-res)" } else { "" }
        )
    }
}

impl core::error::Error for SimAbort {}

/// Largest stable substep for one damped oscillation mode under
/// velocity-first Euler: the update stays bounded while
/// `dt^2 w^2 + 2 dt C <= 4` and `dt C <= 2`, with `w^2` the squared mode
/// rate and `C` the mass-normalized damping rate.
fn stable_dt(omega_sq: f64, c_rate: f64) -> f64 {
    let from_coupling = (-c_rate + (c_rate * c_rate + 4.0 * omega_sq).sqrt()) / omega_sq;
    let from_damping = 2.0 / c_rate;
    from_coupling.min(from_damping)
}

/// Substeps per reported timestep for a lattice with the given stiffness
/// sets and uniform node mass/inertia.
#[allow(clippy::too_many_arguments)]
pub(crate) fn substep_count(
    sp: &SimParams,
    lattice: &BeamStiffness,
    collision: &BeamStiffness,
    contact_k: f64,
    contact_c: f64,
    mass: f64,
    inertia: f64,
    node_count: usize,
    has_beams: bool,
) -> u32 {
    if node_count == 0 {
        return 1;
    }
    // Ground contact acts on a single node.
    let mut dt = stable_dt(contact_k / mass, contact_c / mass);

    if node_count > 1 {
        // Two-body modes: reduced mass m/2 and reduced inertia i/2.
        let m_red = mass * 0.5;
        let i_red = inertia * 0.5;
        if has_beams {
            let beam_modes = [
                (lattice.k_axial / m_red, lattice.c_axial / m_red),
                // Bending couples translation and rotation; with cube
                // inertia i = m L^2 / 6 the stiff eigenvalue is
                // 60 E I / (L^3 m), five times the transverse shear rate.
                (
                    5.0 * lattice.k_shear / mass,
                    (lattice.c_shear / m_red).max(lattice.c_bend / i_red),
                ),
                (lattice.k_torsion / i_red, lattice.c_torsion / i_red),
            ];
            for (omega_sq, c_rate) in beam_modes {
                dt = dt.min(stable_dt(omega_sq, c_rate));
            }
        }
        // Any non-bonded pair may pick up a temporary collision beam.
        dt = dt.min(stable_dt(collision.k_axial / m_red, collision.c_axial / m_red));
    }

    let limit = sp.stability_safety * dt;
    let count = (sp.timestep / limit).ceil();
    (count as u32).max(1)
}

/// Advance one reported timestep.
///
/// The step is internally divided into equal substeps no longer than the
/// stability limit. Each substep refreshes the actuated rest lengths from
/// the clock, rebuilds temporary collision beams, accumulates beam, gravity,
/// external, contact and collision forces, then integrates velocity-first.
/// Identical inputs produce bit-identical results on a fixed platform.
pub fn step(state: &mut SimState, sp: &SimParams, mp: &MaterialParams) -> Result<(), SimAbort> {
    if state.nodes.is_empty() {
        state.clock += sp.timestep;
        state.step_index += 1;
        return Ok(());
    }

    let substeps = state.substeps;
    let dt = sp.timestep / substeps as f64;
    let settle_time = sp.settle_time();
    let inv_inertia = 1.0 / state.node_inertia;
    let gravity = sp.gravity;
    let half_edge = state.node_edge * 0.5;
    let (contact_k, contact_c) = (state.contact_k, state.contact_c);

    for _ in 0..substeps {
        let since_settle = (state.clock - settle_time).max(0.0);
        state.actuation_multiplier = rest_length_multiplier(actuation_volume(since_settle, sp));

        collision::refresh_temporary_beams(state);

        let n = state.nodes.len();
        state.scratch_force[..n].fill(Vec3::ZERO);
        state.scratch_torque[..n].fill(Vec3::ZERO);
        // Split borrows: force passes read nodes, write scratch.
        {
            let SimState {
                nodes,
                permanent_beams,
                temporary_beams,
                scratch_force,
                scratch_torque,
                lattice_stiffness,
                collision_stiffness,
                actuation_multiplier,
                external_force,
                ..
            } = state;
            beam::accumulate(
                nodes,
                permanent_beams,
                lattice_stiffness,
                *actuation_multiplier,
                scratch_force,
                scratch_torque,
            );
            beam::accumulate(
                nodes,
                temporary_beams,
                collision_stiffness,
                *actuation_multiplier,
                scratch_force,
                scratch_torque,
            );
            for (i, node) in nodes.iter().enumerate() {
                scratch_force[i].z += node.mass * gravity;
                scratch_force[i] += external_force[i];
            }
            contact::accumulate(nodes, half_edge, contact_k, contact_c, mp, scratch_force);
        }

        for (i, node) in state.nodes.iter_mut().enumerate() {
            let inv_m = 1.0 / node.mass;
            node.velocity += state.scratch_force[i] * (inv_m * dt);
            node.position += node.velocity * dt;
            node.angular_velocity += state.scratch_torque[i] * (inv_inertia * dt);
            let w = node.angular_velocity;
            let dq = Quat::new(0.0, w.x, w.y, w.z) * node.orientation;
            node.orientation = Quat::new(
                node.orientation.w + 0.5 * dt * dq.w,
                node.orientation.x + 0.5 * dt * dq.x,
                node.orientation.y + 0.5 * dt * dq.y,
                node.orientation.z + 0.5 * dt * dq.z,
            )
            .normalized();
        }
        state.clock += dt;
    }

    state.step_index += 1;
    for node in &state.nodes {
        if !node.position.is_finite() || !node.velocity.is_finite() || !node.orientation.is_finite()
        {
            return Err(SimAbort {
                genome: state.genome,
                highres: state.highres,
                step: state.step_index,
            });
        }
    }
    Ok(())
}

/// Simulate a genome at standard resolution and record its trajectory.
pub fn simulate(
    genome: &DesignGenome,
    sp: &SimParams,
    mp: &MaterialParams,
) -> Result<Trajectory, SimAbort> {
    simulate_state(build_lattice(genome, sp, mp), sp, mp)
}

/// Simulate a genome with each voxel refined into 3x3x3 subvoxels.
pub fn simulate_highres(
    genome: &DesignGenome,
    sp: &SimParams,
    mp: &MaterialParams,
) -> Result<Trajectory, SimAbort> {
    simulate_state(refine_highres(genome, sp, mp), sp, mp)
}

/// Run a built state through the full schedule: settle under gravity, record
/// the initial center of mass, actuate for the remaining steps, sampling
/// every `sample_stride` steps plus the final step.
pub fn simulate_state(
    mut state: SimState,
    sp: &SimParams,
    mp: &MaterialParams,
) -> Result<Trajectory, SimAbort> {
    let time_of = |step_index: u32| step_index as f64 * sp.timestep;

    for _ in 0..sp.settle_steps {
        step(&mut state, sp, mp)?;
    }
    let initial_com = state.com();
    let mut samples = Vec::new();
    samples.push(TrajectorySample { t: time_of(sp.settle_steps), com: initial_com });

    for s in sp.settle_steps..sp.total_steps {
        step(&mut state, sp, mp)?;
        let done = s + 1;
        if (done - sp.settle_steps) % sp.sample_stride == 0 || done == sp.total_steps {
            samples.push(TrajectorySample { t: time_of(done), com: state.com() });
        }
    }

    Ok(Trajectory { samples, initial_com, sample_stride: sp.sample_stride })
}
