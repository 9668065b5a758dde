//! Material and schedule parameters with their defaults.

use core::fmt;

/// A parameter constraint violation, naming the offending field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamError {
    pub key: &'static str,
    pub constraint: &'static str,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.constraint)
    }
}

impl core::error::Error for ParamError {}

fn check(ok: bool, key: &'static str, constraint: &'static str) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError { key, constraint })
    }
}

/// Elastic, frictional and damping properties of the voxel material.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialParams {
    /// Young's modulus, Pa.
    pub youngs_modulus: f64,
    /// Poisson's ratio, dimensionless, in [0, 0.5).
    pub poisson_ratio: f64,
    /// Material density, kg/m^3; node mass is density times edge cubed.
    pub density: f64,
    /// Coulomb static friction coefficient against the ground plane.
    pub static_friction: f64,
    /// Coulomb kinetic friction coefficient against the ground plane.
    pub kinetic_friction: f64,
    /// Damping ratio of the permanent lattice beams.
    pub lattice_zeta: f64,
    /// Damping ratio of temporary collision beams.
    pub collision_zeta: f64,
    /// Ground penalty stiffness, N/m. `None` derives it from the lattice
    /// axial stiffness (E times node edge).
    pub contact_stiffness: Option<f64>,
    /// Tangential speed below which a contact is treated as sticking, m/s.
    pub stick_threshold: f64,
}

impl Default for MaterialParams {
    fn default() -> MaterialParams {
        MaterialParams {
            youngs_modulus: 1e7,
            poisson_ratio: 0.35,
            density: 1000.0,
            static_friction: 1.0,
            kinetic_friction: 0.5,
            lattice_zeta: 1.0,
            collision_zeta: 0.8,
            contact_stiffness: None,
            stick_threshold: 1e-5,
        }
    }
}

impl MaterialParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        check(self.youngs_modulus > 0.0, "youngs_modulus", "must be > 0")?;
        check(
            (0.0..0.5).contains(&self.poisson_ratio),
            "poisson_ratio",
            "must be in [0, 0.5)",
        )?;
        check(self.density > 0.0, "density", "must be > 0")?;
        check(self.kinetic_friction >= 0.0, "kinetic_friction", "must be >= 0")?;
        check(
            self.static_friction >= self.kinetic_friction,
            "static_friction",
            "must be >= kinetic_friction",
        )?;
        check(
            self.lattice_zeta > 0.0 && self.lattice_zeta <= 2.0,
            "lattice_zeta",
            "must be in (0, 2]",
        )?;
        check(
            self.collision_zeta > 0.0 && self.collision_zeta <= 2.0,
            "collision_zeta",
            "must be in (0, 2]",
        )?;
        if let Some(k) = self.contact_stiffness {
            check(k > 0.0, "contact_stiffness", "must be > 0 when set")?;
        }
        check(self.stick_threshold > 0.0, "stick_threshold", "must be > 0")?;
        Ok(())
    }

    /// Shear modulus G = E / (2 (1 + nu)).
    pub fn shear_modulus(&self) -> f64 {
        self.youngs_modulus / (2.0 * (1.0 + self.poisson_ratio))
    }

    /// Ground penalty stiffness for nodes of the given edge length.
    pub fn contact_stiffness_for(&self, edge: f64) -> f64 {
        // Default matches the axial beam stiffness E A / L with A = L^2.
        self.contact_stiffness.unwrap_or(self.youngs_modulus * edge)
    }
}

/// Simulation schedule and actuation parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimParams {
    /// Voxel edge length, m.
    pub voxel_edge: f64,
    /// Reported integration timestep, s. Internally subdivided as needed.
    pub timestep: f64,
    /// Total number of reported timesteps per evaluation.
    pub total_steps: u32,
    /// Leading gravity-only steps before actuation starts.
    pub settle_steps: u32,
    /// Actuation frequency, Hz.
    pub actuation_frequency: f64,
    /// Peak active-voxel volume relative to rest volume.
    pub peak_volume_ratio: f64,
    /// Signed vertical gravitational acceleration, m/s^2.
    pub gravity: f64,
    /// Fraction of the stability limit used for the internal substep.
    pub stability_safety: f64,
    /// Reported steps between trajectory samples.
    pub sample_stride: u32,
}

impl Default for SimParams {
    fn default() -> SimParams {
        SimParams {
            voxel_edge: 0.01,
            timestep: 0.000453,
            total_steps: 8831,
            settle_steps: 552,
            actuation_frequency: 4.0,
            peak_volume_ratio: 1.9,
            gravity: -9.81,
            stability_safety: 0.9,
            sample_stride: 20,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        check(self.voxel_edge > 0.0, "voxel_edge", "must be > 0")?;
        check(self.timestep > 0.0, "timestep", "must be > 0")?;
        check(
            self.settle_steps < self.total_steps,
            "settle_steps",
            "must be < total_steps",
        )?;
        check(self.actuation_frequency > 0.0, "actuation_frequency", "must be > 0")?;
        check(self.peak_volume_ratio >= 1.0, "peak_volume_ratio", "must be >= 1")?;
        check(
            self.stability_safety > 0.0 && self.stability_safety <= 1.0,
            "stability_safety",
            "must be in (0, 1]",
        )?;
        check(self.sample_stride >= 1, "sample_stride", "must be >= 1")?;
        Ok(())
    }

    /// Duration of the settle phase, s.
    pub fn settle_time(&self) -> f64 {
        self.settle_steps as f64 * self.timestep
    }

    /// Total simulated time, s.
    pub fn total_time(&self) -> f64 {
        self.total_steps as f64 * self.timestep
    }
}
