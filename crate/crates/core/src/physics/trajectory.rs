//! Center-of-mass trajectories.

use alloc::vec::Vec;

use crate::math::Vec3;

/// One timestamped center-of-mass sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample {
    /// Time since simulation start, s.
    pub t: f64,
    pub com: Vec3,
}

/// Center-of-mass time series. The first sample is taken at the end of the
/// settle phase and equals `initial_com`; displacement and fitness are
/// measured against it.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub initial_com: Vec3,
    /// Reported steps between samples (1 for externally recorded data).
    pub sample_stride: u32,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Final center of mass; falls back to the initial one when empty.
    pub fn final_com(&self) -> Vec3 {
        self.samples.last().map_or(self.initial_com, |s| s.com)
    }

    /// Net center-of-mass displacement over the recorded interval.
    pub fn displacement(&self) -> Vec3 {
        self.final_com() - self.initial_com
    }

    /// Copy with every sample (and the origin) shifted by `offset`.
    pub fn translated(&self, offset: Vec3) -> Trajectory {
        Trajectory {
            samples: self
                .samples
                .iter()
                .map(|s| TrajectorySample { t: s.t, com: s.com + offset })
                .collect(),
            initial_com: self.initial_com + offset,
            sample_stride: self.sample_stride,
        }
    }
}
