//! Deterministic geometric-optics solver.
//!
//! Paths are found with the image method: direct line of sight, specular
//! reflections off walls and ground up to `max_reflections`, and optional
//! straight-through wall transmission. Each path is turned into a complex
//! field vector by [`path_field`]. The solver is linear in the excitation,
//! so per-element runs superpose exactly.

mod field;
pub mod fresnel;
mod trace;

use alloc::vec::Vec;

use thiserror::Error;

use crate::array::ArrayError;
use crate::geometry::Vec3;
use crate::scene::Material;

pub use field::{compute_epep, epep_at_probe, full_array_at_probe, full_array_field, path_field, path_gain_db};
pub use trace::{trace_paths, Tracer};

/// Upper bound on the reflection order.
pub const MAX_REFLECTIONS_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct SolverSettings {
    pub max_reflections: usize,
    pub enable_ground: bool,
    pub enable_transmission: bool,
    /// Paths with free-space-normalized gain below this are dropped [dB].
    pub min_path_gain_db: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            max_reflections: 2,
            enable_ground: true,
            enable_transmission: false,
            min_path_gain_db: -250.0,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<(), TraceError> {
        if self.max_reflections > MAX_REFLECTIONS_LIMIT {
            return Err(TraceError::TooManyReflections(self.max_reflections));
        }
        if self.min_path_gain_db.is_nan() {
            return Err(TraceError::InvalidCutoff);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteractionKind {
    Reflection,
    Transmission,
}

/// One wall or ground event along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interaction {
    /// Index into the tracer's face list.
    pub face: usize,
    pub kind: InteractionKind,
    pub point: Vec3,
    /// Outward face normal.
    pub normal: Vec3,
    pub material: Material,
    /// Unit propagation direction arriving at the event.
    pub incoming: Vec3,
    /// Unit propagation direction leaving the event.
    pub outgoing: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayPath {
    /// Source, reflection points, receiver.
    pub vertices: Vec<Vec3>,
    /// Reflections and transmissions in propagation order.
    pub interactions: Vec<Interaction>,
    /// Unfolded length [m].
    pub length: f64,
}

impl RayPath {
    pub fn reflection_count(&self) -> usize {
        self.interactions
            .iter()
            .filter(|i| i.kind == InteractionKind::Reflection)
            .count()
    }

    /// Face indices of the reflections, in order.
    pub fn reflection_faces(&self) -> Vec<usize> {
        self.interactions
            .iter()
            .filter(|i| i.kind == InteractionKind::Reflection)
            .map(|i| i.face)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("source lies inside building {0}")]
    SourceInsideBuilding(usize),
    #[error("receiver lies inside building {0}")]
    ReceiverInsideBuilding(usize),
    #[error("source and receiver coincide")]
    Coincident,
    #[error("max_reflections = {0} exceeds the limit of 4")]
    TooManyReflections(usize),
    #[error("min_path_gain_db must be a number")]
    InvalidCutoff,
    #[error("element index {index} out of range for {count} elements")]
    ElementIndex { index: usize, count: usize },
    #[error(transparent)]
    Array(#[from] ArrayError),
}
