//! Opportunistic source synthesis for base-station arrays.
//!
//! The crate is `no_std` (with `alloc`) and contains every algorithmic
//! piece of the pipeline:
//!
//! - [`scene`]: extruded-polygon buildings, materials, regions of interest
//!   and their probe grids.
//! - [`array`]: planar array geometry, element pattern, radiated power
//!   normalization and analytic phase presets.
//! - [`raytrace`]: an image-method geometric-optics solver producing complex
//!   field vectors for a single radiating element.
//! - [`epep`]: the per-element pattern database, linear field reconstruction
//!   and received power.
//! - [`optimize`]: mismatch cost, particle swarm search and baselines.
//!
//! File formats, parallel drivers and the command line live in the `oss`
//! companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod array;
pub mod epep;
pub mod geometry;
pub mod optimize;
pub mod physics;
pub mod quadrature;
pub mod raytrace;
pub mod rng;
pub mod scene;

pub use num_complex::Complex64;

pub use array::{ArrayConfig, ElementPattern, Excitations, PatternKind, PhaseVector};
pub use epep::{CoverageGrid, EpepDatabase, EpepMetadata, PowerStats};
pub use geometry::{Vec2, Vec3};
pub use optimize::{
    CostDomain, OptimizationResult, PsoSettings, SynthesisProblem, TargetDistribution,
    Termination,
};
pub use raytrace::{RayPath, SolverSettings};
pub use scene::{Building, GridMode, Material, RegionOfInterest, Scene};
