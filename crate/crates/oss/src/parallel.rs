//! Rayon drivers around the serial core routines.
//!
//! Every value is computed by the same scalar code as the serial path and
//! collected in index order, so results do not depend on the thread count.

use oss_core::array::{element_world_positions, ArrayConfig};
use oss_core::epep::{EpepDatabase, EpepMetadata};
use oss_core::geometry::CVec3;
use oss_core::optimize::SwarmEvaluator;
use oss_core::raytrace::{epep_at_probe, full_array_at_probe, TraceError, Tracer};
use oss_core::{Complex64, Scene, SolverSettings, Vec3};
use rayon::prelude::*;

use crate::error::{OssError, Result};

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(OssError::Config("--workers must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| OssError::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Element-major fields of every element at every probe.
pub fn build_fields(
    scene: &Scene,
    cfg: &ArrayConfig,
    probes: &[Vec3],
    settings: &SolverSettings,
) -> Result<Vec<CVec3>, TraceError> {
    cfg.validate()?;
    let tracer = Tracer::new(scene, *settings)?;
    let frame = cfg.frame();
    let elements = element_world_positions(cfg);
    let m = probes.len();
    (0..elements.len() * m)
        .into_par_iter()
        .map(|i| epep_at_probe(&tracer, cfg, &frame, elements[i / m], probes[i % m]))
        .collect()
}

pub fn build_database(
    scene: &Scene,
    cfg: &ArrayConfig,
    probes: &[Vec3],
    settings: &SolverSettings,
    metadata: EpepMetadata,
) -> Result<EpepDatabase> {
    let fields = build_fields(scene, cfg, probes, settings)?;
    Ok(EpepDatabase::new(metadata, cfg.element_count(), probes.to_vec(), fields)?)
}

/// Field of the whole array driven by `weights`, traced directly.
pub fn full_array_field(
    scene: &Scene,
    cfg: &ArrayConfig,
    weights: &[Complex64],
    probes: &[Vec3],
    settings: &SolverSettings,
) -> Result<Vec<CVec3>, TraceError> {
    cfg.validate()?;
    let tracer = Tracer::new(scene, *settings)?;
    let frame = cfg.frame();
    let elements = element_world_positions(cfg);
    probes
        .par_iter()
        .map(|p| full_array_at_probe(&tracer, cfg, &frame, &elements, weights, *p))
        .collect()
}

/// Evaluates the swarm's particles concurrently.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParallelEvaluator;

impl SwarmEvaluator for ParallelEvaluator {
    fn evaluate<F: Fn(&[f64]) -> f64 + Sync>(&self, cost: &F, positions: &[Vec<f64>], out: &mut [f64]) {
        positions
            .par_iter()
            .zip(out.par_iter_mut())
            .for_each(|(x, o)| *o = cost(x));
    }
}
