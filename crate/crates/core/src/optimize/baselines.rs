//! Analytic reference phase sets: uniform, steered toward the RoI
//! barycenter, and seeded random.

use super::{normalized_cost, OptimizeError, SynthesisProblem};
use crate::array::{local_angles_deg, random_phases, steering_phases, uniform_phases, ArrayConfig, PhaseVector};
use crate::epep::{power_stats, CoverageGrid, PowerStats};
use crate::geometry::Vec3;

#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    pub phases: PhaseVector,
    pub cost: f64,
    pub normalized_cost: f64,
    pub coverage: CoverageGrid,
    pub stats: PowerStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baselines {
    pub uniform: Baseline,
    pub steered: Baseline,
    pub random: Baseline,
    /// Commanded steering direction (theta, phi) [deg] in the array frame.
    pub steering_deg: (f64, f64),
}

pub fn evaluate_baselines(
    problem: &SynthesisProblem<'_>,
    cfg: &ArrayConfig,
    barycenter: Vec3,
    seed: u64,
) -> Result<Baselines, OptimizeError> {
    let (theta, phi) = local_angles_deg(cfg, barycenter - cfg.position);
    let sets = [
        uniform_phases(cfg),
        steering_phases(cfg, theta, phi),
        random_phases(cfg, seed),
    ];
    let phi_uni = problem.cost(sets[0].as_slice());
    let mut out = sets.into_iter().map(|phases| {
        let cost = problem.cost(phases.as_slice());
        let coverage = problem.coverage(phases.as_slice());
        let stats = power_stats(&coverage)?;
        Ok::<_, OptimizeError>(Baseline {
            cost,
            normalized_cost: normalized_cost(cost, phi_uni)?,
            coverage,
            stats,
            phases,
        })
    });
    let uniform = out.next().unwrap()?;
    let steered = out.next().unwrap()?;
    let random = out.next().unwrap()?;
    Ok(Baselines {
        uniform,
        steered,
        random,
        steering_deg: (theta, phi),
    })
}
