//! Phase-only synthesis against a target power distribution.

mod baselines;
mod pso;

use alloc::vec::Vec;

use num_complex::Complex64;
use thiserror::Error;

use crate::array::{ArrayConfig, ArrayError, PhaseVector};
use crate::epep::{mw_to_dbm, power_factor_mw, CoverageGrid, EpepDatabase, EpepError};
use crate::geometry::{CVec3, Vec2, Vec3};
use crate::raytrace::{full_array_field, SolverSettings, TraceError};
use crate::scene::{Extent, Scene};

pub use baselines::{evaluate_baselines, Baseline, Baselines};
pub use pso::{
    minimize, run_pso, run_pso_with, stagnation_metric, time_saving, PsoOutcome, PsoSettings,
    SerialEvaluator, SwarmEvaluator,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("database and target are defined on different probe lists")]
    ProbeMismatch,
    #[error("target power at probe {0} is not above the floor")]
    TargetNotPositive(usize),
    #[error("reference cost is zero")]
    ZeroReference,
    #[error("excitation magnitude must be positive and finite")]
    Magnitude,
    #[error("invalid PSO settings: {0}")]
    Settings(&'static str),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Epep(#[from] EpepError),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

/// Desired received power per probe.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetDistribution {
    pub probes: Vec<Vec3>,
    pub target_dbm: Vec<f64>,
    pub target_mw: Vec<f64>,
}

impl TargetDistribution {
    /// Target from linear powers; every entry must be positive.
    pub fn from_mw(probes: Vec<Vec3>, target_mw: Vec<f64>) -> Result<Self, OptimizeError> {
        if probes.len() != target_mw.len() {
            return Err(OptimizeError::ProbeMismatch);
        }
        if let Some(i) = target_mw.iter().position(|p| !(*p > 0.0 && p.is_finite())) {
            return Err(OptimizeError::TargetNotPositive(i));
        }
        let target_dbm = target_mw.iter().map(|p| mw_to_dbm(*p)).collect();
        Ok(Self {
            probes,
            target_dbm,
            target_mw,
        })
    }

    pub fn coverage(&self) -> CoverageGrid {
        CoverageGrid {
            probes: self.probes.clone(),
            power_dbm: self.target_dbm.clone(),
        }
    }
}

fn ideal_power_mw(ideal: &ArrayConfig, xi: f64, probes: &[Vec3], rx_gain: f64) -> Result<Vec<f64>, OptimizeError> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(OptimizeError::Magnitude);
    }
    let mut lo = ideal.position.xy();
    let mut hi = lo;
    for p in probes {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let free = Scene::empty(Extent::new(lo - Vec2::new(1.0, 1.0), hi + Vec2::new(1.0, 1.0)));
    let direct = SolverSettings {
        max_reflections: 0,
        enable_ground: false,
        enable_transmission: false,
        min_path_gain_db: f64::NEG_INFINITY,
    };
    let weights = alloc::vec![Complex64::new(xi, 0.0); ideal.element_count()];
    let fields = full_array_field(&free, ideal, &weights, probes, &direct)?;
    let k = power_factor_mw(ideal.frequency_hz, rx_gain);
    Ok(fields.iter().map(|e| k * e.norm_sqr()).collect())
}

/// Free-space power of the ideal array driven with uniform magnitude `xi`
/// and zero phases, over the direct path only. Probes the ideal array does
/// not reach sit at the power floor.
pub fn ideal_coverage(
    ideal: &ArrayConfig,
    xi: f64,
    probes: &[Vec3],
    rx_gain: f64,
) -> Result<CoverageGrid, OptimizeError> {
    Ok(CoverageGrid {
        probes: probes.to_vec(),
        power_dbm: ideal_power_mw(ideal, xi, probes, rx_gain)?
            .into_iter()
            .map(mw_to_dbm)
            .collect(),
    })
}

/// Target distribution from the ideal array; every probe must be lit.
pub fn make_target(
    ideal: &ArrayConfig,
    xi: f64,
    probes: &[Vec3],
    rx_gain: f64,
) -> Result<TargetDistribution, OptimizeError> {
    TargetDistribution::from_mw(probes.to_vec(), ideal_power_mw(ideal, xi, probes, rx_gain)?)
}

/// Power domain in which the mismatch is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CostDomain {
    /// Relative error of milliwatt values.
    #[default]
    Linear,
    /// Relative error of dBm values.
    Db,
}

/// Mean relative mismatch (1/M) sum |P_m - T_m| / |T_m|.
pub fn cost(achieved_mw: &[f64], target: &TargetDistribution, domain: CostDomain) -> f64 {
    let m = achieved_mw.len();
    let total: f64 = match domain {
        CostDomain::Linear => achieved_mw
            .iter()
            .zip(&target.target_mw)
            .map(|(p, t)| (p - t).abs() / t.abs())
            .sum(),
        CostDomain::Db => achieved_mw
            .iter()
            .zip(&target.target_dbm)
            .map(|(p, t)| (mw_to_dbm(*p) - t).abs() / t.abs())
            .sum(),
    };
    total / m as f64
}

/// Cost relative to the uniform-phase reference.
pub fn normalized_cost(phi: f64, phi_uniform: f64) -> Result<f64, OptimizeError> {
    if phi_uniform == 0.0 || !phi_uniform.is_finite() {
        return Err(OptimizeError::ZeroReference);
    }
    Ok(phi / phi_uniform)
}

/// A database, its excitation magnitude and a target on the same probes.
#[derive(Debug, Clone)]
pub struct SynthesisProblem<'a> {
    db: &'a EpepDatabase,
    target: &'a TargetDistribution,
    magnitude: f64,
    domain: CostDomain,
    rx_gain: f64,
    factor_mw: f64,
}

impl<'a> SynthesisProblem<'a> {
    pub fn new(
        db: &'a EpepDatabase,
        target: &'a TargetDistribution,
        magnitude: f64,
        domain: CostDomain,
        rx_gain: f64,
    ) -> Result<Self, OptimizeError> {
        if db.probes() != target.probes.as_slice() {
            return Err(OptimizeError::ProbeMismatch);
        }
        if !(magnitude > 0.0 && magnitude.is_finite()) {
            return Err(OptimizeError::Magnitude);
        }
        Ok(Self {
            db,
            target,
            magnitude,
            domain,
            rx_gain,
            factor_mw: power_factor_mw(db.metadata().frequency_hz, rx_gain),
        })
    }

    pub fn dimension(&self) -> usize {
        self.db.n_elements()
    }

    pub fn database(&self) -> &EpepDatabase {
        self.db
    }

    pub fn target(&self) -> &TargetDistribution {
        self.target
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn domain(&self) -> CostDomain {
        self.domain
    }

    pub fn rx_gain(&self) -> f64 {
        self.rx_gain
    }

    fn field(&self, phases: &[f64]) -> Vec<CVec3> {
        let weights: Vec<Complex64> = phases
            .iter()
            .map(|b| Complex64::from_polar(self.magnitude, *b))
            .collect();
        let mut out = alloc::vec![CVec3::ZERO; self.db.n_probes()];
        self.db.accumulate(&weights, &mut out);
        out
    }

    /// Received power [mW] per probe.
    pub fn achieved_mw(&self, phases: &[f64]) -> Vec<f64> {
        assert_eq!(phases.len(), self.dimension(), "phase vector length");
        self.field(phases)
            .iter()
            .map(|e| self.factor_mw * e.norm_sqr())
            .collect()
    }

    pub fn cost(&self, phases: &[f64]) -> f64 {
        cost(&self.achieved_mw(phases), self.target, self.domain)
    }

    pub fn coverage(&self, phases: &[f64]) -> CoverageGrid {
        CoverageGrid {
            probes: self.db.probes().to_vec(),
            power_dbm: self.achieved_mw(phases).iter().map(|p| mw_to_dbm(*p)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Termination {
    Stagnation,
    MaxIterations,
}

/// Wall-clock accounting; the core never reads a clock, so drivers fill the
/// durations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Timing {
    /// Database build time [s].
    pub database_s: f64,
    /// Synthesis time [s].
    pub synthesis_s: f64,
    /// Fraction of solver runs avoided, ((K I) - N) / (K I).
    pub saving: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_phases: PhaseVector,
    pub best_cost: f64,
    /// Best cost over the uniform-phase cost; `None` if the latter is zero.
    pub normalized_cost: Option<f64>,
    pub uniform_cost: f64,
    /// Global-best cost after each iteration, starting at iteration 0.
    pub cost_history: Vec<f64>,
    /// Index of the last iteration performed.
    pub iterations_run: usize,
    pub terminated_by: Termination,
    /// Windowed flatness value at the last iteration, once defined.
    pub stagnation_metric: Option<f64>,
    /// Cost evaluations performed.
    pub evaluations: usize,
    pub timing: Timing,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn target(mw: Vec<f64>) -> TargetDistribution {
        let probes = (0..mw.len()).map(|i| Vec3::new(i as f64, 0.0, 0.0)).collect();
        TargetDistribution::from_mw(probes, mw).unwrap()
    }

    #[test]
    fn cost_examples() {
        let t = target(vec![2.0, 1.0]);
        assert_eq!(cost(&[2.0, 1.0], &t, CostDomain::Linear), 0.0);
        assert_eq!(cost(&[4.0, 2.0], &t, CostDomain::Linear), 1.0);
        assert_eq!(cost(&[1.0, 0.5], &t, CostDomain::Linear), 0.5);
        let t = target(vec![1e-3, 1e-5]);
        assert_eq!(cost(&[1e-3, 1e-5], &t, CostDomain::Db), 0.0);
        let c = cost(&[1e-4, 1e-5], &t, CostDomain::Db);
        assert!((c - 0.5 * 10.0 / 30.0).abs() < 1e-12, "{c}");
    }

    #[test]
    fn normalized() {
        assert_eq!(normalized_cost(0.3, 0.3).unwrap(), 1.0);
        assert_eq!(normalized_cost(0.3, 0.0), Err(OptimizeError::ZeroReference));
    }

    #[test]
    fn target_rejects_floor() {
        let probes = vec![Vec3::ZERO, Vec3::X];
        assert_eq!(
            TargetDistribution::from_mw(probes, vec![1.0, 0.0]),
            Err(OptimizeError::TargetNotPositive(1))
        );
    }

    #[test]
    fn target_free_space_law() {
        let mut cfg = ArrayConfig::half_wave(1, 1, 3.5e9, Vec3::new(0.0, 0.0, 1.5));
        cfg.element_pattern = crate::array::ElementPattern::isotropic();
        let probes = [Vec3::new(0.0, 10.0, 1.5), Vec3::new(0.0, 20.0, 1.5)];
        let t = make_target(&cfg, 1.0, &probes, 1.0).unwrap();
        let drop = t.target_dbm[0] - t.target_dbm[1];
        assert!((drop - 20.0 * libm::log10(2.0)).abs() < 1e-9, "{drop}");
    }

    #[test]
    fn target_equal_on_arc() {
        let mut cfg = ArrayConfig::half_wave(1, 1, 3.5e9, Vec3::new(0.0, 0.0, 1.5));
        cfg.element_pattern = crate::array::ElementPattern::isotropic();
        let probes: Vec<Vec3> = (0..5)
            .map(|i| {
                let a = 0.3 * i as f64;
                Vec3::new(40.0 * libm::sin(a), 40.0 * libm::cos(a), 1.5)
            })
            .collect();
        let t = make_target(&cfg, 1.0, &probes, 1.0).unwrap();
        for p in &t.target_dbm {
            assert!((p - t.target_dbm[0]).abs() < 1e-9);
        }
    }
}
