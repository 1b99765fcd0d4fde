//! Global-best particle swarm over circular phase variables.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::{OptimizationResult, OptimizeError, SynthesisProblem, Termination, Timing};
use crate::array::{wrap_phase, PhaseVector};
use crate::rng;

/// Stream tag for the initial swarm; iteration streams use `i + 1`.
const INIT_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsoSettings {
    /// Particles K.
    pub swarm_size: usize,
    /// Last iteration index I.
    pub max_iterations: usize,
    /// Flatness window W.
    pub stagnation_window: usize,
    /// Flatness threshold rho.
    pub stagnation_threshold: f64,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub seed: u64,
    /// Largest per-iteration phase change [rad].
    pub velocity_clamp: f64,
}

impl PsoSettings {
    /// Defaults for an `n`-dimensional search: K = 2n, I = 1000, W = 100.
    pub fn for_dimension(n: usize) -> Self {
        Self {
            swarm_size: (2 * n).max(2),
            max_iterations: 1000,
            stagnation_window: 100,
            stagnation_threshold: 1e-3,
            inertia: 0.4,
            cognitive: 2.0,
            social: 2.0,
            seed: 0,
            velocity_clamp: PI,
        }
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        if self.swarm_size < 2 {
            return Err(OptimizeError::Settings("swarm_size must be at least 2"));
        }
        if !(self.inertia > 0.0 && self.inertia < 1.0) {
            return Err(OptimizeError::Settings("inertia must lie in (0, 1)"));
        }
        if !(self.cognitive > 0.0 && self.social > 0.0) || !(self.cognitive.is_finite() && self.social.is_finite()) {
            return Err(OptimizeError::Settings("cognitive and social weights must be positive"));
        }
        if self.stagnation_window == 0 || self.stagnation_window >= self.max_iterations {
            return Err(OptimizeError::Settings("stagnation_window must lie in [1, max_iterations)"));
        }
        if !(self.stagnation_threshold >= 0.0) {
            return Err(OptimizeError::Settings("stagnation_threshold must be non-negative"));
        }
        if !(self.velocity_clamp > 0.0 && self.velocity_clamp.is_finite()) {
            return Err(OptimizeError::Settings("velocity_clamp must be positive"));
        }
        Ok(())
    }
}

/// Evaluates one cost per particle. Implementations may run in parallel but
/// must write `out[k] = cost(&positions[k])`.
pub trait SwarmEvaluator {
    fn evaluate<F>(&self, cost: &F, positions: &[Vec<f64>], out: &mut [f64])
    where
        F: Fn(&[f64]) -> f64 + Sync;
}

pub struct SerialEvaluator;

impl SwarmEvaluator for SerialEvaluator {
    fn evaluate<F>(&self, cost: &F, positions: &[Vec<f64>], out: &mut [f64])
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        for (o, p) in out.iter_mut().zip(positions) {
            *o = cost(p);
        }
    }
}

/// |W Phi_i - sum_{j=1..W} Phi_{i-j}| / Phi_i for the last entry of
/// `history`; `None` until W earlier entries exist. A zero numerator or a
/// zero current cost yields 0.
pub fn stagnation_metric(history: &[f64], window: usize) -> Option<f64> {
    if window == 0 || history.len() <= window {
        return None;
    }
    let i = history.len() - 1;
    let cur = history[i];
    let num: f64 = (1..=window).map(|j| cur - history[i - j]).sum::<f64>().abs();
    if num == 0.0 || cur == 0.0 {
        return Some(0.0);
    }
    Some(num / cur)
}

/// ((K I) - N) / (K I): the fraction of full solver runs avoided when N
/// single-element runs replace K I full-array runs.
pub fn time_saving(swarm_size: usize, evaluated_iterations: usize, n_elements: usize) -> f64 {
    let ki = (swarm_size * evaluated_iterations) as f64;
    (ki - n_elements as f64) / ki
}

/// Shortest signed arc from `from` to `to`, in [-pi, pi).
fn angle_diff(to: f64, from: f64) -> f64 {
    wrap_phase(to - from + PI) - PI
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsoOutcome {
    pub best_position: Vec<f64>,
    pub best_cost: f64,
    pub history: Vec<f64>,
    pub iterations_run: usize,
    pub terminated_by: Termination,
    pub stagnation_metric: Option<f64>,
    pub evaluations: usize,
}

/// Minimizes `cost` over [0, 2 pi)^dim.
///
/// Every iteration evaluates the whole swarm, updates personal and global
/// bests with strict improvement, and records the global best. The run stops
/// after iteration I or, from iteration W on, when the windowed flatness
/// value drops to rho or below. Random draws come from streams keyed by
/// (seed, particle, iteration), so the trajectory is independent of the
/// evaluator.
pub fn minimize<F, E>(dim: usize, cost: &F, settings: &PsoSettings, evaluator: &E) -> Result<PsoOutcome, OptimizeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
    E: SwarmEvaluator,
{
    settings.validate()?;
    let k = settings.swarm_size;
    let clamp = settings.velocity_clamp;
    let mut pos: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut vel: Vec<Vec<f64>> = Vec::with_capacity(k);
    for p in 0..k {
        let mut s = rng::stream(settings.seed, p as u64, INIT_STREAM);
        pos.push((0..dim).map(|_| s.uniform_in(0.0, TAU)).collect());
        vel.push((0..dim).map(|_| s.uniform_in(-clamp, clamp)).collect());
    }
    let mut pbest = pos.clone();
    let mut pbest_cost = alloc::vec![f64::INFINITY; k];
    let mut gbest = pos[0].clone();
    let mut gbest_cost = f64::INFINITY;
    let mut costs = alloc::vec![0.0; k];
    let mut history = Vec::new();
    let mut i = 0;
    loop {
        evaluator.evaluate(cost, &pos, &mut costs);
        for p in 0..k {
            if costs[p] < pbest_cost[p] {
                pbest_cost[p] = costs[p];
                pbest[p].clone_from(&pos[p]);
            }
        }
        for p in 0..k {
            if pbest_cost[p] < gbest_cost {
                gbest_cost = pbest_cost[p];
                gbest.clone_from(&pbest[p]);
            }
        }
        history.push(gbest_cost);
        let metric = stagnation_metric(&history, settings.stagnation_window);
        let stop = if i == settings.max_iterations {
            Some(Termination::MaxIterations)
        } else if metric.is_some_and(|m| m <= settings.stagnation_threshold) {
            Some(Termination::Stagnation)
        } else {
            None
        };
        if let Some(terminated_by) = stop {
            return Ok(PsoOutcome {
                best_position: gbest,
                best_cost: gbest_cost,
                history,
                iterations_run: i,
                terminated_by,
                stagnation_metric: metric,
                evaluations: k * (i + 1),
            });
        }
        for p in 0..k {
            let mut s = rng::stream(settings.seed, p as u64, i as u64 + 1);
            for d in 0..dim {
                let u1 = s.uniform();
                let u2 = s.uniform();
                let x = pos[p][d];
                let v = settings.inertia * vel[p][d]
                    + settings.cognitive * u1 * angle_diff(pbest[p][d], x)
                    + settings.social * u2 * angle_diff(gbest[d], x);
                let v = v.clamp(-clamp, clamp);
                vel[p][d] = v;
                pos[p][d] = wrap_phase(x + v);
            }
        }
        i += 1;
    }
}

/// Runs the swarm on a synthesis problem with serial evaluation.
pub fn run_pso(problem: &SynthesisProblem<'_>, settings: &PsoSettings) -> Result<OptimizationResult, OptimizeError> {
    run_pso_with(problem, settings, &SerialEvaluator)
}

pub fn run_pso_with<E: SwarmEvaluator>(
    problem: &SynthesisProblem<'_>,
    settings: &PsoSettings,
    evaluator: &E,
) -> Result<OptimizationResult, OptimizeError> {
    let n = problem.dimension();
    let out = minimize(n, &|b: &[f64]| problem.cost(b), settings, evaluator)?;
    let uniform_cost = problem.cost(&alloc::vec![0.0; n]);
    let normalized_cost = super::normalized_cost(out.best_cost, uniform_cost).ok();
    Ok(OptimizationResult {
        best_phases: PhaseVector::new(out.best_position)?,
        best_cost: out.best_cost,
        normalized_cost,
        uniform_cost,
        cost_history: out.history,
        iterations_run: out.iterations_run,
        terminated_by: out.terminated_by,
        stagnation_metric: out.stagnation_metric,
        evaluations: out.evaluations,
        timing: Timing {
            saving: time_saving(settings.swarm_size, out.iterations_run + 1, n),
            ..Timing::default()
        },
    })
}
