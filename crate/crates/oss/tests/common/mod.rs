//! Randomized invariant checks shared by the property suite and the
//! acceptance report. Each runs `cases` proptest cases and returns the first
//! failure, shrunk.

#![allow(dead_code)]

use std::f64::consts::TAU;
use std::sync::atomic::{AtomicBool, Ordering};

use oss::parallel::{build_fields, with_workers, ParallelEvaluator};
use oss_core::array::{wrap_phase, ArrayConfig, Excitations, PhaseVector};
use oss_core::epep::{received_power, EpepMetadata};
use oss_core::geometry::CVec3;
use oss_core::optimize::{minimize, run_pso_with, SerialEvaluator};
use oss_core::raytrace::fresnel::{complex_permittivity, reflection_coefficients};
use oss_core::raytrace::trace_paths;
use oss_core::scene::Extent;
use oss_core::{
    Building, Complex64, CostDomain, EpepDatabase, GridMode, Material, PsoSettings, Scene, SolverSettings,
    SynthesisProblem, TargetDistribution, Vec2, Vec3,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = fn(u32) -> Result<(), String>;

/// The invariant suite: name and check.
pub const SUITE: [(&str, Check); 6] = [
    ("determinism across thread counts", thread_count_determinism),
    ("phase-wrap closure", phase_wrap_closure),
    ("monotone best cost", monotone_best),
    ("Fresnel |Gamma| <= 1", fresnel_passive),
    ("path-length reciprocity", reciprocity),
    ("global-phase power invariance", global_phase_invariance),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Complex fields drawn from a seeded stream, element-major.
pub fn synthetic_db(n: usize, m: usize, seed: u64) -> EpepDatabase {
    let mut s = oss_core::rng::stream(seed, 11, 0);
    let mut c = || Complex64::new(s.uniform() - 0.5, s.uniform() - 0.5);
    let fields = (0..n * m).map(|_| CVec3::new(c(), c(), c())).collect();
    let probes = (0..m).map(|i| Vec3::new(i as f64, 0.0, 1.5)).collect();
    let md = EpepMetadata {
        scene_hash: [0; 32],
        config_hash: [0; 32],
        settings: SolverSettings::default(),
        frequency_hz: 3.5e9,
        xi: 1.0,
    };
    EpepDatabase::new(md, n, probes, fields).unwrap()
}

/// Target reached exactly by a hidden phase vector.
pub fn planted_target(db: &EpepDatabase, magnitude: f64, seed: u64) -> (Vec<f64>, TargetDistribution) {
    let mut s = oss_core::rng::stream(seed, 12, 0);
    let phases: Vec<f64> = (0..db.n_elements()).map(|_| s.uniform_in(0.0, TAU)).collect();
    let exc = Excitations::uniform(magnitude, PhaseVector::new(phases.clone()).unwrap());
    let grid = received_power(db.probes(), &db.total_field(&exc).unwrap(), 3.5e9, 1.0);
    let t = TargetDistribution::from_mw(grid.probes.clone(), grid.power_mw()).unwrap();
    (phases, t)
}

fn rect_scene(blocks: &[(f64, f64, f64, f64, f64)]) -> Option<Scene> {
    let b = blocks
        .iter()
        .map(|&(x, y, w, d, h)| Building::rectangle(x, y, x + w, y + d, h, Material::CONCRETE))
        .collect();
    Scene::new(
        b,
        Extent::new(Vec2::new(-100.0, -100.0), Vec2::new(100.0, 100.0)),
        Material::CONCRETE,
        GridMode::Cells,
    )
    .ok()
}

fn blocks() -> impl Strategy<Value = Vec<(f64, f64, f64, f64, f64)>> {
    prop::collection::vec(
        (-80.0..60.0f64, -80.0..60.0f64, 5.0..20.0f64, 5.0..20.0f64, 5.0..30.0f64),
        0..4,
    )
}

fn point() -> impl Strategy<Value = (f64, f64, f64)> {
    (-90.0..90.0f64, -90.0..90.0f64, 1.0..25.0f64)
}

pub fn thread_count_determinism(cases: u32) -> Result<(), String> {
    let strat = (blocks(), point(), prop::collection::vec(point(), 1..6), 1usize..5, 0u64..1000);
    report(runner(cases).run(&strat, |(b, src, probes, workers, seed)| {
        let scene = rect_scene(&b);
        prop_assume!(scene.is_some());
        let scene = scene.unwrap();
        let pos = Vec3::new(src.0, src.1, src.2);
        let probes: Vec<Vec3> = probes.iter().map(|p| Vec3::new(p.0, p.1, p.2)).collect();
        prop_assume!(scene.building_containing(pos).is_none());
        prop_assume!(probes.iter().all(|p| scene.building_containing(*p).is_none()));
        let cfg = ArrayConfig::half_wave(2, 2, 3.5e9, pos);
        let st = SolverSettings::default();
        let one = with_workers(Some(1), || build_fields(&scene, &cfg, &probes, &st)).unwrap();
        let many = with_workers(Some(workers + 1), || build_fields(&scene, &cfg, &probes, &st)).unwrap();
        prop_assert_eq!(one, many);

        let db = synthetic_db(4, 8, seed);
        let (_, t) = planted_target(&db, 1.0, seed);
        let p = SynthesisProblem::new(&db, &t, 1.0, CostDomain::Linear, 1.0).unwrap();
        let s = PsoSettings {
            seed,
            max_iterations: 20,
            stagnation_window: 10,
            ..PsoSettings::for_dimension(4)
        };
        let a = run_pso_with(&p, &s, &SerialEvaluator).unwrap();
        let b = with_workers(Some(workers + 1), || run_pso_with(&p, &s, &ParallelEvaluator))
            .unwrap()
            .unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    }))
}

pub fn phase_wrap_closure(cases: u32) -> Result<(), String> {
    let strat = (-1e6..1e6f64, -50i32..50, 2usize..7, 0u64..1000);
    report(runner(cases).run(&strat, |(x, k, n, seed)| {
        let w = wrap_phase(x);
        prop_assert!((0.0..TAU).contains(&w), "wrap({x}) = {w}");
        prop_assert_eq!(wrap_phase(w), w);
        let shifted = wrap_phase(w + k as f64 * TAU);
        let d = (shifted - w).abs();
        prop_assert!(d.min(TAU - d) < 1e-9, "{w} vs {shifted}");

        let outside = AtomicBool::new(false);
        let cost = |b: &[f64]| {
            if b.iter().any(|v| !(0.0..TAU).contains(v)) {
                outside.store(true, Ordering::Relaxed);
            }
            b.iter().map(|v| v.sin()).sum::<f64>()
        };
        let s = PsoSettings {
            seed,
            max_iterations: 25,
            stagnation_window: 10,
            ..PsoSettings::for_dimension(n)
        };
        let out = minimize(n, &cost, &s, &SerialEvaluator).unwrap();
        prop_assert!(!outside.load(Ordering::Relaxed));
        prop_assert!(out.best_position.iter().all(|v| (0.0..TAU).contains(v)));
        Ok(())
    }))
}

pub fn monotone_best(cases: u32) -> Result<(), String> {
    let strat = (2usize..7, 1usize..4, 0u64..10_000);
    report(runner(cases).run(&strat, |(n, mult, seed)| {
        let db = synthetic_db(n, n * mult + 1, seed);
        let (_, t) = planted_target(&db, 1.0, seed ^ 0x55);
        let p = SynthesisProblem::new(&db, &t, 1.0, CostDomain::Linear, 1.0).unwrap();
        let s = PsoSettings {
            seed,
            max_iterations: 40,
            stagnation_window: 10,
            ..PsoSettings::for_dimension(n)
        };
        let r = run_pso_with(&p, &s, &SerialEvaluator).unwrap();
        prop_assert!(r.cost_history.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*r.cost_history.last().unwrap(), r.best_cost);
        Ok(())
    }))
}

pub fn fresnel_passive(cases: u32) -> Result<(), String> {
    let strat = (1.0..100.0f64, 0.0..50.0f64, 1e8..1e11f64, 0.0..=1.0f64);
    report(runner(cases).run(&strat, |(eps_r, sigma, f, cos_i)| {
        let m = Material {
            eps_r,
            sigma,
            thickness: 0.2,
        };
        let (perp, par) = reflection_coefficients(complex_permittivity(&m, f), cos_i);
        prop_assert!(perp.norm() <= 1.0 + 1e-12, "|perp| = {}", perp.norm());
        prop_assert!(par.norm() <= 1.0 + 1e-12, "|par| = {}", par.norm());
        Ok(())
    }))
}

pub fn reciprocity(cases: u32) -> Result<(), String> {
    let strat = (blocks(), point(), point(), 0usize..3, any::<bool>());
    report(runner(cases).run(&strat, |(b, a, r, order, ground)| {
        let scene = rect_scene(&b);
        prop_assume!(scene.is_some());
        let scene = scene.unwrap();
        let a = Vec3::new(a.0, a.1, a.2);
        let r = Vec3::new(r.0, r.1, r.2);
        prop_assume!(scene.building_containing(a).is_none() && scene.building_containing(r).is_none());
        prop_assume!(a.distance(r) >= 1.0);
        let st = SolverSettings {
            max_reflections: order,
            enable_ground: ground,
            ..SolverSettings::default()
        };
        let lengths = |s: Vec3, d: Vec3| -> Result<Vec<f64>, TestCaseError> {
            let mut l: Vec<f64> = trace_paths(&scene, s, d, &st)
                .map_err(|e| TestCaseError::fail(e.to_string()))?
                .iter()
                .map(|p| p.length)
                .collect();
            l.sort_by(f64::total_cmp);
            Ok(l)
        };
        let fwd = lengths(a, r)?;
        let back = lengths(r, a)?;
        prop_assert_eq!(fwd.len(), back.len(), "{:?} vs {:?}", fwd, back);
        for (x, y) in fwd.iter().zip(&back) {
            prop_assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
        Ok(())
    }))
}

pub fn global_phase_invariance(cases: u32) -> Result<(), String> {
    let strat = (1usize..9, 1usize..20, 0u64..10_000, -10.0..10.0f64);
    report(runner(cases).run(&strat, |(n, m, seed, c)| {
        let db = synthetic_db(n, m, seed);
        let mut s = oss_core::rng::stream(seed, 13, 0);
        let beta: Vec<f64> = (0..n).map(|_| s.uniform_in(0.0, TAU)).collect();
        let shifted: Vec<f64> = beta.iter().map(|b| wrap_phase(b + c)).collect();
        let power = |ph: Vec<f64>| {
            let exc = Excitations::uniform(1.0, PhaseVector::new(ph).unwrap());
            received_power(db.probes(), &db.total_field(&exc).unwrap(), 3.5e9, 1.0).power_dbm
        };
        for (x, y) in power(beta).iter().zip(power(shifted)) {
            prop_assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        Ok(())
    }))
}
