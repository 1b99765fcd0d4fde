use std::f64::consts::TAU;

use oss_core::array::{
    array_factor_power, direction_from_angles_deg, radiated_power, steering_phases, wrap_phase,
};
use oss_core::epep::{received_power, EpepMetadata};
use oss_core::geometry::CVec3;
use oss_core::optimize::{cost, minimize, stagnation_metric, SerialEvaluator};
use oss_core::{
    ArrayConfig, Complex64, CostDomain, EpepDatabase, Excitations, GridMode, PhaseVector, PsoSettings,
    RegionOfInterest, SolverSettings, TargetDistribution, Termination, Vec2, Vec3,
};
use proptest::prelude::*;

fn db(n: usize, m: usize, seed: u64) -> EpepDatabase {
    let mut s = oss_core::rng::stream(seed, 21, 0);
    let mut c = || Complex64::new(s.uniform() - 0.5, s.uniform() - 0.5);
    let fields = (0..n * m).map(|_| CVec3::new(c(), c(), c())).collect();
    let probes = (0..m).map(|i| Vec3::new(i as f64, 2.0, 1.5)).collect();
    let md = EpepMetadata {
        scene_hash: [0; 32],
        config_hash: [0; 32],
        settings: SolverSettings::default(),
        frequency_hz: 3.5e9,
        xi: 1.0,
    };
    EpepDatabase::new(md, n, probes, fields).unwrap()
}

fn phases(n: usize, seed: u64) -> Vec<f64> {
    let mut s = oss_core::rng::stream(seed, 22, 0);
    (0..n).map(|_| s.uniform_in(0.0, TAU)).collect()
}

fn power_mw(db: &EpepDatabase, mag: f64, beta: &[f64]) -> Vec<f64> {
    let exc = Excitations::uniform(mag, PhaseVector::new(beta.to_vec()).unwrap());
    received_power(db.probes(), &db.total_field(&exc).unwrap(), 3.5e9, 1.0).power_mw()
}

fn target(db: &EpepDatabase, mw: Vec<f64>) -> TargetDistribution {
    TargetDistribution::from_mw(db.probes().to_vec(), mw).unwrap()
}

fn roi(cx: f64, cy: f64, wx: f64, wy: f64, spacing: f64, nodes: bool) -> RegionOfInterest {
    RegionOfInterest {
        center: Vec2::new(cx, cy),
        width_x: wx,
        width_y: wy,
        height: 1.5,
        spacing,
        grid_mode: if nodes { GridMode::Nodes } else { GridMode::Cells },
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn probe_grid_is_deterministic_and_sized(
        cx in -100.0..100.0f64, cy in -100.0..100.0f64,
        wx in 1.0..80.0f64, wy in 1.0..80.0f64, spacing in 0.5..10.0f64, nodes in any::<bool>(),
    ) {
        let r = roi(cx, cy, wx, wy, spacing, nodes);
        let a = r.probe_points();
        prop_assert_eq!(&a, &r.probe_points());
        prop_assert_eq!(a.len(), r.probe_count());
        let mean = a.iter().fold(Vec2::new(0.0, 0.0), |s, p| Vec2::new(s.x + p.x, s.y + p.y));
        let n = a.len() as f64;
        if !nodes {
            prop_assert!((mean.x / n - cx).abs() < 1e-9 && (mean.y / n - cy).abs() < 1e-9);
        }
        prop_assert!(a.iter().all(|p| p.z == 1.5));
    }

    #[test]
    fn power_scales_with_delta_squared(n in 1usize..10, m in 1usize..12, seed in 0u64..10_000, delta in 1.0..5.0f64) {
        let d = db(n, m, seed);
        let b = phases(n, seed);
        let base = power_mw(&d, 0.7, &b);
        let scaled = power_mw(&d, 0.7 * delta, &b);
        for (p, q) in base.iter().zip(&scaled) {
            prop_assert!((q - delta * delta * p).abs() <= 1e-9 * q.abs().max(1e-300));
        }

        let cfg = ArrayConfig::half_wave(2, 2, 3.5e9, Vec3::new(0.0, 0.0, 10.0));
        let ph = PhaseVector::new(phases(4, seed)).unwrap();
        let p1 = radiated_power(&cfg, &Excitations::uniform(1.0, ph.clone()));
        let pd = radiated_power(&cfg, &Excitations::uniform(delta, ph));
        prop_assert!((pd / p1 - delta * delta).abs() < 1e-9);
    }

    #[test]
    fn constant_phase_keeps_pattern_peak(
        rows in 1usize..4, cols in 1usize..5, theta in 20.0..160.0f64, phi in -80.0..80.0f64, c in -10.0..10.0f64,
    ) {
        let cfg = ArrayConfig::half_wave(rows, cols, 3.5e9, Vec3::new(0.0, 0.0, 10.0));
        let b = steering_phases(&cfg, theta, phi);
        let w = |shift: f64| -> Vec<Complex64> {
            b.as_slice().iter().map(|x| Complex64::from_polar(1.0, x + shift)).collect()
        };
        let dir = direction_from_angles_deg(theta, phi);
        let peak = array_factor_power(&cfg, &w(0.0), dir);
        prop_assert!((peak - (rows * cols) as f64 * (rows * cols) as f64).abs() < 1e-6);
        prop_assert!((array_factor_power(&cfg, &w(c), dir) - peak).abs() < 1e-6);
    }

    #[test]
    fn steering_phases_are_wrapped(rows in 1usize..6, cols in 1usize..9, theta in 0.0..180.0f64, phi in -180.0..180.0f64) {
        let cfg = ArrayConfig::half_wave(rows, cols, 3.5e9, Vec3::new(0.0, 0.0, 10.0));
        let b = steering_phases(&cfg, theta, phi);
        prop_assert_eq!(b.len(), rows * cols);
        prop_assert!(b.as_slice().iter().all(|x| (0.0..TAU).contains(x)));
    }

    #[test]
    fn cost_vanishes_only_on_match(n in 1usize..8, m in 1usize..12, seed in 0u64..10_000, k in 0usize..12, f in 1.01..3.0f64) {
        let d = db(n, m, seed);
        let p = power_mw(&d, 1.0, &phases(n, seed));
        prop_assume!(p.iter().all(|v| *v > 0.0));
        let t = target(&d, p.clone());
        prop_assert_eq!(cost(&p, &t, CostDomain::Linear), 0.0);
        prop_assert_eq!(cost(&p, &t, CostDomain::Db), 0.0);
        let mut q = p.clone();
        q[k % m] *= f;
        prop_assert!(cost(&q, &t, CostDomain::Linear) > 0.0);
        prop_assert!(cost(&q, &t, CostDomain::Db) > 0.0);
    }

    #[test]
    fn linear_cost_is_scale_free(m in 1usize..20, seed in 0u64..10_000, s in 1e-6..1e6f64) {
        let mut r = oss_core::rng::stream(seed, 23, 0);
        let p: Vec<f64> = (0..m).map(|_| r.uniform_in(1e-9, 1e-3)).collect();
        let t: Vec<f64> = (0..m).map(|_| r.uniform_in(1e-9, 1e-3)).collect();
        let probes: Vec<Vec3> = (0..m).map(|i| Vec3::new(i as f64, 0.0, 1.5)).collect();
        let a = cost(&p, &TargetDistribution::from_mw(probes.clone(), t.clone()).unwrap(), CostDomain::Linear);
        let ps: Vec<f64> = p.iter().map(|v| v * s).collect();
        let ts: Vec<f64> = t.iter().map(|v| v * s).collect();
        let b = cost(&ps, &TargetDistribution::from_mw(probes, ts).unwrap(), CostDomain::Linear);
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-12));
    }

    #[test]
    fn field_is_linear_in_weights(n in 1usize..8, m in 1usize..10, seed in 0u64..10_000, ar in -2.0..2.0f64, ai in -2.0..2.0f64) {
        let d = db(n, m, seed);
        let mut r = oss_core::rng::stream(seed, 24, 0);
        let mut c = || Complex64::new(r.uniform() - 0.5, r.uniform() - 0.5);
        let u: Vec<Complex64> = (0..n).map(|_| c()).collect();
        let v: Vec<Complex64> = (0..n).map(|_| c()).collect();
        let a = Complex64::new(ar, ai);
        let mix: Vec<Complex64> = u.iter().zip(&v).map(|(x, y)| a * x + y).collect();
        let fu = d.total_field_weights(&u).unwrap();
        let fv = d.total_field_weights(&v).unwrap();
        let fm = d.total_field_weights(&mix).unwrap();
        for ((x, y), z) in fu.iter().zip(&fv).zip(&fm) {
            for (xc, (yc, zc)) in [x.x, x.y, x.z].iter().zip([y.x, y.y, y.z].iter().zip([z.x, z.y, z.z])) {
                prop_assert!((a * xc + yc - zc).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn grid_spacing_shrinks_with_delta(w in 5.0..60.0f64, spacing in 1.0..6.0f64, delta in 1usize..5) {
        let coarse = roi(0.0, 0.0, w, w, spacing, false);
        let fine = roi(0.0, 0.0, w, w, spacing / delta as f64, false);
        let (nx, _) = coarse.counts();
        let (fx, _) = fine.counts();
        prop_assert!(fx >= nx);
        prop_assert!(fx as f64 <= (delta * nx) as f64 + delta as f64);
    }

    #[test]
    fn flatness_matches_definition(hist in prop::collection::vec(0.0..10.0f64, 1..30), window in 1usize..10) {
        match stagnation_metric(&hist, window) {
            None => prop_assert!(hist.len() <= window),
            Some(v) => {
                let i = hist.len() - 1;
                let num: f64 = (1..=window).map(|j| hist[i] - hist[i - j]).sum::<f64>().abs();
                let want = if num == 0.0 || hist[i] == 0.0 { 0.0 } else { num / hist[i] };
                prop_assert!((v - want).abs() <= 1e-12 * want.max(1.0));
            }
        }
        let flat = vec![hist[0]; window + 1];
        prop_assert_eq!(stagnation_metric(&flat, window), Some(0.0));
    }

    #[test]
    fn constant_cost_stops_at_window(n in 1usize..6, window in 2usize..30, seed in 0u64..1000) {
        let s = PsoSettings { seed, max_iterations: 200, stagnation_window: window, ..PsoSettings::for_dimension(n) };
        let out = minimize(n, &|_: &[f64]| 1.0, &s, &SerialEvaluator).unwrap();
        prop_assert_eq!(out.terminated_by, Termination::Stagnation);
        prop_assert_eq!(out.iterations_run, window);
    }

    #[test]
    fn seed_fixes_the_trajectory(n in 1usize..6, seed in 0u64..10_000, shift in 0.0..TAU) {
        let f = |b: &[f64]| b.iter().map(|x| 1.0 - (x - shift).cos()).sum::<f64>();
        let s = PsoSettings { seed, max_iterations: 30, stagnation_window: 10, ..PsoSettings::for_dimension(n) };
        let a = minimize(n, &f, &s, &SerialEvaluator).unwrap();
        let b = minimize(n, &f, &s, &SerialEvaluator).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.best_position.iter().all(|x| wrap_phase(*x) == *x));
    }
}
