//! Command implementations shared by the binary and the tests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use oss_core::array::{ideal_target_config, normalize_magnitude, random_phases, ArrayConfig, Excitations, PhaseVector};
use oss_core::epep::{power_stats, received_power, EpepMetadata};
use oss_core::optimize::{evaluate_baselines, ideal_coverage, make_target, run_pso_with, Baseline, Timing};
use oss_core::{
    CostDomain, CoverageGrid, EpepDatabase, PowerStats, PsoSettings, RegionOfInterest, Scene,
    SolverSettings, SynthesisProblem, TargetDistribution, Termination, Vec3,
};
use serde::{Deserialize, Serialize};

use crate::config::{resolve, RunConfig};
use crate::dbfile::{check_fresh, load_database, save_database, sidecar_path, Sidecar};
use crate::error::{OssError, Result};
use crate::hash::{config_hash, scene_hash};
use crate::output::{
    format_stats, write_convergence_csv, write_coverage_csv, write_grid_csv, write_heatmap, write_stats_csv,
    write_table_csv,
};
use crate::parallel::{build_database, with_workers, ParallelEvaluator};
use crate::scene_io::{load_scene, read_raw_scene};

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: PathBuf,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Options {
    pub fn new(config: impl Into<PathBuf>) -> Self {
        Self {
            config: config.into(),
            ..Self::default()
        }
    }
}

/// Every problem found in a configuration, each with its location.
pub fn diagnose(config: &RunConfig, base: &Path) -> Vec<String> {
    let mut out = Vec::new();
    let scene_path = resolve(base, &config.scene);
    let scene = match read_raw_scene(&scene_path) {
        Err(e) => {
            out.push(format!("scene: {e}"));
            None
        }
        Ok(raw) => {
            let v = raw.violations();
            out.extend(v.iter().map(|e| format!("scene: {e}")));
            if v.is_empty() {
                raw.into_scene().ok()
            } else {
                None
            }
        }
    };
    let array = config.array.to_config();
    if let Err(e) = array.validate() {
        out.push(format!("array: {e}"));
    }
    let rois = config.roi.as_slice();
    if rois.is_empty() {
        out.push("roi: at least one region is required".into());
    }
    let mut labels: Vec<String> = (0..rois.len()).map(|i| config.roi_label(i)).collect();
    if let Some(scene) = &scene {
        if let Some(b) = scene.building_containing(array.position) {
            out.push(format!("array: position lies inside building {b}"));
        }
        for (i, r) in rois.iter().enumerate() {
            for e in r.to_roi(scene.grid_mode()).violations(scene) {
                out.push(format!("roi {}: {e}", labels[i]));
            }
        }
    }
    labels.sort();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        out.push("roi: names must be unique".into());
    }
    let t = &config.target;
    if t.plant_seed.is_none() && t.rows * t.cols <= array.element_count() {
        out.push(format!(
            "target: ideal array {}x{} must have more elements than the real {}x{}",
            t.rows, t.cols, array.rows, array.cols
        ));
    }
    if !t.rx_gain_dbi.is_finite() {
        out.push("target: rx_gain_dbi must be finite".into());
    }
    if let Err(e) = config.solver.validate() {
        out.push(format!("solver: {e}"));
    }
    if let Err(e) = config.pso.to_settings(array.element_count()).validate() {
        out.push(format!("pso: {e}"));
    }
    if config.delta_sweep.is_empty() {
        out.push("delta_sweep: list must not be empty".into());
    }
    for d in &config.delta_sweep {
        if !(d.is_finite() && *d >= 1.0) {
            out.push(format!("delta_sweep: {d} must be >= 1"));
        }
    }
    let s = config.output.diagnostic_spacing;
    if !(s.is_finite() && s > 0.0) {
        out.push("output: diagnostic_spacing must be > 0".into());
    }
    out
}

/// Parsed, checked and resolved inputs of a run.
#[derive(Debug, Clone)]
pub struct Setup {
    pub config: RunConfig,
    pub base: PathBuf,
    /// Provenance hash written into every artifact.
    pub hash: String,
    pub scene: Scene,
    pub array: ArrayConfig,
    pub out_dir: PathBuf,
    pub workers: Option<usize>,
}

/// Pattern databases for one region and, optionally, the whole scene.
#[derive(Debug, Clone)]
pub struct Databases {
    pub roi: EpepDatabase,
    pub diagnostic: Option<EpepDatabase>,
    /// Build time of the region database [s].
    pub build_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineSummary {
    pub cost: f64,
    pub normalized_cost: f64,
    pub stats: PowerStats,
}

impl From<&Baseline> for BaselineSummary {
    fn from(b: &Baseline) -> Self {
        Self {
            cost: b.cost,
            normalized_cost: b.normalized_cost,
            stats: b.stats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsTable {
    pub target: PowerStats,
    pub opt: PowerStats,
    pub uniform: PowerStats,
    pub steered: PowerStats,
}

impl StatsTable {
    pub fn rows(&self) -> [(&'static str, PowerStats); 4] {
        [
            ("target", self.target),
            ("opt", self.opt),
            ("uniform", self.uniform),
            ("steered", self.steered),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub pso: PsoSettings,
    pub solver: SolverSettings,
    pub cost_domain: CostDomain,
    pub baseline_seed: u64,
    pub plant_seed: Option<u64>,
}

/// Contents of `<label>_result.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub config_sha256: String,
    pub label: String,
    pub n_elements: usize,
    pub n_probes: usize,
    pub xi: f64,
    pub power_scale: f64,
    pub zeta_max_w: f64,
    /// Optimized phases [rad].
    pub best_phases: Vec<f64>,
    pub cost: f64,
    pub normalized_cost: Option<f64>,
    pub normalized_cost_percent: Option<f64>,
    pub uniform_cost: f64,
    pub steered: BaselineSummary,
    pub random: BaselineSummary,
    /// Steering direction toward the region barycenter, (theta, phi) [deg].
    pub steering_deg: [f64; 2],
    pub stats: StatsTable,
    pub cost_history: Vec<f64>,
    pub iterations_run: usize,
    pub terminated_by: Termination,
    pub stagnation_metric: Option<f64>,
    pub evaluations: usize,
    pub timing: Timing,
    pub settings: RunSettings,
    /// Emitted artifacts by kind, relative to the output directory.
    pub files: BTreeMap<String, String>,
}

fn coverage(db: &EpepDatabase, magnitude: f64, phases: &PhaseVector, rx_gain: f64) -> Result<CoverageGrid> {
    let exc = Excitations::uniform(magnitude, phases.clone());
    let f = db.total_field(&exc)?;
    Ok(received_power(db.probes(), &f, db.metadata().frequency_hz, rx_gain))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("plain data serializes");
    fs::write(path, text + "\n").map_err(|e| OssError::io(path, e))
}

impl Setup {
    pub fn load(opts: &Options) -> Result<Self> {
        let (mut config, base) = RunConfig::load(&opts.config)?;
        if let Some(s) = opts.seed {
            config.pso.seed = s;
        }
        let issues = diagnose(&config, &base);
        if !issues.is_empty() {
            return Err(OssError::Config(issues.join("; ")));
        }
        let scene = load_scene(&resolve(&base, &config.scene))?;
        let array = config.array.to_config();
        let out_dir = match &opts.out {
            Some(o) => o.clone(),
            None => resolve(&base, config.output.dir.as_deref().unwrap_or(Path::new("out"))),
        };
        Ok(Self {
            hash: config.hash(),
            config,
            base,
            scene,
            array,
            out_dir,
            workers: opts.workers,
        })
    }

    pub fn roi_count(&self) -> usize {
        self.config.roi.as_slice().len()
    }

    pub fn roi(&self, i: usize) -> RegionOfInterest {
        self.config.roi.as_slice()[i].to_roi(self.scene.grid_mode())
    }

    pub fn label(&self, i: usize) -> String {
        self.config.roi_label(i)
    }

    pub fn diagnostic_probes(&self, i: usize) -> Vec<Vec3> {
        self.scene
            .diagnostic_probes(self.config.output.diagnostic_spacing, self.roi(i).height)
    }

    fn keys(&self) -> ([u8; 32], [u8; 32]) {
        (scene_hash(&self.scene), config_hash(&self.array, &self.config.solver))
    }

    fn out_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn ensure_out_dir(&self) -> Result<()> {
        fs::create_dir_all(&self.out_dir).map_err(|e| OssError::io(&self.out_dir, e))
    }

    /// Traces a fresh database over `probes`; returns it with its build time.
    pub fn build(&self, probes: &[Vec3]) -> Result<(EpepDatabase, f64)> {
        let (scene_hash, config_hash) = self.keys();
        let metadata = EpepMetadata {
            scene_hash,
            config_hash,
            settings: self.config.solver,
            frequency_hz: self.array.frequency_hz,
            xi: normalize_magnitude(&self.array)?,
        };
        let t0 = Instant::now();
        let db = with_workers(self.workers, || {
            build_database(&self.scene, &self.array, probes, &self.config.solver, metadata)
        })??;
        Ok((db, t0.elapsed().as_secs_f64()))
    }

    /// Loads the database at `path`, refusing it if stale; builds and saves
    /// it when the file is missing or `rebuild` is set.
    pub fn database(&self, path: &Path, probes: &[Vec3], rebuild: bool) -> Result<(EpepDatabase, f64)> {
        if !rebuild && path.exists() {
            let db = load_database(path)?;
            let (s, c) = self.keys();
            check_fresh(&db, path, &s, &c, probes)?;
            let secs = fs::read_to_string(sidecar_path(path))
                .ok()
                .and_then(|t| serde_json::from_str::<Sidecar>(&t).ok())
                .and_then(|s| s.build_seconds)
                .unwrap_or(0.0);
            return Ok((db, secs));
        }
        let (db, secs) = self.build(probes)?;
        self.ensure_out_dir()?;
        save_database(&db, path, Some(secs))?;
        Ok((db, secs))
    }

    pub fn database_path(&self, i: usize) -> PathBuf {
        self.out_path(&format!("{}.epepdb", self.label(i)))
    }

    pub fn diagnostic_database_path(&self, i: usize) -> PathBuf {
        self.out_path(&format!("{}_diag.epepdb", self.label(i)))
    }

    pub fn databases(&self, i: usize, rebuild: bool) -> Result<Databases> {
        let (roi, build_s) = self.database(&self.database_path(i), &self.roi(i).probe_points(), rebuild)?;
        let diagnostic = if self.config.output.diagnostic_grid {
            let probes = self.diagnostic_probes(i);
            Some(self.database(&self.diagnostic_database_path(i), &probes, rebuild)?.0)
        } else {
            None
        };
        Ok(Databases {
            roi,
            diagnostic,
            build_s,
        })
    }

    /// Target over the probes of `db`: the ideal array in free space, or a
    /// planted phase vector applied to `db` itself.
    pub fn target(&self, i: usize, db: &EpepDatabase) -> Result<TargetDistribution> {
        let xi = db.metadata().xi;
        let rx = self.config.rx_gain();
        match self.config.target.plant_seed {
            Some(seed) => {
                let mag = self.array.power_scale * xi;
                let grid = coverage(db, mag, &random_phases(&self.array, seed), rx)?;
                Ok(TargetDistribution::from_mw(grid.probes.clone(), grid.power_mw())?)
            }
            None => {
                let t = &self.config.target;
                let ideal = ideal_target_config(&self.array, t.rows, t.cols, &self.roi(i))?;
                Ok(make_target(&ideal, xi, db.probes(), rx)?)
            }
        }
    }

    /// Target coverage over the probes of `db`; unlike [`Setup::target`]
    /// it accepts probes the ideal array leaves dark.
    pub fn target_coverage(&self, i: usize, db: &EpepDatabase) -> Result<CoverageGrid> {
        let rx = self.config.rx_gain();
        match self.config.target.plant_seed {
            Some(seed) => {
                let mag = self.array.power_scale * db.metadata().xi;
                coverage(db, mag, &random_phases(&self.array, seed), rx)
            }
            None => self.ideal_coverage(i, db.metadata().xi, db.probes()),
        }
    }

    fn ideal_coverage(&self, i: usize, xi: f64, probes: &[Vec3]) -> Result<CoverageGrid> {
        let t = &self.config.target;
        let ideal = ideal_target_config(&self.array, t.rows, t.cols, &self.roi(i))?;
        Ok(ideal_coverage(&ideal, xi, probes, self.config.rx_gain())?)
    }

    /// Target over the region and diagnostic probes; tracing is only needed
    /// for planted targets.
    pub fn target_only(&self, i: usize) -> Result<Vec<CoverageGrid>> {
        if self.config.target.plant_seed.is_some() {
            let dbs = self.databases(i, false)?;
            let mut out = vec![self.target(i, &dbs.roi)?.coverage()];
            if let Some(d) = &dbs.diagnostic {
                out.push(self.target_coverage(i, d)?);
            }
            return Ok(out);
        }
        let xi = normalize_magnitude(&self.array)?;
        let roi = self.roi(i).probe_points();
        let mut out = vec![make_target(
            &ideal_target_config(&self.array, self.config.target.rows, self.config.target.cols, &self.roi(i))?,
            xi,
            &roi,
            self.config.rx_gain(),
        )?
        .coverage()];
        if self.config.output.diagnostic_grid {
            out.push(self.ideal_coverage(i, xi, &self.diagnostic_probes(i))?);
        }
        Ok(out)
    }

    /// Full synthesis for region `i` at `power_scale`, writing every
    /// artifact under `label`.
    pub fn synthesize(&self, i: usize, dbs: &Databases, power_scale: f64, label: &str) -> Result<RunResult> {
        let db = &dbs.roi;
        let xi = db.metadata().xi;
        let magnitude = power_scale * xi;
        let rx = self.config.rx_gain();
        let target = self.target(i, db)?;
        let problem = SynthesisProblem::new(db, &target, magnitude, self.config.cost_domain, rx)?;
        let pso = self.config.pso.to_settings(db.n_elements());
        let roi = self.roi(i);
        let base = evaluate_baselines(&problem, &self.array, roi.barycenter(), self.config.baseline_seed())?;
        let t0 = Instant::now();
        let mut result = with_workers(self.workers, || run_pso_with(&problem, &pso, &ParallelEvaluator))??;
        result.timing.synthesis_s = t0.elapsed().as_secs_f64();
        result.timing.database_s = dbs.build_s;
        let opt = problem.coverage(result.best_phases.as_slice());
        let stats = StatsTable {
            target: power_stats(&target.coverage())?,
            opt: power_stats(&opt)?,
            uniform: base.uniform.stats,
            steered: base.steered.stats,
        };

        self.ensure_out_dir()?;
        let mut files = BTreeMap::new();
        let mut put = |kind: String, name: String| {
            files.insert(kind, name.clone());
            self.out_path(&name)
        };
        let h = &self.hash;
        let sets = [
            ("target", target.coverage()),
            ("opt", opt),
            ("uniform", base.uniform.coverage.clone()),
            ("steered", base.steered.coverage.clone()),
        ];
        self.write_maps(&mut put, label, "", &sets, false)?;
        if let Some(d) = &dbs.diagnostic {
            let dsets = [
                ("target", self.target_coverage(i, d)?),
                ("opt", coverage(d, magnitude, &result.best_phases, rx)?),
                ("uniform", coverage(d, magnitude, &base.uniform.phases, rx)?),
                ("steered", coverage(d, magnitude, &base.steered.phases, rx)?),
            ];
            self.write_maps(&mut put, label, "diag_", &dsets, self.config.output.heatmap)?;
        }
        let p = put("convergence".into(), format!("{label}_convergence.csv"));
        write_convergence_csv(&p, h, &result.cost_history, result.uniform_cost)?;
        let p = put("stats".into(), format!("{label}_stats.csv"));
        write_stats_csv(&p, h, &stats.rows())?;
        let json_name = format!("{label}_result.json");
        let json_path = put("result".into(), json_name);

        let run = RunResult {
            config_sha256: self.hash.clone(),
            label: label.to_string(),
            n_elements: db.n_elements(),
            n_probes: db.n_probes(),
            xi,
            power_scale,
            zeta_max_w: power_scale * power_scale * self.array.max_radiated_power_w,
            best_phases: result.best_phases.as_slice().to_vec(),
            cost: result.best_cost,
            normalized_cost: result.normalized_cost,
            normalized_cost_percent: result.normalized_cost.map(|c| 100.0 * c),
            uniform_cost: result.uniform_cost,
            steered: (&base.steered).into(),
            random: (&base.random).into(),
            steering_deg: [base.steering_deg.0, base.steering_deg.1],
            stats,
            cost_history: result.cost_history,
            iterations_run: result.iterations_run,
            terminated_by: result.terminated_by,
            stagnation_metric: result.stagnation_metric,
            evaluations: result.evaluations,
            timing: result.timing,
            settings: RunSettings {
                pso,
                solver: self.config.solver,
                cost_domain: self.config.cost_domain,
                baseline_seed: self.config.baseline_seed(),
                plant_seed: self.config.target.plant_seed,
            },
            files,
        };
        write_json(&json_path, &run)?;
        Ok(run)
    }

    /// Coverage, mismatch and improvement grids for one probe set.
    fn write_maps(
        &self,
        put: &mut impl FnMut(String, String) -> PathBuf,
        label: &str,
        prefix: &str,
        sets: &[(&str, CoverageGrid); 4],
        heatmap: bool,
    ) -> Result<()> {
        let h = &self.hash;
        let target = &sets[0].1;
        let opt = &sets[1].1;
        for (name, grid) in sets {
            let p = put(format!("{prefix}coverage_{name}"), format!("{label}_{prefix}coverage_{name}.csv"));
            write_coverage_csv(&p, h, grid)?;
            if heatmap {
                let p = put(format!("{prefix}heatmap_{name}"), format!("{label}_{prefix}coverage_{name}.png"));
                write_heatmap(&p, &grid.probes, &grid.power_dbm)?;
            }
        }
        for (name, grid) in &sets[1..] {
            let diff: Vec<f64> = grid
                .power_dbm
                .iter()
                .zip(&target.power_dbm)
                .map(|(a, t)| (a - t).abs())
                .collect();
            let p = put(format!("{prefix}mismatch_{name}"), format!("{label}_{prefix}mismatch_{name}.csv"));
            write_grid_csv(&p, h, &grid.probes, "abs_delta_db", &diff)?;
        }
        for (name, grid) in &sets[2..] {
            let gain: Vec<f64> = opt.power_dbm.iter().zip(&grid.power_dbm).map(|(o, r)| o - r).collect();
            let p = put(
                format!("{prefix}improvement_{name}"),
                format!("{label}_{prefix}improvement_{name}.csv"),
            );
            write_grid_csv(&p, h, &grid.probes, "delta_db", &gain)?;
        }
        Ok(())
    }

    fn single_roi(&self) -> Result<()> {
        match self.roi_count() {
            1 => Ok(()),
            n => Err(OssError::Config(format!(
                "this command needs exactly one region of interest, the configuration has {n}; use sweep-roi"
            ))),
        }
    }

    pub fn build_epep(&self) -> Result<Vec<(String, f64)>> {
        let mut out = Vec::new();
        for i in 0..self.roi_count() {
            let dbs = self.databases(i, true)?;
            out.push((self.label(i), dbs.build_s));
        }
        Ok(out)
    }

    pub fn write_targets(&self) -> Result<Vec<(String, PowerStats)>> {
        self.ensure_out_dir()?;
        let mut out = Vec::new();
        for i in 0..self.roi_count() {
            let label = self.label(i);
            let ts = self.target_only(i)?;
            for (t, prefix) in ts.iter().zip(["", "diag_"]) {
                let p = self.out_path(&format!("{label}_{prefix}coverage_target.csv"));
                write_coverage_csv(&p, &self.hash, t)?;
            }
            out.push((label, power_stats(&ts[0])?));
        }
        Ok(out)
    }

    pub fn optimize(&self) -> Result<RunResult> {
        self.single_roi()?;
        let dbs = self.databases(0, false)?;
        self.synthesize(0, &dbs, self.array.power_scale, &self.label(0))
    }

    /// One synthesis per scaling factor, holding the target fixed.
    pub fn sweep_delta(&self) -> Result<Vec<(f64, RunResult)>> {
        self.single_roi()?;
        let dbs = self.databases(0, false)?;
        let label = self.label(0);
        let mut runs = Vec::new();
        for &d in &self.config.delta_sweep {
            let r = self.synthesize(0, &dbs, d * self.array.power_scale, &format!("{label}_delta{d}"))?;
            runs.push((d, r));
        }
        let rows: Vec<Vec<String>> = runs
            .iter()
            .map(|(d, r)| {
                let s = r.stats.opt;
                vec![
                    d.to_string(),
                    r.zeta_max_w.to_string(),
                    r.cost.to_string(),
                    r.normalized_cost.map_or(String::new(), |c| c.to_string()),
                    format!("{:.2}", s.min_dbm),
                    format!("{:.2}", s.max_dbm),
                    format!("{:.2}", s.avg_dbm),
                    r.iterations_run.to_string(),
                ]
            })
            .collect();
        write_table_csv(
            &self.out_path(&format!("{label}_delta_sweep.csv")),
            &self.hash,
            &["delta", "zeta_max_w", "cost", "normalized_cost", "min_dbm", "max_dbm", "avg_dbm", "iterations"],
            &rows,
        )?;
        Ok(runs)
    }

    /// Independent synthesis per region, each with its own database.
    pub fn sweep_roi(&self) -> Result<Vec<RunResult>> {
        let mut runs = Vec::new();
        for i in 0..self.roi_count() {
            let dbs = self.databases(i, false)?;
            runs.push(self.synthesize(i, &dbs, self.array.power_scale, &self.label(i))?);
        }
        let rows: Vec<Vec<String>> = runs
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    r.n_probes.to_string(),
                    r.cost.to_string(),
                    r.normalized_cost.map_or(String::new(), |c| c.to_string()),
                    r.iterations_run.to_string(),
                ]
            })
            .collect();
        write_table_csv(
            &self.out_path("roi_sweep.csv"),
            &self.hash,
            &["roi", "probes", "cost", "normalized_cost", "iterations"],
            &rows,
        )?;
        Ok(runs)
    }
}

/// Text summary of every result file in `dir`.
pub fn report(dir: &Path) -> Result<String> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| OssError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with("_result.json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(OssError::Format(format!("{}: no result files", dir.display())));
    }
    let mut s = String::new();
    for p in paths {
        let text = fs::read_to_string(&p).map_err(|e| OssError::io(&p, e))?;
        let r: RunResult = serde_json::from_str(&text).map_err(|source| OssError::Json { path: p.clone(), source })?;
        s += &format!("== {} (config {})\n", r.label, &r.config_sha256[..12]);
        s += &format!(
            "N = {}, M = {}, zeta_max = {} W, {} iterations, stopped by {:?}\n",
            r.n_elements, r.n_probes, r.zeta_max_w, r.iterations_run, r.terminated_by
        );
        let pct = |c: Option<f64>| c.map_or("n/a".to_string(), |c| format!("{:.2} %", 100.0 * c));
        s += &format!(
            "cost {:.4e}, normalized: opt {}, steered {:.2} %, random {:.2} %\n",
            r.cost,
            pct(r.normalized_cost),
            100.0 * r.steered.normalized_cost,
            100.0 * r.random.normalized_cost
        );
        s += &format!("time saving {:.4} %\n", 100.0 * r.timing.saving);
        s += &format_stats(&r.stats.rows());
        s.push('\n');
    }
    Ok(s)
}
