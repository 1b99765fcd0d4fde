//! Run configuration: one JSON file per reproducible run.
//!
//! ```json
//! {
//!   "scene": "scene.json",
//!   "array": { "rows": 4, "cols": 8, "position": [0, 0, 20],
//!              "azimuth_deg": 0, "downtilt_deg": 2, "frequency_hz": 3.5e9 },
//!   "target": { "rows": 4, "cols": 9 },
//!   "roi": { "center": [0, 140], "width_x": 35, "width_y": 35 },
//!   "solver": { "max_reflections": 2 },
//!   "pso": { "seed": 1 },
//!   "output": { "dir": "out" },
//!   "cost_domain": "linear",
//!   "delta_sweep": [1, 2, 3, 4, 5]
//! }
//! ```
//!
//! Relative paths resolve against the directory holding the config file.
//! `roi` may be a single object or a list; `optimize` needs exactly one.

use std::fs;
use std::path::{Path, PathBuf};

use oss_core::array::{ArrayConfig, ElementPattern, PatternKind};
use oss_core::optimize::{CostDomain, PsoSettings};
use oss_core::physics::{db_to_linear, wavelength};
use oss_core::raytrace::SolverSettings;
use oss_core::{GridMode, RegionOfInterest, Vec2, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{OssError, Result};
use crate::hash::sha256_hex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub kind: PatternKind,
    /// Cosine-power exponent; defaults to the 6.5 dBi patch-like shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    /// Peak gain; defaults to the lossless value for the shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain_dbi: Option<f64>,
}

impl PatternSpec {
    pub fn to_pattern(&self) -> ElementPattern {
        let base = match self.kind {
            PatternKind::Isotropic => ElementPattern::isotropic(),
            PatternKind::CosinePower => match self.exponent {
                Some(q) => ElementPattern::cosine_power(q),
                None => ElementPattern::patch_like(),
            },
        };
        ElementPattern {
            gain_dbi: self.gain_dbi.unwrap_or(base.gain_dbi),
            ..base
        }
    }
}

fn default_power() -> f64 {
    20.0
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySpec {
    pub rows: usize,
    pub cols: usize,
    /// Element spacing along the aperture width [m]; default half a
    /// wavelength.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_z: Option<f64>,
    pub position: [f64; 3],
    #[serde(default)]
    pub azimuth_deg: f64,
    #[serde(default)]
    pub downtilt_deg: f64,
    pub frequency_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_pattern: Option<PatternSpec>,
    #[serde(default = "default_power")]
    pub max_radiated_power_w: f64,
    #[serde(default = "one")]
    pub power_scale: f64,
}

impl ArraySpec {
    pub fn to_config(&self) -> ArrayConfig {
        let half = wavelength(self.frequency_hz) / 2.0;
        ArrayConfig {
            rows: self.rows,
            cols: self.cols,
            spacing_x: self.spacing_x.unwrap_or(half),
            spacing_z: self.spacing_z.unwrap_or(half),
            position: Vec3::new(self.position[0], self.position[1], self.position[2]),
            azimuth_deg: self.azimuth_deg,
            downtilt_deg: self.downtilt_deg,
            frequency_hz: self.frequency_hz,
            element_pattern: self
                .element_pattern
                .as_ref()
                .map(PatternSpec::to_pattern)
                .unwrap_or_default(),
            max_radiated_power_w: self.max_radiated_power_w,
            power_scale: self.power_scale,
        }
    }
}

/// Ideal free-space array defining the target, and the receiver gain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub rx_gain_dbi: f64,
    /// Replace the ideal-array target by the coverage of the real array with
    /// seeded random phases, so a perfect solution is known to exist.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plant_seed: Option<u64>,
}

fn default_height() -> f64 {
    1.5
}

fn default_spacing() -> f64 {
    5.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoiSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub center: [f64; 2],
    pub width_x: f64,
    pub width_y: f64,
    #[serde(default = "default_height")]
    pub height: f64,
    #[serde(default = "default_spacing")]
    pub spacing: f64,
}

impl RoiSpec {
    pub fn to_roi(&self, grid_mode: GridMode) -> RegionOfInterest {
        RegionOfInterest {
            center: Vec2::new(self.center[0], self.center[1]),
            width_x: self.width_x,
            width_y: self.width_y,
            height: self.height,
            spacing: self.spacing,
            grid_mode,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    pub fn as_slice(&self) -> &[T] {
        match self {
            Self::One(t) => std::slice::from_ref(t),
            Self::Many(v) => v,
        }
    }
}

/// Swarm settings; omitted fields take the defaults for the array size.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsoSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swarm_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stagnation_window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stagnation_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cognitive: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub social: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_clamp: Option<f64>,
}

impl PsoSpec {
    pub fn to_settings(&self, n_elements: usize) -> PsoSettings {
        let d = PsoSettings::for_dimension(n_elements);
        PsoSettings {
            swarm_size: self.swarm_size.unwrap_or(d.swarm_size),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            stagnation_window: self.stagnation_window.unwrap_or(d.stagnation_window),
            stagnation_threshold: self.stagnation_threshold.unwrap_or(d.stagnation_threshold),
            inertia: self.inertia.unwrap_or(d.inertia),
            cognitive: self.cognitive.unwrap_or(d.cognitive),
            social: self.social.unwrap_or(d.social),
            seed: self.seed,
            velocity_clamp: self.velocity_clamp.unwrap_or(d.velocity_clamp),
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    /// Also evaluate coverage over the whole scene.
    #[serde(default = "yes")]
    pub diagnostic_grid: bool,
    #[serde(default = "default_spacing")]
    pub diagnostic_spacing: f64,
    /// Render PNG heat maps next to the CSV grids.
    #[serde(default = "yes")]
    pub heatmap: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: None,
            diagnostic_grid: true,
            diagnostic_spacing: default_spacing(),
            heatmap: true,
        }
    }
}

fn default_deltas() -> Vec<f64> {
    vec![1.0, 2.0, 3.0, 4.0, 5.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scene: PathBuf,
    pub array: ArraySpec,
    pub target: TargetSpec,
    pub roi: OneOrMany<RoiSpec>,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default)]
    pub pso: PsoSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub cost_domain: CostDomain,
    #[serde(default = "default_deltas")]
    pub delta_sweep: Vec<f64>,
    /// Seed of the random-phase baseline; defaults to the PSO seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_seed: Option<u64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = fs::read_to_string(path).map_err(|e| OssError::io(path, e))?;
        let cfg = Self::parse(&text).map_err(|source| OssError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    /// Hex SHA-256 of the canonical JSON of everything that affects results;
    /// the output directory is excluded.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output.dir = None;
        sha256_hex(serde_json::to_string(&c).expect("plain data serializes").as_bytes())
    }

    pub fn rx_gain(&self) -> f64 {
        db_to_linear(self.target.rx_gain_dbi)
    }

    pub fn baseline_seed(&self) -> u64 {
        self.baseline_seed.unwrap_or(self.pso.seed)
    }

    /// Label of RoI `i`: its name, or `roi<i>`.
    pub fn roi_label(&self, i: usize) -> String {
        self.roi.as_slice()[i]
            .name
            .clone()
            .unwrap_or_else(|| format!("roi{i}"))
    }
}

pub fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIN: &str = r#"{
        "scene": "scene.json",
        "array": { "rows": 4, "cols": 8, "position": [0, 0, 20], "frequency_hz": 3.5e9 },
        "target": { "rows": 4, "cols": 9 },
        "roi": { "center": [0, 140], "width_x": 35, "width_y": 35 }
    }"#;

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::parse(MIN).unwrap();
        let a = c.array.to_config();
        assert!((a.spacing_x - wavelength(3.5e9) / 2.0).abs() < 1e-15);
        assert_eq!(a.max_radiated_power_w, 20.0);
        assert_eq!(a.element_pattern, ElementPattern::patch_like());
        let p = c.pso.to_settings(32);
        assert_eq!((p.swarm_size, p.max_iterations, p.stagnation_window), (64, 1000, 100));
        assert_eq!(c.solver, SolverSettings::default());
        assert_eq!(c.cost_domain, CostDomain::Linear);
        assert_eq!(c.roi.as_slice().len(), 1);
        assert_eq!(c.roi.as_slice()[0].spacing, 5.0);
        assert_eq!(c.delta_sweep, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn roi_list_and_hash() {
        let many = MIN.replace(
            r#""roi": { "center": [0, 140], "width_x": 35, "width_y": 35 }"#,
            r#""roi": [{ "center": [0, 140], "width_x": 35, "width_y": 35 }, { "name": "b", "center": [0, 150], "width_x": 80, "width_y": 80 }]"#,
        );
        let c = RunConfig::parse(&many).unwrap();
        assert_eq!(c.roi.as_slice().len(), 2);
        assert_eq!(c.roi_label(1), "b");
        assert_eq!(c.roi_label(0), "roi0");
        let a = RunConfig::parse(MIN).unwrap();
        let mut b = a.clone();
        b.output.dir = Some("elsewhere".into());
        assert_eq!(a.hash(), b.hash());
        b.pso.seed = 3;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = MIN.replace("\"target\"", "\"tagret\"");
        assert!(RunConfig::parse(&bad).is_err());
    }
}
