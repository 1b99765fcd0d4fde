//! JSON scene files (`format: "oss-scene/1"`).
//!
//! ```json
//! {
//!   "format": "oss-scene/1",
//!   "extent": { "min": [-150.0, -50.0], "max": [150.0, 250.0] },
//!   "grid_mode": "cells",
//!   "ground_material": { "eps_r": 6.0, "sigma": 0.136, "thickness": 0.3 },
//!   "buildings": [
//!     { "footprint": [[0.0, 0.0], [20.0, 0.0], [20.0, 30.0], [0.0, 30.0]],
//!       "height": 10.0,
//!       "material": { "eps_r": 6.0, "sigma": 0.136, "thickness": 0.3 } }
//!   ]
//! }
//! ```
//!
//! `ground_material` is optional and defaults to concrete. Files written by
//! [`save_scene`] are canonical: loading and saving them again reproduces
//! the same bytes.

use std::fs;
use std::path::Path;

use oss_core::scene::{Extent, SceneError};
use oss_core::{Building, GridMode, Material, Scene, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{OssError, Result};

pub const SCENE_FORMAT: &str = "oss-scene/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtentJson {
    min: [f64; 2],
    max: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildingJson {
    footprint: Vec<[f64; 2]>,
    height: f64,
    material: Material,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneJson {
    format: String,
    extent: ExtentJson,
    #[serde(default)]
    grid_mode: GridMode,
    #[serde(default)]
    ground_material: Material,
    buildings: Vec<BuildingJson>,
}

/// Scene description as parsed, before validation.
#[derive(Debug, Clone)]
pub struct RawScene {
    pub buildings: Vec<Building>,
    pub extent: Extent,
    pub ground_material: Material,
    pub grid_mode: GridMode,
}

impl RawScene {
    /// Every invariant violation, each naming its building.
    pub fn violations(&self) -> Vec<SceneError> {
        Scene::violations(&self.buildings, &self.extent, &self.ground_material)
    }

    pub fn into_scene(self) -> Result<Scene, SceneError> {
        Scene::new(self.buildings, self.extent, self.ground_material, self.grid_mode)
    }
}

pub fn parse_raw_scene(text: &str) -> Result<RawScene, String> {
    let json: SceneJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if json.format != SCENE_FORMAT {
        return Err(format!(
            "unsupported scene format {:?}, expected {SCENE_FORMAT:?}",
            json.format
        ));
    }
    let v = |p: [f64; 2]| Vec2::new(p[0], p[1]);
    Ok(RawScene {
        buildings: json
            .buildings
            .into_iter()
            .map(|b| Building::new(b.footprint.into_iter().map(v).collect(), b.height, b.material))
            .collect(),
        extent: Extent::new(v(json.extent.min), v(json.extent.max)),
        ground_material: json.ground_material,
        grid_mode: json.grid_mode,
    })
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let raw = parse_raw_scene(text).map_err(OssError::Format)?;
    Ok(raw.into_scene()?)
}

pub fn read_raw_scene(path: &Path) -> Result<RawScene> {
    let text = fs::read_to_string(path).map_err(|e| OssError::io(path, e))?;
    parse_raw_scene(&text).map_err(|e| OssError::Format(format!("{}: {e}", path.display())))
}

pub fn load_scene(path: &Path) -> Result<Scene> {
    Ok(read_raw_scene(path)?.into_scene()?)
}

/// Canonical text of a scene: pretty-printed JSON with a trailing newline.
pub fn scene_to_string(scene: &Scene) -> String {
    let e = scene.extent();
    let json = SceneJson {
        format: SCENE_FORMAT.to_string(),
        extent: ExtentJson {
            min: [e.min.x, e.min.y],
            max: [e.max.x, e.max.y],
        },
        grid_mode: scene.grid_mode(),
        ground_material: scene.ground_material(),
        buildings: scene
            .buildings()
            .iter()
            .map(|b| BuildingJson {
                footprint: b.footprint.iter().map(|p| [p.x, p.y]).collect(),
                height: b.height,
                material: b.material,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn save_scene(scene: &Scene, path: &Path) -> Result<()> {
    fs::write(path, scene_to_string(scene)).map_err(|e| OssError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = r#"{
  "format": "oss-scene/1",
  "extent": { "min": [-50, -50], "max": [50, 50] },
  "grid_mode": "cells",
  "buildings": [
    { "footprint": [[0, 0], [20, 0], [20, 30], [0, 30]], "height": 10,
      "material": { "eps_r": 6, "sigma": 0.136, "thickness": 0.3 } }
  ]
}"#;

    #[test]
    fn canonical_round_trip() {
        let s = parse_scene(ONE).unwrap();
        assert_eq!(s.buildings().len(), 1);
        let text = scene_to_string(&s);
        let again = scene_to_string(&parse_scene(&text).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn empty_scene() {
        let s = parse_scene(
            r#"{"format":"oss-scene/1","extent":{"min":[0,0],"max":[100,100]},"buildings":[]}"#,
        )
        .unwrap();
        assert!(s.buildings().is_empty());
        assert_eq!(s.grid_mode(), GridMode::Cells);
    }

    #[test]
    fn wrong_format_tag() {
        let text = ONE.replace("oss-scene/1", "oss-scene/9");
        assert!(matches!(parse_scene(&text), Err(OssError::Format(_))));
        let text = ONE.replace("\"format\": \"oss-scene/1\",", "");
        assert!(matches!(parse_scene(&text), Err(OssError::Format(_))));
    }

    #[test]
    fn bow_tie_names_building() {
        let text = ONE.replace("[[0, 0], [20, 0], [20, 30], [0, 30]]", "[[0, 0], [20, 30], [20, 0], [0, 30]]");
        match parse_scene(&text) {
            Err(OssError::Scene(SceneError::SelfIntersecting { building })) => assert_eq!(building, 0),
            other => panic!("{other:?}"),
        }
    }
}
