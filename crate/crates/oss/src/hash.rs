//! SHA-256 provenance hashes.

use oss_core::array::ArrayConfig;
use oss_core::raytrace::SolverSettings;
use oss_core::Scene;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::scene_io::scene_to_string;

pub fn sha256(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(sha256(bytes))
}

/// Hash of the canonical scene file text.
pub fn scene_hash(scene: &Scene) -> [u8; 32] {
    sha256(scene_to_string(scene).as_bytes())
}

#[derive(Serialize)]
struct ConfigKey<'a> {
    array: &'a ArrayConfig,
    solver: &'a SolverSettings,
}

/// Hash of everything besides the scene that determines database content.
/// The power scale does not change the per-element patterns and is left
/// out.
pub fn config_hash(cfg: &ArrayConfig, settings: &SolverSettings) -> [u8; 32] {
    let cfg = ArrayConfig {
        power_scale: 1.0,
        ..*cfg
    };
    let key = ConfigKey {
        array: &cfg,
        solver: settings,
    };
    sha256(serde_json::to_string(&key).expect("plain data serializes").as_bytes())
}
