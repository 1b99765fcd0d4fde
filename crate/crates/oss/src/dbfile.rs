//! `.epepdb` container for pattern databases.
//!
//! Layout, all little-endian:
//!
//! | bytes   | content                                              |
//! |---------|------------------------------------------------------|
//! | 8       | magic `OSSEPEP\0`                                    |
//! | 4       | version (`u32`)                                      |
//! | 8 + 8   | N elements, M probes (`u64`)                         |
//! | 8 + 8   | frequency [Hz], xi (`f64`)                           |
//! | 32 + 32 | scene and configuration SHA-256                      |
//! | 4+1+1+2 | max reflections (`u32`), ground, transmission, pad   |
//! | 8       | minimum path gain [dB] (`f64`)                       |
//! | N·M·48  | fields, element-major, (re, im) for x, y, z          |
//! | M·24    | probe coordinates                                    |
//! | 32      | SHA-256 of everything before it                      |
//!
//! A JSON sidecar (`<file>.json`) repeats the metadata in readable form.

use std::fs;
use std::path::{Path, PathBuf};

use oss_core::epep::EpepMetadata;
use oss_core::geometry::CVec3;
use oss_core::{Complex64, EpepDatabase, SolverSettings, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{OssError, Result};
use crate::hash::sha256;

pub const MAGIC: &[u8; 8] = b"OSSEPEP\0";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 16 + 16 + 64 + 8 + 8;

pub fn encode(db: &EpepDatabase) -> Vec<u8> {
    let md = db.metadata();
    let n = db.n_elements();
    let m = db.n_probes();
    let mut b = Vec::with_capacity(HEADER_LEN + n * m * 48 + m * 24 + 32);
    b.extend_from_slice(MAGIC);
    b.extend_from_slice(&VERSION.to_le_bytes());
    b.extend_from_slice(&(n as u64).to_le_bytes());
    b.extend_from_slice(&(m as u64).to_le_bytes());
    b.extend_from_slice(&md.frequency_hz.to_le_bytes());
    b.extend_from_slice(&md.xi.to_le_bytes());
    b.extend_from_slice(&md.scene_hash);
    b.extend_from_slice(&md.config_hash);
    let s = &md.settings;
    b.extend_from_slice(&(s.max_reflections as u32).to_le_bytes());
    b.push(s.enable_ground as u8);
    b.push(s.enable_transmission as u8);
    b.extend_from_slice(&[0, 0]);
    b.extend_from_slice(&s.min_path_gain_db.to_le_bytes());
    for e in db.fields() {
        for c in e.components() {
            b.extend_from_slice(&c.re.to_le_bytes());
            b.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    for p in db.probes() {
        for v in [p.x, p.y, p.z] {
            b.extend_from_slice(&v.to_le_bytes());
        }
    }
    let digest = sha256(&b);
    b.extend_from_slice(&digest);
    b
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const K: usize>(&mut self) -> [u8; K] {
        let out = self.buf[self.pos..self.pos + K].try_into().expect("length checked");
        self.pos += K;
        out
    }

    fn u32(&mut self) -> u32 {
        u32::from_le_bytes(self.take())
    }

    fn u64(&mut self) -> u64 {
        u64::from_le_bytes(self.take())
    }

    fn f64(&mut self) -> f64 {
        f64::from_le_bytes(self.take())
    }

    fn u8(&mut self) -> u8 {
        self.take::<1>()[0]
    }
}

/// Parses a container; `Err` carries the reason it is unreadable.
pub fn decode(bytes: &[u8]) -> Result<EpepDatabase, String> {
    if bytes.len() < HEADER_LEN + 32 {
        return Err(format!("truncated: {} bytes", bytes.len()));
    }
    if &bytes[..8] != MAGIC {
        return Err("bad magic".into());
    }
    let mut r = Reader { buf: bytes, pos: 8 };
    let version = r.u32();
    if version != VERSION {
        return Err(format!("unsupported version {version}"));
    }
    let n = r.u64() as usize;
    let m = r.u64() as usize;
    let expected = n
        .checked_mul(m)
        .and_then(|nm| nm.checked_mul(48))
        .and_then(|f| f.checked_add(m.checked_mul(24)?))
        .and_then(|body| body.checked_add(HEADER_LEN + 32))
        .ok_or("dimensions overflow")?;
    if bytes.len() != expected {
        return Err(format!(
            "length {} does not match N = {n}, M = {m} (expected {expected})",
            bytes.len()
        ));
    }
    let (body, digest) = bytes.split_at(expected - 32);
    if sha256(body) != digest {
        return Err("checksum mismatch".into());
    }
    let frequency_hz = r.f64();
    let xi = r.f64();
    let scene_hash = r.take::<32>();
    let config_hash = r.take::<32>();
    let max_reflections = r.u32() as usize;
    let enable_ground = r.u8() != 0;
    let enable_transmission = r.u8() != 0;
    r.take::<2>();
    let min_path_gain_db = r.f64();
    let mut c = || Complex64::new(r.f64(), r.f64());
    let fields: Vec<CVec3> = (0..n * m).map(|_| CVec3::new(c(), c(), c())).collect();
    let probes: Vec<Vec3> = (0..m).map(|_| Vec3::new(r.f64(), r.f64(), r.f64())).collect();
    let metadata = EpepMetadata {
        scene_hash,
        config_hash,
        settings: SolverSettings {
            max_reflections,
            enable_ground,
            enable_transmission,
            min_path_gain_db,
        },
        frequency_hz,
        xi,
    };
    EpepDatabase::new(metadata, n, probes, fields).map_err(|e| e.to_string())
}

/// Readable copy of the header, written next to the binary file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub format: String,
    pub n_elements: usize,
    pub n_probes: usize,
    pub frequency_hz: f64,
    pub xi: f64,
    pub scene_sha256: String,
    pub config_sha256: String,
    pub solver: SolverSettings,
    pub file_sha256: String,
    pub build_seconds: Option<f64>,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the container and its sidecar; returns the container's SHA-256.
pub fn save_database(db: &EpepDatabase, path: &Path, build_seconds: Option<f64>) -> Result<String> {
    let bytes = encode(db);
    fs::write(path, &bytes).map_err(|e| OssError::io(path, e))?;
    let md = db.metadata();
    let file_sha256 = hex::encode(sha256(&bytes));
    let side = Sidecar {
        format: format!("epepdb/{VERSION}"),
        n_elements: db.n_elements(),
        n_probes: db.n_probes(),
        frequency_hz: md.frequency_hz,
        xi: md.xi,
        scene_sha256: hex::encode(md.scene_hash),
        config_sha256: hex::encode(md.config_hash),
        solver: md.settings,
        file_sha256: file_sha256.clone(),
        build_seconds,
    };
    let sp = sidecar_path(path);
    let text = serde_json::to_string_pretty(&side).expect("plain data serializes");
    fs::write(&sp, text + "\n").map_err(|e| OssError::io(&sp, e))?;
    Ok(file_sha256)
}

pub fn load_database(path: &Path) -> Result<EpepDatabase> {
    let bytes = fs::read(path).map_err(|e| OssError::io(path, e))?;
    decode(&bytes).map_err(|reason| OssError::CorruptDatabase {
        path: path.to_path_buf(),
        reason,
    })
}

/// Refuses a database built for a different scene, array, solver or probe
/// set.
pub fn check_fresh(
    db: &EpepDatabase,
    path: &Path,
    scene_hash: &[u8; 32],
    config_hash: &[u8; 32],
    probes: &[Vec3],
) -> Result<()> {
    let md = db.metadata();
    let stale = |what| {
        Err(OssError::StaleDatabase {
            path: path.to_path_buf(),
            what,
        })
    };
    if &md.scene_hash != scene_hash {
        return stale("scene");
    }
    if &md.config_hash != config_hash {
        return stale("array or solver configuration");
    }
    if db.probes() != probes {
        return stale("probe grid");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EpepDatabase {
        let md = EpepMetadata {
            scene_hash: [1; 32],
            config_hash: [2; 32],
            settings: SolverSettings::default(),
            frequency_hz: 3.5e9,
            xi: 0.7,
        };
        let probes = vec![Vec3::new(1.0, 2.0, 1.5), Vec3::new(-3.0, 4.0, 1.5)];
        let fields = (0..6)
            .map(|i| {
                let c = |k: f64| Complex64::new(i as f64 + k, -(i as f64) * k + 0.1);
                CVec3::new(c(0.1), c(0.2), c(0.3))
            })
            .collect();
        EpepDatabase::new(md, 3, probes, fields).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let db = sample();
        let bytes = encode(&db);
        assert_eq!(bytes.len(), HEADER_LEN + 3 * 2 * 48 + 2 * 24 + 32);
        assert_eq!(decode(&bytes).unwrap(), db);
    }

    #[test]
    fn truncation_and_bit_flips_detected() {
        let bytes = encode(&sample());
        assert!(decode(&bytes[..bytes.len() - 1]).unwrap_err().contains("length"));
        assert!(decode(&bytes[..20]).unwrap_err().contains("truncated"));
        let mut flipped = bytes.clone();
        flipped[HEADER_LEN + 5] ^= 0x10;
        assert!(decode(&flipped).unwrap_err().contains("checksum"));
        let mut magic = bytes;
        magic[0] = b'X';
        assert!(decode(&magic).unwrap_err().contains("magic"));
    }

    #[test]
    fn staleness() {
        let db = sample();
        let p = Path::new("x.epepdb");
        let probes = db.probes().to_vec();
        assert!(check_fresh(&db, p, &[1; 32], &[2; 32], &probes).is_ok());
        assert!(matches!(
            check_fresh(&db, p, &[9; 32], &[2; 32], &probes),
            Err(OssError::StaleDatabase { what: "scene", .. })
        ));
        assert!(matches!(
            check_fresh(&db, p, &[1; 32], &[9; 32], &probes),
            Err(OssError::StaleDatabase { .. })
        ));
        assert!(matches!(
            check_fresh(&db, p, &[1; 32], &[2; 32], &probes[..1]),
            Err(OssError::StaleDatabase { what: "probe grid", .. })
        ));
    }
}
