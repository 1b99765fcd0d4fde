//! Per-element pattern database and field reconstruction.
//!
//! The database stores, for every element `n` and probe `m`, the field
//! produced at the probe when only element `n` is driven with unit
//! excitation. Any excitation set is then reconstructed by a weighted sum,
//! with no further calls to the solver.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::array::{ArrayConfig, Excitations};
use crate::geometry::{CVec3, Vec3};
use crate::physics::{eta0, linear_to_db, wavelength};
use crate::raytrace::{compute_epep, SolverSettings, TraceError};
use crate::scene::Scene;

/// Reported power for probes that receive no field [dBm].
pub const POWER_FLOOR_DBM: f64 = -250.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EpepError {
    #[error("expected {expected} field samples, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("database needs at least one element and one probe")]
    Empty,
    #[error("non-finite field for element {element} at probe {probe}")]
    NonFinite { element: usize, probe: usize },
    #[error("expected {expected} excitations, got {got}")]
    ExcitationLength { expected: usize, got: usize },
    #[error("power statistics need a non-empty grid")]
    EmptyGrid,
    #[error("probe lists differ")]
    ProbeMismatch,
}

/// Provenance of a database.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpepMetadata {
    /// SHA-256 of the canonical scene.
    pub scene_hash: [u8; 32],
    /// SHA-256 of the canonical array configuration.
    pub config_hash: [u8; 32],
    pub settings: SolverSettings,
    pub frequency_hz: f64,
    /// Normalized excitation magnitude at unit power scale.
    pub xi: f64,
}

/// Fields of N elements at M probes, stored element-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EpepDatabase {
    metadata: EpepMetadata,
    n_elements: usize,
    probes: Vec<Vec3>,
    fields: Vec<CVec3>,
}

impl EpepDatabase {
    /// `fields[n * M + m]` is the field of element `n` at probe `m`.
    pub fn new(
        metadata: EpepMetadata,
        n_elements: usize,
        probes: Vec<Vec3>,
        fields: Vec<CVec3>,
    ) -> Result<Self, EpepError> {
        let m = probes.len();
        if n_elements == 0 || m == 0 {
            return Err(EpepError::Empty);
        }
        if fields.len() != n_elements * m {
            return Err(EpepError::Dimension {
                expected: n_elements * m,
                got: fields.len(),
            });
        }
        if let Some(i) = fields.iter().position(|e| !e.is_finite()) {
            return Err(EpepError::NonFinite {
                element: i / m,
                probe: i % m,
            });
        }
        Ok(Self {
            metadata,
            n_elements,
            probes,
            fields,
        })
    }

    pub fn metadata(&self) -> &EpepMetadata {
        &self.metadata
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_probes(&self) -> usize {
        self.probes.len()
    }

    pub fn probes(&self) -> &[Vec3] {
        &self.probes
    }

    pub fn fields(&self) -> &[CVec3] {
        &self.fields
    }

    /// Pattern layer of one element (zero-based) over all probes.
    pub fn layer(&self, element: usize) -> &[CVec3] {
        let m = self.n_probes();
        &self.fields[element * m..(element + 1) * m]
    }

    /// Total field for complex element weights.
    pub fn total_field_weights(&self, weights: &[Complex64]) -> Result<Vec<CVec3>, EpepError> {
        if weights.len() != self.n_elements {
            return Err(EpepError::ExcitationLength {
                expected: self.n_elements,
                got: weights.len(),
            });
        }
        let mut out = alloc::vec![CVec3::ZERO; self.n_probes()];
        self.accumulate(weights, &mut out);
        Ok(out)
    }

    /// Total field E(r_m) = sum_n alpha_n exp(j beta_n) E_n(r_m).
    pub fn total_field(&self, exc: &Excitations) -> Result<Vec<CVec3>, EpepError> {
        if exc.magnitudes.len() != exc.phases.len() {
            return Err(EpepError::ExcitationLength {
                expected: exc.phases.len(),
                got: exc.magnitudes.len(),
            });
        }
        self.total_field_weights(&exc.weights())
    }

    /// Sums into `out` element by element; the order is fixed so results do
    /// not depend on the caller.
    pub(crate) fn accumulate(&self, weights: &[Complex64], out: &mut [CVec3]) {
        for (n, w) in weights.iter().enumerate() {
            for (acc, e) in out.iter_mut().zip(self.layer(n)) {
                *acc += e.scale(*w);
            }
        }
    }
}

/// Fields of every element at every probe, element-major, computed serially.
pub fn build_fields(
    scene: &Scene,
    cfg: &ArrayConfig,
    probes: &[Vec3],
    settings: &SolverSettings,
) -> Result<Vec<CVec3>, TraceError> {
    let mut out = Vec::with_capacity(cfg.element_count() * probes.len());
    for n in 0..cfg.element_count() {
        out.extend(compute_epep(scene, cfg, n, probes, settings)?);
    }
    Ok(out)
}

/// Received power per probe.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageGrid {
    pub probes: Vec<Vec3>,
    pub power_dbm: Vec<f64>,
}

impl CoverageGrid {
    /// Power per probe in milliwatts; floor entries map to 0.
    pub fn power_mw(&self) -> Vec<f64> {
        self.power_dbm.iter().map(|p| dbm_to_mw(*p)).collect()
    }
}

/// Conversion factor from |E|^2 [V^2/m^2] to received power [mW]:
/// lambda^2 G_rx / (8 pi eta0), times 1000.
pub fn power_factor_mw(frequency_hz: f64, rx_gain: f64) -> f64 {
    let lambda = wavelength(frequency_hz);
    1e3 * lambda * lambda * rx_gain / (8.0 * PI * eta0())
}

/// Milliwatts to dBm with the floor sentinel.
pub fn mw_to_dbm(p: f64) -> f64 {
    if p > 0.0 {
        linear_to_db(p).max(POWER_FLOOR_DBM)
    } else {
        POWER_FLOOR_DBM
    }
}

/// dBm to milliwatts; the floor sentinel maps to 0.
pub fn dbm_to_mw(p: f64) -> f64 {
    if p <= POWER_FLOOR_DBM {
        0.0
    } else {
        libm::pow(10.0, p / 10.0)
    }
}

/// Received power [dBm] at each probe for a receiver of linear gain
/// `rx_gain`.
pub fn received_power(probes: &[Vec3], fields: &[CVec3], frequency_hz: f64, rx_gain: f64) -> CoverageGrid {
    let k = power_factor_mw(frequency_hz, rx_gain);
    CoverageGrid {
        probes: probes.to_vec(),
        power_dbm: fields.iter().map(|e| mw_to_dbm(k * e.norm_sqr())).collect(),
    }
}

/// Minimum, maximum and mean received power [dBm]; the mean is taken over
/// milliwatts.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerStats {
    pub min_dbm: f64,
    pub max_dbm: f64,
    pub avg_dbm: f64,
}

pub fn power_stats(grid: &CoverageGrid) -> Result<PowerStats, EpepError> {
    let p = &grid.power_dbm;
    if p.is_empty() {
        return Err(EpepError::EmptyGrid);
    }
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    let max = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = p.iter().map(|v| dbm_to_mw(*v)).sum::<f64>() / p.len() as f64;
    Ok(PowerStats {
        min_dbm: min,
        max_dbm: max,
        avg_dbm: mw_to_dbm(mean),
    })
}
