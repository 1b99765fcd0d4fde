//! Planar base-station array: geometry, orientation, element pattern,
//! radiated power and analytic phase presets.
//!
//! Local frame: the aperture lies in the local (x, z) plane and broadside is
//! local +y. Element `n` sits at row `n / cols` (bottom row first) and column
//! `n % cols` (left column first), centered on the aperture centroid.
//!
//! World frame: x east, y north, z up. Azimuth is measured clockwise from
//! north; downtilt rotates broadside below the horizon.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use libm::{acos, atan2, cos, fmod, pow, sincos, sqrt};
use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::Vec3;
use crate::physics::{eta0, wavelength, wavenumber};
use crate::quadrature::gauss_legendre;
use crate::rng;
use crate::scene::RegionOfInterest;

/// Analytic element pattern shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PatternKind {
    Isotropic,
    /// `cos(psi)^exponent` over the forward hemisphere, zero behind, with
    /// `psi` the angle from broadside.
    CosinePower,
}

/// Power gain pattern of one embedded element.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ElementPattern {
    pub kind: PatternKind,
    /// Exponent of the cosine-power shape; ignored for isotropic.
    pub exponent: f64,
    /// Peak gain [dBi].
    pub gain_dbi: f64,
}

impl ElementPattern {
    pub fn isotropic() -> Self {
        Self {
            kind: PatternKind::Isotropic,
            exponent: 0.0,
            gain_dbi: 0.0,
        }
    }

    /// Cosine-power shape with the peak gain that makes it lossless:
    /// the directivity of `cos^q` over a hemisphere is `2 (q + 1)`.
    pub fn cosine_power(exponent: f64) -> Self {
        Self {
            kind: PatternKind::CosinePower,
            exponent,
            gain_dbi: 10.0 * libm::log10(2.0 * (exponent + 1.0)),
        }
    }

    /// Forward-hemisphere patch stand-in with 6.5 dBi peak gain.
    pub fn patch_like() -> Self {
        Self::cosine_power(pow(10.0, 0.65) / 2.0 - 1.0)
    }

    /// Linear power gain along a local unit direction.
    pub fn power_gain(&self, dir_local: Vec3) -> f64 {
        let peak = pow(10.0, self.gain_dbi / 10.0);
        match self.kind {
            PatternKind::Isotropic => peak,
            PatternKind::CosinePower => {
                let c = dir_local.y;
                if c <= 0.0 {
                    0.0
                } else {
                    peak * pow(c, self.exponent)
                }
            }
        }
    }
}

impl Default for ElementPattern {
    fn default() -> Self {
        Self::patch_like()
    }
}

/// Slant +45 deg reference polarization in the aperture plane.
const SLANT_POLARIZATION: Vec3 = Vec3::new(
    core::f64::consts::FRAC_1_SQRT_2,
    0.0,
    core::f64::consts::FRAC_1_SQRT_2,
);

/// Transverse polarization unit vector along a local direction: the slant
/// reference projected orthogonally to the direction of propagation.
pub fn polarization_local(dir_local: Vec3) -> Vec3 {
    let project = |r: Vec3| {
        let t = r - dir_local * r.dot(dir_local);
        if t.norm() > 1e-6 {
            t.normalized()
        } else {
            None
        }
    };
    project(SLANT_POLARIZATION)
        .or_else(|| project(Vec3::new(SLANT_POLARIZATION.x, 0.0, -SLANT_POLARIZATION.z)))
        .unwrap_or(Vec3::X)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArrayError {
    #[error("array needs at least one row and one column")]
    Empty,
    #[error("element spacing must be finite and > 0")]
    Spacing,
    #[error("frequency must be finite and > 0")]
    Frequency,
    #[error("maximum radiated power must be finite and > 0")]
    Power,
    #[error("power scale must be finite and >= 1")]
    PowerScale,
    #[error("downtilt must be finite and >= 0")]
    Downtilt,
    #[error("array position and azimuth must be finite")]
    Placement,
    #[error("element pattern exponent must be finite and >= 0")]
    PatternExponent,
    #[error("array radiates no power with uniform excitation")]
    DegeneratePattern,
    #[error("ideal array must have more elements than the real one ({ideal} <= {real})")]
    IdealNotLarger { real: usize, ideal: usize },
    #[error("expected {expected} excitations, got {got}")]
    Length { expected: usize, got: usize },
    #[error("phases must be finite")]
    NonFinitePhase,
}

/// Planar array with mechanical orientation and power budget.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArrayConfig {
    /// Element rows along local z.
    pub rows: usize,
    /// Element columns along local x.
    pub cols: usize,
    pub spacing_x: f64,
    pub spacing_z: f64,
    /// Aperture centroid in world coordinates [m].
    pub position: Vec3,
    /// Broadside azimuth, degrees clockwise from north (+y).
    pub azimuth_deg: f64,
    /// Mechanical downtilt [deg], >= 0.
    pub downtilt_deg: f64,
    pub frequency_hz: f64,
    pub element_pattern: ElementPattern,
    /// Radiated power budget for unit power scale [W].
    pub max_radiated_power_w: f64,
    /// Excitation magnitude multiplier, >= 1.
    pub power_scale: f64,
}

impl ArrayConfig {
    /// `rows x cols` array at half-wavelength spacing, 20 W budget, no
    /// rotation, patch-like elements.
    pub fn half_wave(rows: usize, cols: usize, frequency_hz: f64, position: Vec3) -> Self {
        let d = wavelength(frequency_hz) / 2.0;
        Self {
            rows,
            cols,
            spacing_x: d,
            spacing_z: d,
            position,
            azimuth_deg: 0.0,
            downtilt_deg: 0.0,
            frequency_hz,
            element_pattern: ElementPattern::patch_like(),
            max_radiated_power_w: 20.0,
            power_scale: 1.0,
        }
    }

    pub fn element_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn wavelength(&self) -> f64 {
        wavelength(self.frequency_hz)
    }

    pub fn wavenumber(&self) -> f64 {
        wavenumber(self.frequency_hz)
    }

    pub fn validate(&self) -> Result<(), ArrayError> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        if self.rows == 0 || self.cols == 0 {
            return Err(ArrayError::Empty);
        }
        if !(pos(self.spacing_x) && pos(self.spacing_z)) {
            return Err(ArrayError::Spacing);
        }
        if !pos(self.frequency_hz) {
            return Err(ArrayError::Frequency);
        }
        if !pos(self.max_radiated_power_w) {
            return Err(ArrayError::Power);
        }
        if !(self.power_scale.is_finite() && self.power_scale >= 1.0) {
            return Err(ArrayError::PowerScale);
        }
        if !(self.downtilt_deg.is_finite() && self.downtilt_deg >= 0.0) {
            return Err(ArrayError::Downtilt);
        }
        if !(self.position.is_finite() && self.azimuth_deg.is_finite()) {
            return Err(ArrayError::Placement);
        }
        let ep = self.element_pattern;
        if !(ep.exponent.is_finite() && ep.exponent >= 0.0 && ep.gain_dbi.is_finite()) {
            return Err(ArrayError::PatternExponent);
        }
        Ok(())
    }

    pub fn frame(&self) -> ArrayFrame {
        ArrayFrame::new(self.position, self.azimuth_deg, self.downtilt_deg)
    }
}

/// Orthonormal array basis expressed in world coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayFrame {
    pub origin: Vec3,
    /// Local x (across the aperture, horizontal before tilt).
    pub ex: Vec3,
    /// Local y (broadside).
    pub ey: Vec3,
    /// Local z (up the aperture).
    pub ez: Vec3,
}

impl ArrayFrame {
    pub fn new(origin: Vec3, azimuth_deg: f64, downtilt_deg: f64) -> Self {
        let (sp, cp) = sincos(azimuth_deg.to_radians());
        let (st, ct) = sincos(downtilt_deg.to_radians());
        Self {
            origin,
            ex: Vec3::new(cp, -sp, 0.0),
            ey: Vec3::new(ct * sp, ct * cp, -st),
            ez: Vec3::new(st * sp, st * cp, ct),
        }
    }

    pub fn dir_to_world(&self, d: Vec3) -> Vec3 {
        self.ex * d.x + self.ey * d.y + self.ez * d.z
    }

    pub fn dir_to_local(&self, d: Vec3) -> Vec3 {
        Vec3::new(d.dot(self.ex), d.dot(self.ey), d.dot(self.ez))
    }

    pub fn to_world(&self, p: Vec3) -> Vec3 {
        self.origin + self.dir_to_world(p)
    }

    pub fn to_local(&self, p: Vec3) -> Vec3 {
        self.dir_to_local(p - self.origin)
    }
}

/// Local element positions, row-major from the bottom-left element.
pub fn element_positions(cfg: &ArrayConfig) -> Vec<Vec3> {
    let (rows, cols) = (cfg.rows, cfg.cols);
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            out.push(Vec3::new(
                (c as f64 - (cols as f64 - 1.0) / 2.0) * cfg.spacing_x,
                0.0,
                (r as f64 - (rows as f64 - 1.0) / 2.0) * cfg.spacing_z,
            ));
        }
    }
    out
}

pub fn element_world_positions(cfg: &ArrayConfig) -> Vec<Vec3> {
    let frame = cfg.frame();
    element_positions(cfg)
        .into_iter()
        .map(|p| frame.to_world(p))
        .collect()
}

pub fn local_to_world(cfg: &ArrayConfig, local: Vec3) -> Vec3 {
    cfg.frame().to_world(local)
}

pub fn world_to_local(cfg: &ArrayConfig, world: Vec3) -> Vec3 {
    cfg.frame().to_local(world)
}

/// Far-field launch of one element along a world direction: field
/// amplitude at 1 m for unit excitation and the world polarization vector.
///
/// Unit excitation of an isolated isotropic element radiates 1 W.
pub fn element_launch(cfg: &ArrayConfig, frame: &ArrayFrame, dir_world: Vec3) -> (f64, Vec3) {
    let local = frame.dir_to_local(dir_world);
    let g = cfg.element_pattern.power_gain(local);
    let amp = sqrt(eta0() * g / (2.0 * PI));
    (amp, frame.dir_to_world(polarization_local(local)))
}

/// Wraps a phase into [0, 2 pi).
pub fn wrap_phase(x: f64) -> f64 {
    let r = fmod(x, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// The N excitation phases [rad], each in [0, 2 pi).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct PhaseVector(Vec<f64>);

impl PhaseVector {
    /// Wraps every entry into [0, 2 pi); rejects non-finite values.
    pub fn new(phases: Vec<f64>) -> Result<Self, ArrayError> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(ArrayError::NonFinitePhase);
        }
        Ok(Self(phases.into_iter().map(wrap_phase).collect()))
    }

    pub fn zeros(n: usize) -> Self {
        Self(alloc::vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Excitation magnitudes and phases, w_n = alpha_n exp(j beta_n).
#[derive(Debug, Clone, PartialEq)]
pub struct Excitations {
    pub magnitudes: Vec<f64>,
    pub phases: PhaseVector,
}

impl Excitations {
    /// Uniform magnitude on every element.
    pub fn uniform(magnitude: f64, phases: PhaseVector) -> Self {
        Self {
            magnitudes: alloc::vec![magnitude; phases.len()],
            phases,
        }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn weights(&self) -> Vec<Complex64> {
        self.magnitudes
            .iter()
            .zip(self.phases.as_slice())
            .map(|(a, b)| Complex64::from_polar(*a, *b))
            .collect()
    }
}

/// Angular sampling of the radiated-power integral: Gauss-Legendre in
/// cos(theta), midpoint rule in phi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereQuadrature {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl SphereQuadrature {
    pub const DEFAULT: Self = Self {
        n_theta: 180,
        n_phi: 360,
    };

    pub fn doubled(self) -> Self {
        Self {
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
        }
    }
}

/// Free-space radiated power [W] with the default quadrature.
pub fn radiated_power(cfg: &ArrayConfig, exc: &Excitations) -> f64 {
    radiated_power_with(cfg, exc, SphereQuadrature::DEFAULT)
}

/// Free-space radiated power [W]: (1 / 2 eta0) times the integral of the
/// far-field intensity over the sphere, i.e. (1 / 4 pi) times the integral
/// of G |AF|^2.
pub fn radiated_power_with(cfg: &ArrayConfig, exc: &Excitations, q: SphereQuadrature) -> f64 {
    let weights = exc.weights();
    if weights.iter().all(|w| w.norm_sqr() == 0.0) {
        return 0.0;
    }
    let k = cfg.wavenumber();
    let pos = element_positions(cfg);
    let (nodes, gl_w) = gauss_legendre(q.n_theta);
    let dphi = TAU / q.n_phi as f64;
    let mut total = 0.0;
    for (ct, wt) in nodes.iter().zip(&gl_w) {
        let st = sqrt((1.0 - ct * ct).max(0.0));
        let mut ring = 0.0;
        for j in 0..q.n_phi {
            let (sp, cp) = sincos((j as f64 + 0.5) * dphi);
            let u = Vec3::new(st * cp, st * sp, *ct);
            let g = cfg.element_pattern.power_gain(u);
            if g == 0.0 {
                continue;
            }
            let af: Complex64 = weights
                .iter()
                .zip(&pos)
                .map(|(w, r)| w * Complex64::from_polar(1.0, k * u.dot(*r)))
                .sum();
            ring += g * af.norm_sqr();
        }
        total += wt * ring * dphi;
    }
    total / (4.0 * PI)
}

/// Uniform excitation magnitude meeting the radiated power budget with
/// all-ones excitation as reference.
pub fn normalize_magnitude(cfg: &ArrayConfig) -> Result<f64, ArrayError> {
    normalize_magnitude_with(cfg, SphereQuadrature::DEFAULT)
}

pub fn normalize_magnitude_with(cfg: &ArrayConfig, q: SphereQuadrature) -> Result<f64, ArrayError> {
    let n = cfg.element_count();
    let ones = Excitations::uniform(1.0, PhaseVector::zeros(n));
    let p0 = radiated_power_with(cfg, &ones, q);
    if !(p0 > 0.0 && p0.is_finite()) {
        return Err(ArrayError::DegeneratePattern);
    }
    Ok(sqrt(cfg.max_radiated_power_w / p0))
}

/// Progressive phases pointing the array-factor peak at local spherical
/// direction (theta_s, phi_s): theta from local z, phi from local x.
pub fn steering_phases(cfg: &ArrayConfig, theta_s_deg: f64, phi_s_deg: f64) -> PhaseVector {
    let lambda = cfg.wavelength();
    let (st, ct) = sincos(theta_s_deg.to_radians());
    let cp = cos(phi_s_deg.to_radians());
    let phases = element_positions(cfg)
        .iter()
        .map(|r| wrap_phase(-TAU * ((r.x / lambda) * st * cp + (r.z / lambda) * ct)))
        .collect();
    PhaseVector(phases)
}

pub fn uniform_phases(cfg: &ArrayConfig) -> PhaseVector {
    PhaseVector::zeros(cfg.element_count())
}

const RANDOM_PHASE_STREAM: u64 = 0x5241_4E44_5048_4153;

/// Independent uniform phases on [0, 2 pi) from a seeded stream.
pub fn random_phases(cfg: &ArrayConfig, seed: u64) -> PhaseVector {
    let mut s = rng::stream(seed, RANDOM_PHASE_STREAM, 0);
    PhaseVector(
        (0..cfg.element_count())
            .map(|_| s.uniform_in(0.0, TAU))
            .collect(),
    )
}

/// Local spherical angles (theta, phi) [deg] of a world direction.
pub fn local_angles_deg(cfg: &ArrayConfig, dir_world: Vec3) -> (f64, f64) {
    let d = cfg
        .frame()
        .dir_to_local(dir_world)
        .normalized()
        .unwrap_or(Vec3::Y);
    (
        acos(d.z.clamp(-1.0, 1.0)).to_degrees(),
        atan2(d.y, d.x).to_degrees(),
    )
}

/// Horizontal bearing from `from` to `to`, degrees clockwise from north.
pub fn bearing_deg(from: Vec3, to: Vec3) -> f64 {
    atan2(to.x - from.x, to.y - from.y).to_degrees()
}

/// Larger ideal array at the same place, with broadside turned toward the
/// RoI barycenter and the same downtilt.
pub fn ideal_target_config(
    cfg: &ArrayConfig,
    rows: usize,
    cols: usize,
    roi: &RegionOfInterest,
) -> Result<ArrayConfig, ArrayError> {
    let real = cfg.element_count();
    let ideal = rows * cols;
    if ideal <= real {
        return Err(ArrayError::IdealNotLarger { real, ideal });
    }
    Ok(ArrayConfig {
        rows,
        cols,
        azimuth_deg: bearing_deg(cfg.position, roi.barycenter()),
        ..*cfg
    })
}

/// Free-space array factor magnitude squared along a local direction.
pub fn array_factor_power(cfg: &ArrayConfig, weights: &[Complex64], dir_local: Vec3) -> f64 {
    let k = cfg.wavenumber();
    element_positions(cfg)
        .iter()
        .zip(weights)
        .map(|(r, w)| w * Complex64::from_polar(1.0, k * dir_local.dot(*r)))
        .sum::<Complex64>()
        .norm_sqr()
}

/// Local unit direction from spherical angles [deg].
pub fn direction_from_angles_deg(theta_deg: f64, phi_deg: f64) -> Vec3 {
    let (st, ct) = sincos(theta_deg.to_radians());
    let (sp, cp) = sincos(phi_deg.to_radians());
    Vec3::new(st * cp, st * sp, ct)
}
