use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::fresnel::{apply_interface, complex_permittivity, reflection_coefficients, slab_transmission_coefficients};
use super::{InteractionKind, RayPath, SolverSettings, TraceError, Tracer};
use crate::array::{element_launch, element_world_positions, ArrayConfig, ArrayFrame};
use crate::geometry::{CVec3, Vec3};
use crate::scene::Scene;

fn interface_coefficients(
    kind: InteractionKind,
    eps_c: Complex64,
    cos_i: f64,
    thickness: f64,
    k0: f64,
) -> (Complex64, Complex64) {
    match kind {
        InteractionKind::Reflection => reflection_coefficients(eps_c, cos_i),
        InteractionKind::Transmission => slab_transmission_coefficients(eps_c, cos_i, thickness, k0),
    }
}

/// Field [V/m] delivered at the end of `path` by an element at
/// `path.vertices[0]` driven with `excitation`.
///
/// Launch amplitude follows the element gain along the departure direction;
/// every wall or ground event applies its Fresnel coefficients in the local
/// perpendicular/parallel basis; spreading is 1/L over the unfolded length
/// with phase exp(-j k0 L).
pub fn path_field(path: &RayPath, excitation: Complex64, cfg: &ArrayConfig, frame: &ArrayFrame) -> CVec3 {
    let Some(d0) = (path.vertices[1] - path.vertices[0]).normalized() else {
        return CVec3::ZERO;
    };
    let (amp, pol) = element_launch(cfg, frame, d0);
    if amp == 0.0 {
        return CVec3::ZERO;
    }
    let k0 = cfg.wavenumber();
    let mut e = CVec3::from_real(pol, excitation * amp);
    for it in &path.interactions {
        let eps_c = complex_permittivity(&it.material, cfg.frequency_hz);
        let cos_i = it.incoming.dot(it.normal).abs();
        let coeffs = interface_coefficients(it.kind, eps_c, cos_i, it.material.thickness, k0);
        e = apply_interface(e, it.incoming, it.outgoing, it.normal, coeffs);
    }
    e.scale(Complex64::from_polar(1.0 / path.length, -k0 * path.length))
}

/// Free-space-normalized path gain [dB]: lambda / (4 pi L) times the largest
/// interface coefficient magnitude of each event.
pub fn path_gain_db(path: &RayPath, cfg: &ArrayConfig) -> f64 {
    let k0 = cfg.wavenumber();
    let mut g = cfg.wavelength() / (4.0 * PI * path.length);
    for it in &path.interactions {
        let eps_c = complex_permittivity(&it.material, cfg.frequency_hz);
        let cos_i = it.incoming.dot(it.normal).abs();
        let (a, b) = interface_coefficients(it.kind, eps_c, cos_i, it.material.thickness, k0);
        g *= a.norm().max(b.norm());
    }
    20.0 * libm::log10(g)
}

fn keep(path: &RayPath, cfg: &ArrayConfig, settings: &SolverSettings) -> bool {
    settings.min_path_gain_db == f64::NEG_INFINITY || path_gain_db(path, cfg) >= settings.min_path_gain_db
}

/// Unit-excitation field of the element at world position `element` at one
/// probe, summed over paths in canonical order.
pub fn epep_at_probe(
    tracer: &Tracer<'_>,
    cfg: &ArrayConfig,
    frame: &ArrayFrame,
    element: Vec3,
    probe: Vec3,
) -> Result<CVec3, TraceError> {
    let one = Complex64::new(1.0, 0.0);
    let mut e = CVec3::ZERO;
    for p in tracer.trace(element, probe)? {
        if keep(&p, cfg, tracer.settings()) {
            e += path_field(&p, one, cfg, frame);
        }
    }
    Ok(e)
}

/// Embedded-plus-environment pattern of element `element_index`
/// (zero-based): the field at every probe with that element driven by a unit
/// excitation and all others silent.
pub fn compute_epep(
    scene: &Scene,
    cfg: &ArrayConfig,
    element_index: usize,
    probes: &[Vec3],
    settings: &SolverSettings,
) -> Result<Vec<CVec3>, TraceError> {
    cfg.validate()?;
    let count = cfg.element_count();
    if element_index >= count {
        return Err(TraceError::ElementIndex {
            index: element_index,
            count,
        });
    }
    let tracer = Tracer::new(scene, *settings)?;
    let frame = cfg.frame();
    let element = element_world_positions(cfg)[element_index];
    probes
        .iter()
        .map(|p| epep_at_probe(&tracer, cfg, &frame, element, *p))
        .collect()
}

/// Field at one probe with every element driven simultaneously by
/// `weights`; a single accumulator runs over elements and their paths.
pub fn full_array_at_probe(
    tracer: &Tracer<'_>,
    cfg: &ArrayConfig,
    frame: &ArrayFrame,
    elements: &[Vec3],
    weights: &[Complex64],
    probe: Vec3,
) -> Result<CVec3, TraceError> {
    let mut e = CVec3::ZERO;
    for (pos, w) in elements.iter().zip(weights) {
        for p in tracer.trace(*pos, probe)? {
            if keep(&p, cfg, tracer.settings()) {
                e += path_field(&p, *w, cfg, frame);
            }
        }
    }
    Ok(e)
}

/// Direct simulation of the fully excited array at every probe.
pub fn full_array_field(
    scene: &Scene,
    cfg: &ArrayConfig,
    weights: &[Complex64],
    probes: &[Vec3],
    settings: &SolverSettings,
) -> Result<Vec<CVec3>, TraceError> {
    cfg.validate()?;
    if weights.len() != cfg.element_count() {
        return Err(crate::array::ArrayError::Length {
            expected: cfg.element_count(),
            got: weights.len(),
        }
        .into());
    }
    let tracer = Tracer::new(scene, *settings)?;
    let frame = cfg.frame();
    let elements = element_world_positions(cfg);
    probes
        .iter()
        .map(|p| full_array_at_probe(&tracer, cfg, &frame, &elements, weights, *p))
        .collect()
}
