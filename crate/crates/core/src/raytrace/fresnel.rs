//! Reflection and transmission at lossy dielectric walls.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::{CVec3, Vec3};
use crate::physics::EPS0;
use crate::scene::Material;

/// eps_c = eps_r - j sigma / (2 pi f eps0)
pub fn complex_permittivity(m: &Material, frequency_hz: f64) -> Complex64 {
    Complex64::new(m.eps_r, -m.sigma / (2.0 * PI * frequency_hz * EPS0))
}

/// Half-space reflection coefficients (perpendicular, parallel) for a wave
/// incident from air at angle with cosine `cos_i`.
pub fn reflection_coefficients(eps_c: Complex64, cos_i: f64) -> (Complex64, Complex64) {
    let cos_i = cos_i.clamp(0.0, 1.0);
    let sin2 = 1.0 - cos_i * cos_i;
    let root = (eps_c - sin2).sqrt();
    let perp = (cos_i - root) / (cos_i + root);
    let par = (eps_c * cos_i - root) / (eps_c * cos_i + root);
    (perp, par)
}

/// Single-slab transmission coefficients (perpendicular, parallel) with
/// internal multiple reflections, referenced to the straight-line air path
/// through the slab.
pub fn slab_transmission_coefficients(
    eps_c: Complex64,
    cos_i: f64,
    thickness: f64,
    k0: f64,
) -> (Complex64, Complex64) {
    let cos_i = cos_i.clamp(0.0, 1.0);
    let sin2 = 1.0 - cos_i * cos_i;
    let q = (eps_c - sin2).sqrt() * (k0 * thickness);
    let q0 = k0 * thickness * cos_i;
    let (rp, rl) = reflection_coefficients(eps_c, cos_i);
    let j = Complex64::new(0.0, 1.0);
    let t = |r: Complex64| {
        let r2 = r * r;
        (Complex64::new(1.0, 0.0) - r2) * (-j * (q - q0)).exp()
            / (Complex64::new(1.0, 0.0) - r2 * (-j * 2.0 * q).exp())
    };
    (t(rp), t(rl))
}

/// Local polarization basis at an interface: perpendicular unit vector and
/// the incoming/outgoing parallel unit vectors `e_perp x d`.
fn basis(d_in: Vec3, d_out: Vec3, normal: Vec3) -> (Vec3, Vec3, Vec3) {
    let perp = d_in
        .cross(normal)
        .normalized()
        .or_else(|| normal.cross(Vec3::Z).normalized())
        .or_else(|| normal.cross(Vec3::X).normalized())
        .unwrap_or(Vec3::X);
    (perp, perp.cross(d_in), perp.cross(d_out))
}

/// Applies (perpendicular, parallel) interface coefficients to a field
/// travelling along `d_in` and leaving along `d_out`.
pub fn apply_interface(
    e: CVec3,
    d_in: Vec3,
    d_out: Vec3,
    normal: Vec3,
    coeffs: (Complex64, Complex64),
) -> CVec3 {
    let (perp, par_in, par_out) = basis(d_in, d_out, normal);
    CVec3::from_real(perp, e.project(perp) * coeffs.0)
        + CVec3::from_real(par_out, e.project(par_in) * coeffs.1)
}
