//! Free-space constants and derived quantities.

use core::f64::consts::PI;

use libm::sqrt;

/// Vacuum permittivity [F/m].
pub const EPS0: f64 = 8.85e-12;

/// Vacuum permeability [H/m].
pub const MU0: f64 = 4.0 * PI * 1e-7;

/// Free-space impedance sqrt(mu0 / eps0) [ohm].
pub fn eta0() -> f64 {
    sqrt(MU0 / EPS0)
}

/// Speed of light 1 / sqrt(eps0 mu0) [m/s].
pub fn c0() -> f64 {
    1.0 / sqrt(EPS0 * MU0)
}

pub fn wavelength(frequency_hz: f64) -> f64 {
    c0() / frequency_hz
}

/// k0 = 2 pi f sqrt(eps0 mu0) [rad/m].
pub fn wavenumber(frequency_hz: f64) -> f64 {
    2.0 * PI * frequency_hz * sqrt(EPS0 * MU0)
}

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * libm::log10(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants_are_consistent() {
        let c = c0();
        assert!((c - 2.9986e8).abs() / c < 1e-3);
        assert!((eta0() - 376.8).abs() < 0.5);
        let f = 3.5e9;
        assert!((wavenumber(f) * wavelength(f) - 2.0 * PI).abs() < 1e-12);
    }
}
