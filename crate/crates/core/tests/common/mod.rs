#![allow(dead_code)]

use axint::coords::{to_spheroidal, AxisConfig, PhaseState};
use axint::potentials::SeparablePotential;
use axint::Vec3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_cfg() -> AxisConfig<f64> {
    AxisConfig::z_axis(1.0, 1.0).unwrap()
}

/// Tilted axis with non-unit `a` and `m`, so that frame handling is exercised.
pub fn tilted_cfg() -> AxisConfig<f64> {
    AxisConfig::new(Vec3::new(0.3, -0.5, 0.8), 1.3, 0.7).unwrap()
}

pub fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    r.gen_range(lo..hi)
}

/// Point in the ball of radius `3a`, kept `min_sep·a²` away from the focal ring.
pub fn random_point(r: &mut ChaCha8Rng, cfg: &AxisConfig<f64>, min_sep: f64) -> Vec3<f64> {
    let a = cfg.a();
    loop {
        let x = Vec3::new(uniform(r, -3.0, 3.0), uniform(r, -3.0, 3.0), uniform(r, -3.0, 3.0)) * a;
        if x.norm() > 3.0 * a {
            continue;
        }
        if let Ok(pt) = to_spheroidal(&x, cfg) {
            if pt.separation() > min_sep * cfg.a2() {
                return x;
            }
        }
    }
}

pub fn random_state(r: &mut ChaCha8Rng, cfg: &AxisConfig<f64>) -> PhaseState<f64> {
    let x = random_point(r, cfg, 0.05);
    let p = Vec3::new(uniform(r, -1.0, 1.0), uniform(r, -1.0, 1.0), uniform(r, -1.0, 1.0));
    PhaseState::new(x, p)
}

/// `f` and `g` cubic with coefficients in `[-1, 1]`.
pub fn random_polynomial(r: &mut ChaCha8Rng) -> SeparablePotential<f64> {
    let mut coeffs = || (0..4).map(|_| uniform(r, -1.0, 1.0)).collect::<Vec<_>>();
    let f = coeffs();
    let g = coeffs();
    SeparablePotential::polynomial(f, g)
}

/// `f = g = kλ² + cλ³`, i.e. `U = k(λ₊ + λ₋) + c(λ₊² + λ₊λ₋ + λ₋²)`: confining for `k, c > 0`.
pub fn confining_polynomial(k: f64, c: f64) -> SeparablePotential<f64> {
    SeparablePotential::polynomial(vec![0.0, 0.0, k, c], vec![0.0, 0.0, k, c])
}

/// A bound, non-planar orbit of the Coulomb-like potential with `a = m = Q = 1`.
pub fn bound_orbit() -> (AxisConfig<f64>, SeparablePotential<f64>, PhaseState<f64>) {
    (
        unit_cfg(),
        SeparablePotential::coulomb_like(1.0, 1.0),
        PhaseState::new(Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 0.1, 0.6)),
    )
}

pub fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}
