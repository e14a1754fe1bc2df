mod common;

use axint::coords::{to_spheroidal, PhaseState};
use axint::dynamics::{
    integrate_cartesian, integrate_separated_from, invariants, separate, separated_rhs, uniform_times, Sign,
};
use axint::hj::{delta_alpha, delta_beta, delta_scale, hj_eval, hj_parameter_derivatives, momentum_from_hj, Branch, SeparatedIntegrals};
use axint::potentials::SeparablePotential;
use axint::Vec3;
use common::*;
use std::f64::consts::PI;

fn wrap(d: f64) -> f64 {
    (d + PI).rem_euclid(2.0 * PI) - PI
}

#[test]
fn chart_momenta_square_to_deltas() {
    let mut r = rng(31);
    for cfg in [unit_cfg(), tilted_cfg()] {
        for pot in [SeparablePotential::coulomb_like(0.7, cfg.a()), random_polynomial(&mut r)] {
            for _ in 0..300 {
                let s = random_state(&mut r, &cfg);
                let inv = invariants(&s, &cfg, &pot).unwrap();
                let init = separate(&s, &cfg).unwrap();
                let scale = delta_scale(&inv, &cfg) * (1.0 + s.x.norm_sq() / cfg.a2()) * (1.0 + s.p.norm_sq());
                let da = delta_alpha(init.state.alpha, &inv, &cfg, &pot);
                let db = delta_beta(init.state.beta, &inv, &cfg, &pot);
                assert!((da - init.p_alpha.powi(2)).abs() < 1e-10 * scale, "{da} vs {}", init.p_alpha.powi(2));
                assert!((db - init.p_beta.powi(2)).abs() < 1e-10 * scale, "{db} vs {}", init.p_beta.powi(2));
            }
        }
    }
}

#[test]
fn separated_velocities_match_cartesian_motion() {
    let mut r = rng(32);
    let cfg = tilted_cfg();
    let pot = SeparablePotential::coulomb_like(-0.6, cfg.a());
    let mut checked = 0;
    while checked < 200 {
        let s = random_state(&mut r, &cfg);
        let init = separate(&s, &cfg).unwrap();
        if init.p_alpha.abs() < 0.05 || init.p_beta.abs() < 0.05 || init.state.beta.cos() < 0.2 {
            continue;
        }
        let inv = invariants(&s, &cfg, &pot).unwrap();
        let (ad, bd, pd) = separated_rhs(&init.state, &inv, &cfg, &pot).unwrap();
        let h = 1e-5;
        let v = s.p / cfg.m();
        let at = |k: f64| to_spheroidal(&(s.x + v * (k * h)), &cfg).unwrap();
        let (p, m) = (at(1.0), at(-1.0));
        let num = [(p.alpha - m.alpha) / (2.0 * h), (p.beta - m.beta) / (2.0 * h), wrap(p.phi - m.phi) / (2.0 * h)];
        let scale = 1.0 + ad.abs() + bd.abs() + pd.abs();
        for (a, b) in num.iter().zip([ad, bd, pd]) {
            assert!((a - b).abs() < 1e-6 * scale, "{num:?} vs {:?}", (ad, bd, pd));
        }
        checked += 1;
    }
}

#[test]
fn hj_momentum_reproduces_state_on_its_branch() {
    let mut r = rng(33);
    let cfg = unit_cfg();
    let pot = SeparablePotential::coulomb_like(1.0, 1.0);
    let mut checked = 0;
    while checked < 200 {
        let s = random_state(&mut r, &cfg);
        let init = separate(&s, &cfg).unwrap();
        if init.p_alpha.abs() < 0.05 || init.p_beta.abs() < 0.05 {
            continue;
        }
        let inv = invariants(&s, &cfg, &pot).unwrap();
        let own = Branch { sigma_alpha: Sign::of(init.p_alpha), sigma_beta: Sign::of(init.p_beta) };
        for branch in Branch::ALL {
            let p = momentum_from_hj(&s.x, branch, &inv, &cfg, &pot).unwrap();
            let other = invariants(&PhaseState::new(s.x, p), &cfg, &pot).unwrap();
            let sc = 1.0 + inv.e.abs() + inv.e_tilde.abs() + inv.ell.abs();
            assert!((other.e - inv.e).abs() < 1e-8 * sc);
            assert!((other.e_tilde - inv.e_tilde).abs() < 1e-8 * sc);
            assert!((other.ell - inv.ell).abs() < 1e-8 * sc);
            if branch == own {
                assert!((p - s.p).norm() < 1e-8 * (1.0 + s.p.norm()), "{p:?} vs {:?}", s.p);
            }
        }
        checked += 1;
    }
}

#[test]
fn reflected_orbit_is_the_mirror_image() {
    let cfg = tilted_cfg();
    let pot = SeparablePotential::coulomb_like(1.0, cfg.a());
    let n = cfg.n();
    let mirror = |v: Vec3<f64>| v - n * (2.0 * v.dot(&n));
    let s = PhaseState::new(Vec3::new(1.5, 0.4, 0.7), Vec3::new(0.1, 0.5, -0.3));
    let m = PhaseState::new(mirror(s.x), mirror(s.p));
    let times = uniform_times(10.0, 101);
    let a = integrate_cartesian(&s, &cfg, &pot, 10.0, &times, 1e-12).unwrap();
    let b = integrate_cartesian(&m, &cfg, &pot, 10.0, &times, 1e-12).unwrap();
    for (p, q) in a.samples.iter().zip(&b.samples) {
        assert!((mirror(p.x) - q.x).norm() < 1e-8 * (1.0 + p.x.norm()));
        assert!((mirror(p.p) - q.p).norm() < 1e-8 * (1.0 + p.p.norm()));
    }
}

#[test]
fn equatorial_orbit_stays_equatorial() {
    let cfg = unit_cfg();
    let pot = SeparablePotential::coulomb_like(1.0, 1.0);
    // Near-circular at ρ = 3a, well outside the focal ring.
    let s = PhaseState::new(Vec3::new(3.0, 0.0, 0.0), Vec3::new(0.05, 0.53, 0.0));
    let rec = integrate_cartesian(&s, &cfg, &pot, 20.0, &uniform_times(20.0, 201), 1e-11).unwrap();
    for smp in &rec.samples {
        assert!(smp.x.z().abs() < 1e-12 && smp.chart.beta.abs() < 1e-12, "{:?}", smp.x);
    }
}

#[test]
fn azimuth_increases_for_positive_angular_momentum() {
    let cfg = unit_cfg();
    let pot = SeparablePotential::free();
    let s = PhaseState::new(Vec3::new(1.2, -0.3, 0.8), Vec3::new(0.2, 0.9, -0.4));
    assert!(invariants(&s, &cfg, &pot).unwrap().ell > 0.0);
    let rec = integrate_cartesian(&s, &cfg, &pot, 8.0, &uniform_times(8.0, 401), 1e-11).unwrap();
    for w in rec.samples.windows(2) {
        assert!(wrap(w[1].chart.phi - w[0].chart.phi) > 0.0);
    }
}

#[test]
fn turning_events_are_zeros_of_delta() {
    let (cfg, pot, s0) = bound_orbit();
    let inv = invariants(&s0, &cfg, &pot).unwrap();
    let rec = integrate_separated_from(&s0, &cfg, &pot, 30.0, &[30.0], 1e-12).unwrap();
    assert!(rec.turning_events.len() >= 4);
    let times: Vec<f64> = rec.turning_events.iter().map(|e| e.t).collect();
    let cart = integrate_cartesian(&s0, &cfg, &pot, 30.0, &times, 1e-12).unwrap();
    for (ev, smp) in rec.turning_events.iter().zip(&cart.samples) {
        let d = match ev.coordinate {
            axint::dynamics::TurningCoordinate::Alpha => delta_alpha(smp.chart.alpha, &inv, &cfg, &pot),
            axint::dynamics::TurningCoordinate::Beta => delta_beta(smp.chart.beta, &inv, &cfg, &pot),
        };
        assert!(d.abs() < 1e-6 * delta_scale(&inv, &cfg), "{ev:?}: {d}");
    }
}

#[test]
fn hj_parameter_derivatives_are_quadrature_constants() {
    let (cfg, pot, s0) = bound_orbit();
    let inv = invariants(&s0, &cfg, &pot).unwrap();
    let ints = SeparatedIntegrals::new(inv, &cfg, &pot);
    let rec = integrate_separated_from(&s0, &cfg, &pot, 12.0, &uniform_times(12.0, 25), 1e-12).unwrap();
    for smp in &rec.samples {
        let init = separate(&smp.state(), &cfg).unwrap();
        if init.p_alpha.abs() < 0.05 || init.p_beta.abs() < 0.05 {
            continue;
        }
        let branch = Branch::of_sample(smp);
        let (al, be, ph) = (smp.chart.alpha, smp.chart.beta, smp.chart.phi);
        let c = ints.constants(al, be, ph, smp.t, branch).unwrap();
        let d = hj_parameter_derivatives(al, be, ph, branch, &inv, &cfg, &pot).unwrap();
        assert!((d.ell - c.c3).abs() < 1e-4 * (1.0 + c.scale), "∂F/∂ℓ {} vs C3 {}", d.ell, c.c3);
        assert!((d.e_tilde + cfg.m() * c.c2).abs() < 1e-4 * (1.0 + c.scale), "∂F/∂Ẽ {} vs C2 {}", d.e_tilde, c.c2);
        let f0 = hj_eval(al, be, 0.0, branch, &inv, &cfg, &pot).unwrap();
        let f1 = hj_eval(al, be, ph, branch, &inv, &cfg, &pot).unwrap();
        assert!((f1 - f0 - inv.ell * ph).abs() < 1e-12 * (1.0 + f1.abs()));
    }
}

#[test]
fn trap_orbits_conserve_all_three_invariants() {
    let cfg = tilted_cfg();
    let pot = confining_polynomial(1.0, 0.2);
    let mut r = rng(34);
    for _ in 0..5 {
        let s = random_state(&mut r, &cfg);
        let rec = integrate_cartesian(&s, &cfg, &pot, 20.0, &uniform_times(20.0, 201), 1e-10).unwrap();
        let d = rec.max_relative_drift(&cfg, &pot).unwrap();
        assert!(d.e < 1e-6 && d.e_tilde < 1e-6 && d.ell < 1e-6, "{d:?}");
    }
}
