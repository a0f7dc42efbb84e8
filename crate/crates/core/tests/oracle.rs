//! Closed forms against brute-force oracles: quadrature for the weighted
//! resolvent, ODE shooting and finite differences for bound states.

use std::f64::consts::PI;

use invsq::common::ExtendedComplex;
use invsq::homogeneous::{h0nu_eigenvalue, hmk_eigenvalues, BoundaryParams, LogBoundaryParams};
use invsq::oracle::{
    fd_matrix_eigenvalues, quad_weighted_resolvent, shoot_eigenvalues, Boundary, LogWindow, ShootingProblem,
};
use invsq::scattering::almost_homogeneous_spectrum;
use invsq::special::{gamma, C64, EULER_GAMMA};
use invsq::toy::weighted_resolvent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// κ for which H_{m,κ} has its bound state at −e (real 0 < |m| < 1).
fn kappa_for_energy(m: f64, e: f64) -> f64 {
    let m = c(m, 0.0);
    (gamma(m).unwrap() / (gamma(-m).unwrap() * (e / 4.0).powf(m.re))).re
}

fn shoot(boundary: Boundary, window: LogWindow) -> Vec<C64> {
    shoot_eigenvalues(&ShootingProblem::new(boundary, window)).unwrap()
}

#[test]
fn weighted_resolvent_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let m = c(rng.gen_range(-0.95..-0.05), rng.gen_range(-2.0..2.0));
        let z = C64::from_polar(10f64.powf(rng.gen_range(-2.0..2.0)), rng.gen_range(-3.0..3.0));
        let exact = weighted_resolvent(m, z).unwrap();
        let quad = quad_weighted_resolvent(m, z).unwrap().value;
        let rel = (exact - quad).norm() / exact.norm();
        assert!(rel < 1e-8, "m = {m}, z = {z}: {exact} vs {quad}, rel {rel:e}");
    }
}

#[test]
fn shooting_exponential_bound_state() {
    let e = shoot(Boundary::Mixed { m: c(0.5, 0.0), kappa: Some(c(-1.0, 0.0)) }, LogWindow::negative_axis(0.05, 20.0, 0.5));
    assert_eq!(e.len(), 1, "{e:?}");
    assert!((e[0] + 1.0).norm() < 1e-6, "{e:?}");
}

#[test]
fn shooting_matches_real_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let m = rng.gen_range(0.1..0.9) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let kappa = kappa_for_energy(m, 10f64.powf(rng.gen_range(-0.7..0.7)));
        assert!(kappa < 0.0);
        let expected = hmk_eigenvalues(&BoundaryParams::new(c(m, 0.0), ExtendedComplex::real(kappa))).unwrap().values();
        let found = shoot(Boundary::Mixed { m: c(m, 0.0), kappa: Some(c(kappa, 0.0)) }, LogWindow::negative_axis(0.05, 20.0, 0.5));
        assert_eq!(found.len(), 1, "m = {m}, kappa = {kappa}: {found:?}");
        let rel = (found[0] - expected[0]).norm() / expected[0].norm();
        assert!(rel < 1e-6, "m = {m}, kappa = {kappa}: {} vs {}", found[0], expected[0]);
    }
}

#[test]
fn shooting_imaginary_order_geometric_sequence() {
    let mi = 2.0;
    let m = c(0.0, mi);
    let kappa = C64::from_polar(1.0, 0.7);
    let found = shoot(Boundary::Mixed { m, kappa: Some(kappa) }, LogWindow::negative_axis(1e-2, 50.0, 0.5));
    assert!(found.len() >= 3, "{found:?}");
    let ratio = (-2.0 * PI / mi).exp();
    for pair in found.windows(2) {
        let r = pair[0].re / pair[1].re;
        assert!((r - ratio).abs() < 1e-6 * ratio, "{r} vs {ratio}");
    }
    let expected = hmk_eigenvalues(&BoundaryParams::new(m, kappa.into())).unwrap().values();
    for e in &found {
        let nearest = expected.iter().map(|x| (x - e).norm()).fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-6 * e.norm(), "{e}");
    }
}

#[test]
fn shooting_log_boundary_constant() {
    let nu = 0.0;
    let found = shoot(Boundary::Log { nu: c(nu, 0.0) }, LogWindow::negative_axis(0.05, 20.0, 0.5));
    assert_eq!(found.len(), 1, "{found:?}");
    let corrected = -4.0 * (2.0 * (nu - EULER_GAMMA)).exp();
    assert!((found[0].re - corrected).abs() < 1e-5 * corrected.abs(), "{}", found[0]);
    // The uncorrected −4e^{−2ν} = −4 is ruled out.
    assert!((found[0].re + 4.0).abs() > 1.0);
    let closed = h0nu_eigenvalue(&LogBoundaryParams { nu: ExtendedComplex::real(nu) }).values();
    assert!((closed[0] - found[0]).norm() < 1e-5 * corrected.abs());
}

#[test]
fn shooting_log_boundary_complex_nu() {
    let nu = c(0.3, 0.5);
    let closed = h0nu_eigenvalue(&LogBoundaryParams { nu: nu.into() }).values();
    let s = (-closed[0]).ln();
    let window = LogWindow { ln_abs_min: s.re - 1.0, ln_abs_max: s.re + 1.0, arg_min: s.im - 0.5, arg_max: s.im + 0.5 };
    let found = shoot(Boundary::Log { nu }, window);
    assert_eq!(found.len(), 1, "{found:?}");
    assert!((found[0] - closed[0]).norm() < 1e-8 * closed[0].norm());
}

#[test]
fn shooting_general_complex_order() {
    // κ is chosen so that E_0 = target: (−E/4)^m = Γ(m)/(κΓ(−m)).
    for (m, target) in [(c(0.3, 0.4), c(-1.5, 0.5)), (c(-0.45, 0.2), c(-0.8, -1.1)), (c(0.6, -0.3), c(-2.0, 0.3))] {
        let kappa = gamma(m).unwrap() / (gamma(-m).unwrap() * (-target / 4.0).powc(m));
        let expected = almost_homogeneous_spectrum(m, kappa.into(), 5).unwrap().values();
        let window = LogWindow { ln_abs_min: -4.0, ln_abs_max: 4.0, arg_min: -3.0, arg_max: 3.0 };
        let inside: Vec<C64> = expected.iter().copied().filter(|e| window.contains((-e).ln(), -0.2)).collect();
        let found = shoot(Boundary::Mixed { m, kappa: Some(kappa) }, window);
        assert!(inside.iter().any(|e| (e - target).norm() < 1e-12 * target.norm()), "m = {m}: {inside:?}");
        for e in &inside {
            let nearest = found.iter().map(|f| (f - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-6 * e.norm(), "m = {m}: {e} not found in {found:?}");
        }
        for f in &found {
            let nearest = expected.iter().map(|e| (f - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-6 * f.norm(), "m = {m}: spurious {f}");
        }
    }
}

#[test]
fn shooting_is_start_point_independent() {
    let boundary = Boundary::Mixed { m: c(0.3, 0.0), kappa: Some(c(-2.0, 0.0)) };
    let mut p = ShootingProblem::new(boundary, LogWindow::negative_axis(0.05, 20.0, 0.5));
    let a = shoot_eigenvalues(&p).unwrap();
    p.x0 *= 0.5;
    let b = shoot_eigenvalues(&p).unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(b.len(), 1);
    assert!((a[0] - b[0]).norm() < 1e-7 * a[0].norm(), "{} vs {}", a[0], b[0]);
}

#[test]
fn finite_differences_agree_with_shooting() {
    let cases = [
        Boundary::Mixed { m: c(0.3, 0.0), kappa: Some(c(kappa_for_energy(0.3, 1.5), 0.0)) },
        Boundary::Mixed { m: c(-0.6, 0.0), kappa: Some(c(kappa_for_energy(-0.6, 0.7), 0.0)) },
        Boundary::Log { nu: c(0.2, 0.0) },
    ];
    for b in cases {
        let shot = shoot(b, LogWindow::negative_axis(0.05, 20.0, 0.5));
        let fd = fd_matrix_eigenvalues(b, 3000, 40.0).unwrap();
        assert_eq!(shot.len(), 1, "{b:?}: {shot:?}");
        assert_eq!(fd.len(), 1, "{b:?}: {fd:?}");
        let rel = (fd[0] - shot[0].re).abs() / shot[0].norm();
        assert!(rel < 1e-3, "{b:?}: fd {} vs shooting {}", fd[0], shot[0]);
    }
}

#[test]
fn friedrichs_and_krein_have_no_bound_states() {
    let window = LogWindow::negative_axis(0.01, 100.0, 0.5);
    let mut problem = ShootingProblem::new(Boundary::Mixed { m: c(0.4, 0.0), kappa: None }, window);
    problem.seeds_re = 8;
    problem.seeds_im = 4;
    assert!(shoot_eigenvalues(&problem).unwrap().is_empty());
    problem.boundary = Boundary::Pure { m: c(0.4, 0.0) };
    assert!(shoot_eigenvalues(&problem).unwrap().is_empty());
    problem.boundary = Boundary::Mixed { m: c(0.4, 0.0), kappa: Some(c(0.7, 0.0)) };
    assert!(shoot_eigenvalues(&problem).unwrap().is_empty());
}
