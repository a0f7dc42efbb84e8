//! Similarity between the toy and Schrödinger families, time evolution and
//! Møller operators.

use std::f64::consts::PI;

use invsq::common::ExtendedComplex;
use invsq::scattering::{
    evolve, log_similarity_check, moeller_analytic, moeller_residuals, similarity_spectrum_check, ConventionFlag,
    Propagator, TimeDirection,
};
use invsq::special::C64;
use invsq::transforms::hankel::hankel;
use invsq::transforms::ops::apply_l_alpha;
use invsq::transforms::{log_gaussian, GridFunction, GridSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn bump_grid() -> GridSpec {
    GridSpec::symmetric(1e3, 3000).unwrap()
}

/// Wide enough that power-law tails created by the multipliers stay small at the ends.
fn wide_grid() -> GridSpec {
    GridSpec::symmetric(1e8, 4096).unwrap()
}

/// Wave packet concentrated near momentum e^{-0.7} for H_k.
fn standard_bump(k: C64) -> GridFunction {
    let g = GridFunction::from_fn(bump_grid(), log_gaussian(-0.7, 0.35));
    hankel(k, &g).unwrap()
}

#[test]
fn evolution_identity_unitarity_group_law() {
    // The x-space chirp e^{ix²/4t} must stay resolved on the log grid, which
    // limits the times at this grid density.
    let m = c(0.4, 0.0);
    let f = GridFunction::from_fn(GridSpec::symmetric(1e5, 8192).unwrap(), log_gaussian(0.3, 0.4));
    let p = Propagator::new(m, f.spec).unwrap();
    assert_eq!(p.evolve(0.0, &f).unwrap(), f);
    let a = p.evolve(0.25, &f).unwrap();
    assert!((a.norm() - f.norm()).abs() < 1e-6 * f.norm());
    let two = p.evolve(0.1, &p.evolve(0.15, &f).unwrap()).unwrap();
    assert!(two.sub(&a).norm() < 1e-6 * f.norm(), "{:e}", two.sub(&a).norm());
    let back = p.evolve(-0.25, &a).unwrap();
    assert!(back.sub(&f).norm() < 1e-6 * f.norm(), "{:e}", back.sub(&f).norm());
    let direct = evolve(m, 0.25, &f).unwrap();
    assert!(direct.sub(&a).norm() < 1e-12 * f.norm());
}

#[test]
fn moeller_identity_unitarity_chain_rule() {
    let f = GridFunction::from_fn(wide_grid(), log_gaussian(0.1, 0.5));
    let (m, k, l) = (c(0.5, 0.0), c(1.5, 0.0), c(0.2, 0.0));
    for dir in [TimeDirection::Future, TimeDirection::Past] {
        assert_eq!(moeller_analytic(m, m, dir, &f).unwrap(), f);
        let omega = moeller_analytic(m, k, dir, &f).unwrap();
        assert!((omega.norm() - f.norm()).abs() < 1e-8 * f.norm());
        let chained = moeller_analytic(m, k, dir, &moeller_analytic(k, l, dir, &f).unwrap()).unwrap();
        let direct = moeller_analytic(m, l, dir, &f).unwrap();
        assert!(chained.sub(&direct).norm() < 1e-8 * f.norm(), "{:e}", chained.sub(&direct).norm());
        let inverse = moeller_analytic(k, m, dir, &omega).unwrap();
        assert!(inverse.sub(&f).norm() < 1e-8 * f.norm());
    }
}

#[test]
fn moeller_numeric_converges() {
    let (m, k) = (c(0.5, 0.0), c(1.5, 0.0));
    let r = moeller_residuals(m, k, &[10.0, 30.0, 100.0], &standard_bump(k)).unwrap();
    println!("residuals at t = 10, 30, 100: {r:?}");
    assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
    assert!(r[2] < 0.1, "{r:?}");
}

#[test]
fn moeller_intertwines() {
    // Ω H_k = H_m Ω. The finite-difference L_α carries an x^{-5/2} factor that
    // amplifies the transform noise floor near 0, so the comparison is made on
    // 10^{-2} <= x <= 10^2, where the packet lives.
    let (m, k) = (c(0.5, 0.0), c(1.5, 0.0));
    let f = GridFunction::from_fn(GridSpec::symmetric(1e5, 8192).unwrap(), log_gaussian(0.4, 0.3));
    let dir = TimeDirection::Future;
    let lhs = moeller_analytic(m, k, dir, &apply_l_alpha(k * k, &f)).unwrap();
    let rhs = apply_l_alpha(m * m, &moeller_analytic(m, k, dir, &f).unwrap());
    let window = |x: f64| if (1e-2..=1e2).contains(&x) { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
    let lhs = lhs.map_pointwise(|x, v| v * window(x));
    let rhs = rhs.map_pointwise(|x, v| v * window(x));
    let rel = lhs.sub(&rhs).norm() / lhs.norm();
    assert!(rel < 1e-3, "{rel:e}");
}

#[test]
fn similarity_single_global_convention() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut samples = 0;
    let mut draws = 0;
    while samples < 50 {
        draws += 1;
        assert!(draws < 10_000);
        let m = c(rng.gen_range(-0.95..0.95), rng.gen_range(-3.0..3.0));
        if m.norm() < 0.05 {
            continue;
        }
        let lambda = C64::from_polar(10f64.powf(rng.gen_range(-1.5..1.5)), rng.gen_range(-PI..PI));
        let report = similarity_spectrum_check(m, lambda.into()).unwrap();
        let matching = report.matching(1e-8);
        assert!(matching.contains(&ConventionFlag::Swapped), "m = {m}, lambda = {lambda}: {report:?}");
        // Empty spectra agree under every convention and do not discriminate.
        if report.comparisons[0].toy.is_empty() {
            continue;
        }
        assert_eq!(matching, vec![ConventionFlag::Swapped], "m = {m}, lambda = {lambda}: {report:?}");
        samples += 1;
    }
}

#[test]
fn similarity_log_branch() {
    for j in 0..10 {
        let rho = C64::new(-2.0 + 0.45 * j as f64, -2.5 + 0.55 * j as f64);
        let report = log_similarity_check(rho.into());
        assert_eq!(report.toy.len(), usize::from(rho.im.abs() < PI));
        assert!(report.distance < 1e-12, "{report:?}");
    }
    assert!(log_similarity_check(ExtendedComplex::Infinity).toy.is_empty());
}
