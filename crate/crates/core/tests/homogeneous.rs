//! Homogeneous and almost homogeneous Schrödinger operators: resolvent and
//! projection kernels, closed-form spectra, duality and RG flow.

use std::f64::consts::PI;

use invsq::common::ExtendedComplex;
use invsq::homogeneous::{
    bound_state_count, classify_phase, duality, hmk_eigenvalues, projection_kernel, resolvent_kernel_hm,
    rg_flow_schrodinger, BoundStateCount, BoundaryParams,
};
use invsq::oracle::resolvent_kernel_expansion;
use invsq::special::{gamma, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn resolvent_kernel_symmetric_and_positive() {
    for m in [-0.7, -0.2, 0.0, 0.4, 1.0, 2.5] {
        for (x, y) in [(0.1, 0.3), (1.0, 2.0), (0.5, 7.0), (30.0, 31.0)] {
            let a = resolvent_kernel_hm(c(m, 0.0), 1.3, x, y).unwrap();
            let b = resolvent_kernel_hm(c(m, 0.0), 1.3, y, x).unwrap();
            assert!((a - b).norm() <= 1e-14 * a.norm());
            assert!(a.re > 0.0 && a.im.abs() <= 1e-14 * a.re, "m = {m}: {a}");
        }
    }
}

#[test]
fn resolvent_kernel_is_green_function() {
    // −∂_x² G + (m² − 1/4)/x² G + k² G = δ(x − y).
    let (k, y, h) = (1.0, 1.0, 1e-3);
    for m in [c(0.3, 0.0), c(-0.4, 0.0), c(0.2, 0.5)] {
        let g = |x: f64| resolvent_kernel_hm(m, k, x, y).unwrap();
        for x in [0.4, 0.7, 1.6, 3.0] {
            let second = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
            let potential = (m * m - 0.25) / (x * x) + k * k;
            let res = (-second + potential * g(x)).norm() / second.norm().max(g(x).norm());
            assert!(res < 1e-5, "m = {m}, x = {x}: residual {res:e}");
        }
        let hj = 1e-5;
        let jump = (g(y + hj) - g(y)) / hj - (g(y) - g(y - hj)) / hj;
        assert!((jump + 1.0).norm() < 1e-3, "m = {m}: jump {jump}");
    }
}

#[test]
fn resolvent_kernel_matches_eigenfunction_expansion() {
    for (m, k, x, y) in [(0.3, 1.0, 0.5, 1.5), (-0.4, 0.7, 0.8, 2.0), (1.5, 2.0, 1.0, 1.2)] {
        let closed = resolvent_kernel_hm(c(m, 0.0), k, x, y).unwrap();
        let expansion = resolvent_kernel_expansion(c(m, 0.0), k, x, y).unwrap().value;
        assert!((closed - expansion).norm() < 1e-6 * closed.norm(), "m = {m}: {closed} vs {expansion}");
    }
}

#[test]
fn projection_kernel_additive_and_symmetric() {
    let m = c(0.3, 0.0);
    let (x, y) = (0.7, 1.9);
    let p = |a: f64, b: f64, x: f64, y: f64| projection_kernel(m, a, b, x, y).unwrap().value;
    let whole = p(0.5, 9.0, x, y);
    let parts = p(0.5, 2.0, x, y) + p(2.0, 9.0, x, y);
    assert!((whole - parts).norm() < 1e-9, "{whole} vs {parts}");
    assert!((p(0.5, 9.0, y, x) - whole).norm() < 1e-12);
    // Diagonal entries are squared norms, hence positive.
    assert!(p(0.5, 9.0, x, x).re > 0.0);
}

#[test]
fn projection_kernel_half_order_closed_form() {
    // m = 1/2: √(xy) J J k = (2/π) sin(kx) sin(ky).
    let (a, b, x, y) = (1.0, 16.0, 0.6, 1.4);
    let v = projection_kernel(c(0.5, 0.0), a, b, x, y).unwrap().value;
    let prim = |k: f64| ((x - y) * k).sin() / (x - y) - ((x + y) * k).sin() / (x + y);
    let exact = (prim(b.sqrt()) - prim(a.sqrt())) / PI;
    assert!((v.re - exact).abs() < 1e-9, "{v} vs {exact}");
}

#[test]
fn imaginary_order_accumulation_ratio() {
    for mi in [0.5, 1.0, 3.0] {
        let m = c(0.0, mi);
        let kappa = C64::from_polar(1.0, -1.2);
        let report = hmk_eigenvalues(&BoundaryParams::new(m, kappa.into())).unwrap();
        let expected = (-2.0 * PI / mi).exp();
        let values: Vec<f64> = report.values().iter().map(|e| e.re).filter(|e| e.abs() > 1e-250 && e.abs() < 1e250).collect();
        assert!(values.len() > 2);
        for pair in values.windows(2) {
            let r = pair[1] / pair[0];
            assert!((r - expected).abs() < 1e-12 * expected, "mi = {mi}: {r} vs {expected}");
        }
    }
}

#[test]
fn phase_counts_match_enumeration() {
    for alpha in [-1.0, 0.0, 0.25, 1.0, 1.5] {
        let report = classify_phase(alpha);
        assert_eq!(report.fixed_points.is_empty(), alpha < 0.0);
        if !(alpha > 0.0 && alpha < 1.0) {
            continue;
        }
        let m = c(alpha.sqrt(), 0.0);
        for kappa in [-3.0, -0.5, 0.0, 0.5, 3.0] {
            let n = hmk_eigenvalues(&BoundaryParams::new(m, ExtendedComplex::real(kappa))).unwrap().eigenvalues.len();
            let count = bound_state_count(alpha, ExtendedComplex::real(kappa)).unwrap();
            assert_eq!(count, if n == 1 { BoundStateCount::One } else { BoundStateCount::Zero });
        }
    }
}

fn real_order() -> impl Strategy<Value = f64> {
    (0.05f64..0.95, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m })
}

fn kappa_label() -> impl Strategy<Value = ExtendedComplex> {
    prop_oneof![
        (-3.0f64..3.0, -PI..PI).prop_map(|(l, a)| ExtendedComplex::Finite(C64::from_polar(l.exp(), a))),
        Just(ExtendedComplex::Infinity),
        Just(ExtendedComplex::real(0.0)),
    ]
}

fn close(a: ExtendedComplex, b: ExtendedComplex) -> bool {
    match (a, b) {
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => true,
        (ExtendedComplex::Finite(x), ExtendedComplex::Finite(y)) => (x - y).norm() <= 1e-12 * (1.0 + x.norm()),
        _ => false,
    }
}

proptest! {
    #[test]
    fn duality_is_an_involution(mr in -0.95f64..0.95, mi in -2.0f64..2.0, kappa in kappa_label()) {
        prop_assume!(mr.abs() + mi.abs() > 1e-3);
        let p = BoundaryParams::new(c(mr, mi), kappa);
        let back = duality(&duality(&p).unwrap()).unwrap();
        prop_assert_eq!(back.m, p.m);
        prop_assert!(close(back.kappa, p.kappa));
    }

    #[test]
    fn flow_is_a_group_commuting_with_duality(
        mr in -0.95f64..0.95, mi in -2.0f64..2.0, kappa in kappa_label(), s in -2.0f64..2.0, t in -2.0f64..2.0
    ) {
        prop_assume!(mr.abs() + mi.abs() > 1e-3);
        let p = BoundaryParams::new(c(mr, mi), kappa);
        let two = rg_flow_schrodinger(&rg_flow_schrodinger(&p, s), t);
        let one = rg_flow_schrodinger(&p, s + t);
        prop_assert!(close(two.kappa, one.kappa));
        let a = duality(&rg_flow_schrodinger(&p, s)).unwrap();
        let b = rg_flow_schrodinger(&duality(&p).unwrap(), s);
        prop_assert!(close(a.kappa, b.kappa));
        // κ = 0 and κ = ∞ are fixed points.
        if kappa.is_infinite() || kappa.is_zero() {
            prop_assert!(close(rg_flow_schrodinger(&p, s).kappa, kappa));
        }
    }

    #[test]
    fn spectrum_scales_under_flow(m in real_order(), kappa in -5.0f64..-0.01, tau in -1.5f64..1.5) {
        // U_τ H U_τ^{-1} = e^{−2τ} H' with H' the flowed operator, so spec H' = e^{2τ} spec H.
        let p = BoundaryParams::new(c(m, 0.0), ExtendedComplex::real(kappa));
        let e = hmk_eigenvalues(&p).unwrap().values()[0];
        let e_flow = hmk_eigenvalues(&rg_flow_schrodinger(&p, tau)).unwrap().values()[0];
        prop_assert!((e_flow - e * (2.0 * tau).exp()).norm() < 1e-10 * e_flow.norm());
    }

    #[test]
    fn spectrum_is_duality_invariant(m in real_order(), kappa in -5.0f64..5.0) {
        prop_assume!(kappa.abs() > 1e-3);
        let p = BoundaryParams::new(c(m, 0.0), ExtendedComplex::real(kappa));
        let a = hmk_eigenvalues(&p).unwrap().values();
        let b = hmk_eigenvalues(&duality(&p).unwrap()).unwrap().values();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.len(), usize::from(kappa < 0.0));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).norm() < 1e-10 * x.norm());
        }
    }

    #[test]
    fn real_closed_form_solves_boundary_relation(m in real_order(), kappa in -5.0f64..-0.01) {
        let p = BoundaryParams::new(c(m, 0.0), ExtendedComplex::real(kappa));
        let e = hmk_eigenvalues(&p).unwrap().values()[0];
        // K_m(kx) ~ (k/2)^{-m} Γ(m)/2 x^{-m} + (k/2)^{m} Γ(−m)/2 x^{m}; κ is the
        // ratio of the x^{-m} and x^{m} coefficients.
        let half_k = (-e).sqrt() / 2.0;
        let mc = c(m, 0.0);
        let implied = half_k.powc(-mc) * gamma(mc).unwrap() / (half_k.powc(mc) * gamma(-mc).unwrap());
        prop_assert!((implied.re - kappa).abs() < 1e-10 * kappa.abs(), "{} vs {}", implied, kappa);
    }
}
