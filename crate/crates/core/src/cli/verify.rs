//! Built-in verification suites. Each compares an implementation against an
//! independent route and reports the achieved error next to its target.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::commands::{phase, standard_bump, MOELLER_GRID};
use super::{Cell, Result};
use crate::common::{CountClass, ExtendedComplex};
use crate::homogeneous::{bound_state_count, h0nu_eigenvalue, hmk_eigenvalues, BoundStateCount, BoundaryParams, LogBoundaryParams};
use crate::oracle::{expansion_resolvent, quad_weighted_resolvent, shoot_eigenvalues, Boundary, LogWindow, ShootingProblem};
use crate::scattering::{
    almost_homogeneous_spectrum, log_similarity_check, moeller_analytic, moeller_residuals, similarity_spectrum_check,
    ConventionFlag, TimeDirection,
};
use crate::special::{gamma, xi_multiplier, C64, EULER_GAMMA};
use crate::toy::{spiral, toy_count_bounds, toy_eigenvalues, weighted_resolvent, ToyParams};
use crate::transforms::{
    apply_function_of_a, extended_hm_resolvent, holomorphy_probe, holomorphy_probe_with, inversion, log_gaussian,
    GridFunction, GridSpec, HankelPlan,
};
use crate::homogeneous::apply_resolvent_kernel;

pub const SUITES: [&str; 12] = [
    "weighted-resolvent",
    "counting",
    "spiral",
    "bound-states",
    "log-constant",
    "hankel-involution",
    "hankel-factorization",
    "resolvent-routes",
    "similarity",
    "moeller",
    "phase",
    "holomorphy",
];

/// Default tolerances, keyed as in the `[tolerances]` table of a config file.
pub const DEFAULT_TOLERANCES: [(&str, f64); 11] = [
    ("weighted_resolvent", 1e-8),
    ("spiral", 1e-10),
    ("bound_states", 1e-6),
    ("log_constant", 1e-5),
    ("hankel_involution", 1e-6),
    ("hankel_factorization", 1e-4),
    ("resolvent_routes", 1e-3),
    ("similarity", 1e-8),
    ("moeller_chain", 1e-8),
    ("moeller_limit", 0.1),
    ("holomorphy", 1e-4),
];

/// Tolerances with per-key overrides.
#[derive(Debug, Clone, Default)]
pub struct Targets {
    overrides: BTreeMap<String, f64>,
}

impl Targets {
    pub fn new(overrides: BTreeMap<String, f64>) -> Self {
        Self { overrides }
    }

    pub fn get(&self, key: &str) -> f64 {
        self.overrides.get(key).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("unknown tolerance key")
        })
    }

    /// Keys in `overrides` that no suite reads.
    pub fn unknown_keys(&self) -> Vec<String> {
        self.overrides.keys().filter(|k| !DEFAULT_TOLERANCES.iter().any(|(d, _)| d == k)).cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub achieved: f64,
    pub target: f64,
    pub passed: bool,
    pub note: String,
}

impl Check {
    /// Passes when `achieved <= target`; NaN fails.
    pub fn at_most(name: &str, achieved: f64, target: f64, note: impl Into<String>) -> Self {
        Self { name: name.into(), achieved, target, passed: achieved <= target, note: note.into() }
    }

    fn violations(name: &str, count: usize, samples: usize) -> Self {
        Self::at_most(name, count as f64, 0.0, format!("{count} violations in {samples} samples"))
    }
}

pub fn run_suite(name: &str, targets: &Targets) -> Result<Vec<Check>> {
    match name {
        "weighted-resolvent" => weighted_resolvent_suite(targets),
        "counting" => counting_suite(),
        "spiral" => spiral_suite(targets),
        "bound-states" => bound_state_suite(targets),
        "log-constant" => log_constant_suite(targets),
        "hankel-involution" => hankel_involution_suite(targets),
        "hankel-factorization" => hankel_factorization_suite(targets),
        "resolvent-routes" => resolvent_routes_suite(targets),
        "similarity" => similarity_suite(targets),
        "moeller" => moeller_suite(targets),
        "phase" => phase_suite(),
        "holomorphy" => holomorphy_suite(targets),
        other => Err(super::CliError::Usage(format!("unknown suite '{other}'"))),
    }
}

/// Coordinate `dim` of point `i` of a Kronecker sequence in [0, 1)^4.
fn quasi(i: usize, dim: usize) -> f64 {
    const ALPHA: [f64; 4] = [
        0.414_213_562_373_095_1,
        0.732_050_807_568_877_2,
        0.236_067_977_499_789_7,
        0.645_751_311_064_590_6,
    ];
    ((i as f64 + 0.5) * ALPHA[dim]).fract()
}

fn lerp(lo: f64, hi: f64, u: f64) -> f64 {
    lo + (hi - lo) * u
}

fn representable(e: C64) -> bool {
    let r = e.norm();
    r > 1e-250 && r < 1e250
}

/// Sample `i` of the admissible toy parameters: 0.01 <= |Re m| < 0.99,
/// |Im m| < 5.9, |m| <= 6, and a coupling with |ln|lambda|| < 3.
fn toy_sample(i: usize) -> ToyParams {
    let r = lerp(0.01, 0.99, quasi(i, 0));
    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
    let mut m = C64::new(sign * r, lerp(-5.9, 5.9, quasi(i, 1)));
    if m.norm() > 6.0 {
        m *= 6.0 / m.norm();
    }
    let lambda = C64::from_polar(lerp(-3.0, 3.0, quasi(i, 2)).exp(), lerp(-PI, PI, quasi(i, 3)));
    ToyParams::new(m, lambda.into()).expect("sample inside the admissible region")
}

fn weighted_resolvent_suite(targets: &Targets) -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let m = C64::new(lerp(-0.95, -0.05, quasi(i, 0)), lerp(-2.0, 2.0, quasi(i, 1)));
        let z = C64::from_polar(10f64.powf(lerp(-2.0, 2.0, quasi(i, 2))), lerp(-3.0, 3.0, quasi(i, 3)));
        let exact = weighted_resolvent(m, z)?;
        let quad = quad_weighted_resolvent(m, z)?.value;
        worst = worst.max((exact - quad).norm() / exact.norm());
    }
    Ok(vec![Check::at_most(
        "closed form vs adaptive quadrature",
        worst,
        targets.get("weighted_resolvent"),
        "max relative error over 20 (m, z) with -1 < Re m < 0",
    )])
}

fn counting_suite() -> Result<Vec<Check>> {
    let mut violations = 0;
    for i in 0..500 {
        let p = toy_sample(i);
        if !toy_count_bounds(&p)?.admits(&toy_eigenvalues(&p)?.count) {
            violations += 1;
        }
    }
    let mut dichotomy = 0;
    for i in 0..50 {
        let mi = 0.1 + 0.07 * i as f64;
        let m = C64::new(0.0, mi);
        let ln_abs = -8.0 + 0.33 * i as f64;
        let lambda = C64::from_polar(ln_abs.exp(), 0.3) * (PI * m).sin() / PI;
        let count = toy_eigenvalues(&ToyParams::new(m, lambda.into())?)?.count;
        let infinite = matches!(count, CountClass::Infinite { .. });
        let empty = count == CountClass::Empty;
        let expected_infinite = (ln_abs / mi).abs() < PI;
        if !(infinite && expected_infinite || empty && !expected_infinite) {
            dichotomy += 1;
        }
    }
    Ok(vec![
        Check::violations("count within N or N+1", violations, 500),
        Check::violations("Re m = 0 dichotomy", dichotomy, 50),
    ])
}

fn spiral_suite(targets: &Targets) -> Result<Vec<Check>> {
    let tol = targets.get("spiral");
    let mut affine: f64 = 0.0;
    let mut sheet = 0;
    for i in 0..50 {
        let p = toy_sample(i);
        let sp = spiral(&p)?.expect("finite nonzero coupling");
        let step = sp.w(1) - sp.w(0);
        let report = toy_eigenvalues(&p)?;
        for e in report.eigenvalues.iter().filter(|e| representable(e.value)) {
            let line = sp.w(0) + step * e.index as f64;
            affine = affine.max(((-e.value).ln() - line).norm() / (1.0 + line.norm()));
        }
        for e in &report.eigenvalues {
            let on_cut = representable(e.value) && e.value.im == 0.0 && e.value.re >= 0.0;
            if !sp.on_physical_sheet(e.index) || on_cut {
                sheet += 1;
            }
        }
    }
    let mut real_many = 0;
    let mut circle: f64 = 0.0;
    let mut ray: f64 = 0.0;
    for i in 0..50 {
        let lambda = C64::from_polar(lerp(-3.0, 3.0, quasi(i, 2)).exp(), lerp(-PI, PI, quasi(i, 3)));
        let r = lerp(0.01, 0.99, quasi(i, 0)) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let p = ToyParams::new(C64::new(r, 0.0), lambda.into())?;
        let sp = spiral(&p)?.expect("finite nonzero coupling");
        for n in -5..5 {
            circle = circle.max((sp.w(n).re - sp.w(0).re).abs() / (1.0 + sp.w(0).re.abs()));
        }
        if toy_eigenvalues(&p)?.eigenvalues.len() > 1 {
            real_many += 1;
        }
        let mi = lerp(0.05, 4.0, quasi(i, 1)) * if i % 3 == 0 { -1.0 } else { 1.0 };
        let p = ToyParams::new(C64::new(0.0, mi), lambda.into())?;
        let values: Vec<C64> = toy_eigenvalues(&p)?.values().into_iter().filter(|e| representable(*e)).collect();
        if let Some(first) = values.first() {
            for e in &values {
                ray = ray.max((e.arg() - first.arg()).abs());
            }
        }
    }
    Ok(vec![
        Check::at_most("Log(-z_n) affine in n", affine, tol, "max deviation from a + b n over all retained eigenvalues"),
        Check::violations("retained branches on the physical sheet", sheet, 50),
        Check::at_most("real m: constant Re w_n", circle, tol, "50 samples"),
        Check::violations("real m: at most one eigenvalue", real_many, 50),
        Check::at_most("imaginary m: eigenvalues on one ray", ray, 1e-9, "max spread of arg E in radians"),
    ])
}

fn shoot(boundary: Boundary, window: LogWindow) -> Result<Vec<C64>> {
    Ok(shoot_eigenvalues(&ShootingProblem::new(boundary, window))?)
}

/// Largest relative distance from each of `a` to its nearest neighbour in `b`.
fn nearest_distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .map(|x| b.iter().map(|y| (x - y).norm() / x.norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

fn bound_state_suite(targets: &Targets) -> Result<Vec<Check>> {
    let tol = targets.get("bound_states");
    let axis = LogWindow::negative_axis(0.05, 20.0, 0.5);
    let half = shoot(Boundary::Mixed { m: C64::new(0.5, 0.0), kappa: Some(C64::new(-1.0, 0.0)) }, axis)?;
    let exponential = match half.as_slice() {
        [e] => (e + 1.0).norm(),
        _ => f64::INFINITY,
    };
    let mut real: f64 = 0.0;
    for i in 0..10 {
        let m = lerp(0.1, 0.9, quasi(i, 0)) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let e = 10f64.powf(lerp(-0.7, 0.7, quasi(i, 1)));
        let mc = C64::new(m, 0.0);
        let kappa = (gamma(mc)? / (gamma(-mc)? * (e / 4.0).powf(m))).re;
        let closed = hmk_eigenvalues(&BoundaryParams::new(mc, ExtendedComplex::real(kappa)))?.values();
        let found = shoot(Boundary::Mixed { m: mc, kappa: Some(C64::new(kappa, 0.0)) }, axis)?;
        let err = if found.len() == closed.len() { nearest_distance(&closed, &found) } else { f64::INFINITY };
        real = real.max(err);
    }

    let (mi, kappa) = (2.0, C64::from_polar(1.0, 0.7));
    let m = C64::new(0.0, mi);
    let found = shoot(Boundary::Mixed { m, kappa: Some(kappa) }, LogWindow::negative_axis(1e-2, 50.0, 0.5))?;
    let closed = hmk_eigenvalues(&BoundaryParams::new(m, kappa.into()))?.values();
    let ratio = (-2.0 * PI / mi).exp();
    let mut imaginary = if found.len() >= 2 { nearest_distance(&found, &closed) } else { f64::INFINITY };
    for pair in found.windows(2) {
        imaginary = imaginary.max((pair[0].re / pair[1].re - ratio).abs() / ratio);
    }

    let mut complex: f64 = 0.0;
    for (m, target) in [
        (C64::new(0.3, 0.4), C64::new(-1.5, 0.5)),
        (C64::new(-0.45, 0.2), C64::new(-0.8, -1.1)),
        (C64::new(0.6, -0.3), C64::new(-2.0, 0.3)),
    ] {
        let kappa = gamma(m)? / (gamma(-m)? * (-target / 4.0).powc(m));
        let window = LogWindow { ln_abs_min: -4.0, ln_abs_max: 4.0, arg_min: -3.0, arg_max: 3.0 };
        let expected = almost_homogeneous_spectrum(m, kappa.into(), 5)?.values();
        let inside: Vec<C64> = expected.iter().copied().filter(|e| window.contains((-e).ln(), -0.2)).collect();
        let found = shoot(Boundary::Mixed { m, kappa: Some(kappa) }, window)?;
        let err = if inside.is_empty() || found.is_empty() {
            f64::INFINITY
        } else {
            nearest_distance(&inside, &found).max(nearest_distance(&found, &expected))
        };
        complex = complex.max(err);
    }
    Ok(vec![
        Check::at_most("m = 1/2, kappa = -1 gives -1", exponential, tol, format!("{} eigenvalues found", half.len())),
        Check::at_most("real m closed form vs shooting", real, tol, "10 (m, kappa) with one bound state each"),
        Check::at_most(
            "imaginary m geometric sequence vs shooting",
            imaginary,
            tol,
            format!("m = 2i, |kappa| = 1, ratio e^(-pi) = {ratio:.6e}, {} eigenvalues in window", found.len()),
        ),
        Check::at_most("complex (m, kappa) formula vs shooting", complex, tol, "3 cases, window |ln|E|| < 4"),
    ])
}

fn log_constant_suite(targets: &Targets) -> Result<Vec<Check>> {
    let nu = 0.0;
    let found = shoot(Boundary::Log { nu: C64::new(nu, 0.0) }, LogWindow::negative_axis(0.05, 20.0, 0.5))?;
    let corrected = -4.0 * (2.0 * (nu - EULER_GAMMA)).exp();
    let closed = h0nu_eigenvalue(&LogBoundaryParams { nu: ExtendedComplex::real(nu) }).values();
    let (err, shot) = match (found.as_slice(), closed.as_slice()) {
        ([s], [c]) => ((s - c).norm() / c.norm(), s.re),
        _ => (f64::INFINITY, f64::NAN),
    };
    let note = format!(
        "E(nu=0) = -4 exp(2(nu - gamma)) = {corrected:.12e}; shooting {shot:.12e}; distance to -4 is {:.4e}",
        (shot + 4.0).abs()
    );
    Ok(vec![Check::at_most("H_0^nu eigenvalue vs shooting", err, targets.get("log_constant"), note)])
}

pub fn hankel_grid() -> GridSpec {
    GridSpec::symmetric(1e8, 4096).expect("valid grid")
}

/// Ten log-Gaussian bumps with varied centres and widths.
pub fn bump_family(spec: GridSpec) -> Vec<GridFunction> {
    (0..10)
        .map(|i| GridFunction::from_fn(spec, log_gaussian(-1.2 + 0.27 * i as f64, 0.35 + 0.05 * (i % 4) as f64)))
        .collect()
}

pub fn hankel_orders() -> [C64; 5] {
    [C64::new(0.0, 0.0), C64::new(0.25, 0.0), C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(0.3, 0.2)]
}

fn hankel_involution_suite(targets: &Targets) -> Result<Vec<Check>> {
    let bumps = bump_family(hankel_grid());
    hankel_orders()
        .into_iter()
        .map(|m| {
            let plan = HankelPlan::new(m, hankel_grid())?;
            let mut worst: f64 = 0.0;
            for f in &bumps {
                worst = worst.max(plan.apply(&plan.apply(f)?)?.relative_distance(f));
            }
            Ok(Check::at_most(&format!("F_m F_m = 1, m = {m}"), worst, targets.get("hankel_involution"), "10 bumps"))
        })
        .collect()
}

fn hankel_factorization_suite(targets: &Targets) -> Result<Vec<Check>> {
    let bumps = bump_family(hankel_grid());
    hankel_orders()
        .into_iter()
        .map(|m| {
            let plan = HankelPlan::new(m, hankel_grid())?;
            let mut worst: f64 = 0.0;
            for f in &bumps {
                let direct = plan.apply(f)?;
                let via_xi = inversion(&apply_function_of_a(|t| xi_multiplier(m, t).unwrap_or(C64::new(f64::NAN, 0.0)), f)?)?;
                worst = worst.max(direct.sub(&via_xi).norm() / f.norm());
            }
            Ok(Check::at_most(
                &format!("F_m = I Xi_m(A), m = {m}"),
                worst,
                targets.get("hankel_factorization"),
                "10 bumps",
            ))
        })
        .collect()
}

fn resolvent_routes_suite(targets: &Targets) -> Result<Vec<Check>> {
    let spec = hankel_grid();
    let f = GridFunction::from_fn(spec, log_gaussian(0.1, 0.5));
    [(0.4, 1.0), (0.5, 1.0)]
        .into_iter()
        .map(|(m, k)| {
            let mc = C64::new(m, 0.0);
            let kernel = apply_resolvent_kernel(mc, k, &f)?;
            let multiplier = extended_hm_resolvent(mc, C64::new(-k * k, 0.0), &f)?.scale(C64::new(-1.0, 0.0));
            let expansion = expansion_resolvent(mc, k, &f)?;
            let d = [
                kernel.relative_distance(&multiplier),
                kernel.relative_distance(&expansion),
                multiplier.relative_distance(&expansion),
            ];
            Ok(Check::at_most(
                &format!("(k^2 + H_m)^-1 three routes, m = {m}, k = {k}"),
                d.iter().copied().fold(0.0, f64::max),
                targets.get("resolvent_routes"),
                format!("kernel/multiplier {:.2e}, kernel/expansion {:.2e}, multiplier/expansion {:.2e}", d[0], d[1], d[2]),
            ))
        })
        .collect()
}

fn similarity_suite(targets: &Targets) -> Result<Vec<Check>> {
    let tol = targets.get("similarity");
    let mut swapped: f64 = 0.0;
    let mut ambiguous = 0;
    let mut samples = 0;
    let mut i = 0;
    while samples < 50 {
        let m = C64::new(lerp(-0.95, 0.95, quasi(i, 0)), lerp(-3.0, 3.0, quasi(i, 1)));
        let lambda = C64::from_polar(10f64.powf(lerp(-1.5, 1.5, quasi(i, 2))), lerp(-PI, PI, quasi(i, 3)));
        i += 1;
        if m.norm() < 0.05 {
            continue;
        }
        let report = similarity_spectrum_check(m, lambda.into())?;
        if report.comparisons[0].toy.is_empty() {
            continue;
        }
        samples += 1;
        for c in &report.comparisons {
            if c.flag == ConventionFlag::Swapped {
                swapped = swapped.max(c.distance);
            }
        }
        if report.matching(tol) != vec![ConventionFlag::Swapped] {
            ambiguous += 1;
        }
    }
    let mut log: f64 = 0.0;
    for j in 0..10 {
        let rho = C64::new(-2.0 + 0.45 * j as f64, -2.5 + 0.55 * j as f64);
        log = log.max(log_similarity_check(rho.into()).distance);
    }
    if !log_similarity_check(ExtendedComplex::Infinity).toy.is_empty() {
        log = f64::INFINITY;
    }
    Ok(vec![
        Check::at_most(
            "spec(toy) = spec(H_m,kappa)/4, swapped convention",
            swapped,
            tol,
            format!("50 samples with non-empty spectrum ({i} drawn)"),
        ),
        Check::violations("exactly one convention matches", ambiguous, 50),
        Check::at_most("log branch rho = 2 gamma - 2 nu", log, tol, "10 rho values and rho = inf"),
    ])
}

fn moeller_suite(targets: &Targets) -> Result<Vec<Check>> {
    let f = GridFunction::from_fn(hankel_grid(), log_gaussian(0.1, 0.5));
    let (m, k, l) = (C64::new(0.5, 0.0), C64::new(1.5, 0.0), C64::new(0.2, 0.0));
    let mut worst: f64 = 0.0;
    for dir in [TimeDirection::Future, TimeDirection::Past] {
        let omega = moeller_analytic(m, k, dir, &f)?;
        let chained = moeller_analytic(m, k, dir, &moeller_analytic(k, l, dir, &f)?)?;
        let direct = moeller_analytic(m, l, dir, &f)?;
        let inverse = moeller_analytic(k, m, dir, &omega)?;
        worst = worst
            .max((omega.norm() - f.norm()).abs() / f.norm())
            .max(chained.sub(&direct).norm() / f.norm())
            .max(inverse.sub(&f).norm() / f.norm());
    }
    let spec = MOELLER_GRID.spec()?;
    let r = moeller_residuals(m, k, &[10.0, 30.0, 100.0], &standard_bump(k, spec)?)?;
    let limit = Check {
        passed: r[2] <= targets.get("moeller_limit") && r[2] < r[0],
        ..Check::at_most(
            "e^{itH_m} e^{-itH_k} f -> Omega f",
            r[2],
            targets.get("moeller_limit"),
            format!("residual {:.3e}, {:.3e}, {:.3e} at t = 10, 30, 100", r[0], r[1], r[2]),
        )
    };
    Ok(vec![
        Check::at_most(
            "chain rule, inverse, unitarity",
            worst,
            targets.get("moeller_chain"),
            "m = 0.5, k = 1.5, l = 0.2, both time directions",
        ),
        limit,
    ])
}

fn count_of(n: usize, infinite: bool) -> BoundStateCount {
    match (n, infinite) {
        (_, true) => BoundStateCount::Infinite,
        (0, _) => BoundStateCount::Zero,
        _ => BoundStateCount::One,
    }
}

fn phase_suite() -> Result<Vec<Check>> {
    let expected = [
        (-1.0, "solid", "circle", ""),
        (0.0, "transition", "circle", "friedrichs=krein(nu=inf)"),
        (0.25, "liquid", "circle", "friedrichs(kappa=0);krein(kappa=inf)"),
        (1.0, "gas", "point", "friedrichs=krein(kappa=0)"),
        (1.5, "gas", "point", "friedrichs=krein(kappa=0)"),
    ];
    let mut labels = 0;
    for (alpha, name, set, fixed) in expected {
        let table = phase(alpha, alpha, 1)?;
        let row = [Cell::Float(alpha), name.into(), set.into(), fixed.into()];
        if table.rows.len() != 1 || table.rows[0][..4] != row {
            labels += 1;
        }
    }

    let mut mismatches = 0;
    let mut cases = 0;
    let mut compare = |alpha: f64, label: ExtendedComplex, enumerated: BoundStateCount| -> Result<()> {
        cases += 1;
        if bound_state_count(alpha, label)? != enumerated {
            mismatches += 1;
        }
        Ok(())
    };
    // Solid: |kappa| = 1 with m = i sqrt(-alpha).
    let m = C64::new(0.0, 1.0);
    for arg in [-2.0, 0.4, 3.0] {
        let kappa = C64::from_polar(1.0, arg);
        let count = hmk_eigenvalues(&BoundaryParams::new(m, kappa.into()))?.count;
        compare(-1.0, kappa.into(), count_of(0, matches!(count, CountClass::Infinite { .. })))?;
    }
    // Transition: nu real or infinite.
    for nu in [ExtendedComplex::real(-0.5), ExtendedComplex::real(0.0), ExtendedComplex::real(0.7), ExtendedComplex::Infinity] {
        let n = match nu.finite() {
            Some(nu) => shoot(Boundary::Log { nu }, LogWindow::negative_axis(1e-3, 1e3, 0.5))?.len(),
            None => 0,
        };
        compare(0.0, nu, count_of(n, false))?;
    }
    // Liquid: real kappa with m = sqrt(alpha).
    let m = C64::new(0.5, 0.0);
    for kappa in [-3.0, -0.5, 0.0, 0.5, 3.0] {
        let n = hmk_eigenvalues(&BoundaryParams::new(m, ExtendedComplex::real(kappa)))?.eigenvalues.len();
        compare(0.25, ExtendedComplex::real(kappa), count_of(n, false))?;
    }
    compare(0.25, ExtendedComplex::Infinity, count_of(0, false))?;
    // Gas: the unique extension, by shooting.
    for alpha in [1.0, 1.5] {
        let mut problem =
            ShootingProblem::new(Boundary::Pure { m: C64::new(f64::sqrt(alpha), 0.0) }, LogWindow::negative_axis(0.01, 100.0, 0.5));
        problem.seeds_re = 8;
        problem.seeds_im = 4;
        let n = shoot_eigenvalues(&problem)?.len();
        compare(alpha, ExtendedComplex::Infinity, count_of(n, false))?;
    }
    Ok(vec![
        Check::violations("phase, extension set and fixed points at alpha = -1, 0, 0.25, 1, 1.5", labels, 5),
        Check::violations("bound-state counts vs enumeration", mismatches, cases),
    ])
}

fn holomorphy_suite(targets: &Targets) -> Result<Vec<Check>> {
    let spec = hankel_grid();
    let f = GridFunction::from_fn(spec, log_gaussian(0.2, 0.5));
    let g = GridFunction::from_fn(spec, log_gaussian(-0.3, 0.6));
    let z = C64::new(-1.0, 0.0);
    let points = [C64::new(0.5, 0.0), C64::new(-0.5, 0.0), C64::new(0.3, 0.4), C64::new(1.2, -0.3), C64::new(-0.8, 0.2)];
    let mut worst: f64 = 0.0;
    for m0 in points {
        worst = worst.max(holomorphy_probe(m0, z, &f, &g, 1e-3)?);
    }
    let control = holomorphy_probe_with(
        |m, t| xi_multiplier(m.conj(), t).unwrap_or(C64::new(f64::NAN, 0.0)),
        C64::new(0.3, 0.4),
        z,
        &f,
        &g,
        1e-3,
    )?;
    Ok(vec![Check::at_most(
        "Cauchy-Riemann residual of m -> <g, R_m(-1) f>",
        worst,
        targets.get("holomorphy"),
        format!("5 points with -1 < Re m < 1.5, h = 1e-3; conjugated control gives {control:.3e}"),
    )])
}
