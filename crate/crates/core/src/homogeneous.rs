//! Homogeneous Schrödinger operators with inverse-square potential and their
//! almost homogeneous extensions.
//!
//! H_m is −∂² + (m² − 1/4)x^{-2} with boundary behaviour x^{1/2+m}. For
//! |Re m| < 1 the extensions H_{m,κ} are fixed by u ~ x^{1/2+m} + κx^{1/2−m},
//! so κ = 0 is H_m and κ = ∞ is H_{−m}; at m = 0 the extensions H_0^ν use
//! u ~ x^{1/2}ln x + νx^{1/2}. For 0 < m < 1, H_m is the Friedrichs and
//! H_{−m} the Krein extension.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::common::{CountClass, Eigenvalue, ExtendedComplex, SpectrumReport};
use crate::oracle::{integrate_with_breaks, OracleError, QuadOptions, QuadResult};
use crate::special::{bessel_i, bessel_j, bessel_k, gamma, SpecialFunctionError, C64, EULER_GAMMA};
use crate::transforms::GridFunction;

/// Half-width of the index window reported for infinite spectra.
pub const DEFAULT_INDEX_WINDOW: i64 = 20;
/// Relative tolerance for treating a parameter as real or unimodular.
const CLASS_TOL: f64 = 1e-12;
/// Above this argument the scaled I_m, K_m come from their Hankel expansions.
const SCALED_SWITCH: f64 = 500.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomogeneousError {
    #[error("(m, kappa) = ({m}, {kappa}) is outside the closed-form classification; use the similarity route")]
    OutsideClassifiedRegion { m: C64, kappa: ExtendedComplex },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

type Result<T> = std::result::Result<T, HomogeneousError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryParams {
    pub m: C64,
    pub kappa: ExtendedComplex,
}

impl BoundaryParams {
    pub fn new(m: C64, kappa: ExtendedComplex) -> Self {
        Self { m, kappa }
    }

    /// Order of the homogeneous operator this label denotes, if any.
    pub fn homogeneous_order(&self) -> Option<C64> {
        match self.kappa {
            ExtendedComplex::Infinity => Some(-self.m),
            k if k.is_zero() => Some(self.m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogBoundaryParams {
    pub nu: ExtendedComplex,
}

fn is_real(z: C64) -> bool {
    z.im.abs() <= CLASS_TOL * z.re.abs().max(1.0)
}

/// √(xy) I_m(k min(x,y)) K_m(k max(x,y)), the kernel of (H_m + k²)^{-1}.
pub fn resolvent_kernel_hm(m: C64, k: f64, x: f64, y: f64) -> Result<C64> {
    if !(m.re > -1.0) {
        return Err(HomogeneousError::InvalidParameter(format!("need Re m > -1, got {m}")));
    }
    if !(k > 0.0 && x > 0.0 && y > 0.0) {
        return Err(HomogeneousError::InvalidParameter(format!(
            "need k, x, y > 0, got k = {k}, x = {x}, y = {y}"
        )));
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    Ok(bessel_i(m, k * lo)? * bessel_k(m, k * hi)? * (x * y).sqrt())
}

/// (e^{−z} I_m(z), e^{z} K_m(z)) for real z > 0.
fn scaled_bessel_ik(m: C64, z: f64) -> Result<(C64, C64)> {
    if z <= SCALED_SWITCH {
        return Ok((bessel_i(m, z)? * (-z).exp(), bessel_k(m, z)? * z.exp()));
    }
    // Hankel expansions; the terms decrease monotonically for z this large.
    let mu = 4.0 * m * m;
    let mut a = C64::new(1.0, 0.0);
    let (mut si, mut sk) = (a, a);
    for j in 1..40 {
        let jf = j as f64;
        a *= (mu - (2.0 * jf - 1.0).powi(2)) / (8.0 * jf * z);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        si += a * sign;
        sk += a;
        if a.norm() < 1e-17 {
            break;
        }
    }
    Ok((si / (2.0 * PI * z).sqrt(), sk * (PI / (2.0 * z)).sqrt()))
}

/// (H_m + k²)^{-1} f on the grid of f, integrating the Bessel kernel with the
/// trapezoid rule in log x. The kernel factorizes, so two running sums
/// suffice; they carry the exponentials e^{±kx} implicitly to avoid overflow.
pub fn apply_resolvent_kernel(m: C64, k: f64, f: &GridFunction) -> Result<GridFunction> {
    let spec = f.spec;
    resolvent_kernel_hm(m, k, 1.0, 1.0)?;
    let n = f.len();
    let nodes = spec.nodes();
    let mut grow = Vec::with_capacity(n);
    let mut decay = Vec::with_capacity(n);
    for &x in &nodes {
        let (i, kk) = scaled_bessel_ik(m, k * x)?;
        grow.push(i * x.sqrt());
        decay.push(kk * x.sqrt());
    }
    let h = spec.log_step();
    let w = |j: usize| if j == 0 || j + 1 == n { 0.5 * h * nodes[j] } else { h * nodes[j] };
    // left[j] = Σ_{i≤j} grow_i f_i w_i e^{k(x_i − x_j)}
    let mut left = vec![C64::new(0.0, 0.0); n];
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..n {
        if j > 0 {
            acc *= (-k * (nodes[j] - nodes[j - 1])).exp();
        }
        acc += grow[j] * f.values[j] * w(j);
        left[j] = acc;
    }
    // right = Σ_{i>j} decay_i f_i w_i e^{−k(x_i − x_j)}
    let mut out = vec![C64::new(0.0, 0.0); n];
    let mut right = C64::new(0.0, 0.0);
    for j in (0..n).rev() {
        if j + 1 < n {
            right = (right + decay[j + 1] * f.values[j + 1] * w(j + 1)) * (-k * (nodes[j + 1] - nodes[j])).exp();
        }
        out[j] = decay[j] * left[j] + grow[j] * right;
    }
    Ok(GridFunction::from_values(spec, out).expect("same grid"))
}

/// ∫_{√a}^{√b} √(xy) J_m(kx) J_m(ky) k dk, the kernel of the spectral projection
/// of H_m onto [a, b].
pub fn projection_kernel(m: C64, a: f64, b: f64, x: f64, y: f64) -> Result<QuadResult> {
    projection_kernel_with(m, a, b, x, y, QuadOptions { abs_tol: 1e-10, rel_tol: 1e-10, max_intervals: 20_000 })
}

pub fn projection_kernel_with(m: C64, a: f64, b: f64, x: f64, y: f64, opts: QuadOptions) -> Result<QuadResult> {
    if !(m.re > -1.0) {
        return Err(HomogeneousError::InvalidParameter(format!("need Re m > -1, got {m}")));
    }
    if !(a > 0.0 && b > a && b.is_finite()) {
        return Err(HomogeneousError::InvalidParameter(format!("need 0 < a < b < inf, got [{a}, {b}]")));
    }
    if !(x > 0.0 && y > 0.0) {
        return Err(HomogeneousError::InvalidParameter(format!("need x, y > 0, got {x}, {y}")));
    }
    let (lo, hi) = (a.sqrt(), b.sqrt());
    // Panels no longer than a quarter period of the fastest oscillation.
    let panel = 0.5 * PI / (x + y);
    let pieces = (((hi - lo) / panel).ceil() as usize).max(4);
    let breaks: Vec<f64> = (0..=pieces).map(|j| lo + (hi - lo) * j as f64 / pieces as f64).collect();
    let root = (x * y).sqrt();
    let f = |k: f64| {
        let jx = bessel_j(m, k * x).unwrap_or_else(|_| C64::new(f64::NAN, 0.0));
        let jy = bessel_j(m, k * y).unwrap_or_else(|_| C64::new(f64::NAN, 0.0));
        jx * jy * (root * k)
    };
    bessel_j(m, lo * x)?;
    Ok(integrate_with_breaks(f, &breaks, opts)?)
}

/// Point spectrum of H_{m,κ} in the closed-form classified region: real
/// 0 < |m| < 1 with real κ, and imaginary m with |κ| = 1.
pub fn hmk_eigenvalues(params: &BoundaryParams) -> Result<SpectrumReport> {
    hmk_eigenvalues_windowed(params, DEFAULT_INDEX_WINDOW)
}

pub fn hmk_eigenvalues_windowed(params: &BoundaryParams, window: i64) -> Result<SpectrumReport> {
    let m = params.m;
    let outside = || HomogeneousError::OutsideClassifiedRegion { m, kappa: params.kappa };
    if m == C64::new(0.0, 0.0) {
        return Err(HomogeneousError::InvalidParameter("m = 0 uses the logarithmic family H_0^nu".into()));
    }
    let real_m = is_real(m) && m.re.abs() < 1.0;
    let imaginary_m = m.re.abs() <= CLASS_TOL * m.im.abs();
    if !(real_m || imaginary_m) {
        return Err(outside());
    }
    let kappa = match params.kappa {
        ExtendedComplex::Infinity if real_m => return Ok(SpectrumReport::empty()),
        ExtendedComplex::Infinity => return Err(outside()),
        ExtendedComplex::Finite(k) => k,
    };
    if real_m {
        if !is_real(kappa) {
            return Err(outside());
        }
        let (mr, kr) = (m.re, kappa.re);
        if kr >= 0.0 {
            return Ok(SpectrumReport::empty());
        }
        let mr_c = C64::new(mr, 0.0);
        let q = gamma(mr_c)? / (gamma(-mr_c)? * kr);
        let e = -4.0 * q.re.powf(1.0 / mr);
        return Ok(SpectrumReport::finite(vec![Eigenvalue { index: 0, value: C64::new(e, 0.0) }]));
    }
    if (kappa.norm() - 1.0).abs() > CLASS_TOL {
        return Err(outside());
    }
    let mi = m.im;
    let mi_c = C64::new(0.0, mi);
    let alpha = (kappa * gamma(-mi_c)? / gamma(mi_c)?).arg();
    let eigenvalues = (-window..=window)
        .map(|n| Eigenvalue { index: n, value: C64::new(-4.0 * (-(alpha + 2.0 * PI * n as f64) / mi).exp(), 0.0) })
        .collect();
    Ok(SpectrumReport { eigenvalues, count: CountClass::Infinite { window_lo: -window, window_hi: window } })
}

/// Eigenvalue of H_0^ν: −4e^{2(ν−γ)} when |Im ν| < π/2, none otherwise.
pub fn h0nu_eigenvalue(params: &LogBoundaryParams) -> SpectrumReport {
    match params.nu {
        ExtendedComplex::Finite(nu) if nu.im.abs() < 0.5 * PI => SpectrumReport::finite(vec![Eigenvalue {
            index: 0,
            value: -4.0 * (2.0 * (nu - EULER_GAMMA)).exp(),
        }]),
        _ => SpectrumReport::empty(),
    }
}

/// H_{m,κ} = H_{−m,1/κ}.
pub fn duality(params: &BoundaryParams) -> Result<BoundaryParams> {
    if params.m == C64::new(0.0, 0.0) {
        return Err(HomogeneousError::InvalidParameter("duality needs m != 0".into()));
    }
    Ok(BoundaryParams { m: -params.m, kappa: params.kappa.recip() })
}

/// U_τ H_{m,κ} U_τ^{-1} = e^{−2τ} H_{m, e^{−2τm}κ}.
pub fn rg_flow_schrodinger(params: &BoundaryParams, tau: f64) -> BoundaryParams {
    BoundaryParams { m: params.m, kappa: params.kappa.scale((-2.0 * tau * params.m).exp()) }
}

/// U_τ H_0^ν U_τ^{-1} = e^{−2τ} H_0^{ν+τ}.
pub fn rg_flow_log_boundary(params: &LogBoundaryParams, tau: f64) -> LogBoundaryParams {
    LogBoundaryParams { nu: params.nu.shift(C64::new(tau, 0.0)) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Gas,
    LiquidSolidTransition,
    Liquid,
    Solid,
}

impl Phase {
    pub fn name(&self) -> &'static str {
        match self {
            Phase::Gas => "gas",
            Phase::LiquidSolidTransition => "transition",
            Phase::Liquid => "liquid",
            Phase::Solid => "solid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionSet {
    Point,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedPoint {
    Friedrichs,
    Krein,
    FriedrichsEqualsKrein,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub alpha: f64,
    pub phase: Phase,
    pub extension_set: ExtensionSet,
    /// RG fixed points with their extension label (κ, or ν at α = 0).
    pub fixed_points: Vec<(FixedPoint, ExtendedComplex)>,
    pub bound_state_profile: Vec<String>,
}

/// Self-adjoint extensions of L_α and their RG structure.
pub fn classify_phase(alpha: f64) -> PhaseReport {
    let zero = ExtendedComplex::real(0.0);
    let (phase, extension_set, fixed_points, profile): (_, _, Vec<(FixedPoint, ExtendedComplex)>, Vec<&str>) =
        if alpha >= 1.0 {
            (
                Phase::Gas,
                ExtensionSet::Point,
                vec![(FixedPoint::FriedrichsEqualsKrein, zero)],
                vec!["unique extension H_{sqrt(alpha)}: no bound states"],
            )
        } else if alpha > 0.0 {
            (
                Phase::Liquid,
                ExtensionSet::Circle,
                vec![(FixedPoint::Friedrichs, zero), (FixedPoint::Krein, ExtendedComplex::Infinity)],
                vec!["kappa < 0: one bound state", "kappa > 0: no bound states", "fixed points: no bound states"],
            )
        } else if alpha == 0.0 {
            (
                Phase::LiquidSolidTransition,
                ExtensionSet::Circle,
                vec![(FixedPoint::FriedrichsEqualsKrein, ExtendedComplex::Infinity)],
                vec!["real nu: one bound state", "nu = inf (H_0): no bound states"],
            )
        } else {
            (
                Phase::Solid,
                ExtensionSet::Circle,
                Vec::new(),
                vec!["|kappa| = 1: infinitely many bound states, RG acts by rotation"],
            )
        };
    PhaseReport {
        alpha,
        phase,
        extension_set,
        fixed_points,
        bound_state_profile: profile.into_iter().map(String::from).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundStateCount {
    Zero,
    One,
    Infinite,
}

/// Number of bound states of the self-adjoint extension of L_α with the given
/// label: κ with m = √α for 0 < α < 1, ν for α = 0, κ with |κ| = 1 and
/// m = i√(−α) for α < 0. Ignored for α ≥ 1.
pub fn bound_state_count(alpha: f64, label: ExtendedComplex) -> Result<BoundStateCount> {
    let not_self_adjoint =
        || HomogeneousError::InvalidParameter(format!("label {label} is not a self-adjoint extension at alpha = {alpha}"));
    if alpha >= 1.0 {
        return Ok(BoundStateCount::Zero);
    }
    if alpha > 0.0 {
        return match label {
            ExtendedComplex::Infinity => Ok(BoundStateCount::Zero),
            ExtendedComplex::Finite(k) if is_real(k) => {
                Ok(if k.re < 0.0 { BoundStateCount::One } else { BoundStateCount::Zero })
            }
            _ => Err(not_self_adjoint()),
        };
    }
    if alpha == 0.0 {
        return match label {
            ExtendedComplex::Infinity => Ok(BoundStateCount::Zero),
            ExtendedComplex::Finite(nu) if is_real(nu) => Ok(BoundStateCount::One),
            _ => Err(not_self_adjoint()),
        };
    }
    match label {
        ExtendedComplex::Finite(k) if (k.norm() - 1.0).abs() <= 1e-9 => Ok(BoundStateCount::Infinite),
        _ => Err(not_self_adjoint()),
    }
}
