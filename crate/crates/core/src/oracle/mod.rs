//! Brute-force verifiers used as ground truth by the test suites.
//!
//! Nothing here calls the closed forms it is meant to check: the weighted
//! resolvent is integrated directly, bound states come from ODE shooting or a
//! finite-difference matrix, and the resolvent kernel from its eigenfunction
//! expansion.

pub mod fd;
pub mod quad;
pub mod shooting;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use thiserror::Error;

use crate::special::{bessel_j, SpecialFunctionError, C64};
use crate::transforms::{GridFunction, HankelPlan, TransformError};

pub use fd::fd_matrix_eigenvalues;
pub use quad::{integrate, integrate_with_breaks, QuadOptions, QuadResult};
pub use shooting::{shoot_eigenvalues, shooting_miss, Boundary, LogWindow, ShootingProblem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("quadrature did not converge: estimate {estimate}, error {error:e}")]
    QuadratureNotConverged { estimate: C64, error: f64 },
    #[error("no root found in the energy window")]
    WindowExhausted,
    #[error("matrix oracle needs a self-adjoint problem: {0}")]
    NotSelfAdjoint(String),
    #[error("invalid oracle problem: {0}")]
    InvalidProblem(String),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error("transform: {0}")]
    Transform(String),
}

impl From<TransformError> for OracleError {
    fn from(e: TransformError) -> Self {
        OracleError::Transform(e.to_string())
    }
}

type Result<T> = std::result::Result<T, OracleError>;

/// Number of tail series terms for the weighted resolvent integral.
const TAIL_TERMS: usize = 40;
/// Half width, in log x, of the directly integrated window around |z|.
const CORE_HALF_WIDTH: f64 = 3.0;

/// ∫₀^∞ x^m (z − x)^{-1} dx by adaptive quadrature, for −1 < Re m < 0 and z off
/// the cut.
///
/// With x = e^u the integrand is e^{(m+1)u}/(z − e^u). The window
/// |u − ln|z|| ≤ 3 is integrated adaptively; beyond it the integrand is
/// expanded in powers of e^u/z or z e^{-u} and integrated term by term.
pub fn quad_weighted_resolvent(m: C64, z: C64) -> Result<QuadResult> {
    if !(m.re > -1.0 && m.re < 0.0) {
        return Err(OracleError::InvalidProblem(format!("need -1 < Re m < 0, got m = {m}")));
    }
    if crate::special::on_cut(z) {
        return Err(SpecialFunctionError::OnCut(z).into());
    }
    let center = z.norm().ln();
    let lo = center - CORE_HALF_WIDTH;
    let hi = center + CORE_HALF_WIDTH;
    let f = |u: f64| {
        let x = u.exp();
        ((m + 1.0) * u).exp() / (z - x)
    };
    let breaks: Vec<f64> = (0..=24).map(|j| lo + (hi - lo) * j as f64 / 24.0).collect();
    let opts = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 50_000 };
    let core = integrate_with_breaks(f, &breaks, opts)?;

    // ∫_{-∞}^{lo}: 1/(z − e^u) = Σ_j e^{ju}/z^{j+1}
    let mut lower = C64::new(0.0, 0.0);
    let mut last_lower = 0.0;
    for j in 0..TAIL_TERMS {
        let p = m + 1.0 + j as f64;
        let term = (p * lo).exp() / (z.powu(j as u32 + 1) * p);
        lower += term;
        last_lower = term.norm();
    }
    // ∫_{hi}^{∞}: 1/(z − e^u) = −Σ_j z^j e^{-(j+1)u}
    let mut upper = C64::new(0.0, 0.0);
    let mut last_upper = 0.0;
    for j in 0..TAIL_TERMS {
        let p = m - j as f64;
        let term = z.powu(j as u32) * (p * hi).exp() / p;
        upper += term;
        last_upper = term.norm();
    }
    Ok(QuadResult {
        value: core.value + lower + upper,
        error: core.error + last_lower + last_upper,
        evaluations: core.evaluations,
    })
}

/// Resolvent kernel of H_m at −k² from the Hankel eigenfunction expansion,
/// ∫₀^∞ √(xy) J_m(px) J_m(py) p/(p² + k²) dp.
///
/// The integral runs to a cutoff P with panels of one half period; the tail
/// beyond P uses the leading Bessel asymptotics integrated by parts.
pub fn resolvent_kernel_expansion(m: C64, k: f64, x: f64, y: f64) -> Result<QuadResult> {
    if !(m.re > -1.0) || !(k > 0.0) || !(x > 0.0) || !(y > 0.0) {
        return Err(OracleError::InvalidProblem(format!(
            "need Re m > -1, k > 0, x, y > 0; got m = {m}, k = {k}, x = {x}, y = {y}"
        )));
    }
    let sum = x + y;
    let diff = (x - y).abs();
    let period = PI / sum;
    let mut cutoff = 4000.0 / sum.min(1.0);
    if diff > 0.0 {
        cutoff = cutoff.max(200.0 / diff);
    }
    cutoff = cutoff.max(40.0 * k);
    let panels = ((cutoff / period).ceil() as usize).max(8);
    let cutoff = panels as f64 * period;
    let root = (x * y).sqrt();
    let f = |p: f64| {
        if p == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let jx = bessel_j(m, p * x).unwrap_or_default();
        let jy = bessel_j(m, p * y).unwrap_or_default();
        jx * jy * (root * p / (p * p + k * k))
    };
    let breaks: Vec<f64> = (0..=panels).map(|j| j as f64 * period).collect();
    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 20 * panels };
    let body = integrate_with_breaks(f, &breaks, opts)?;

    let phase = m * FRAC_PI_2 + FRAC_PI_4;
    let first = if diff > 0.0 {
        C64::new(-(diff * cutoff).sin() / (diff * cutoff * cutoff), 0.0)
    } else {
        C64::new(1.0 / cutoff, 0.0)
    };
    let second = -(C64::new(sum * cutoff, 0.0) - 2.0 * phase).sin() / (sum * cutoff * cutoff);
    let tail = (first + second) / PI;
    Ok(QuadResult {
        value: body.value + tail,
        error: body.error + 1.0 / (PI * cutoff.powi(3) * diff.max(1e-3).powi(2)),
        evaluations: body.evaluations,
    })
}

/// (H_m + k²)^{-1} f through the Hankel eigenfunction expansion,
/// F_m (p² + k²)^{-1} F_m f on the grid of f.
pub fn expansion_resolvent(m: C64, k: f64, f: &GridFunction) -> Result<GridFunction> {
    if !(k > 0.0) {
        return Err(OracleError::InvalidProblem(format!("need k > 0, got {k}")));
    }
    let plan = HankelPlan::new(m, f.spec)?;
    let spectral = plan.apply(f)?;
    let damped = spectral.map_pointwise(|p, v| v / (p * p + k * k));
    Ok(plan.apply(&damped)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_resolvent_half() {
        let r = quad_weighted_resolvent(C64::new(-0.5, 0.0), C64::new(-1.0, 0.0)).unwrap();
        assert!((r.value - C64::new(-PI, 0.0)).norm() < 1e-12, "{r:?}");
    }

    #[test]
    fn weighted_resolvent_conjugation() {
        let m = C64::new(-0.3, 0.4);
        let z = C64::new(2.0, 1.5);
        let a = quad_weighted_resolvent(m, z).unwrap().value;
        let b = quad_weighted_resolvent(m.conj(), z.conj()).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn expansion_kernel_half_integer() {
        // m = 1/2: the Dirichlet Green function of −∂² + k² is e^{-k y} sinh(k x)/k for x < y.
        let (x, y, k) = (1.0, 2.0, 1.0);
        let r = resolvent_kernel_expansion(C64::new(0.5, 0.0), k, x, y).unwrap();
        let exact = (-y).exp() * f64::sinh(x);
        assert!((r.value.re - exact).abs() < 1e-7 * exact, "{} vs {exact}", r.value.re);
    }
}
