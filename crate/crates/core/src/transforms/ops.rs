//! Dilations, inversion, the differential expression L_alpha, and the
//! multiplier form of the resolvent of H_m.

use crate::special::{xi_multiplier, C64};

use super::grid::GridFunction;
use super::mellin::apply_function_of_a;
use super::TransformError;

/// (U_tau f)(x) = e^{tau/2} f(e^tau x). Exact index shift when tau is a multiple
/// of the log step, interpolation otherwise.
pub fn dilation(tau: f64, f: &GridFunction) -> Result<GridFunction, TransformError> {
    let spec = f.spec;
    let h = spec.log_step();
    let shift = tau / h;
    let n = spec.n as i64;
    if shift.abs() >= (n - 1) as f64 {
        return Err(TransformError::GridCoverage { tau });
    }
    let k = shift.round();
    if k == 0.0 && shift.abs() < 1e-9 {
        return Ok(f.clone());
    }
    if (shift - k).abs() < 1e-9 {
        let k = k as i64;
        let g = f.log_samples();
        let out = (0..n)
            .map(|j| {
                let src = j + k;
                if (0..n).contains(&src) {
                    g[src as usize]
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        return Ok(GridFunction::from_log_samples(spec, out));
    }
    let s = (0.5 * tau).exp();
    Ok(f.map_pointwise(|x, _| s * f.interpolate(tau.exp() * x)))
}

/// (I f)(x) = x^{-1} f(1/x); needs a grid symmetric under x -> 1/x.
pub fn inversion(f: &GridFunction) -> Result<GridFunction, TransformError> {
    if !f.spec.is_symmetric() {
        return Err(TransformError::AsymmetricGrid);
    }
    let n = f.len();
    Ok(f.map_pointwise_indexed(|j, x| f.values[n - 1 - j] / x))
}

/// L_alpha f = -f'' + (alpha - 1/4) f / x^2.
///
/// In u = ln x with g = e^{u/2} f this reads e^{-5u/2} (-g'' + 2 g' + (alpha - 1) g);
/// derivatives of g use five-point central differences. The two outermost
/// nodes on each side are set to zero.
pub fn apply_l_alpha(alpha: C64, f: &GridFunction) -> GridFunction {
    let spec = f.spec;
    let h = spec.log_step();
    let g = f.log_samples();
    let n = spec.n;
    let mut out = vec![C64::new(0.0, 0.0); n];
    for j in 2..n - 2 {
        let d1 = (-g[j + 2] + 8.0 * g[j + 1] - 8.0 * g[j - 1] + g[j - 2]) / (12.0 * h);
        let d2 = (-g[j + 2] + 16.0 * g[j + 1] - 30.0 * g[j] + 16.0 * g[j - 1] - g[j - 2]) / (12.0 * h * h);
        let x = spec.node(j);
        out[j] = (-d2 + 2.0 * d1 + (alpha - 1.0) * g[j]) * x.powf(-2.5);
    }
    GridFunction { spec, values: out }
}

fn xi_checked(m: C64, t: f64) -> C64 {
    xi_multiplier(m, t).unwrap_or(C64::new(f64::NAN, f64::NAN))
}

/// Xi_m(A)^{-1} (z - X^{-2})^{-1} Xi_m(A) f.
pub fn extended_hm_resolvent(m: C64, z: C64, f: &GridFunction) -> Result<GridFunction, TransformError> {
    resolvent_with_multiplier(|t| xi_checked(m, t), z, f)
}

/// Resolvent built from an arbitrary multiplier phi in place of Xi_m.
pub fn resolvent_with_multiplier<P: Fn(f64) -> C64>(
    phi: P,
    z: C64,
    f: &GridFunction,
) -> Result<GridFunction, TransformError> {
    let inner = apply_function_of_a(&phi, f)?;
    let mut middle = inner.clone();
    for (j, v) in middle.values.iter_mut().enumerate() {
        let x = f.spec.node(j);
        let d = z - x.powi(-2);
        if d.norm() < 1e-12 * (z.norm() + x.powi(-2)) {
            return Err(TransformError::NearCut { x });
        }
        *v /= d;
    }
    apply_function_of_a_loose(|t| phi(t).inv(), &middle)
}

/// Multiplier application without the end-amplitude check; intermediate
/// functions of the resolvent carry slowly decaying tails by construction.
fn apply_function_of_a_loose<P: Fn(f64) -> C64>(phi: P, f: &GridFunction) -> Result<GridFunction, TransformError> {
    super::mellin::apply_function_of_a_with_tolerance(phi, f, f64::INFINITY)
}

/// Cauchy-Riemann residual of m -> <g, (z - H_m)^{-1} f> at m0.
///
/// With F the matrix element, returns |dF/dRe m + i dF/dIm m| / 2 from central
/// differences of step h, normalised by ||f|| ||g||.
pub fn holomorphy_probe(m0: C64, z: C64, f: &GridFunction, g: &GridFunction, h: f64) -> Result<f64, TransformError> {
    holomorphy_probe_with(|m, t| xi_checked(m, t), m0, z, f, g, h)
}

/// Same probe with a caller-supplied multiplier family (m, t) -> phi_m(t).
pub fn holomorphy_probe_with<P: Fn(C64, f64) -> C64>(
    family: P,
    m0: C64,
    z: C64,
    f: &GridFunction,
    g: &GridFunction,
    h: f64,
) -> Result<f64, TransformError> {
    let element = |m: C64| -> Result<C64, TransformError> {
        let r = resolvent_with_multiplier(|t| family(m, t), z, f)?;
        Ok(g.inner(&r))
    };
    let dx = element(m0 + h)? - element(m0 - h)?;
    let dy = element(m0 + C64::new(0.0, h))? - element(m0 - C64::new(0.0, h))?;
    let cr = (dx + C64::new(0.0, 1.0) * dy) / (2.0 * h);
    Ok(cr.norm() / (2.0 * f.norm() * g.norm()))
}
