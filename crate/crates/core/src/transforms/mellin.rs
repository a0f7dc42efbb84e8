//! Unitary Mellin transform on a log grid and functions of the dilation generator.
//!
//! (M f)(t) = (2 pi)^{-1/2} int_0^inf x^{-1/2 - i t} f(x) dx, the Fourier transform
//! of g(u) = e^{u/2} f(e^u). Dilations act as (M U_tau f)(t) = e^{i tau t} (M f)(t),
//! so the generator A = (x d/dx + d/dx x) / (2i) is multiplication by +t.

use std::f64::consts::PI;

use rustfft::FftPlanner;

use crate::special::C64;

use super::grid::{GridFunction, GridSpec};
use super::TransformError;

/// Sign with which A acts in the Mellin representation.
pub const A_SIGN: f64 = 1.0;

/// Amplitude of g at the grid ends, relative to its maximum, above which a
/// periodic transform is refused.
pub const DEFAULT_END_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct MellinFunction {
    /// Ascending, uniform, containing 0.
    pub t_nodes: Vec<f64>,
    pub values: Vec<C64>,
    /// The grid the function came from; needed for the inverse.
    pub source: GridSpec,
}

impl MellinFunction {
    pub fn dt(&self) -> f64 {
        self.t_nodes[1] - self.t_nodes[0]
    }

    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.dt()).sqrt()
    }
}

/// Frequencies of the DFT in ascending order, paired with their FFT bin.
fn frequencies(spec: &GridSpec) -> Vec<(f64, usize)> {
    let n = spec.n;
    let dt = 2.0 * PI / (n as f64 * spec.log_step());
    let half = n / 2;
    (0..n)
        .map(|i| {
            let k = i as i64 - half as i64;
            let bin = if k < 0 { (k + n as i64) as usize } else { k as usize };
            (k as f64 * dt, bin)
        })
        .collect()
}

pub fn end_amplitude(f: &GridFunction) -> f64 {
    let g = f.log_samples();
    let peak = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    g[0].norm().max(g[g.len() - 1].norm()) / peak
}

fn check_ends(f: &GridFunction, tol: f64) -> Result<(), TransformError> {
    let e = end_amplitude(f);
    if e > tol {
        Err(TransformError::TruncationTooSevere { end_mass: e })
    } else {
        Ok(())
    }
}

pub fn mellin(f: &GridFunction) -> Result<MellinFunction, TransformError> {
    mellin_with_tolerance(f, DEFAULT_END_TOLERANCE)
}

pub fn mellin_with_tolerance(f: &GridFunction, tol: f64) -> Result<MellinFunction, TransformError> {
    check_ends(f, tol)?;
    let spec = f.spec;
    let mut buf = f.log_samples();
    FftPlanner::new().plan_fft_forward(spec.n).process(&mut buf);
    let h = spec.log_step();
    let u0 = spec.u_min();
    let scale = h / (2.0 * PI).sqrt();
    let (t_nodes, values) = frequencies(&spec)
        .into_iter()
        .map(|(t, bin)| (t, buf[bin] * scale * C64::new(0.0, -t * u0).exp()))
        .unzip();
    Ok(MellinFunction { t_nodes, values, source: spec })
}

pub fn mellin_inverse(mf: &MellinFunction) -> GridFunction {
    let spec = mf.source;
    let n = spec.n;
    let h = spec.log_step();
    let u0 = spec.u_min();
    let mut buf = vec![C64::new(0.0, 0.0); n];
    for ((t, bin), v) in frequencies(&spec).into_iter().zip(&mf.values) {
        buf[bin] = v * C64::new(0.0, t * u0).exp();
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = (2.0 * PI).sqrt() / (h * n as f64);
    GridFunction::from_log_samples(spec, buf.into_iter().map(|v| v * scale).collect())
}

/// phi(A) f, with A acting as multiplication by A_SIGN * t.
pub fn apply_function_of_a<P: Fn(f64) -> C64>(phi: P, f: &GridFunction) -> Result<GridFunction, TransformError> {
    apply_function_of_a_with_tolerance(phi, f, DEFAULT_END_TOLERANCE)
}

pub fn apply_function_of_a_with_tolerance<P: Fn(f64) -> C64>(
    phi: P,
    f: &GridFunction,
    tol: f64,
) -> Result<GridFunction, TransformError> {
    let mut mf = mellin_with_tolerance(f, tol)?;
    for (t, v) in mf.t_nodes.iter().zip(mf.values.iter_mut()) {
        let p = phi(A_SIGN * t);
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(TransformError::UnboundedMultiplier { t: *t });
        }
        *v *= p;
    }
    Ok(mellin_inverse(&mf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::grid::log_gaussian;
    use crate::transforms::ops::dilation;

    fn spec() -> GridSpec {
        GridSpec::symmetric(1e6, 1024).unwrap()
    }

    #[test]
    fn plancherel_and_round_trip() {
        let f = GridFunction::from_fn(spec(), log_gaussian(0.7, 0.8));
        let mf = mellin(&f).unwrap();
        assert!((mf.norm() - f.norm()).abs() < 1e-12 * f.norm());
        let back = mellin_inverse(&mf);
        assert!(back.relative_distance(&f) < 1e-12);
    }

    #[test]
    fn dilation_becomes_phase() {
        let s = spec();
        let f = GridFunction::from_fn(s, log_gaussian(-0.4, 0.6));
        let tau = 7.0 * s.log_step();
        let mf = mellin(&f).unwrap();
        let md = mellin(&dilation(tau, &f).unwrap()).unwrap();
        for ((t, a), b) in mf.t_nodes.iter().zip(&mf.values).zip(&md.values) {
            let expected = a * C64::new(0.0, tau * t).exp();
            assert!((b - expected).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn refuses_truncated_input() {
        let f = GridFunction::from_fn(spec(), |_| C64::new(1.0, 0.0));
        assert!(matches!(mellin(&f), Err(TransformError::TruncationTooSevere { .. })));
    }

    #[test]
    fn mellin_of_log_gaussian_matches_closed_form() {
        // g(u) = e^{u/2} exp(-u^2/2) has Fourier transform exp(-(t + i/2)^2 / 2).
        let f = GridFunction::from_fn(spec(), log_gaussian(0.0, 1.0));
        let mf = mellin(&f).unwrap();
        for (t, v) in mf.t_nodes.iter().zip(&mf.values) {
            let z = C64::new(*t, 0.5);
            let expected = (-0.5 * z * z).exp();
            assert!((v - expected).norm() < 1e-12, "t = {t}");
        }
    }
}
