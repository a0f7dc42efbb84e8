//! Hankel transform (F_m f)(k) = int_0^inf J_m(kx) sqrt(kx) f(x) dx on a log grid.
//!
//! Product integration: on each panel [x_j, x_{j+1}] the input is replaced by
//! its quintic interpolant through x_{j-2..j+3} and integrated exactly against
//! the kernel. Where the kernel oscillates (kx >= 20) it is split as
//! e^{+-ikx} times the slowly varying Hankel amplitudes, the amplitude is folded
//! into the interpolant, and the oscillatory factor is integrated in closed
//! form (Filon). Because x_j k_i depends only on i + j, the weights form a
//! Hankel-structured table computed once per (m, grid).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::special::{bessel_j, HankelCoefficients, C64, ASYMPTOTIC_SWITCH};

use super::grid::{GridFunction, GridSpec};
use super::TransformError;

const STENCIL: usize = 6;
const GL_POINTS: usize = 12;
/// Coarsest log step at which the quintic panel interpolant is trusted.
pub const MAX_LOG_STEP: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct HankelPlan {
    pub m: C64,
    pub spec: GridSpec,
    /// weights[s][l] for s = i + j.
    weights: Vec<[C64; STENCIL]>,
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (mut q0, mut q1) = (1.0, z);
                for k in 2..=n {
                    let q2 = ((2 * k - 1) as f64 * z * q1 - (k - 1) as f64 * q0) / k as f64;
                    q0 = q1;
                    q1 = q2;
                }
                let dq = n as f64 * (z * q1 - q0) / (z * z - 1.0);
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dq * dq);
                break;
            }
        }
    }
    (x, w)
}

/// Inverse of a small dense matrix by Gauss-Jordan elimination with pivoting.
fn invert(mut a: [[f64; STENCIL]; STENCIL]) -> [[f64; STENCIL]; STENCIL] {
    let mut inv = [[0.0; STENCIL]; STENCIL];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..STENCIL {
        let piv = (col..STENCIL).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs())).unwrap();
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for k in 0..STENCIL {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for r in 0..STENCIL {
            if r != col {
                let f = a[r][col];
                for k in 0..STENCIL {
                    a[r][k] -= f * a[col][k];
                    inv[r][k] -= f * inv[col][k];
                }
            }
        }
    }
    inv
}

/// mu_p(beta) = int_{-1}^{1} xi^p e^{i beta xi} d xi for p < STENCIL.
fn oscillatory_moments(beta: f64) -> [C64; STENCIL] {
    let mut mu = [C64::new(0.0, 0.0); STENCIL];
    if beta.abs() < 8.0 {
        for (p, slot) in mu.iter_mut().enumerate() {
            let mut term = C64::new(1.0, 0.0);
            let mut total = C64::new(0.0, 0.0);
            for n in 0..80 {
                if n > 0 {
                    term *= C64::new(0.0, beta) / n as f64;
                }
                let q = p + n;
                if q % 2 == 0 {
                    total += term * (2.0 / (q + 1) as f64);
                }
                if term.norm() < 1e-18 && n > 4 {
                    break;
                }
            }
            *slot = total;
        }
    } else {
        let e = C64::new(0.0, beta).exp();
        let ib = C64::new(0.0, beta);
        mu[0] = C64::new(2.0 * beta.sin() / beta, 0.0);
        for p in 1..STENCIL {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            mu[p] = (e - sign * e.conj()) / ib - (p as f64 / ib) * mu[p - 1];
        }
    }
    mu
}

impl HankelPlan {
    pub fn new(m: C64, spec: GridSpec) -> Result<Self, TransformError> {
        spec.validate()?;
        if m.re <= -1.0 {
            return Err(TransformError::OrderOutOfRange(m));
        }
        let h = spec.log_step();
        if h > MAX_LOG_STEP {
            return Err(TransformError::GridTooCoarse { log_step: h, max: MAX_LOG_STEP });
        }
        let yc = 0.5 * (1.0 + h.exp());
        let r = 0.5 * (h.exp() - 1.0);
        let ys: [f64; STENCIL] = std::array::from_fn(|q| ((q as f64 - 2.0) * h).exp());
        let mut vt = [[0.0; STENCIL]; STENCIL];
        for q in 0..STENCIL {
            let xi = (ys[q] - yc) / r;
            for p in 0..STENCIL {
                vt[q][p] = xi.powi(p as i32);
            }
        }
        // coeff[p][l]: coefficient of xi^p in the l-th Lagrange basis polynomial.
        let coeff = invert(vt);
        let (gx, gw) = gauss_legendre(GL_POINTS);
        let basis_at: Vec<[f64; STENCIL]> = gx
            .iter()
            .map(|&xi| std::array::from_fn(|l| (0..STENCIL).map(|p| coeff[p][l] * xi.powi(p as i32)).sum()))
            .collect();
        let asym = HankelCoefficients::new(m);
        let theta = m * FRAC_PI_2 + FRAC_PI_4;
        let norm = (2.0 * PI).sqrt().recip();
        let two_u0 = 2.0 * spec.u_min();
        let weights: Result<Vec<[C64; STENCIL]>, TransformError> = (0..2 * spec.n)
            .into_par_iter()
            .map(|s| {
                let kappa = (two_u0 + s as f64 * h).exp();
                let mut w = [C64::new(0.0, 0.0); STENCIL];
                if kappa * ys[0] < ASYMPTOTIC_SWITCH {
                    for (g, (&xi, &wg)) in gx.iter().zip(&gw).enumerate() {
                        let y = yc + r * xi;
                        let arg = kappa * y;
                        let kern = arg.sqrt() * bessel_j(m, arg)?;
                        for l in 0..STENCIL {
                            w[l] += wg * r * basis_at[g][l] * kern;
                        }
                    }
                } else {
                    for sign in [1.0, -1.0] {
                        let mu = oscillatory_moments(sign * kappa * r);
                        let carrier = (-sign * C64::new(0.0, 1.0) * theta).exp()
                            * C64::new(0.0, sign * kappa * yc).exp()
                            * (norm * r);
                        for l in 0..STENCIL {
                            let (p_amp, q_amp) = asym.pq(kappa * ys[l]);
                            let amp = p_amp + sign * C64::new(0.0, 1.0) * q_amp;
                            let moment: C64 = (0..STENCIL).map(|p| coeff[p][l] * mu[p]).sum();
                            w[l] += carrier * amp * moment;
                        }
                    }
                }
                Ok(w)
            })
            .collect();
        Ok(Self { m, spec, weights: weights? })
    }

    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction, TransformError> {
        if f.spec != self.spec {
            return Err(TransformError::InvalidGrid("input grid differs from the plan's grid".into()));
        }
        let n = self.spec.n;
        let xs = self.spec.nodes();
        let v = &f.values;
        let out: Vec<C64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = C64::new(0.0, 0.0);
                for j in 2..n - 3 {
                    let w = &self.weights[i + j];
                    let mut panel = C64::new(0.0, 0.0);
                    for l in 0..STENCIL {
                        panel += w[l] * v[j - 2 + l];
                    }
                    acc += panel * xs[j];
                }
                acc
            })
            .collect();
        Ok(GridFunction { spec: self.spec, values: out })
    }
}

pub fn hankel(m: C64, f: &GridFunction) -> Result<GridFunction, TransformError> {
    HankelPlan::new(m, f.spec)?.apply(f)
}
