//! Bound states of −u″ + (m² − 1/4)x^{-2}u = E u by shooting.
//!
//! With t = ln x and w = x^{-1/2}u the equation becomes w″ = (m² − E e^{2t}) w.
//! The solution fixed by the boundary class at 0 is started from its Frobenius
//! series and integrated outwards with an embedded Runge-Kutta pair. The miss
//! function is the Wronskian in t of that solution with the decaying solution
//! K_m(√(−E) x); it is analytic in E, independent of the start and match points,
//! and vanishes exactly at eigenvalues.

use std::f64::consts::PI;

use log::debug;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::special::C64;

use super::{OracleError, Result};

/// Boundary class at the origin, in terms of x^{1/2±m} behaviour of u.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    /// u ~ x^{1/2+m} + κ x^{1/2−m}; `None` stands for κ = ∞ (pure x^{1/2−m}).
    Mixed { m: C64, kappa: Option<C64> },
    /// u ~ x^{1/2} ln x + ν x^{1/2} (m = 0).
    Log { nu: C64 },
    /// u ~ x^{1/2+m}.
    Pure { m: C64 },
}

impl Boundary {
    pub fn order(&self) -> C64 {
        match *self {
            Boundary::Mixed { m, .. } | Boundary::Pure { m } => m,
            Boundary::Log { .. } => C64::new(0.0, 0.0),
        }
    }
}

/// Rectangle in the coordinate s = Log(−E): E = −e^s, so Re s = ln|E| and
/// Im s = arg(−E) ∈ (−π, π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogWindow {
    pub ln_abs_min: f64,
    pub ln_abs_max: f64,
    pub arg_min: f64,
    pub arg_max: f64,
}

impl LogWindow {
    /// Window around the negative real axis, |E| ∈ [e_min, e_max].
    pub fn negative_axis(e_min: f64, e_max: f64, half_angle: f64) -> Self {
        Self { ln_abs_min: e_min.ln(), ln_abs_max: e_max.ln(), arg_min: -half_angle, arg_max: half_angle }
    }

    pub fn contains(&self, s: C64, slack: f64) -> bool {
        s.re >= self.ln_abs_min - slack
            && s.re <= self.ln_abs_max + slack
            && s.im >= self.arg_min - slack
            && s.im <= self.arg_max + slack
    }

    fn validate(&self) -> Result<()> {
        let ok = self.ln_abs_min.is_finite()
            && self.ln_abs_max.is_finite()
            && self.ln_abs_min < self.ln_abs_max
            && self.arg_min <= self.arg_max
            && self.arg_min > -PI
            && self.arg_max < PI;
        if ok {
            Ok(())
        } else {
            Err(OracleError::InvalidProblem(format!("energy window {self:?} must avoid [0, inf)")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingProblem {
    pub boundary: Boundary,
    /// Largest start point; the start moves inwards for large |E|.
    pub x0: f64,
    /// Match point in units of the decay length 1/|√(−E)|.
    pub match_scale: f64,
    pub window: LogWindow,
    pub seeds_re: usize,
    pub seeds_im: usize,
    pub rtol: f64,
}

impl ShootingProblem {
    pub fn new(boundary: Boundary, window: LogWindow) -> Self {
        Self { boundary, x0: 1e-3, match_scale: 30.0, window, seeds_re: 16, seeds_im: 16, rtol: 1e-10 }
    }

    /// Potential coefficient α = m² of L_α.
    pub fn alpha(&self) -> C64 {
        let m = self.boundary.order();
        m * m
    }
}

const FROBENIUS_MAX_TERMS: usize = 400;
const SECANT_MAX_ITER: usize = 80;
const SECANT_TOL: f64 = 1e-13;

/// Frobenius data (w, dw/dt) at t for the solution fixed by `boundary`.
pub(crate) fn frobenius(boundary: Boundary, energy: C64, t: f64) -> Result<(C64, C64)> {
    let z = t.exp();
    let q = energy * z * z;
    // Σ a_k e^{(s+2k)t} with a_k = −E a_{k−1}/(4k(k+s))
    let power_family = |s: C64| -> Result<(C64, C64)> {
        let mut a = C64::new(1.0, 0.0);
        let mut w = a;
        let mut dw = s;
        for k in 1..FROBENIUS_MAX_TERMS {
            let kf = k as f64;
            let denom = 4.0 * kf * (kf + s);
            if denom.norm() < 1e-12 {
                return Err(OracleError::InvalidProblem(format!("Frobenius exponent {s} hits a resonance")));
            }
            a = -a * q / denom;
            w += a;
            dw += a * (s + 2.0 * kf);
            if a.norm() * (1.0 + (s + 2.0 * kf).norm()) < 1e-17 * w.norm().max(1e-300) {
                let e = (s * t).exp();
                return Ok((w * e, dw * e));
            }
        }
        Err(OracleError::InvalidProblem("Frobenius series did not converge at the start point".into()))
    };
    match boundary {
        Boundary::Pure { m } => power_family(m),
        Boundary::Mixed { m, kappa: None } => power_family(-m),
        Boundary::Mixed { m, kappa: Some(kappa) } => {
            let (w1, d1) = power_family(m)?;
            if kappa == C64::new(0.0, 0.0) {
                return Ok((w1, d1));
            }
            let (w2, d2) = power_family(-m)?;
            Ok((w1 + kappa * w2, d1 + kappa * d2))
        }
        Boundary::Log { nu } => {
            // Σ (a_k t + b_k) e^{2kt}, a_0 = 1, b_0 = ν
            let mut a = C64::new(1.0, 0.0);
            let mut b = nu;
            let mut w = a * t + b;
            let mut dw = a;
            for k in 1..FROBENIUS_MAX_TERMS {
                let kf = k as f64;
                let k2 = 4.0 * kf * kf;
                let a_next = -q * a / k2;
                let b_next = (-q * b - 4.0 * kf * a_next) / k2;
                a = a_next;
                b = b_next;
                let v = a * t + b;
                w += v;
                dw += a + 2.0 * kf * v;
                if (a.norm() * (1.0 + t.abs()) + b.norm()) * (1.0 + 2.0 * kf) < 1e-17 * w.norm().max(1e-300) {
                    return Ok((w, dw));
                }
            }
            Err(OracleError::InvalidProblem("log Frobenius series did not converge".into()))
        }
    }
}

/// y K_m′(y)/K_m(y) and K_m(y) for complex y with |y| large (asymptotic series).
fn k_asymptotic(m: C64, y: C64) -> (C64, C64) {
    let mu = 4.0 * m * m;
    let mut a = C64::new(1.0, 0.0);
    let mut s = a;
    let mut ds = C64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut yk = C64::new(1.0, 0.0);
    for j in 1..60 {
        let jf = j as f64;
        a *= (mu - (2.0 * jf - 1.0).powi(2)) / (8.0 * jf);
        yk *= y;
        let term = a / yk;
        if term.norm() > last {
            break;
        }
        last = term.norm();
        s += term;
        ds -= term * jf;
        if last < 1e-17 * s.norm() {
            break;
        }
    }
    let k = (C64::new(PI, 0.0) / (2.0 * y)).sqrt() * (-y).exp() * s;
    (-y - 0.5 + ds / s, k)
}

/// Dormand-Prince 5(4) integration of w″ = (m² − E e^{2t}) w from t0 to t1.
fn integrate_ode(m2: C64, energy: C64, t0: f64, t1: f64, y0: [C64; 2], rtol: f64) -> Result<[C64; 2]> {
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let rhs = |t: f64, y: &[C64; 2]| -> [C64; 2] { [y[1], (m2 - energy * (2.0 * t).exp()) * y[0]] };

    let mut t = t0;
    let mut y = y0;
    let mut h = 0.01_f64.min(t1 - t0);
    let mut steps = 0usize;
    while t < t1 {
        if steps > 2_000_000 {
            return Err(OracleError::InvalidProblem("ODE step budget exhausted".into()));
        }
        steps += 1;
        if t + h > t1 {
            h = t1 - t;
        }
        let mut k = [[C64::new(0.0, 0.0); 2]; 7];
        for s in 0..7 {
            let mut ys = y;
            for (r, a) in A[s].iter().enumerate().take(s) {
                ys[0] += k[r][0] * (h * a);
                ys[1] += k[r][1] * (h * a);
            }
            k[s] = rhs(t + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = 0.0_f64;
        for i in 0..2 {
            let mut d5 = C64::new(0.0, 0.0);
            let mut d4 = C64::new(0.0, 0.0);
            for s in 0..7 {
                d5 += k[s][i] * B5[s];
                d4 += k[s][i] * B4[s];
            }
            y5[i] = y[i] + d5 * h;
            let scale = rtol * (y[0].norm() + y[1].norm()).max(y5[0].norm() + y5[1].norm()) + 1e-300;
            err = err.max(((d5 - d4) * h).norm() / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 * (1.0 + t.abs()) {
            return Err(OracleError::InvalidProblem("ODE step size underflow".into()));
        }
    }
    Ok(y)
}

/// Wronskian of the boundary solution with K_m(√(−E) x) in the variable t.
/// Zero exactly at eigenvalues; `s` = Log(−E).
pub fn shooting_miss(problem: &ShootingProblem, s: C64) -> Result<C64> {
    let energy = -s.exp();
    let k = (s * 0.5).exp();
    let t0 = problem.x0.min(0.05 / k.norm()).ln();
    let t1 = (problem.match_scale / k.norm()).ln();
    let m = problem.boundary.order();
    let start = frobenius(problem.boundary, energy, t0)?;
    let [w, dw] = integrate_ode(m * m, energy, t0, t1, [start.0, start.1], problem.rtol)?;
    let y = k * t1.exp();
    let (log_deriv, kval) = k_asymptotic(m, y);
    Ok(kval * (w * log_deriv - dw))
}

fn secant(problem: &ShootingProblem, seed: C64) -> Option<C64> {
    let mut s0 = seed;
    let mut s1 = seed + C64::new(1e-3, 1e-3);
    let mut f0 = shooting_miss(problem, s0).ok()?;
    let mut f1 = shooting_miss(problem, s1).ok()?;
    for _ in 0..SECANT_MAX_ITER {
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            return None;
        }
        let mut step = f1 * (s1 - s0) / denom;
        if step.norm() > 1.0 {
            step *= 1.0 / step.norm();
        }
        let s2 = s1 - step;
        if !s2.re.is_finite() || !s2.im.is_finite() || s2.im.abs() >= PI {
            return None;
        }
        if step.norm() < SECANT_TOL * (1.0 + s2.norm()) {
            return Some(s2);
        }
        s0 = s1;
        f0 = f1;
        s1 = s2;
        f1 = shooting_miss(problem, s1).ok()?;
    }
    None
}

/// Eigenvalues in the window, deduplicated and sorted by modulus then argument.
pub fn shoot_eigenvalues(problem: &ShootingProblem) -> Result<Vec<C64>> {
    problem.window.validate()?;
    if problem.seeds_re == 0 || problem.seeds_im == 0 {
        return Err(OracleError::InvalidProblem("seed grid must be non-empty".into()));
    }
    let w = problem.window;
    let cell = |lo: f64, hi: f64, n: usize, i: usize| lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
    let seeds: Vec<C64> = (0..problem.seeds_re)
        .flat_map(|i| {
            (0..problem.seeds_im).map(move |j| {
                C64::new(
                    cell(w.ln_abs_min, w.ln_abs_max, problem.seeds_re, i),
                    cell(w.arg_min, w.arg_max, problem.seeds_im, j),
                )
            })
        })
        .collect();
    let roots: Vec<C64> = seeds
        .par_iter()
        .filter_map(|&seed| {
            let root = secant(problem, seed);
            if root.is_none() {
                debug!("shooting seed {seed} did not converge");
            }
            root
        })
        .filter(|s| w.contains(*s, 1e-9))
        .collect();
    let mut unique: Vec<C64> = Vec::new();
    for s in roots {
        if !unique.iter().any(|u| (u - s).norm() < 1e-6) {
            unique.push(s);
        }
    }
    let mut energies: Vec<C64> = unique.into_iter().map(|s| -s.exp()).collect();
    energies.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
    Ok(energies)
}
