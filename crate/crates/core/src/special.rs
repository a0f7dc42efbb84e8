//! Special functions of complex order on the positive real axis.
//!
//! Gamma and log-Gamma use a 14-term Lanczos sum with reflection. Bessel
//! functions J, I, K take complex order and real positive argument: ascending
//! series below the switchover, Hankel asymptotics above it. K in the middle
//! range comes from its exponential integral representation, where the
//! reflection formula suffers cancellation.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Argument above which the asymptotic expansions are used.
pub const ASYMPTOTIC_SWITCH: f64 = 20.0;
/// Below this argument K uses the reflection formula; above it the integral form.
const K_SERIES_MAX: f64 = 2.0;
const K_NEAR_INTEGER: f64 = 1e-4;
const K_RICHARDSON_STEP: f64 = 1e-3;
const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialFunctionError {
    #[error("Gamma pole at z = {0}")]
    Pole(C64),
    #[error("point {0} lies on the cut [0, inf)")]
    OnCut(C64),
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("K_nu could not be evaluated near integer order nu = {0}")]
    OrderAtNegativeIntegerSingularity(C64),
    #[error("Xi multiplier hits a Gamma pole at m = {m}, t = {t}")]
    MultiplierPole { m: C64, t: f64 },
}

type Result<T> = std::result::Result<T, SpecialFunctionError>;

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

const LANCZOS_G_HALF: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn near_pole(z: C64) -> bool {
    z.re <= POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL && z.im.abs() < POLE_TOL
}

/// Lanczos log-Gamma, valid for Re z > 0.
fn ln_gamma_lanczos(z: C64) -> C64 {
    let mut ser = C64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    let tmp = z + LANCZOS_G_HALF;
    (z + 0.5) * tmp.ln() - tmp + (SQRT_2PI * ser / z).ln()
}

pub fn gamma(z: C64) -> Result<C64> {
    if near_pole(z) {
        return Err(SpecialFunctionError::Pole(z));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        let g = ln_gamma_lanczos(1.0 - z).exp();
        Ok(PI / (s * g))
    } else {
        Ok(ln_gamma_lanczos(z).exp())
    }
}

/// 1/Gamma(z), entire; zero at the poles of Gamma.
pub fn rgamma(z: C64) -> C64 {
    if near_pole(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * ln_gamma_lanczos(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_lanczos(z)).exp()
    }
}

/// A logarithm of Gamma(z). The branch is not the principal one; only
/// differences and exponentials of this value are meaningful.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if near_pole(z) {
        return Err(SpecialFunctionError::Pole(z));
    }
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < 0.5 {
        acc += w.ln();
        w += 1.0;
    }
    Ok(ln_gamma_lanczos(w) - acc)
}

// ---------------------------------------------------------------------------
// Cut-plane branch
// ---------------------------------------------------------------------------

/// True when z sits on [0, inf) up to a relative tolerance.
pub fn on_cut(z: C64) -> bool {
    z.re >= 0.0 && z.im.abs() <= 1e-14 * z.norm().max(f64::MIN_POSITIVE)
}

/// Log(-z) with imaginary part in (-pi, pi).
pub fn log_neg(z: C64) -> Result<C64> {
    if on_cut(z) {
        return Err(SpecialFunctionError::OnCut(z));
    }
    Ok((-z).ln())
}

/// (-z)^m on the principal branch.
pub fn principal_power(z: C64, m: C64) -> Result<C64> {
    Ok((m * log_neg(z)?).exp())
}

// ---------------------------------------------------------------------------
// Bessel functions
// ---------------------------------------------------------------------------

/// Coefficients a_k(nu) = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k) of the
/// Hankel expansions, precomputed for one order.
#[derive(Debug, Clone)]
pub struct HankelCoefficients {
    a: Vec<C64>,
}

impl HankelCoefficients {
    pub fn new(nu: C64) -> Self {
        let mu = 4.0 * nu * nu;
        let mut a = vec![C64::new(1.0, 0.0)];
        for k in 1..64 {
            let j = (2 * k - 1) as f64;
            let next = a[k - 1] * (mu - j * j) / (k as f64 * 8.0);
            a.push(next);
        }
        Self { a }
    }

    /// Sum_k s^k a_k / x^k truncated at the smallest term.
    fn sum(&self, x: f64, sign: f64) -> C64 {
        let mut total = self.a[0];
        let mut best = f64::INFINITY;
        let mut p = 1.0;
        for ak in self.a.iter().skip(1) {
            p *= sign / x;
            let term = ak * p;
            let size = term.norm();
            if size > best {
                break;
            }
            best = size;
            total += term;
            if size < 1e-17 * total.norm() {
                break;
            }
        }
        total
    }

    /// The pair (P, Q) with J_nu(x) = sqrt(2/(pi x)) (P cos w - Q sin w).
    pub fn pq(&self, x: f64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut q = C64::new(0.0, 0.0);
        let mut best = f64::INFINITY;
        let mut xp = 1.0;
        for (k, ak) in self.a.iter().enumerate() {
            if k > 0 {
                xp /= x;
            }
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let term = ak * (sign * xp);
            let size = term.norm();
            if k > 1 && size > best {
                break;
            }
            best = size;
            if k % 2 == 0 {
                p += term;
            } else {
                q += term;
            }
            if size < 1e-17 {
                break;
            }
        }
        (p, q)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecialFunctionError::NonPositiveArgument(x))
    }
}

fn as_negative_integer(nu: C64) -> Option<i64> {
    let n = nu.re.round();
    if n < 0.0 && (nu.re - n).abs() < 1e-14 && nu.im.abs() < 1e-14 {
        Some(n as i64)
    } else {
        None
    }
}

/// Ascending series sum_k s^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) with s = -1 for J, +1 for I.
fn ascending_series(nu: C64, x: f64, sign: f64) -> C64 {
    let half = 0.5 * x;
    let mut term = (nu * half.ln()).exp() * rgamma(nu + 1.0);
    let mut total = term;
    let q = sign * half * half;
    let mut k = 1.0;
    // Start the recurrence from a term that is not forced to zero by 1/Gamma.
    if term.norm() == 0.0 {
        return ascending_series_from_pole(nu, x, sign);
    }
    loop {
        term *= q / (k * (k + nu));
        total += term;
        if term.norm() <= 1e-17 * total.norm() && k > 2.0 * half {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            break;
        }
    }
    total
}

/// Series when nu + 1 is a non-positive integer, so the first few terms vanish.
fn ascending_series_from_pole(nu: C64, x: f64, sign: f64) -> C64 {
    let half = 0.5 * x;
    let mut total = C64::new(0.0, 0.0);
    let mut k = 0usize;
    while near_pole(nu + 1.0 + k as f64) {
        k += 1;
    }
    let kf = k as f64;
    let mut term = ((nu + 2.0 * kf) * half.ln()).exp() * rgamma(nu + kf + 1.0) * sign.powi(k as i32)
        / gamma_real_factorial(k);
    total += term;
    let q = sign * half * half;
    let mut j = kf + 1.0;
    loop {
        term *= q / (j * (j + nu));
        total += term;
        if term.norm() <= 1e-17 * total.norm() && j > 2.0 * half {
            break;
        }
        j += 1.0;
        if j > 500.0 {
            break;
        }
    }
    total
}

fn gamma_real_factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

pub fn bessel_j(nu: C64, x: f64) -> Result<C64> {
    check_arg(x)?;
    if let Some(n) = as_negative_integer(nu) {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(s * bessel_j(C64::new(-(n as f64), 0.0), x)?);
    }
    if x < ASYMPTOTIC_SWITCH {
        return Ok(ascending_series(nu, x, -1.0));
    }
    let (p, q) = HankelCoefficients::new(nu).pq(x);
    let w = x - nu * FRAC_PI_2 - 0.25 * PI;
    Ok((2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin()))
}

pub fn bessel_i(nu: C64, x: f64) -> Result<C64> {
    check_arg(x)?;
    if let Some(n) = as_negative_integer(nu) {
        return bessel_i(C64::new(-(n as f64), 0.0), x);
    }
    if x < ASYMPTOTIC_SWITCH {
        return Ok(ascending_series(nu, x, 1.0));
    }
    let s = HankelCoefficients::new(nu).sum(x, -1.0);
    Ok(x.exp() / (2.0 * PI * x).sqrt() * s)
}

pub fn bessel_k(nu: C64, x: f64) -> Result<C64> {
    check_arg(x)?;
    if x >= ASYMPTOTIC_SWITCH {
        let s = HankelCoefficients::new(nu).sum(x, 1.0);
        return Ok((PI / (2.0 * x)).sqrt() * (-x).exp() * s);
    }
    if x > K_SERIES_MAX {
        return Ok(k_integral(nu, x));
    }
    let n = nu.re.round();
    let dist = (nu - n).norm();
    if dist >= K_NEAR_INTEGER {
        return Ok(k_reflection(nu, x));
    }
    let avg = |d: f64| 0.5 * (k_reflection(nu + d, x) + k_reflection(nu - d, x));
    let a1 = avg(K_RICHARDSON_STEP);
    let a2 = avg(2.0 * K_RICHARDSON_STEP);
    let value = (4.0 * a1 - a2) / 3.0;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(SpecialFunctionError::OrderAtNegativeIntegerSingularity(nu))
    }
}

fn k_reflection(nu: C64, x: f64) -> C64 {
    let ip = ascending_series(-nu, x, 1.0);
    let im = ascending_series(nu, x, 1.0);
    FRAC_PI_2 * (ip - im) / (PI * nu).sin()
}

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule,
/// which converges geometrically for this analytic integrand.
fn k_integral(nu: C64, x: f64) -> C64 {
    let h: f64 = 0.05;
    let mut total = 0.5 * (-x).exp() * C64::new(1.0, 0.0);
    let mut t = h;
    loop {
        let e = -x * t.cosh();
        let term = (e + nu * t).exp() + (e - nu * t).exp();
        let term = 0.5 * term;
        total += term;
        if term.norm() < 1e-18 * total.norm() {
            break;
        }
        t += h;
        if t > 60.0 {
            break;
        }
    }
    h * total
}

// ---------------------------------------------------------------------------
// Mellin multiplier
// ---------------------------------------------------------------------------

/// Xi_m(t) = exp(i ln2 t) Gamma((m+1+it)/2) / Gamma((m+1-it)/2).
pub fn xi_multiplier(m: C64, t: f64) -> Result<C64> {
    let a = 0.5 * (m + 1.0 + I * t);
    let b = 0.5 * (m + 1.0 - I * t);
    if near_pole(a) || near_pole(b) {
        return Err(SpecialFunctionError::MultiplierPole { m, t });
    }
    let la = ln_gamma(a)?;
    let lb = ln_gamma(b)?;
    Ok((I * (LN_2 * t) + la - lb).exp())
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_classical_values() {
        assert!(rel(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(SpecialFunctionError::Pole(_))));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn principal_power_examples() {
        let p = principal_power(c(-1.0, 0.0), c(0.3, 0.7)).unwrap();
        assert!((p - 1.0).norm() < 1e-15);
        let p = principal_power(c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        assert!((p - c(0.0, -1.0)).norm() < 1e-15);
        let p = principal_power(c(-4.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((p - 2.0).norm() < 1e-15);
        assert!(matches!(principal_power(c(2.0, 0.0), c(0.5, 0.0)), Err(SpecialFunctionError::OnCut(_))));
        assert!(principal_power(c(0.0, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn half_integer_bessel_closed_forms() {
        let h = c(0.5, 0.0);
        for x in [0.5, 1.0, 5.0, 25.0] {
            let j = (2.0 / (PI * x)).sqrt() * x.sin();
            let i = (2.0 / (PI * x)).sqrt() * x.sinh();
            let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((bessel_j(h, x).unwrap() - j).norm() < 1e-12, "J at {x}");
            assert!(rel(bessel_i(h, x).unwrap(), c(i, 0.0)) < 1e-12, "I at {x}");
            assert!(rel(bessel_k(h, x).unwrap(), c(k, 0.0)) < 1e-12, "K at {x}");
        }
        assert!((bessel_j(c(0.0, 0.0), 1e-12).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn negative_integer_orders() {
        let j = bessel_j(c(-3.0, 0.0), 2.0).unwrap();
        let jp = bessel_j(c(3.0, 0.0), 2.0).unwrap();
        assert!((j + jp).norm() < 1e-15);
        let k = bessel_k(c(-2.0, 0.0), 1.3).unwrap();
        let kp = bessel_k(c(2.0, 0.0), 1.3).unwrap();
        assert!(rel(k, kp) < 1e-10);
    }

    #[test]
    fn non_positive_argument_is_rejected() {
        assert!(matches!(bessel_j(c(0.0, 0.0), 0.0), Err(SpecialFunctionError::NonPositiveArgument(_))));
        assert!(bessel_k(c(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn xi_examples() {
        assert!((xi_multiplier(c(0.7, 0.0), 0.0).unwrap() - 1.0).norm() < 1e-15);
        assert!((xi_multiplier(c(0.0, 0.0), 3.0).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!(matches!(
            xi_multiplier(c(-1.0, 0.0), 0.0),
            Err(SpecialFunctionError::MultiplierPole { .. })
        ));
    }
}
