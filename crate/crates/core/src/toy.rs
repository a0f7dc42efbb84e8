//! Rank-one perturbations of the position operator X on L^2[0, inf).
//!
//! H_{m,lambda} = X + lambda |x^{m/2}><x^{m/2}| for |Re m| < 1, m != 0, and the
//! logarithmic family H_0^rho that replaces m = 0. Resolvents follow the Krein
//! formula; eigenvalues lie on a logarithmic spiral indexed by the branch of Log.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::common::{CountClass, Eigenvalue, ExtendedComplex, SpectrumReport};
use crate::special::{log_neg, principal_power, SpecialFunctionError, C64};
use crate::transforms::GridFunction;

/// Half-width of the index window reported for infinite spectra.
pub const DEFAULT_INDEX_WINDOW: i64 = 20;
const AT_EIGENVALUE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToyError {
    #[error("m = 0 is the logarithmic family; use rho instead of lambda")]
    MzeroUseLogFamily,
    #[error("exponent m = {0} violates |Re m| < 1")]
    ExponentOutOfRange(C64),
    #[error("sin(pi m) vanishes at m = {0}")]
    LambdaPole(C64),
    #[error("z = {0} is an eigenvalue; the resolvent does not exist there")]
    AtEigenvalue(C64),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
}

type Result<T> = std::result::Result<T, ToyError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyParams {
    pub m: C64,
    pub lambda: ExtendedComplex,
}

impl ToyParams {
    pub fn new(m: C64, lambda: ExtendedComplex) -> Result<Self> {
        if m.re.abs() >= 1.0 {
            return Err(ToyError::ExponentOutOfRange(m));
        }
        if m == C64::new(0.0, 0.0) {
            return Err(ToyError::MzeroUseLogFamily);
        }
        Ok(Self { m, lambda })
    }

    /// Lambda = lambda pi / sin(pi m), the coupling that enters the eigenvalue equation.
    pub fn spiral_coupling(&self) -> Result<ExtendedComplex> {
        let s = (PI * self.m).sin();
        if s.norm() == 0.0 {
            return Err(ToyError::LambdaPole(self.m));
        }
        Ok(self.lambda.scale(PI / s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogParams {
    pub rho: ExtendedComplex,
}

/// int_0^inf x^m / (z - x) dx = (-z)^m pi / sin(pi m).
pub fn weighted_resolvent(m: C64, z: C64) -> Result<C64> {
    if m == C64::new(0.0, 0.0) {
        return Err(ToyError::MzeroUseLogFamily);
    }
    if m.re.abs() >= 1.0 {
        return Err(ToyError::ExponentOutOfRange(m));
    }
    Ok(principal_power(z, m)? * PI / (PI * m).sin())
}

/// (z - H)^{-1} = (z - X)^{-1} + c(z) (z - X)^{-1} |x^e><x^e| (z - X)^{-1},
/// with the bilinear pairing and e = m/2 (e = 0 for the logarithmic family).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneResolvent {
    pub z: C64,
    pub correction_coefficient: C64,
    pub factor_exponent: C64,
}

impl RankOneResolvent {
    pub fn diagonal(&self, x: f64) -> C64 {
        (self.z - x).inv()
    }

    /// Integral kernel of the rank-one correction.
    pub fn correction_kernel(&self, x: f64, y: f64) -> C64 {
        let e = self.factor_exponent;
        self.correction_coefficient * C64::new(x, 0.0).powc(e) * C64::new(y, 0.0).powc(e)
            / ((self.z - x) * (self.z - y))
    }

    /// Applies the resolvent to a sampled function. The pairing with x^e/(z-x)
    /// carries power-law tail corrections at both grid ends.
    pub fn apply(&self, f: &GridFunction) -> GridFunction {
        let e = self.factor_exponent;
        let v = f.map_pointwise(|x, fx| C64::new(x, 0.0).powc(e) * fx / (self.z - x));
        let pairing = v.integral_with_power_tails();
        let c = self.correction_coefficient * pairing;
        f.map_pointwise(|x, fx| (fx + c * C64::new(x, 0.0).powc(e)) / (self.z - x))
    }
}

pub fn toy_resolvent(params: &ToyParams, z: C64) -> Result<RankOneResolvent> {
    let factor_exponent = 0.5 * params.m;
    let w = weighted_resolvent(params.m, z)?;
    let correction_coefficient = match params.lambda {
        ExtendedComplex::Finite(l) if l == C64::new(0.0, 0.0) => C64::new(0.0, 0.0),
        ExtendedComplex::Finite(l) => {
            let inv = l.inv();
            let d = inv - w;
            if d.norm() < AT_EIGENVALUE_TOL * (inv.norm() + w.norm()) {
                return Err(ToyError::AtEigenvalue(z));
            }
            d.inv()
        }
        ExtendedComplex::Infinity => -w.inv(),
    };
    Ok(RankOneResolvent { z, correction_coefficient, factor_exponent })
}

pub fn log_resolvent(params: &LogParams, z: C64) -> Result<RankOneResolvent> {
    let zero = C64::new(0.0, 0.0);
    let l = log_neg(z)?;
    let correction_coefficient = match params.rho {
        ExtendedComplex::Infinity => zero,
        ExtendedComplex::Finite(rho) => {
            let d = rho + l;
            if d.norm() < AT_EIGENVALUE_TOL * (rho.norm() + l.norm()).max(1.0) {
                return Err(ToyError::AtEigenvalue(z));
            }
            -d.inv()
        }
    };
    Ok(RankOneResolvent { z, correction_coefficient, factor_exponent: zero })
}

/// The branch points w_n = -(Log Lambda + 2 pi i n)/m of the eigenvalue equation,
/// before the physical-sheet filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spiral {
    pub m: C64,
    pub log_coupling: C64,
}

impl Spiral {
    pub fn w(&self, n: i64) -> C64 {
        -(self.log_coupling + C64::new(0.0, 2.0 * PI * n as f64)) / self.m
    }

    /// Im w_n = offset + slope * n.
    pub fn offset(&self) -> f64 {
        self.w(0).im
    }

    pub fn slope(&self) -> f64 {
        (C64::new(0.0, -2.0 * PI) / self.m).im
    }

    pub fn on_physical_sheet(&self, n: i64) -> bool {
        self.w(n).im.abs() < PI
    }

    /// Indices n with Im w_n in (-pi, pi), or None when there are infinitely many.
    pub fn retained_range(&self) -> Option<(i64, i64)> {
        let a = self.offset();
        let b = self.slope();
        if b == 0.0 {
            return if a.abs() < PI { None } else { Some((1, 0)) };
        }
        let (lo, hi) = {
            let p = (-PI - a) / b;
            let q = (PI - a) / b;
            (p.min(q), p.max(q))
        };
        // Candidates from the linear bounds, confirmed one by one.
        let mut first = lo.floor() as i64 - 1;
        let mut last = hi.ceil() as i64 + 1;
        while first <= last && !self.on_physical_sheet(first) {
            first += 1;
        }
        while last >= first && !self.on_physical_sheet(last) {
            last -= 1;
        }
        Some((first, last))
    }
}

pub fn spiral(params: &ToyParams) -> Result<Option<Spiral>> {
    match params.spiral_coupling()? {
        ExtendedComplex::Infinity => Ok(None),
        ExtendedComplex::Finite(c) if c == C64::new(0.0, 0.0) => Ok(None),
        ExtendedComplex::Finite(c) => Ok(Some(Spiral { m: params.m, log_coupling: c.ln() })),
    }
}

pub fn toy_eigenvalues(params: &ToyParams) -> Result<SpectrumReport> {
    toy_eigenvalues_windowed(params, DEFAULT_INDEX_WINDOW)
}

/// As [`toy_eigenvalues`]; infinite spectra are listed for |n| <= window.
pub fn toy_eigenvalues_windowed(params: &ToyParams, window: i64) -> Result<SpectrumReport> {
    let params = ToyParams::new(params.m, params.lambda)?;
    let Some(sp) = spiral(&params)? else {
        return Ok(SpectrumReport::empty());
    };
    let eig = |n: i64| Eigenvalue { index: n, value: -sp.w(n).exp() };
    match sp.retained_range() {
        None => Ok(SpectrumReport {
            eigenvalues: (-window..=window).map(eig).collect(),
            count: CountClass::Infinite { window_lo: -window, window_hi: window },
        }),
        Some((first, last)) => Ok(SpectrumReport::finite((first..=last).map(eig).collect())),
    }
}

/// Eigenvalue of H_0^rho: the root of rho + Log(-z) = 0, namely -e^{-rho}.
pub fn h0_eigenvalue(rho: ExtendedComplex) -> SpectrumReport {
    match rho {
        ExtendedComplex::Infinity => SpectrumReport::empty(),
        ExtendedComplex::Finite(r) if r.im.abs() < PI => {
            SpectrumReport::finite(vec![Eigenvalue { index: 0, value: -(-r).exp() }])
        }
        ExtendedComplex::Finite(_) => SpectrumReport::empty(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountBound {
    /// The count is N or N + 1.
    Between { n: u64 },
    Infinite,
    Zero,
}

impl CountBound {
    pub fn admits(&self, count: &CountClass) -> bool {
        let k = match count {
            CountClass::Empty => 0,
            CountClass::Finite(k) => *k as u64,
            CountClass::Infinite { .. } => return matches!(self, Self::Infinite),
        };
        match self {
            Self::Between { n } => k == *n || k == n + 1,
            Self::Infinite => false,
            Self::Zero => k == 0,
        }
    }
}

/// Bound on the number of eigenvalues. For Re m != 0 it depends on m alone:
/// N < (m_r^2 + m_i^2)/|m_r| <= N + 1. For Re m = 0 the count is infinite when
/// ln|Lambda|/m_i lies in (-pi, pi) and zero otherwise.
pub fn toy_count_bounds(params: &ToyParams) -> Result<CountBound> {
    let m = params.m;
    if m.re != 0.0 {
        let q = m.norm_sqr() / m.re.abs();
        let n = (q.ceil() - 1.0).max(0.0) as u64;
        return Ok(CountBound::Between { n });
    }
    match params.spiral_coupling()? {
        ExtendedComplex::Finite(c) if c != C64::new(0.0, 0.0) => {
            if (c.norm().ln() / m.im).abs() < PI {
                Ok(CountBound::Infinite)
            } else {
                Ok(CountBound::Zero)
            }
        }
        _ => Ok(CountBound::Zero),
    }
}

/// U_tau H_{m,lambda} U_tau^{-1} = e^tau H_{m, e^{tau m} lambda}.
pub fn rg_flow_toy(params: &ToyParams, tau: f64) -> ToyParams {
    ToyParams { m: params.m, lambda: params.lambda.scale((tau * params.m).exp()) }
}

/// U_tau H_0^rho U_tau^{-1} = e^tau H_0^{rho + tau}.
pub fn rg_flow_log(params: &LogParams, tau: f64) -> LogParams {
    LogParams { rho: params.rho.shift(C64::new(tau, 0.0)) }
}
