//! Time evolution, Møller operators, and the similarity between the toy model
//! and the almost homogeneous Schrödinger operators.
//!
//! `evolve(m, t, ·)` is e^{−itH_m}, computed as F_m e^{−itk²} F_m.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::common::{multiset_distance, CountClass, Eigenvalue, ExtendedComplex, SpectrumReport};
use crate::homogeneous::{h0nu_eigenvalue, LogBoundaryParams};
use crate::special::{gamma, xi_multiplier, SpecialFunctionError, C64, EULER_GAMMA};
use crate::toy::{h0_eigenvalue, toy_eigenvalues_windowed, ToyError, ToyParams, DEFAULT_INDEX_WINDOW};
use crate::transforms::{apply_function_of_a, GridFunction, HankelPlan, TransformError};

#[derive(Debug, Error)]
pub enum ScatteringError {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Toy(#[from] ToyError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
}

type Result<T> = std::result::Result<T, ScatteringError>;

/// Which Gamma quotient links λ to κ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConventionFlag {
    /// λπ/sin(πm) = κΓ(m)/Γ(−m).
    Direct,
    /// λπ/sin(πm) = κΓ(−m)/Γ(m).
    Swapped,
}

impl ConventionFlag {
    pub const ALL: [ConventionFlag; 2] = [ConventionFlag::Direct, ConventionFlag::Swapped];

    pub fn name(&self) -> &'static str {
        match self {
            ConventionFlag::Direct => "direct",
            ConventionFlag::Swapped => "swapped",
        }
    }
}

/// κ corresponding to the toy coupling λ under the given convention.
pub fn kappa_from_lambda(m: C64, lambda: ExtendedComplex, flag: ConventionFlag) -> Result<ExtendedComplex> {
    let params = ToyParams::new(m, lambda)?;
    let big_lambda = params.spiral_coupling()?;
    let quotient = match flag {
        ConventionFlag::Direct => gamma(-m)? / gamma(m)?,
        ConventionFlag::Swapped => gamma(m)? / gamma(-m)?,
    };
    Ok(big_lambda.scale(quotient))
}

/// ν matched to the toy parameter ρ: the eigenvalues −e^{−ρ} and
/// −4e^{2(ν−γ)} correspond when ρ = 2γ − 2ν.
pub fn nu_from_rho(rho: ExtendedComplex) -> ExtendedComplex {
    match rho {
        ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        ExtendedComplex::Finite(r) => ExtendedComplex::Finite(EULER_GAMMA - 0.5 * r),
    }
}

/// Point spectrum of H_{m,κ} for complex m with 0 < |Re m| < 1 or Re m = 0,
/// m ≠ 0, and any κ: E_n = −4 exp((L + 2πin)/m), L = Log(Γ(m)/(κΓ(−m))),
/// kept when |Im((L + 2πin)/m)| < π so that √(−E_n) has positive real part.
pub fn almost_homogeneous_spectrum(m: C64, kappa: ExtendedComplex, window: i64) -> Result<SpectrumReport> {
    if m.re.abs() >= 1.0 || m == C64::new(0.0, 0.0) {
        return Err(ScatteringError::InvalidParameter(format!("need 0 < |m|, |Re m| < 1, got {m}")));
    }
    let kappa = match kappa {
        ExtendedComplex::Infinity => return Ok(SpectrumReport::empty()),
        ExtendedComplex::Finite(k) if k == C64::new(0.0, 0.0) => return Ok(SpectrumReport::empty()),
        ExtendedComplex::Finite(k) => k,
    };
    let log_q = (gamma(m)? / (kappa * gamma(-m)?)).ln();
    let exponent = |n: i64| (log_q + C64::new(0.0, 2.0 * PI * n as f64)) / m;
    let eig = |n: i64| Eigenvalue { index: n, value: -4.0 * exponent(n).exp() };
    if m.re == 0.0 {
        // Im of the exponent does not depend on n.
        return Ok(if exponent(0).im.abs() < PI {
            SpectrumReport {
                eigenvalues: (-window..=window).map(eig).collect(),
                count: CountClass::Infinite { window_lo: -window, window_hi: window },
            }
        } else {
            SpectrumReport::empty()
        });
    }
    // Im exponent(n) = a + b n with b = 2π Re m/|m|²; |b| ≥ 2π so at most a
    // few indices qualify. Scan a range that certainly contains them.
    let a = exponent(0).im;
    let b = 2.0 * PI * m.re / m.norm_sqr();
    let center = (-a / b).round() as i64;
    let span = (PI / b.abs()).ceil() as i64 + 2;
    let eigenvalues: Vec<Eigenvalue> =
        (center - span..=center + span).filter(|&n| exponent(n).im.abs() < PI).map(eig).collect();
    Ok(SpectrumReport::finite(eigenvalues))
}

/// Outcome of comparing the toy spectrum with (1/4)·spectrum of H_{m,κ} under
/// one convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionComparison {
    pub flag: ConventionFlag,
    pub kappa: ExtendedComplex,
    pub toy: Vec<C64>,
    pub quarter_schrodinger: Vec<C64>,
    /// Largest relative distance between matched eigenvalues; infinite when
    /// the counts differ.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub m: C64,
    pub lambda: ExtendedComplex,
    pub comparisons: Vec<ConventionComparison>,
}

impl SimilarityReport {
    /// Conventions whose spectra agree to `tol`.
    pub fn matching(&self, tol: f64) -> Vec<ConventionFlag> {
        self.comparisons.iter().filter(|c| c.distance <= tol).map(|c| c.flag).collect()
    }
}

/// One-way relative distance from each point of `a` to the nearest point of `b`.
/// Points of `a` outside the representable range are skipped; points of `b`
/// only need to be finite and nonzero.
fn contained_distance(a: &[C64], b: &[C64]) -> f64 {
    let representable = |z: &&C64| z.norm() > 1e-250 && z.norm() < 1e250;
    let finite = |z: &&C64| z.norm().is_finite() && z.norm() > 0.0;
    a.iter()
        .filter(representable)
        .map(|x| {
            b.iter().filter(finite).map(|y| (x - y).norm() / x.norm().max(y.norm())).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Symmetric distance between two complete lists; eigenvalues far out on the
/// spiral overflow or underflow and are compared only where representable.
fn listed_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    contained_distance(a, b).max(contained_distance(b, a))
}

/// Compares toy and quarter almost homogeneous spectra under both conventions.
/// Infinite spectra are compared on index windows, each side checked against
/// a wider window of the other.
pub fn similarity_spectrum_check(m: C64, lambda: ExtendedComplex) -> Result<SimilarityReport> {
    let params = ToyParams::new(m, lambda)?;
    let window = DEFAULT_INDEX_WINDOW;
    let toy = toy_eigenvalues_windowed(&params, window)?;
    let toy_wide = toy_eigenvalues_windowed(&params, window + 2)?;
    let mut comparisons = Vec::new();
    for flag in ConventionFlag::ALL {
        let kappa = kappa_from_lambda(m, lambda, flag)?;
        let quarter = |w: i64| -> Result<(Vec<C64>, bool)> {
            let s = almost_homogeneous_spectrum(m, kappa, w)?;
            let infinite = matches!(s.count, CountClass::Infinite { .. });
            Ok((s.values().into_iter().map(|e| e * 0.25).collect(), infinite))
        };
        let (schr, schr_infinite) = quarter(window)?;
        let toy_infinite = matches!(toy.count, CountClass::Infinite { .. });
        let distance = match (toy_infinite, schr_infinite) {
            (false, false) => listed_distance(&toy.values(), &schr),
            (true, true) => {
                let (schr_wide, _) = quarter(window + 2)?;
                contained_distance(&toy.values(), &schr_wide).max(contained_distance(&schr, &toy_wide.values()))
            }
            _ => f64::INFINITY,
        };
        comparisons.push(ConventionComparison { flag, kappa, toy: toy.values(), quarter_schrodinger: schr, distance });
    }
    Ok(SimilarityReport { m, lambda, comparisons })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSimilarityReport {
    pub rho: ExtendedComplex,
    pub nu: ExtendedComplex,
    pub toy: Vec<C64>,
    pub quarter_schrodinger: Vec<C64>,
    pub distance: f64,
}

/// Toy H_0^ρ against (1/4)H̃_0^ν with ν = γ − ρ/2.
pub fn log_similarity_check(rho: ExtendedComplex) -> LogSimilarityReport {
    let nu = nu_from_rho(rho);
    let toy = h0_eigenvalue(rho).values();
    let quarter: Vec<C64> = h0nu_eigenvalue(&LogBoundaryParams { nu }).values().into_iter().map(|e| e * 0.25).collect();
    let distance = multiset_distance(&toy, &quarter);
    LogSimilarityReport { rho, nu, toy, quarter_schrodinger: quarter, distance }
}

/// e^{−itH_m} on a fixed grid, reusing the Hankel plan.
pub struct Propagator {
    plan: HankelPlan,
}

impl Propagator {
    pub fn new(m: C64, f_grid: crate::transforms::GridSpec) -> Result<Self> {
        if m.re <= -1.0 {
            return Err(ScatteringError::InvalidParameter(format!("need Re m > -1, got {m}")));
        }
        Ok(Self { plan: HankelPlan::new(m, f_grid)? })
    }

    pub fn evolve(&self, t: f64, f: &GridFunction) -> Result<GridFunction> {
        if t == 0.0 {
            return Ok(f.clone());
        }
        let spectral = self.plan.apply(f)?;
        let phased = spectral.map_pointwise(|k, v| v * C64::new(0.0, -t * k * k).exp());
        Ok(self.plan.apply(&phased)?)
    }
}

/// e^{−itH_m} f.
pub fn evolve(m: C64, t: f64, f: &GridFunction) -> Result<GridFunction> {
    Propagator::new(m, f.spec)?.evolve(t, f)
}

/// e^{itH_m} e^{−itH_k} f.
pub fn moeller_numeric(m: C64, k: C64, t: f64, f: &GridFunction) -> Result<GridFunction> {
    if m == k {
        return Ok(f.clone());
    }
    let pm = Propagator::new(m, f.spec)?;
    let pk = Propagator::new(k, f.spec)?;
    pm.evolve(-t, &pk.evolve(t, f)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeDirection {
    Future,
    Past,
}

impl TimeDirection {
    fn sign(self) -> f64 {
        match self {
            TimeDirection::Future => 1.0,
            TimeDirection::Past => -1.0,
        }
    }
}

/// lim_{t→±∞} e^{itH_m}e^{−itH_k} = e^{±i(m−k)π/2} Ξ_k(A)/Ξ_m(A).
pub fn moeller_analytic(m: C64, k: C64, direction: TimeDirection, f: &GridFunction) -> Result<GridFunction> {
    if m == k {
        return Ok(f.clone());
    }
    let phase = (C64::new(0.0, direction.sign() * FRAC_PI_2) * (m - k)).exp();
    let ratio = |t: f64| match (xi_multiplier(k, t), xi_multiplier(m, t)) {
        (Ok(a), Ok(b)) => a / b * phase,
        _ => C64::new(f64::NAN, f64::NAN),
    };
    xi_multiplier(m, 0.0)?;
    xi_multiplier(k, 0.0)?;
    Ok(apply_function_of_a(ratio, f)?)
}

/// ‖moeller_numeric − moeller_analytic(Future)‖/‖f‖ at each time.
pub fn moeller_residuals(m: C64, k: C64, times: &[f64], f: &GridFunction) -> Result<Vec<f64>> {
    let limit = moeller_analytic(m, k, TimeDirection::Future, f)?;
    let pm = Propagator::new(m, f.spec)?;
    let pk = Propagator::new(k, f.spec)?;
    let norm = f.norm();
    times
        .iter()
        .map(|&t| {
            let numeric = pm.evolve(-t, &pk.evolve(t, f)?)?;
            Ok(numeric.sub(&limit).norm() / norm)
        })
        .collect()
}
