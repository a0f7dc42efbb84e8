//! Value types shared across the operator families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::special::C64;

/// A point of the Riemann sphere: a complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

impl ExtendedComplex {
    pub fn real(x: f64) -> Self {
        Self::Finite(C64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self::Finite(C64::new(re, im))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn finite(self) -> Option<C64> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Self::Finite(z) if z == C64::new(0.0, 0.0))
    }

    /// 1/0 = infinity and 1/infinity = 0.
    pub fn recip(self) -> Self {
        match self {
            Self::Infinity => Self::Finite(C64::new(0.0, 0.0)),
            Self::Finite(z) if z == C64::new(0.0, 0.0) => Self::Infinity,
            Self::Finite(z) => Self::Finite(z.inv()),
        }
    }

    /// Multiplication by a finite nonzero scalar.
    pub fn scale(self, s: C64) -> Self {
        match self {
            Self::Infinity => Self::Infinity,
            Self::Finite(z) => Self::Finite(z * s),
        }
    }

    /// Translation by a finite amount.
    pub fn shift(self, s: C64) -> Self {
        match self {
            Self::Infinity => Self::Infinity,
            Self::Finite(z) => Self::Finite(z + s),
        }
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        Self::Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Finite(z) => write!(f, "{:.16e},{:.16e}", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot parse '{0}' as a complex number (expected re[,im] or inf)")]
pub struct ParseComplexError(pub String);

/// Parses `re`, `re,im` or `inf`.
pub fn parse_complex(s: &str) -> Result<C64, ParseComplexError> {
    let err = || ParseComplexError(s.to_string());
    let mut parts = s.split(',');
    let re: f64 = parts.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| err())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(err());
    }
    Ok(C64::new(re, im))
}

impl FromStr for ExtendedComplex {
    type Err = ParseComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Self::Infinity);
        }
        parse_complex(t).map(Self::Finite)
    }
}

/// One eigenvalue with the integer index of the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub index: i64,
    pub value: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountClass {
    Empty,
    Finite(usize),
    /// Infinitely many eigenvalues; only the listed index window was enumerated.
    Infinite { window_lo: i64, window_hi: i64 },
}

/// Point spectrum of one operator. The essential spectrum is always [0, inf).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Eigenvalue>,
    pub count: CountClass,
}

impl SpectrumReport {
    pub const ESSENTIAL: &'static str = "[0,inf)";

    pub fn empty() -> Self {
        Self { eigenvalues: Vec::new(), count: CountClass::Empty }
    }

    pub fn finite(eigenvalues: Vec<Eigenvalue>) -> Self {
        let count = if eigenvalues.is_empty() {
            CountClass::Empty
        } else {
            CountClass::Finite(eigenvalues.len())
        };
        Self { eigenvalues, count }
    }

    pub fn values(&self) -> Vec<C64> {
        self.eigenvalues.iter().map(|e| e.value).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Largest relative distance from each point of `a` to its nearest point in `b`
/// and back. Returns infinity when exactly one of the sets is empty.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let one_way = |p: &[C64], q: &[C64]| {
        p.iter()
            .map(|x| {
                q.iter()
                    .map(|y| (x - y).norm() / x.norm().max(y.norm()).max(f64::MIN_POSITIVE))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
