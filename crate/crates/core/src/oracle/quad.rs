//! Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::special::C64;

use super::OracleError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-10, max_intervals: 20_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * h;
    let error = ((kron - gauss) * h).norm();
    Panel { a, b, value, error }
}

/// Integrates f over [a, b], starting from the given interior break points.
pub fn integrate_with_breaks<F: Fn(f64) -> C64>(
    f: F,
    breaks: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult, OracleError> {
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(&f, w[0], w[1]));
        }
    }
    let mut evaluations = 15 * heap.len();
    loop {
        let value: C64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
            return Ok(QuadResult { value, error, evaluations });
        }
        if heap.len() >= opts.max_intervals {
            return Err(OracleError::QuadratureNotConverged { estimate: value, error });
        }
        let worst = heap.pop().expect("non-empty panel set");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let value: C64 = heap.iter().map(|p| p.value).sum();
            return Err(OracleError::QuadratureNotConverged { estimate: value, error });
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
        evaluations += 30;
    }
}

/// Integrates f over [a, b] split into `pieces` equal initial panels.
pub fn integrate<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    opts: QuadOptions,
) -> Result<QuadResult, OracleError> {
    let n = pieces.max(1);
    let breaks: Vec<f64> = (0..=n).map(|j| a + (b - a) * j as f64 / n as f64).collect();
    integrate_with_breaks(f, &breaks, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory() {
        let r = integrate(|x| C64::new(x * x, 0.0), 0.0, 3.0, 1, QuadOptions::default()).unwrap();
        assert!((r.value.re - 9.0).abs() < 1e-13);
        let r = integrate(|x| C64::new(0.0, x).exp(), 0.0, 100.0, 20, QuadOptions::default()).unwrap();
        let exact = (C64::new(0.0, 100.0).exp() - 1.0) / C64::new(0.0, 1.0);
        assert!((r.value - exact).norm() < 1e-10);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x| C64::new(x.sqrt().recip(), 0.0), 0.0, 1.0, 1, QuadOptions::default()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let opts = QuadOptions { max_intervals: 3, ..Default::default() };
        let r = integrate(|x| C64::new((50.0 * x).sin() / x.sqrt(), 0.0), 1e-9, 10.0, 1, opts);
        assert!(matches!(r, Err(OracleError::QuadratureNotConverged { .. })));
    }
}
