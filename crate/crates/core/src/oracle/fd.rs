//! Finite-difference eigenvalues of the half-line operator.
//!
//! In t = ln x the eigenproblem reads (−∂_t² + m²) w = E e^{2t} w on
//! [ln x0, ln L]. The boundary class at 0 becomes a Robin condition at ln x0
//! taken from the Frobenius series at the sought eigenvalue, and w vanishes at ln L. The
//! scheme is a symmetric tridiagonal pencil; eigenvalues come from Sturm
//! bisection.

use crate::special::C64;

use super::shooting::{frobenius, Boundary};
use super::{OracleError, Result};

/// Inner cutoff of the discretised interval.
pub const FD_INNER: f64 = 1e-2;
const MIN_NODES: usize = 200;
const IMAG_TOL: f64 = 1e-12;
const FIXED_POINT_ITER: usize = 50;

fn real_or_err(z: C64, what: &str) -> Result<f64> {
    if z.im.abs() <= IMAG_TOL * (1.0 + z.re.abs()) {
        Ok(z.re)
    } else {
        Err(OracleError::NotSelfAdjoint(format!("{what} = {z} is not real")))
    }
}

/// Leading-order Robin coefficient w′/w at t0 for the boundary class.
fn leading_robin(boundary: Boundary, t0: f64) -> Result<f64> {
    let beta = match boundary {
        Boundary::Pure { m } => m,
        Boundary::Mixed { m, kappa: None } => -m,
        Boundary::Mixed { m, kappa: Some(kappa) } => {
            let up = (m * t0).exp();
            let down = kappa * (-m * t0).exp();
            m * (up - down) / (up + down)
        }
        Boundary::Log { nu } => 1.0 / (t0 + nu),
    };
    real_or_err(beta, "Robin coefficient")
}

/// Robin coefficient from the full Frobenius series at energy E.
fn robin_at(boundary: Boundary, t0: f64, energy: f64) -> Result<f64> {
    let (w, dw) = frobenius(boundary, C64::new(energy, 0.0), t0)?;
    real_or_err(dw / w, "Robin coefficient")
}

/// Symmetric tridiagonal matrix W^{-1/2} A W^{-1/2} of the pencil.
struct Pencil {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Pencil {
    fn new(m2: f64, t0: f64, h: f64, n: usize, beta: f64) -> Self {
        // Nodes t_j = t0 + j h, j < n, and w(t_n) = 0. Row 0 is the ghost-point
        // Robin closure, halved so the pencil stays symmetric.
        let h2 = h * h;
        let mut diag = vec![2.0 / h2 + m2; n];
        let mut off = vec![-1.0 / h2; n - 1];
        let mut weight: Vec<f64> = (0..n).map(|j| (2.0 * (t0 + j as f64 * h)).exp()).collect();
        diag[0] = (1.0 + h * beta) / h2 + 0.5 * m2;
        weight[0] *= 0.5;
        let s: Vec<f64> = weight.iter().map(|w| 1.0 / w.sqrt()).collect();
        for j in 0..n {
            diag[j] *= s[j] * s[j];
            if j + 1 < n {
                off[j] *= s[j] * s[j + 1];
            }
        }
        Self { diag, off }
    }

    /// Number of eigenvalues below x (Sturm sequence).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for j in 1..self.diag.len() {
            let e2 = self.off[j - 1] * self.off[j - 1];
            let prev = if q == 0.0 { f64::EPSILON * (self.off[j - 1].abs() + 1e-300) } else { q };
            q = self.diag[j] - x - e2 / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn lower_bound(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|j| {
                let r = if j > 0 { self.off[j - 1].abs() } else { 0.0 } + if j + 1 < n { self.off[j].abs() } else { 0.0 };
                self.diag[j] - r
            })
            .fold(0.0, f64::min)
    }

    /// The idx-th eigenvalue (ascending) by bisection, if it is negative.
    fn negative_eigenvalue(&self, idx: usize) -> Option<f64> {
        if self.count_below(0.0) <= idx {
            return None;
        }
        let (mut a, mut b) = (self.lower_bound(), 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if self.count_below(mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 1e-15 * a.abs().max(b.abs()) {
                break;
            }
        }
        Some(0.5 * (a + b))
    }
}

/// Sorted negative eigenvalues of the n-node discretisation on (0, L].
pub fn fd_matrix_eigenvalues(boundary: Boundary, n: usize, l: f64) -> Result<Vec<f64>> {
    fd_matrix_eigenvalues_with_inner(boundary, n, l, FD_INNER)
}

/// As [`fd_matrix_eigenvalues`] with an explicit inner cutoff x0.
///
/// The Robin coefficient at x0 depends on the eigenvalue through the Frobenius
/// series; each eigenvalue is found by fixed-point iteration on that coupling.
pub fn fd_matrix_eigenvalues_with_inner(boundary: Boundary, n: usize, l: f64, x0: f64) -> Result<Vec<f64>> {
    if n < MIN_NODES {
        return Err(OracleError::InvalidProblem(format!("need at least {MIN_NODES} nodes, got {n}")));
    }
    if !(x0 > 0.0 && l > x0) {
        return Err(OracleError::InvalidProblem(format!("need 0 < x0 < L, got x0 = {x0}, L = {l}")));
    }
    let m = boundary.order();
    let m2 = real_or_err(m * m, "m^2")?;
    let t0 = x0.ln();
    let h = (l.ln() - t0) / n as f64;
    let first = Pencil::new(m2, t0, h, n, leading_robin(boundary, t0)?);
    let negatives = first.count_below(0.0);
    let mut out = Vec::with_capacity(negatives);
    for idx in 0..negatives {
        let Some(start) = first.negative_eigenvalue(idx) else { break };
        // Secant iteration on g(E) = eig_idx(β(E)) − E.
        let g = |e: f64| -> Result<Option<f64>> {
            let pencil = Pencil::new(m2, t0, h, n, robin_at(boundary, t0, e)?);
            Ok(pencil.negative_eigenvalue(idx).map(|v| v - e))
        };
        let (mut e0, mut e1) = (start, start * (1.0 + 1e-6));
        let Some(mut g0) = g(e0)? else { continue };
        let mut root = None;
        for _ in 0..FIXED_POINT_ITER {
            let Some(g1) = g(e1)? else { break };
            if g1.abs() <= 1e-9 * e1.abs() || (e1 - e0).abs() <= 1e-13 * e1.abs() {
                root = Some(e1);
                break;
            }
            let e2 = e1 - g1 * (e1 - e0) / (g1 - g0);
            if !(e2 < 0.0) {
                break;
            }
            e0 = e1;
            g0 = g1;
            e1 = e2;
        }
        if let Some(e) = root {
            out.push(e);
        }
    }
    Ok(out)
}
