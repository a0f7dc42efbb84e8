//! Log-uniform grids on (0, inf) and functions sampled on them.
//!
//! A function f in L^2(dx) is stored by its values f(x_j). Many operations act
//! on g(u) = e^{u/2} f(e^u), which is the unitary image of f in L^2(du).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::special::C64;

use super::TransformError;

pub const MIN_NODES: usize = 16;

/// n log-uniform nodes from x_min to x_max inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { x_min: 1e-4, x_max: 1e4, n: 2048 }
    }
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, TransformError> {
        let spec = Self { x_min, x_max, n };
        spec.validate()?;
        Ok(spec)
    }

    /// Grid symmetric under x -> 1/x spanning [1/x_max, x_max].
    pub fn symmetric(x_max: f64, n: usize) -> Result<Self, TransformError> {
        Self::new(x_max.recip(), x_max, n)
    }

    pub fn validate(&self) -> Result<(), TransformError> {
        if self.n < MIN_NODES {
            return Err(TransformError::InvalidGrid(format!("need at least {MIN_NODES} nodes, got {}", self.n)));
        }
        if !(self.x_min > 0.0 && self.x_max > self.x_min && self.x_max.is_finite()) {
            return Err(TransformError::InvalidGrid(format!(
                "need 0 < x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        Ok(())
    }

    pub fn u_min(&self) -> f64 {
        self.x_min.ln()
    }

    pub fn u_max(&self) -> f64 {
        self.x_max.ln()
    }

    /// Step in u = ln x.
    pub fn log_step(&self) -> f64 {
        (self.u_max() - self.u_min()) / (self.n - 1) as f64
    }

    pub fn u(&self, j: usize) -> f64 {
        self.u_min() + j as f64 * self.log_step()
    }

    pub fn node(&self, j: usize) -> f64 {
        self.u(j).exp()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Quadrature weight for dx at node j.
    pub fn weight(&self, j: usize) -> f64 {
        self.log_step() * self.node(j)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.u_min() + self.u_max()).abs() <= 1e-12 * self.u_max().abs().max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub spec: GridSpec,
    pub values: Vec<C64>,
}

impl GridFunction {
    pub fn from_fn<F: Fn(f64) -> C64>(spec: GridSpec, f: F) -> Self {
        let values = (0..spec.n).map(|j| f(spec.node(j))).collect();
        Self { spec, values }
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, values: vec![C64::new(0.0, 0.0); spec.n] }
    }

    pub fn from_values(spec: GridSpec, values: Vec<C64>) -> Result<Self, TransformError> {
        spec.validate()?;
        if values.len() != spec.n {
            return Err(TransformError::InvalidGrid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                spec.n
            )));
        }
        Ok(Self { spec, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.spec.nodes()
    }

    /// Samples of g(u) = e^{u/2} f(e^u).
    pub fn log_samples(&self) -> Vec<C64> {
        self.values.iter().enumerate().map(|(j, v)| v * self.spec.node(j).sqrt()).collect()
    }

    pub fn from_log_samples(spec: GridSpec, g: Vec<C64>) -> Self {
        let values = g.into_iter().enumerate().map(|(j, v)| v / spec.node(j).sqrt()).collect();
        Self { spec, values }
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().enumerate().map(|(j, v)| v.norm_sqr() * self.spec.weight(j)).sum()
    }

    /// Sesquilinear inner product, antilinear in the first slot.
    pub fn inner(&self, other: &Self) -> C64 {
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a.conj() * b * self.spec.weight(j))
            .sum()
    }

    /// Bilinear pairing int f g dx.
    pub fn pairing(&self, other: &Self) -> C64 {
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a * b * self.spec.weight(j))
            .sum()
    }

    pub fn integral(&self) -> C64 {
        self.values.iter().enumerate().map(|(j, v)| v * self.spec.weight(j)).sum()
    }

    /// Integral with power-law tails extrapolated past both grid ends.
    ///
    /// Near each end the integrand is modelled as c x^p with p read off the two
    /// outermost nodes. The trapezoid sum gets its Euler-Maclaurin end
    /// corrections from that model, and the tail is added when integrable.
    pub fn integral_with_power_tails(&self) -> C64 {
        let n = self.len();
        let h = self.spec.log_step();
        let zero = C64::new(0.0, 0.0);
        // F(u) = f(e^u) e^u is the integrand in u.
        let big_f: Vec<C64> = self.values.iter().enumerate().map(|(j, v)| v * self.spec.node(j)).collect();
        let mut total: C64 = big_f.iter().sum::<C64>() * h;
        total -= 0.5 * h * (big_f[0] + big_f[n - 1]);
        let rate = |a: C64, b: C64| {
            let r = (b / a).ln() / h;
            (a != zero && b != zero && r.is_finite()).then_some(r)
        };
        if let Some(a) = rate(big_f[0], big_f[1]) {
            let f0 = big_f[0];
            total += h * h / 12.0 * a * f0 - h.powi(4) / 720.0 * a * a * a * f0;
            if a.re > 0.0 {
                total += f0 / a;
            }
        }
        if let Some(a) = rate(big_f[n - 2], big_f[n - 1]) {
            let f1 = big_f[n - 1];
            total -= h * h / 12.0 * a * f1 - h.powi(4) / 720.0 * a * a * a * f1;
            if a.re < 0.0 {
                total -= f1 / a;
            }
        }
        total
    }

    pub fn map_pointwise<F: Fn(f64, C64) -> C64>(&self, f: F) -> Self {
        let values = self.values.iter().enumerate().map(|(j, v)| f(self.spec.node(j), *v)).collect();
        Self { spec: self.spec, values }
    }

    pub fn map_pointwise_indexed<F: Fn(usize, f64) -> C64>(&self, f: F) -> Self {
        let values = (0..self.len()).map(|j| f(j, self.spec.node(j))).collect();
        Self { spec: self.spec, values }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map_pointwise(|_, v| v * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn zip_with<F: Fn(C64, C64) -> C64>(&self, other: &Self, f: F) -> Self {
        assert_eq!(self.spec, other.spec, "grid functions live on different grids");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Self { spec: self.spec, values }
    }

    /// ||self - other|| / ||other||.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        self.sub(other).norm() / other.norm()
    }

    /// f at an arbitrary x by quintic Lagrange interpolation of g(u); zero off the grid.
    pub fn interpolate(&self, x: f64) -> C64 {
        let n = self.len();
        let h = self.spec.log_step();
        let s = (x.ln() - self.spec.u_min()) / h;
        if !(s >= -1e-9 && s <= (n - 1) as f64 + 1e-9) {
            return C64::new(0.0, 0.0);
        }
        let base = (s.floor() as i64 - 2).clamp(0, n as i64 - 6) as usize;
        let mut g = C64::new(0.0, 0.0);
        for l in 0..6 {
            let mut w = 1.0;
            for q in 0..6 {
                if q != l {
                    w *= (s - (base + q) as f64) / (l as f64 - q as f64);
                }
            }
            g += w * self.values[base + l] * self.spec.node(base + l).sqrt();
        }
        g / x.sqrt()
    }

    // -- serialization ------------------------------------------------------

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), TransformError> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["node", "re", "im"])?;
        for (j, v) in self.values.iter().enumerate() {
            wr.write_record([fmt17(self.spec.node(j)), fmt17(v.re), fmt17(v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads a CSV written by [`write_csv`]; the nodes must form a log-uniform grid.
    pub fn read_csv<R: Read>(r: R) -> Result<Self, TransformError> {
        let mut rd = csv::Reader::from_reader(r);
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let parse = |k: usize| -> Result<f64, TransformError> {
                rec.get(k)
                    .ok_or_else(|| TransformError::InvalidGrid("short CSV row".into()))?
                    .trim()
                    .parse()
                    .map_err(|e| TransformError::InvalidGrid(format!("bad number: {e}")))
            };
            nodes.push(parse(0)?);
            values.push(C64::new(parse(1)?, parse(2)?));
        }
        if nodes.len() < MIN_NODES {
            return Err(TransformError::InvalidGrid("too few rows".into()));
        }
        let spec = GridSpec::new(nodes[0], nodes[nodes.len() - 1], nodes.len())?;
        for (j, x) in nodes.iter().enumerate() {
            if ((x / spec.node(j)) - 1.0).abs() > 1e-12 {
                return Err(TransformError::InvalidGrid(format!("node {j} is not log-uniform")));
            }
        }
        Self::from_values(spec, values)
    }

    pub fn to_json(&self) -> String {
        let env = GridEnvelope {
            schema: 1,
            grid: self.spec,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_string(&env).expect("grid function serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, TransformError> {
        let env: GridEnvelope = serde_json::from_str(s)?;
        Self::from_values(env.grid, env.values.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct GridEnvelope {
    schema: u32,
    grid: GridSpec,
    values: Vec<[f64; 2]>,
}

/// Fixed 17-significant-digit formatting.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Log-Gaussian bump exp(-(ln x - c)^2 / (2 s^2)).
pub fn log_gaussian(c: f64, s: f64) -> impl Fn(f64) -> C64 {
    move |x: f64| {
        let d = x.ln() - c;
        C64::new((-d * d / (2.0 * s * s)).exp(), 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_log_gaussian() {
        // int exp(-(ln x)^2/s^2) dx = sqrt(pi) s e^{s^2/4}
        let spec = GridSpec::symmetric(1e6, 2000).unwrap();
        let s: f64 = 0.5;
        let f = GridFunction::from_fn(spec, log_gaussian(0.0, s));
        let exact = std::f64::consts::PI.sqrt() * s * (s * s / 4.0).exp();
        assert!((f.norm_sqr() - exact).abs() < 1e-12);
    }

    #[test]
    fn csv_and_json_round_trip_bit_exact() {
        let spec = GridSpec::symmetric(100.0, 40).unwrap();
        let f = GridFunction::from_fn(spec, |x| C64::new((x.ln()).sin() / 3.0, x.sqrt().recip() / 7.0));
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let g = GridFunction::read_csv(&buf[..]).unwrap();
        assert_eq!(f.values, g.values);
        let h = GridFunction::from_json(&f.to_json()).unwrap();
        assert_eq!(f, h);
    }

    #[test]
    fn interpolation_is_accurate_for_smooth_g() {
        let spec = GridSpec::symmetric(1e3, 1000).unwrap();
        let bump = log_gaussian(0.3, 0.7);
        let f = GridFunction::from_fn(spec, &bump);
        for x in [0.05, 0.77, 1.0, 3.3, 41.0] {
            assert!((f.interpolate(x) - bump(x)).norm() < 1e-10);
        }
    }

    #[test]
    fn tail_corrected_integral_of_power_law() {
        // int_0^inf x^{-1/2} / (1 + x) dx = pi
        let spec = GridSpec::symmetric(1e6, 4000).unwrap();
        let f = GridFunction::from_fn(spec, |x| C64::new(x.powf(-0.5) / (1.0 + x), 0.0));
        let v = f.integral_with_power_tails();
        assert!((v.re - std::f64::consts::PI).abs() < 1e-8, "{v}");
    }
}
