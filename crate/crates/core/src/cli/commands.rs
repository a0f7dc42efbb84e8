//! Subcommand implementations. Each returns a [`Table`]; argument parsing
//! lives in the binary.

use rayon::prelude::*;

use super::verify::{run_suite, Targets, SUITES};
use super::{count_label, Cell, CliError, GridConfig, Result, Table};
use crate::common::{ExtendedComplex, SpectrumReport};
use crate::homogeneous::{
    classify_phase, h0nu_eigenvalue, hmk_eigenvalues_windowed, projection_kernel, resolvent_kernel_hm,
    rg_flow_log_boundary, rg_flow_schrodinger, BoundaryParams, ExtensionSet, FixedPoint, HomogeneousError,
    LogBoundaryParams,
};
use crate::scattering::{almost_homogeneous_spectrum, moeller_residuals};
use crate::special::C64;
use crate::toy::{
    h0_eigenvalue, rg_flow_log, rg_flow_toy, toy_count_bounds, toy_eigenvalues_windowed, CountBound, LogParams,
    ToyParams,
};
use crate::transforms::hankel::hankel;
use crate::transforms::{log_gaussian, GridFunction, GridSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Toy,
    Schrodinger,
    Log,
}

/// Parameters of one operator. Unused fields are ignored; missing required
/// ones are usage errors.
#[derive(Debug, Clone, Copy, Default)]
pub struct FamilyParams {
    pub m: Option<C64>,
    pub lambda: Option<ExtendedComplex>,
    pub kappa: Option<ExtendedComplex>,
    pub rho: Option<ExtendedComplex>,
    pub nu: Option<ExtendedComplex>,
}

fn required<T>(value: Option<T>, what: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("family {family} needs --{what}")))
}

/// The operator a [`FamilyParams`] names, after validation.
#[derive(Debug, Clone, Copy)]
enum Operator {
    Toy(ToyParams),
    ToyLog(LogParams),
    Schrodinger(BoundaryParams),
    SchrodingerLog(LogBoundaryParams),
}

impl Operator {
    fn resolve(family: Family, p: &FamilyParams) -> Result<Self> {
        match family {
            Family::Toy => {
                let m = required(p.m, "m", "toy")?;
                let lambda = required(p.lambda, "lambda", "toy")?;
                Ok(Operator::Toy(ToyParams::new(m, lambda)?))
            }
            Family::Schrodinger => {
                let m = required(p.m, "m", "schrodinger")?;
                let kappa = required(p.kappa, "kappa", "schrodinger")?;
                if m == C64::new(0.0, 0.0) {
                    return Err(CliError::Domain("m = 0 is the logarithmic family; use --family log --nu".into()));
                }
                Ok(Operator::Schrodinger(BoundaryParams::new(m, kappa)))
            }
            Family::Log => match (p.rho, p.nu) {
                (Some(rho), None) => Ok(Operator::ToyLog(LogParams { rho })),
                (None, Some(nu)) => Ok(Operator::SchrodingerLog(LogBoundaryParams { nu })),
                _ => Err(CliError::Usage("family log needs exactly one of --rho (toy) or --nu (Schrodinger)".into())),
            },
        }
    }

    fn spectrum(&self, window: i64) -> Result<SpectrumReport> {
        match self {
            Operator::Toy(p) => Ok(toy_eigenvalues_windowed(p, window)?),
            Operator::ToyLog(p) => Ok(h0_eigenvalue(p.rho)),
            Operator::Schrodinger(p) => schrodinger_spectrum(p, window),
            Operator::SchrodingerLog(p) => Ok(h0nu_eigenvalue(p)),
        }
    }

    fn flowed(&self, tau: f64) -> Self {
        match self {
            Operator::Toy(p) => Operator::Toy(rg_flow_toy(p, tau)),
            Operator::ToyLog(p) => Operator::ToyLog(rg_flow_log(p, tau)),
            Operator::Schrodinger(p) => Operator::Schrodinger(rg_flow_schrodinger(p, tau)),
            Operator::SchrodingerLog(p) => Operator::SchrodingerLog(rg_flow_log_boundary(p, tau)),
        }
    }

    fn label(&self) -> (&'static str, ExtendedComplex) {
        match self {
            Operator::Toy(p) => ("lambda", p.lambda),
            Operator::ToyLog(p) => ("rho", p.rho),
            Operator::Schrodinger(p) => ("kappa", p.kappa),
            Operator::SchrodingerLog(p) => ("nu", p.nu),
        }
    }
}

/// Closed forms where they apply, otherwise the general complex formula.
/// κ = 0 and κ = ∞ are the homogeneous operators, which have no eigenvalues.
fn schrodinger_spectrum(p: &BoundaryParams, window: i64) -> Result<SpectrumReport> {
    if p.homogeneous_order().is_some() {
        return Ok(SpectrumReport::empty());
    }
    match hmk_eigenvalues_windowed(p, window) {
        Ok(s) => Ok(s),
        Err(HomogeneousError::OutsideClassifiedRegion { .. }) => Ok(almost_homogeneous_spectrum(p.m, p.kappa, window)?),
        Err(e) => Err(e.into()),
    }
}

fn complex_cells(z: ExtendedComplex) -> [Cell; 2] {
    match z {
        ExtendedComplex::Infinity => [Cell::from("inf"), Cell::from("inf")],
        ExtendedComplex::Finite(c) => [Cell::Float(c.re), Cell::Float(c.im)],
    }
}

pub fn eigenvalues(family: Family, params: &FamilyParams, window: i64) -> Result<Table> {
    if window < 0 {
        return Err(CliError::Usage(format!("window must be non-negative, got {window}")));
    }
    let op = Operator::resolve(family, params)?;
    let report = op.spectrum(window)?;
    let mut table = Table::new("eigenvalues", &["index", "re", "im"]);
    table.meta("family", family_name(family));
    let (name, label) = op.label();
    table.meta(name, label.to_string());
    table.meta("count", count_label(&report.count));
    table.meta("essential_spectrum", SpectrumReport::ESSENTIAL);
    if let crate::common::CountClass::Infinite { window_lo, window_hi } = report.count {
        table.meta("index_window", format!("{window_lo}..{window_hi}"));
    }
    for e in &report.eigenvalues {
        table.push(vec![Cell::Int(e.index), Cell::Float(e.value.re), Cell::Float(e.value.im)]);
    }
    Ok(table)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Toy => "toy",
        Family::Schrodinger => "schrodinger",
        Family::Log => "log",
    }
}

pub fn count(m: C64, lambda: ExtendedComplex) -> Result<Table> {
    let params = ToyParams::new(m, lambda)?;
    let report = toy_eigenvalues_windowed(&params, crate::toy::DEFAULT_INDEX_WINDOW)?;
    let bound = toy_count_bounds(&params)?;
    let (lo, hi) = match bound {
        CountBound::Between { n } => (n.to_string(), (n + 1).to_string()),
        CountBound::Infinite => ("inf".into(), "inf".into()),
        CountBound::Zero => ("0".into(), "0".into()),
    };
    let mut table = Table::new("count", &["count", "bound_low", "bound_high", "within_bound"]);
    table.meta("m", ExtendedComplex::Finite(m).to_string());
    table.meta("lambda", lambda.to_string());
    table.push(vec![count_label(&report.count).into(), lo.into(), hi.into(), bound.admits(&report.count).into()]);
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Resolvent,
    Projection,
}

/// Kernel samples on `points` log-spaced nodes per axis, one row per (x, y).
#[derive(Debug, Clone, Copy)]
pub struct KernelArgs {
    pub kind: KernelKind,
    pub m: C64,
    pub k: Option<f64>,
    pub interval: Option<(f64, f64)>,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

pub fn kernel(args: &KernelArgs) -> Result<Table> {
    if args.points < 2 {
        return Err(CliError::Usage(format!("need at least 2 points, got {}", args.points)));
    }
    if !(args.x_min > 0.0 && args.x_max > args.x_min && args.x_max.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < x_min < x_max, got [{}, {}]", args.x_min, args.x_max)));
    }
    let step = (args.x_max / args.x_min).ln() / (args.points - 1) as f64;
    let nodes: Vec<f64> = (0..args.points)
        .map(|j| if j + 1 == args.points { args.x_max } else { args.x_min * (step * j as f64).exp() })
        .collect();
    let pairs: Vec<(f64, f64)> = nodes.iter().flat_map(|&x| nodes.iter().map(move |&y| (x, y))).collect();
    let mut table = Table::new("kernel", &["x", "y", "re", "im"]);
    table.meta("m", ExtendedComplex::Finite(args.m).to_string());
    let values: Vec<Result<C64>> = match args.kind {
        KernelKind::Resolvent => {
            let k = args.k.ok_or_else(|| CliError::Usage("resolvent kernel needs --k".into()))?;
            table.meta("kind", "resolvent");
            table.meta("k", super::fmt17(k));
            pairs.par_iter().map(|&(x, y)| Ok(resolvent_kernel_hm(args.m, k, x, y)?)).collect()
        }
        KernelKind::Projection => {
            let (a, b) = args.interval.ok_or_else(|| CliError::Usage("projection kernel needs --a and --b".into()))?;
            table.meta("kind", "projection");
            table.meta("interval", format!("[{},{}]", super::fmt17(a), super::fmt17(b)));
            pairs.par_iter().map(|&(x, y)| Ok(projection_kernel(args.m, a, b, x, y)?.value)).collect()
        }
    };
    for (&(x, y), v) in pairs.iter().zip(values) {
        let v = v?;
        table.push(vec![Cell::Float(x), Cell::Float(y), Cell::Float(v.re), Cell::Float(v.im)]);
    }
    Ok(table)
}

/// RG orbit of the boundary or coupling label, with the eigenvalue count at each step.
pub fn flow(family: Family, params: &FamilyParams, tau_min: f64, tau_max: f64, steps: usize) -> Result<Table> {
    if steps == 0 || !(tau_max >= tau_min) || !tau_min.is_finite() || !tau_max.is_finite() {
        return Err(CliError::Usage(format!("need finite tau_min <= tau_max and steps >= 1, got [{tau_min}, {tau_max}], {steps}")));
    }
    let op = Operator::resolve(family, params)?;
    let taus: Vec<f64> = (0..=steps).map(|i| tau_min + (tau_max - tau_min) * i as f64 / steps as f64).collect();
    let rows: Vec<Result<Vec<Cell>>> = taus
        .par_iter()
        .enumerate()
        .map(|(i, &tau)| {
            let flowed = op.flowed(tau);
            let (_, label) = flowed.label();
            let spectrum = flowed.spectrum(crate::toy::DEFAULT_INDEX_WINDOW)?;
            let [re, im] = complex_cells(label);
            Ok(vec![Cell::from(i), Cell::Float(tau), re, im, count_label(&spectrum.count).into()])
        })
        .collect();
    let (name, _) = op.label();
    let mut table = Table::new("flow", &["step", "tau", &format!("{name}_re"), &format!("{name}_im"), "count"]);
    table.meta("family", family_name(family));
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn fixed_point_label(points: &[(FixedPoint, ExtendedComplex)], alpha: f64) -> String {
    let label = if alpha == 0.0 { "nu" } else { "kappa" };
    points
        .iter()
        .map(|(p, v)| {
            let name = match p {
                FixedPoint::Friedrichs => "friedrichs",
                FixedPoint::Krein => "krein",
                FixedPoint::FriedrichsEqualsKrein => "friedrichs=krein",
            };
            let value = match v {
                ExtendedComplex::Infinity => "inf".to_string(),
                ExtendedComplex::Finite(z) => format!("{}", z.re),
            };
            format!("{name}({label}={value})")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Phase table on an α grid. The phase boundaries α = 0 and α = 1 are added
/// whenever they fall inside the range.
pub fn phase(alpha_min: f64, alpha_max: f64, steps: usize) -> Result<Table> {
    if steps == 0 || !(alpha_max >= alpha_min) || !alpha_min.is_finite() || !alpha_max.is_finite() {
        return Err(CliError::Usage(format!(
            "need finite alpha_min <= alpha_max and steps >= 1, got [{alpha_min}, {alpha_max}], {steps}"
        )));
    }
    let mut alphas: Vec<f64> =
        (0..=steps).map(|i| alpha_min + (alpha_max - alpha_min) * i as f64 / steps as f64).collect();
    for boundary in [0.0, 1.0] {
        if (alpha_min..=alpha_max).contains(&boundary) {
            alphas.push(boundary);
        }
    }
    alphas.sort_by(f64::total_cmp);
    alphas.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    let mut table = Table::new("phase", &["alpha", "phase", "extensions", "fixed_points", "bound_states"]);
    for alpha in alphas {
        let r = classify_phase(alpha);
        let set = match r.extension_set {
            ExtensionSet::Point => "point",
            ExtensionSet::Circle => "circle",
        };
        table.push(vec![
            Cell::Float(alpha),
            r.phase.name().into(),
            set.into(),
            fixed_point_label(&r.fixed_points, alpha).into(),
            r.bound_state_profile.join("; ").into(),
        ]);
    }
    Ok(table)
}

/// Grid of the standard Møller wave packet.
pub const MOELLER_GRID: GridConfig = GridConfig { nodes: 4096, x_min: 1e-3, x_max: 1e3 };

/// Wave packet F_k g with g a log-Gaussian around momentum e^{-0.7}.
pub fn standard_bump(k: C64, spec: GridSpec) -> Result<GridFunction> {
    let g = GridFunction::from_fn(spec, log_gaussian(-0.7, 0.35));
    Ok(hankel(k, &g)?)
}

pub fn moeller(m: C64, k: C64, times: &[f64], spec: GridSpec) -> Result<Table> {
    if times.is_empty() || times.iter().any(|t| !t.is_finite()) {
        return Err(CliError::Usage("need a non-empty list of finite times".into()));
    }
    let f = standard_bump(k, spec)?;
    let residuals = moeller_residuals(m, k, times, &f)?;
    let mut table = Table::new("moeller", &["t", "residual"]);
    table.meta("m", ExtendedComplex::Finite(m).to_string());
    table.meta("k", ExtendedComplex::Finite(k).to_string());
    table.meta("reference", "t -> +inf multiplier");
    for (t, r) in times.iter().zip(residuals) {
        table.push(vec![Cell::Float(*t), Cell::Float(r)]);
    }
    Ok(table)
}

/// Runs one suite (or `all`); the flag is false when any check failed.
pub fn verify(suite: &str, targets: &Targets) -> Result<(Table, bool)> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Usage(format!("unknown suite '{suite}'; available: all, {}", SUITES.join(", "))));
    };
    let mut table = Table::new("verify", &["suite", "check", "achieved", "target", "status", "note"]);
    let mut all_passed = true;
    for name in names {
        for check in run_suite(name, targets)? {
            all_passed &= check.passed;
            table.push(vec![
                name.into(),
                check.name.clone().into(),
                Cell::Float(check.achieved),
                Cell::Float(check.target),
                (if check.passed { "pass" } else { "fail" }).into(),
                check.note.clone().into(),
            ]);
        }
    }
    Ok((table, all_passed))
}
