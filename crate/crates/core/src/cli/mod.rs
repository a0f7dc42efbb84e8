//! Command-line surface: run configuration, output tables and the error to
//! exit-code contract. The binary in `main.rs` only parses arguments and
//! dispatches here.

pub mod commands;
pub mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::common::{CountClass, ParseComplexError};
use crate::homogeneous::HomogeneousError;
use crate::oracle::OracleError;
use crate::scattering::ScatteringError;
use crate::special::SpecialFunctionError;
use crate::toy::ToyError;
use crate::transforms::grid::fmt17;
use crate::transforms::{GridSpec, TransformError};

pub const SCHEMA_VERSION: u32 = 1;
const MIN_NODES: usize = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 2 usage or domain error, 3 verification failure,
    /// 4 numerical non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::VerificationFailed(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

impl From<ParseComplexError> for CliError {
    fn from(e: ParseComplexError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::QuadratureNotConverged { .. } | OracleError::WindowExhausted => {
                CliError::NonConvergence(e.to_string())
            }
            OracleError::Special(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SpecialFunctionError> for CliError {
    fn from(e: SpecialFunctionError) -> Self {
        match e {
            SpecialFunctionError::OrderAtNegativeIntegerSingularity(_) => CliError::NonConvergence(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Io(io) => CliError::Io(io),
            TransformError::Special(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ToyError> for CliError {
    fn from(e: ToyError) -> Self {
        match e {
            ToyError::Special(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<HomogeneousError> for CliError {
    fn from(e: HomogeneousError) -> Self {
        match e {
            HomogeneousError::Special(s) => s.into(),
            HomogeneousError::Oracle(o) => o.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::Toy(t) => t.into(),
            ScatteringError::Transform(t) => t.into(),
            ScatteringError::Special(s) => s.into(),
            ScatteringError::InvalidParameter(_) => CliError::Domain(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CliError::Usage(format!("format must be json or csv, got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nodes: usize,
    pub x_min: f64,
    pub x_max: f64,
}

impl GridConfig {
    pub fn spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.x_min, self.x_max, self.nodes).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Settings shared by all subcommands. Read from a TOML file with `--config`;
/// command-line flags override file values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Grid for commands that sample functions; each command has its own default.
    pub grid: Option<GridConfig>,
    /// Target tolerance per named check, overriding the built-in targets.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// Worker threads for parameter sweeps; defaults to the available cores.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(s).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(g) = &self.grid {
            if g.nodes < MIN_NODES {
                return Err(CliError::Usage(format!("grid needs at least {MIN_NODES} nodes, got {}", g.nodes)));
            }
            g.spec()?;
        }
        for (name, tol) in &self.tolerances {
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage(format!("tolerance '{name}' must be positive, got {tol}")));
            }
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn grid_or(&self, default: GridConfig) -> Result<GridSpec> {
        self.grid.unwrap_or(default).spec()
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt17(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => fmt17(*x),
            Cell::Float(x) => json_string(&fmt17(*x)),
            Cell::Text(s) => json_string(s),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.csv())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Result of one command: a table plus key-value metadata. Floats are written
/// with 17 significant digits so identical runs give identical bytes.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{{\"schema\":{SCHEMA_VERSION},\"command\":{}", json_string(&self.command)));
        out.push_str(",\"meta\":{");
        let meta: Vec<String> = self.meta.iter().map(|(k, v)| format!("{}:{}", json_string(k), json_string(v))).collect();
        out.push_str(&meta.join(","));
        out.push_str("},\"columns\":[");
        let cols: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        out.push_str(&cols.join(","));
        out.push_str("],\"rows\":[");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(Cell::json).collect::<Vec<_>>().join(",")))
            .collect();
        out.push_str(&rows.join(","));
        out.push_str("]}\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    /// Writes to the configured output path, or stdout.
    pub fn emit(&self, config: &RunConfig) -> Result<()> {
        let text = self.render(config.format)?;
        match &config.output {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e.to_string()))
}

pub fn count_label(count: &CountClass) -> String {
    match count {
        CountClass::Empty => "0".into(),
        CountClass::Finite(n) => n.to_string(),
        CountClass::Infinite { .. } => "inf".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_fixed_digits() {
        let mut t = Table::new("demo", &["index", "re"]);
        t.push(vec![Cell::Int(0), Cell::Float(-1.0)]);
        assert_eq!(t.to_csv().unwrap(), "index,re\r\n0,-1.0000000000000000e0\r\n");
    }

    #[test]
    fn json_is_versioned() {
        let mut t = Table::new("demo", &["x"]);
        t.meta("note", "a \"quoted\" value");
        t.push(vec![Cell::Float(f64::INFINITY)]);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][0][0], "inf");
        assert_eq!(v["meta"]["note"], "a \"quoted\" value");
    }

    #[test]
    fn config_validation() {
        let ok = RunConfig::from_toml_str(
            "format = \"csv\"\n[grid]\nnodes = 64\nx_min = 1e-3\nx_max = 1e3\n[tolerances]\nweighted-resolvent = 1e-9\n",
        )
        .unwrap();
        assert_eq!(ok.format, OutputFormat::Csv);
        assert_eq!(ok.tolerances["weighted-resolvent"], 1e-9);
        assert!(RunConfig::from_toml_str("[grid]\nnodes = 8\nx_min = 1e-3\nx_max = 1e3\n").is_err());
        assert!(RunConfig::from_toml_str("[tolerances]\nx = -1.0\n").is_err());
        assert!(RunConfig::from_toml_str("format = \"xml\"\n").is_err());
        assert!(RunConfig::from_toml_str("unknown = 1\n").is_err());
    }
}
