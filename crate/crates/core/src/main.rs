use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use invsq::cli::commands::{self, Family, FamilyParams, KernelArgs, KernelKind, MOELLER_GRID};
use invsq::cli::verify::Targets;
use invsq::cli::{CliError, OutputFormat, Result, RunConfig};
use invsq::common::{parse_complex, ExtendedComplex, ParseComplexError};
use invsq::special::C64;

/// Spectra, kernels, RG flows and scattering for inverse-square Hamiltonians.
#[derive(Debug, Parser)]
#[command(name = "invsq", version)]
struct Cli {
    /// TOML file with grid, tolerances, format, output and threads.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Toy,
    Schrodinger,
    Log,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelArg {
    Resolvent,
    Projection,
}

/// Complex numbers are written `re` or `re,im`; labels also accept `inf`.
#[derive(Debug, clap::Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = complex)]
    m: Option<C64>,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    lambda: Option<ExtendedComplex>,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    kappa: Option<ExtendedComplex>,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    rho: Option<ExtendedComplex>,
    #[arg(long, allow_hyphen_values = true, value_parser = extended)]
    nu: Option<ExtendedComplex>,
}

impl ParamArgs {
    fn params(&self) -> FamilyParams {
        FamilyParams { m: self.m, lambda: self.lambda, kappa: self.kappa, rho: self.rho, nu: self.nu }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Point spectrum of one operator.
    Eigenvalues {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Half-width of the branch-index window for infinite spectra.
        #[arg(long, default_value_t = 20)]
        window: i64,
    },
    /// Eigenvalue count of the toy model against its bound.
    Count {
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        m: C64,
        #[arg(long, allow_hyphen_values = true, value_parser = extended)]
        lambda: ExtendedComplex,
    },
    /// Resolvent kernel at -k^2 or spectral projection kernel on [a, b].
    Kernel {
        #[arg(value_enum)]
        kind: KernelArg,
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        m: C64,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        x_min: f64,
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
        /// Nodes per axis.
        #[arg(long, default_value_t = 32)]
        points: usize,
    },
    /// RG orbit of the coupling or boundary label.
    Flow {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_hyphen_values = true, default_values_t = [-1.0, 1.0])]
        tau: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Phase, extension set and fixed points along an alpha range.
    Phase {
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_hyphen_values = true, required = true)]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Convergence of the numeric Møller operator to its limit.
    Moeller {
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        m: C64,
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        k: C64,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 30.0, 100.0])]
        t: Vec<f64>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

fn complex(s: &str) -> std::result::Result<C64, ParseComplexError> {
    parse_complex(s)
}

fn extended(s: &str) -> std::result::Result<ExtendedComplex, ParseComplexError> {
    s.parse()
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Toy => Family::Toy,
        FamilyArg::Schrodinger => Family::Schrodinger,
        FamilyArg::Log => Family::Log,
    }
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        config.format = match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        };
    }
    if cli.output.is_some() {
        config.output.clone_from(&cli.output);
    }
    if cli.threads.is_some() {
        config.threads = cli.threads;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    let config = config(&cli)?;
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
    }
    log::debug!("configuration {config:?}");
    let table = match cli.command {
        Command::Eigenvalues { family: f, params, window } => commands::eigenvalues(family(f), &params.params(), window)?,
        Command::Count { m, lambda } => commands::count(m, lambda)?,
        Command::Kernel { kind, m, k, a, b, x_min, x_max, points } => {
            let kind = match kind {
                KernelArg::Resolvent => KernelKind::Resolvent,
                KernelArg::Projection => KernelKind::Projection,
            };
            let interval = a.zip(b);
            commands::kernel(&KernelArgs { kind, m, k, interval, x_min, x_max, points })?
        }
        Command::Flow { family: f, params, tau, steps } => commands::flow(family(f), &params.params(), tau[0], tau[1], steps)?,
        Command::Phase { alpha, steps } => commands::phase(alpha[0], alpha[1], steps)?,
        Command::Moeller { m, k, t } => commands::moeller(m, k, &t, config.grid_or(MOELLER_GRID)?)?,
        Command::Verify { suite } => {
            let targets = Targets::new(config.tolerances.clone());
            let unknown = targets.unknown_keys();
            if !unknown.is_empty() {
                return Err(CliError::Usage(format!("unknown tolerance keys: {}", unknown.join(", "))));
            }
            let (table, passed) = commands::verify(&suite, &targets)?;
            table.emit(&config)?;
            if !passed {
                let failed: Vec<String> = table
                    .rows
                    .iter()
                    .filter(|r| r[4].to_string() == "fail")
                    .map(|r| format!("{} / {}: achieved {} > target {}", r[0], r[1], r[2], r[3]))
                    .collect();
                return Err(CliError::VerificationFailed(failed.join("; ")));
            }
            return Ok(());
        }
    };
    table.emit(&config)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("invsq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
