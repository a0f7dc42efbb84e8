//! Hankel and Mellin transforms, dilations and the inversion on log grids.

pub mod grid;
pub mod hankel;
pub mod mellin;
pub mod ops;

use thiserror::Error;

use crate::special::{SpecialFunctionError, C64};

pub use grid::{log_gaussian, GridFunction, GridSpec};
pub use hankel::{hankel, HankelPlan};
pub use mellin::{apply_function_of_a, mellin, mellin_inverse, MellinFunction, A_SIGN};
pub use ops::{apply_l_alpha, dilation, extended_hm_resolvent, holomorphy_probe, holomorphy_probe_with, inversion};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dilation by tau = {tau} leaves the grid")]
    GridCoverage { tau: f64 },
    #[error("grid is not symmetric under x -> 1/x")]
    AsymmetricGrid,
    #[error("function does not decay at the grid ends (relative end amplitude {end_mass:e})")]
    TruncationTooSevere { end_mass: f64 },
    #[error("log step {log_step} exceeds the largest supported step {max}")]
    GridTooCoarse { log_step: f64, max: f64 },
    #[error("Hankel order must satisfy Re m > -1, got {0}")]
    OrderOutOfRange(C64),
    #[error("multiplier is not finite at t = {t}")]
    UnboundedMultiplier { t: f64 },
    #[error("z - x^-2 vanishes near x = {x}")]
    NearCut { x: f64 },
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
