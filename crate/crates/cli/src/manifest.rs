use serde::{Deserialize, Serialize};

use pqc_regress::evaluation::{GridResult, LearningCurveResult};
use pqc_regress::MetricsReport;

use crate::config::RunConfig;

pub const TOOL: &str = "pqcr";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub split: u64,
    pub optimizer: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Clipped {
    pub train: usize,
    pub test: usize,
}

/// Everything needed to replay one training run. Feeding the file back as
/// `--config manifest.json` reproduces `metrics` bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Resolved config with every optimizer field pinned.
    pub config: RunConfig,
    pub circuit: String,
    pub n_params: usize,
    pub gate_count: usize,
    pub depth: usize,
    pub seeds: Seeds,
    pub wall_time_seconds: f64,
    pub clipped: Clipped,
    pub explained_variance_ratio: Option<Vec<f64>>,
    pub metrics: MetricsReport,
    pub final_loss: f64,
    pub theta_digest: String,
    pub final_theta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub workers: usize,
    pub wall_time_seconds: f64,
    pub clipped: Clipped,
    pub result: GridResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub workers: usize,
    pub wall_time_seconds: f64,
    pub result: LearningCurveResult,
}
