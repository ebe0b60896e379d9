//! Metrics, the ridge baseline, and the experiment protocols (single runs,
//! grid sweeps, learning curves, depth scans, parity exports).

mod curve;
mod depth;
mod grid;
mod metrics;
mod parity;
mod pipeline;
mod ridge;

pub use curve::{learning_curve, validate_ratios, CurvePoint, CurveSettings, LearningCurveResult, DEFAULT_RATIOS, DEFAULT_RIDGE_LAMBDA};
pub use depth::{depth_scan, DepthCell, DEFAULT_DEPTHS};
pub use grid::{cell_seed, grid_sweep, theta_digest, CellOutcome, GridResult, GridRow, REDUCED_ANSATZE};
pub use metrics::{mae, mean_std, mse, r2, MetricsReport};
pub use parity::{parity_export, parity_summary, parity_to_string, ParitySummary};
pub use pipeline::{run_experiment, train_and_score, Prepared, Preprocess, RunOutcome};
pub use ridge::{fit_ridge, ridge_baseline, RidgeModel};
