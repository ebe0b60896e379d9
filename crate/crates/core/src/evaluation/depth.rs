use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::MetricsReport;
use super::pipeline::{train_and_score, with_workers, Prepared};
use crate::circuits::CircuitSpec;
use crate::error::{Error, Result};
use crate::training::SpsaConfig;

pub const DEFAULT_DEPTHS: [usize; 3] = [1, 3, 5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthCell {
    pub rud: usize,
    pub ansatz_layers: usize,
    pub n_params: usize,
    pub metrics: MetricsReport,
    pub final_loss: f64,
    pub wall_time_seconds: f64,
}

/// Trains `base` at every (re-upload depth, ansatz layers) pair. Rows are
/// ordered by depth, then layers.
pub fn depth_scan(
    prepared: &Prepared,
    base: &CircuitSpec,
    ruds: &[usize],
    layers: &[usize],
    spsa: &SpsaConfig,
    workers: usize,
) -> Result<Vec<DepthCell>> {
    if ruds.is_empty() || layers.is_empty() {
        return Err(Error::Config("depth scan needs at least one depth and one layer count".into()));
    }
    let cells: Vec<(usize, usize)> = ruds.iter().flat_map(|&k| layers.iter().map(move |&v| (k, v))).collect();
    let mut out = with_workers(workers, || {
        cells
            .par_iter()
            .map(|&(k, v)| {
                let spec = base.with_depth(k, v);
                let run = train_and_score(prepared, &spec, spsa)?;
                Ok(DepthCell {
                    rud: k,
                    ansatz_layers: v,
                    n_params: run.record.final_theta.len(),
                    metrics: run.metrics,
                    final_loss: run.record.final_loss().unwrap_or(f64::NAN),
                    wall_time_seconds: run.record.wall_time_seconds,
                })
            })
            .collect::<Result<Vec<_>>>()
    })??;
    out.sort_by_key(|c| (c.rud, c.ansatz_layers));
    Ok(out)
}
