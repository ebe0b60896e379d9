use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::metrics::MetricsReport;
use super::pipeline::{train_and_score, with_workers, Prepared};
use crate::circuits::{Ansatz, CircuitSpec, Encoder};
use crate::error::{Error, Result};
use crate::training::SpsaConfig;

/// Ansätze kept for the 98-circuit reduced sweep (all 14 encoders × these 7).
pub const REDUCED_ANSATZE: [Ansatz; 7] = [
    Ansatz::ModifiedPauliCrz,
    Ansatz::EfficientCrz,
    Ansatz::EfficientCrx,
    Ansatz::HweCnot,
    Ansatz::HweCz,
    Ansatz::Esu2,
    Ansatz::Hadamard,
];

/// Seed for one grid cell; depends only on the run seed and the names.
pub fn cell_seed(run_seed: u64, encoder: Encoder, ansatz: Ansatz) -> u64 {
    let mut h = Sha256::new();
    h.update(run_seed.to_le_bytes());
    h.update(encoder.name().as_bytes());
    h.update([0u8]);
    h.update(ansatz.name().as_bytes());
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("digest has 32 bytes"))
}

/// Hex SHA-256 of the little-endian bytes of `theta`.
pub fn theta_digest(theta: &[f64]) -> String {
    let mut h = Sha256::new();
    for v in theta {
        h.update(v.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Ok {
        metrics: MetricsReport,
        wall_time_seconds: f64,
        final_loss: f64,
        theta_digest: String,
        final_theta: Vec<f64>,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub encoder: Encoder,
    pub ansatz: Ansatz,
    pub seed: u64,
    pub n_params: usize,
    #[serde(flatten)]
    pub outcome: CellOutcome,
}

impl GridRow {
    pub fn metrics(&self) -> Option<&MetricsReport> {
        match &self.outcome {
            CellOutcome::Ok { metrics, .. } => Some(metrics),
            CellOutcome::Failed { .. } => None,
        }
    }
}

/// One row per (encoder, ansatz), ordered by encoder then ansatz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub rows: Vec<GridRow>,
}

impl GridResult {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, encoder: Encoder, ansatz: Ansatz) -> Option<&GridRow> {
        self.rows.iter().find(|r| r.encoder == encoder && r.ansatz == ansatz)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.metrics().is_none()).count()
    }

    /// Flat comma-separated summary, one line per cell.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("encoder,ansatz,seed,n_params,status,r2_train,r2_test,mae_train,mae_test,mse_train,mse_test,wall_time_seconds\n");
        for r in &self.rows {
            match &r.outcome {
                CellOutcome::Ok { metrics: m, wall_time_seconds, .. } => s.push_str(&format!(
                    "{},{},{},{},ok,{},{},{},{},{},{},{}\n",
                    r.encoder, r.ansatz, r.seed, r.n_params, m.r2_train, m.r2_test, m.mae_train, m.mae_test,
                    m.mse_train, m.mse_test, wall_time_seconds
                )),
                CellOutcome::Failed { .. } => {
                    s.push_str(&format!("{},{},{},{},failed,,,,,,,\n", r.encoder, r.ansatz, r.seed, r.n_params))
                }
            }
        }
        s
    }
}

/// Trains every (encoder, ansatz) pair on `prepared`. `base` supplies
/// n, k, v and redundancy; each cell's SPSA seed is
/// [`cell_seed`]`(spsa.seed, …)`. A failing cell is recorded and the sweep
/// goes on.
pub fn grid_sweep(
    encoders: &[Encoder],
    ansatze: &[Ansatz],
    prepared: &Prepared,
    base: &CircuitSpec,
    spsa: &SpsaConfig,
    workers: usize,
) -> Result<GridResult> {
    if encoders.is_empty() || ansatze.is_empty() {
        return Err(Error::Config("grid needs at least one encoder and one ansatz".into()));
    }
    spsa.validate()?;
    let cells: Vec<(Encoder, Ansatz)> =
        encoders.iter().flat_map(|&e| ansatze.iter().map(move |&a| (e, a))).collect();
    let mut rows: Vec<GridRow> = with_workers(workers, || {
        cells
            .par_iter()
            .map(|&(encoder, ansatz)| {
                let spec = CircuitSpec { encoder, ansatz, ..*base };
                let seed = cell_seed(spsa.seed, encoder, ansatz);
                let n_params = ansatz.params_per_layer(base.n_qubits).unwrap_or(0) * base.rud * base.ansatz_layers;
                let start = Instant::now();
                let outcome = match train_and_score(prepared, &spec, &spsa.with_seed(seed)) {
                    Ok(run) => CellOutcome::Ok {
                        metrics: run.metrics,
                        wall_time_seconds: start.elapsed().as_secs_f64(),
                        final_loss: run.record.final_loss().unwrap_or(f64::NAN),
                        theta_digest: theta_digest(run.record.final_theta.as_slice()),
                        final_theta: run.record.final_theta.into_inner(),
                    },
                    Err(e) => CellOutcome::Failed { error: e.to_string() },
                };
                GridRow { encoder, ansatz, seed, n_params, outcome }
            })
            .collect()
    })?;
    rows.sort_by_key(|r| (r.encoder, r.ansatz));
    Ok(GridResult { rows })
}
