use serde::{Deserialize, Serialize};

use super::metrics::MetricsReport;
use crate::circuits::{assemble_pqc, CircuitSpec};
use crate::data::{fit_pca, fit_scaler, split, Dataset, MinMaxScaler, PcaModel, SplitSpec};
use crate::error::{Error, Result};
use crate::training::{predict_batch, spsa_minimize, SpsaConfig, TrainRecord};

/// Feature preprocessing applied before a run. Everything is fitted on the
/// training rows only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Preprocess {
    pub scale_features: bool,
    pub scale_targets: bool,
    pub pca_components: Option<usize>,
}

impl Default for Preprocess {
    fn default() -> Self {
        Self { scale_features: true, scale_targets: true, pca_components: None }
    }
}

/// Train/test data ready for a circuit, plus the fitted transforms.
#[derive(Debug, Clone)]
pub struct Prepared {
    /// Inputs the circuit sees.
    pub train: Dataset,
    pub test: Dataset,
    /// After PCA (if any) but before scaling, in original target units.
    pub train_reduced: Dataset,
    pub test_reduced: Dataset,
    pub scaler: MinMaxScaler,
    pub pca: Option<PcaModel>,
    pub preprocess: Preprocess,
    pub clipped_train: usize,
    pub clipped_test: usize,
}

impl Prepared {
    pub fn fit(train: &Dataset, test: &Dataset, preprocess: Preprocess) -> Result<Self> {
        let pca = match preprocess.pca_components {
            Some(r) => Some(fit_pca(train, r)?),
            None => None,
        };
        let (train_reduced, test_reduced) = match &pca {
            Some(m) => (m.apply(train)?, m.apply(test)?),
            None => (train.clone(), test.clone()),
        };
        let scaler = fit_scaler(&train_reduced);
        let (mut clipped_train, mut clipped_test) = (0, 0);
        let scale = |ds: &Dataset, clipped: &mut usize| -> Result<Dataset> {
            let mut out = ds.clone();
            if preprocess.scale_features {
                let (rows, c) = scaler.transform_features(ds.features())?;
                *clipped = c;
                out = out.with_features(rows, ds.feature_names().to_vec())?;
            }
            if preprocess.scale_targets {
                out = out.with_targets(scaler.transform_targets(ds.targets()))?;
            }
            Ok(out)
        };
        let train_in = scale(&train_reduced, &mut clipped_train)?;
        let test_in = scale(&test_reduced, &mut clipped_test)?;
        Ok(Self {
            train: train_in,
            test: test_in,
            train_reduced,
            test_reduced,
            scaler,
            pca,
            preprocess,
            clipped_train,
            clipped_test,
        })
    }

    pub fn n_features(&self) -> usize {
        self.train.n_features()
    }

    /// Maps model outputs back to original target units.
    pub fn invert_targets(&self, y: &[f64]) -> Vec<f64> {
        if self.preprocess.scale_targets {
            self.scaler.inverse_targets(y)
        } else {
            y.to_vec()
        }
    }
}

/// Outcome of one trained circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub metrics: MetricsReport,
    pub record: TrainRecord,
    /// Predictions in original target units.
    pub train_predictions: Vec<f64>,
    pub test_predictions: Vec<f64>,
}

/// Assembles `spec`, trains it with SPSA and scores both partitions in
/// original units.
pub fn train_and_score(prepared: &Prepared, spec: &CircuitSpec, spsa: &SpsaConfig) -> Result<RunOutcome> {
    let template = assemble_pqc(spec)?;
    if template.n_features() != prepared.n_features() {
        return Err(Error::Config(format!(
            "circuit {} reads {} features but the data has {} (n_qubits must equal redundancy x features)",
            spec.label(),
            template.n_features(),
            prepared.n_features()
        )));
    }
    let record = spsa_minimize(&template, &prepared.train, spsa)?;
    let theta = record.final_theta.as_slice();
    let train_predictions = prepared.invert_targets(&predict_batch(&template, theta, prepared.train.features())?);
    let test_predictions = prepared.invert_targets(&predict_batch(&template, theta, prepared.test.features())?);
    let metrics = MetricsReport::compute(
        prepared.train_reduced.targets(),
        &train_predictions,
        prepared.test_reduced.targets(),
        &test_predictions,
    )?;
    Ok(RunOutcome { metrics, record, train_predictions, test_predictions })
}

/// Split, preprocess, train and score in one call.
pub fn run_experiment(
    dataset: &Dataset,
    split_spec: &SplitSpec,
    preprocess: Preprocess,
    spec: &CircuitSpec,
    spsa: &SpsaConfig,
) -> Result<(Prepared, RunOutcome)> {
    let (train, test) = split(dataset, split_spec)?;
    let prepared = Prepared::fit(&train, &test, preprocess)?;
    let outcome = train_and_score(&prepared, spec, spsa)?;
    Ok((prepared, outcome))
}

/// Runs `f` on a dedicated pool of `workers` threads (0 = rayon default).
pub(crate) fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
