use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use pqc_regress::circuits::{assemble_pqc, describe, CircuitSpec};
use pqc_regress::data::{load_table, save_table, split, synth_dataset, SynthKind};
use pqc_regress::evaluation::{
    grid_sweep, learning_curve, parity_export, theta_digest, train_and_score, CellOutcome, CurveSettings, Prepared,
};
use pqc_regress::io::write_atomic;
use pqc_regress::Dataset;

use crate::config::{Resolved, RunConfig};
use crate::error::{CliError, Stage};
use crate::manifest::{Clipped, CurveReport, GridReport, RunManifest, Seeds, TOOL, VERSION};

fn load_dataset(cfg: &RunConfig) -> Result<Dataset, CliError> {
    match (&cfg.data.path, &cfg.data.synthetic) {
        (Some(path), _) => load_table(path, &cfg.data.target).stage("load"),
        (None, Some(s)) => synth_dataset(s.kind, s.n_samples, s.n_features, s.seed).stage("load"),
        (None, None) => Err(CliError::config("data: set either path or synthetic")),
    }
}

// The one check that needs the data: feature width against the register.
fn check_width(ds: &Dataset, r: &Resolved) -> Result<(), CliError> {
    let needed = r.spec.n_features();
    let width = r.preprocess.pca_components.unwrap_or(ds.n_features());
    if width != needed {
        return Err(CliError::config(format!(
            "circuit.n_qubits: {} qubits with redundancy {} read {needed} features, but the data has {width}",
            r.spec.n_qubits, r.spec.redundancy
        )));
    }
    Ok(())
}

fn prepare(cfg: &RunConfig, r: &Resolved) -> Result<Prepared, CliError> {
    let ds = load_dataset(cfg)?;
    check_width(&ds, r)?;
    let (train, test) = split(&ds, &r.split).stage("split")?;
    Prepared::fit(&train, &test, r.preprocess).stage("preprocess")
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("results serialize");
    text.push('\n');
    write_atomic(path, text.as_bytes()).stage("write")
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    write_atomic(path, text.as_bytes()).stage("write")
}

fn out_dir(r: &Resolved) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(&r.out_dir).map_err(|e| CliError::Compute { stage: "write", source: e.into() })?;
    Ok(r.out_dir.clone())
}

fn manifest_for(
    cfg: &RunConfig,
    r: &Resolved,
    prepared: &Prepared,
    spec: &CircuitSpec,
    seed: u64,
    fit: Fit,
) -> Result<RunManifest, CliError> {
    let template = assemble_pqc(spec).stage("assemble")?;
    let mut pinned = cfg.pinned(r);
    pinned.optimizer.seed = Some(seed);
    pinned.circuit.encoder = spec.encoder.name().into();
    pinned.circuit.ansatz = spec.ansatz.name().into();
    pinned.output.dir = None;
    Ok(RunManifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: "train".into(),
        config: pinned,
        circuit: spec.label(),
        n_params: template.total_params(),
        gate_count: template.gate_count(),
        depth: template.depth(),
        seeds: Seeds { split: r.split.seed, optimizer: seed },
        wall_time_seconds: fit.wall_time_seconds,
        clipped: Clipped { train: prepared.clipped_train, test: prepared.clipped_test },
        explained_variance_ratio: prepared.pca.as_ref().map(|p| p.explained_variance_ratio()),
        metrics: fit.metrics,
        final_loss: fit.final_loss,
        theta_digest: theta_digest(&fit.theta),
        final_theta: fit.theta,
    })
}

struct Fit {
    metrics: pqc_regress::MetricsReport,
    final_loss: f64,
    wall_time_seconds: f64,
    theta: Vec<f64>,
}

/// What a training run left on disk.
#[derive(Debug)]
pub struct TrainOutput {
    pub dir: PathBuf,
    pub manifest: RunManifest,
}

/// load → split → scale/PCA → assemble → SPSA → metrics; writes
/// `manifest.json`, `loss_history.csv`, `parity_train.csv` and
/// `parity_test.csv`.
pub fn cmd_train(cfg: &RunConfig) -> Result<TrainOutput, CliError> {
    let r = cfg.resolve()?;
    let prepared = prepare(cfg, &r)?;
    let run = train_and_score(&prepared, &r.spec, &r.spsa).stage("train")?;
    let fit = Fit {
        metrics: run.metrics,
        final_loss: run.record.final_loss().unwrap_or(f64::NAN),
        wall_time_seconds: run.record.wall_time_seconds,
        theta: run.record.final_theta.as_slice().to_vec(),
    };
    let manifest = manifest_for(cfg, &r, &prepared, &r.spec, r.spsa.seed, fit)?;

    let dir = out_dir(&r)?;
    let mut history = String::from("iteration,loss\n");
    for (t, l) in &run.record.loss_history {
        let _ = writeln!(history, "{t},{l}");
    }
    write_text(&dir.join("loss_history.csv"), &history)?;
    parity_export(prepared.train_reduced.targets(), &run.train_predictions, dir.join("parity_train.csv"))
        .stage("write")?;
    parity_export(prepared.test_reduced.targets(), &run.test_predictions, dir.join("parity_test.csv"))
        .stage("write")?;
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(TrainOutput { dir, manifest })
}

#[derive(Debug)]
pub struct GridOutput {
    pub dir: PathBuf,
    pub report: GridReport,
}

/// Every (encoder, ansatz) pair from the config's lists; writes `grid.json`,
/// `grid.csv` and one replayable manifest per successful cell under
/// `cells/`.
pub fn cmd_grid(cfg: &RunConfig) -> Result<GridOutput, CliError> {
    let r = cfg.resolve()?;
    let prepared = prepare(cfg, &r)?;
    let start = Instant::now();
    let result = grid_sweep(&r.encoders, &r.ansatze, &prepared, &r.spec, &r.spsa, r.workers).stage("grid")?;
    let wall = start.elapsed().as_secs_f64();

    let dir = out_dir(&r)?;
    let cells = dir.join("cells");
    std::fs::create_dir_all(&cells).map_err(|e| CliError::Compute { stage: "write", source: e.into() })?;
    for row in &result.rows {
        if let CellOutcome::Ok { metrics, wall_time_seconds, final_loss, final_theta, .. } = &row.outcome {
            let spec = CircuitSpec { encoder: row.encoder, ansatz: row.ansatz, ..r.spec };
            let fit = Fit {
                metrics: *metrics,
                final_loss: *final_loss,
                wall_time_seconds: *wall_time_seconds,
                theta: final_theta.clone(),
            };
            let m = manifest_for(cfg, &r, &prepared, &spec, row.seed, fit)?;
            write_json(&cells.join(format!("{}.json", spec.label())), &m)?;
        }
    }
    write_text(&dir.join("grid.csv"), &result.to_csv())?;
    let report = GridReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: cfg.pinned(&r),
        workers: r.workers,
        wall_time_seconds: wall,
        clipped: Clipped { train: prepared.clipped_train, test: prepared.clipped_test },
        result,
    };
    write_json(&dir.join("grid.json"), &report)?;
    Ok(GridOutput { dir, report })
}

#[derive(Debug)]
pub struct CurveOutput {
    pub dir: PathBuf,
    pub report: CurveReport,
}

/// PQC and ridge per training ratio over one fixed test set; writes
/// `learning_curve.json` and `learning_curve.csv`.
pub fn cmd_learning_curve(cfg: &RunConfig) -> Result<CurveOutput, CliError> {
    let r = cfg.resolve()?;
    let ds = load_dataset(cfg)?;
    check_width(&ds, &r)?;
    let settings = CurveSettings {
        split_seed: r.split.seed,
        test_ratio: r.split.test_ratio,
        preprocess: r.preprocess,
        spsa: r.spsa,
        ridge_lambda: r.ridge_lambda,
        workers: r.workers,
    };
    let start = Instant::now();
    let result = learning_curve(&ds, &r.ratios, &r.spec, &settings).stage("learning-curve")?;
    let wall = start.elapsed().as_secs_f64();
    let dir = out_dir(&r)?;
    write_text(&dir.join("learning_curve.csv"), &result.to_csv())?;
    let mut pinned = cfg.pinned(&r);
    pinned.learning_curve.ratios = Some(r.ratios.clone());
    let report = CurveReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: pinned,
        workers: r.workers,
        wall_time_seconds: wall,
        result,
    };
    write_json(&dir.join("learning_curve.json"), &report)?;
    Ok(CurveOutput { dir, report })
}

/// Gate listing, depth and parameter count of a circuit.
pub fn cmd_describe(spec: &CircuitSpec) -> Result<String, CliError> {
    spec.validate().map_err(|e| CliError::field("circuit", e))?;
    describe(spec).map_err(|e| CliError::field("circuit", e))
}

/// Writes a synthetic dataset as a delimited table.
pub fn cmd_synth(kind: SynthKind, n_samples: usize, n_features: usize, seed: u64, path: &Path) -> Result<(), CliError> {
    let ds = synth_dataset(kind, n_samples, n_features, seed).map_err(|e| CliError::field("synth", e))?;
    save_table(&ds, path).stage("write")
}
