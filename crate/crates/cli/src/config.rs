use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use pqc_regress::circuits::{Ansatz, CircuitSpec, Encoder, MAX_REPEATS};
use pqc_regress::data::{SplitSpec, SynthKind, DEFAULT_TEST_RATIO};
use pqc_regress::evaluation::{validate_ratios, Preprocess, DEFAULT_RATIOS, DEFAULT_RIDGE_LAMBDA, REDUCED_ANSATZE};
use pqc_regress::SpsaConfig;

use crate::error::{detail, CliError};
use crate::manifest::RunManifest;

/// Iteration budget when the config does not set one.
pub fn default_iterations(n_qubits: usize) -> usize {
    if n_qubits >= 16 {
        250
    } else {
        1000
    }
}

/// One experiment, as written in the TOML config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub data: DataSection,
    #[serde(default)]
    pub split: SplitSection,
    pub circuit: CircuitSection,
    #[serde(default)]
    pub optimizer: OptimizerSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub baseline: BaselineSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub learning_curve: CurveSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    /// Delimited table; relative paths resolve against the config file.
    pub path: Option<PathBuf>,
    #[serde(default = "default_target")]
    pub target: String,
    /// Generated dataset used instead of `path`.
    pub synthetic: Option<SyntheticSection>,
    pub pca_components: Option<usize>,
    #[serde(default = "yes")]
    pub scale_features: bool,
    #[serde(default = "yes")]
    pub scale_targets: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSection {
    pub kind: SynthKind,
    pub n_samples: usize,
    pub n_features: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSection {
    pub train_ratio: f64,
    pub test_ratio: f64,
    pub seed: u64,
}

impl Default for SplitSection {
    fn default() -> Self {
        Self { train_ratio: 0.8, test_ratio: DEFAULT_TEST_RATIO, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSection {
    pub n_qubits: usize,
    pub encoder: String,
    pub ansatz: String,
    #[serde(default = "one")]
    pub rud: usize,
    #[serde(default = "one")]
    pub ansatz_layers: usize,
    #[serde(default = "one")]
    pub redundancy: usize,
}

/// SPSA settings; omitted fields take the library defaults, and a missing
/// `iterations` follows [`default_iterations`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSection {
    pub a: Option<f64>,
    pub c: Option<f64>,
    #[serde(rename = "A")]
    pub stability: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineSection {
    pub ridge_lambda: f64,
}

impl Default for BaselineSection {
    fn default() -> Self {
        Self { ridge_lambda: DEFAULT_RIDGE_LAMBDA }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// `"full"` (12 ansätze) or `"reduced"` (7); ignored when `ansatze` is set.
    pub preset: Option<String>,
    pub encoders: Option<Vec<String>>,
    pub ansatze: Option<Vec<String>>,
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    pub ratios: Option<Vec<f64>>,
}

fn default_target() -> String {
    "y".into()
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

/// Command-line and environment overrides, applied before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    /// Replaces both the split seed and the optimizer seed.
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl Overrides {
    /// Flags win over `PQCR_OUT_DIR` / `PQCR_WORKERS`.
    pub fn with_env(mut self) -> Result<Self, CliError> {
        if self.out.is_none() {
            self.out = std::env::var_os("PQCR_OUT_DIR").map(PathBuf::from);
        }
        if self.workers.is_none() {
            if let Ok(v) = std::env::var("PQCR_WORKERS") {
                let n = v.trim().parse().map_err(|_| CliError::config(format!("PQCR_WORKERS: {v:?} is not a count")))?;
                self.workers = Some(n);
            }
        }
        Ok(self)
    }
}

/// Everything a command needs, checked and typed.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub spec: CircuitSpec,
    pub spsa: SpsaConfig,
    pub split: SplitSpec,
    pub preprocess: Preprocess,
    pub ridge_lambda: f64,
    pub encoders: Vec<Encoder>,
    pub ansatze: Vec<Ansatz>,
    pub ratios: Vec<f64>,
    pub workers: usize,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    /// Reads a TOML config, or the `config` block of a JSON run manifest.
    /// Relative data paths become relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = if path.extension().is_some_and(|e| e == "json") {
            let m: RunManifest = serde_json::from_str(&text)
                .map_err(|e| CliError::config(format!("{}: not a run manifest: {e}", path.display())))?;
            m.config
        } else {
            Self::from_toml(&text)?
        };
        if let Some(p) = cfg.data.path.as_mut() {
            if p.is_relative() {
                *p = path.parent().unwrap_or(Path::new(".")).join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(seed) = o.seed {
            self.split.seed = seed;
            self.optimizer.seed = Some(seed);
        }
        if let Some(out) = &o.out {
            self.output.dir = Some(out.clone());
        }
        if let Some(w) = o.workers {
            self.grid.workers = Some(w);
        }
    }

    /// Checks every field before any data is read; reports all problems
    /// at once.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let mut errs = Vec::new();
        let c = &self.circuit;

        let encoder = c.encoder.parse::<Encoder>().map_err(|e| errs.push(format!("circuit.encoder: {e}"))).ok();
        let ansatz = c.ansatz.parse::<Ansatz>().map_err(|e| errs.push(format!("circuit.ansatz: {e}"))).ok();
        if c.n_qubits < 2 {
            errs.push(format!("circuit.n_qubits: {} is below the minimum of 2", c.n_qubits));
        }
        if c.redundancy == 0 || !c.n_qubits.is_multiple_of(c.redundancy) {
            errs.push(format!("circuit.redundancy: {} does not divide n_qubits = {}", c.redundancy, c.n_qubits));
        }
        for (field, v) in [("circuit.rud", c.rud), ("circuit.ansatz_layers", c.ansatz_layers)] {
            if v == 0 || v > MAX_REPEATS {
                errs.push(format!("{field}: {v} outside 1..={MAX_REPEATS}"));
            }
        }

        match (&self.data.path, &self.data.synthetic) {
            (None, None) => errs.push("data: set either path or synthetic".into()),
            (Some(_), Some(_)) => errs.push("data: path and synthetic are mutually exclusive".into()),
            _ => {}
        }
        if let Some(s) = &self.data.synthetic {
            if s.n_samples < 10 || s.n_features == 0 {
                errs.push(format!(
                    "data.synthetic: need n_samples >= 10 and n_features >= 1, got {} and {}",
                    s.n_samples, s.n_features
                ));
            }
        }
        if c.redundancy > 0 && c.n_qubits.is_multiple_of(c.redundancy) {
            let needed = c.n_qubits / c.redundancy;
            let declared = self.data.pca_components.or(self.data.synthetic.map(|s| s.n_features));
            match (self.data.pca_components, declared) {
                (Some(0), _) => errs.push("data.pca_components: must be >= 1".into()),
                (Some(r), _) if r != needed => errs.push(format!(
                    "data.pca_components: {r} components but n_qubits / redundancy = {needed}"
                )),
                (None, Some(d)) if d != needed => errs.push(format!(
                    "data.synthetic.n_features: {d} features but n_qubits / redundancy = {needed}"
                )),
                _ => {}
            }
        }

        let s = &self.split;
        let split = SplitSpec { train_ratio: s.train_ratio, test_ratio: s.test_ratio, seed: s.seed };
        if let Err(e) = split.validate() {
            errs.push(format!("split: {}", detail(e)));
        }

        let o = &self.optimizer;
        let d = SpsaConfig::default();
        let spsa = SpsaConfig {
            a: o.a.unwrap_or(d.a),
            c: o.c.unwrap_or(d.c),
            stability: o.stability.unwrap_or(d.stability),
            alpha: o.alpha.unwrap_or(d.alpha),
            gamma: o.gamma.unwrap_or(d.gamma),
            iterations: o.iterations.unwrap_or(default_iterations(c.n_qubits)),
            seed: o.seed.unwrap_or(s.seed),
        };
        if let Err(e) = spsa.validate() {
            errs.push(format!("optimizer: {}", detail(e)));
        }

        let lambda = self.baseline.ridge_lambda;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            errs.push(format!("baseline.ridge_lambda: {lambda} must be finite and >= 0"));
        }

        let encoders = match &self.grid.encoders {
            None => Encoder::ALL.to_vec(),
            Some(list) => parse_list(list, "grid.encoders", &mut errs),
        };
        let ansatze = match (&self.grid.ansatze, self.grid.preset.as_deref()) {
            (Some(list), _) => parse_list(list, "grid.ansatze", &mut errs),
            (None, None | Some("full")) => Ansatz::ALL.to_vec(),
            (None, Some("reduced")) => REDUCED_ANSATZE.to_vec(),
            (None, Some(other)) => {
                errs.push(format!("grid.preset: {other:?} is not \"full\" or \"reduced\""));
                Vec::new()
            }
        };
        if self.grid.encoders.as_ref().is_some_and(|l| l.is_empty()) {
            errs.push("grid.encoders: empty list".into());
        }
        if self.grid.ansatze.as_ref().is_some_and(|l| l.is_empty()) {
            errs.push("grid.ansatze: empty list".into());
        }

        let ratios = self.learning_curve.ratios.clone().unwrap_or_else(|| DEFAULT_RATIOS.to_vec());
        if let Err(e) = validate_ratios(&ratios, s.test_ratio) {
            errs.push(format!("learning_curve.ratios: {}", detail(e)));
        }

        if !errs.is_empty() {
            return Err(CliError::Config(errs));
        }
        let spec = CircuitSpec::new(c.n_qubits, encoder.expect("checked"), ansatz.expect("checked"))
            .with_depth(c.rud, c.ansatz_layers)
            .with_redundancy(c.redundancy);
        Ok(Resolved {
            spec,
            spsa,
            split,
            preprocess: Preprocess {
                scale_features: self.data.scale_features,
                scale_targets: self.data.scale_targets,
                pca_components: self.data.pca_components,
            },
            ridge_lambda: lambda,
            encoders,
            ansatze,
            ratios,
            workers: self.grid.workers.unwrap_or(0),
            out_dir: self.output.dir.clone().unwrap_or_else(|| PathBuf::from("pqcr-out")),
        })
    }

    /// Copy with every defaulted optimizer field written out, so a manifest
    /// replays the same run even if library defaults change.
    pub fn pinned(&self, r: &Resolved) -> Self {
        let mut cfg = self.clone();
        cfg.optimizer = OptimizerSection {
            a: Some(r.spsa.a),
            c: Some(r.spsa.c),
            stability: Some(r.spsa.stability),
            alpha: Some(r.spsa.alpha),
            gamma: Some(r.spsa.gamma),
            iterations: Some(r.spsa.iterations),
            seed: Some(r.spsa.seed),
        };
        cfg
    }
}

fn parse_list<T: std::str::FromStr<Err = pqc_regress::Error>>(
    list: &[String],
    field: &str,
    errs: &mut Vec<String>,
) -> Vec<T> {
    list.iter()
        .enumerate()
        .filter_map(|(i, s)| s.parse().map_err(|e| errs.push(format!("{field}[{i}]: {e}"))).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[data]
synthetic = { kind = "cosine", n_samples = 50, n_features = 2 }

[circuit]
n_qubits = 2
encoder = "A1"
ansatz = "HWE-CNOT"
"#;

    #[test]
    fn minimal_config_resolves_with_defaults() {
        let r = RunConfig::from_toml(BASE).unwrap().resolve().unwrap();
        assert_eq!(r.spsa.iterations, 1000);
        assert_eq!(r.spsa.a, 0.2);
        assert_eq!(r.encoders.len(), 14);
        assert_eq!(r.ansatze.len(), 12);
        assert_eq!(r.ratios, DEFAULT_RATIOS.to_vec());
        assert_eq!(r.split.train_ratio, 0.8);
    }

    #[test]
    fn large_registers_default_to_fewer_iterations() {
        assert_eq!(default_iterations(5), 1000);
        assert_eq!(default_iterations(16), 250);
    }

    #[test]
    fn unknown_encoder_lists_legal_names() {
        let text = BASE.replace("\"A1\"", "\"A3\"");
        let err = RunConfig::from_toml(&text).unwrap().resolve().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("circuit.encoder"), "{msg}");
        for name in Encoder::names() {
            assert!(msg.contains(name), "{name} missing from {msg}");
        }
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn all_problems_are_reported_together() {
        let text = BASE.replace("\"HWE-CNOT\"", "\"nope\"").replace("n_qubits = 2", "n_qubits = 3");
        match RunConfig::from_toml(&text).unwrap().resolve().unwrap_err() {
            CliError::Config(msgs) => {
                assert!(msgs.iter().any(|m| m.starts_with("circuit.ansatz")));
                assert!(msgs.iter().any(|m| m.starts_with("data.synthetic.n_features")));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RunConfig::from_toml(&format!("{BASE}\n[optimizer]\nlearning_rate = 1.0\n")).unwrap_err();
        assert!(err.to_string().contains("learning_rate"));
    }

    #[test]
    fn seed_override_reaches_split_and_optimizer() {
        let mut cfg = RunConfig::from_toml(BASE).unwrap();
        cfg.apply(&Overrides { seed: Some(9), ..Overrides::default() });
        let r = cfg.resolve().unwrap();
        assert_eq!((r.split.seed, r.spsa.seed), (9, 9));
    }

    #[test]
    fn reduced_preset() {
        let r = RunConfig::from_toml(&format!("{BASE}\n[grid]\npreset = \"reduced\"\n")).unwrap().resolve().unwrap();
        assert_eq!(r.encoders.len() * r.ansatze.len(), 98);
    }
}
