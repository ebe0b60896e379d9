use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Synthetic dataset families. Features are uniform on [-1, 1].
///
/// * `cosine`: `y = cos(Σ xᵢ/d + 0.3)`
/// * `linear`: `y = Σ (i+1)/d · xᵢ + 0.25`
/// * `wide-gaussian`: `y ~ Normal(90.7, 27.5²)`, independent of the features
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SynthKind {
    Cosine,
    Linear,
    WideGaussian,
}

pub const COSINE_OFFSET: f64 = 0.3;
pub const LINEAR_INTERCEPT: f64 = 0.25;
pub const WIDE_GAUSSIAN_MEAN: f64 = 90.7;
pub const WIDE_GAUSSIAN_STD: f64 = 27.5;

impl SynthKind {
    pub fn name(self) -> &'static str {
        match self {
            SynthKind::Cosine => "cosine",
            SynthKind::Linear => "linear",
            SynthKind::WideGaussian => "wide-gaussian",
        }
    }

    /// Committed weights for `d` features.
    pub fn weights(self, d: usize) -> Vec<f64> {
        match self {
            SynthKind::Cosine => vec![1.0 / d as f64; d],
            SynthKind::Linear => (0..d).map(|i| (i + 1) as f64 / d as f64).collect(),
            SynthKind::WideGaussian => vec![0.0; d],
        }
    }
}

impl fmt::Display for SynthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosine" => Ok(SynthKind::Cosine),
            "linear" => Ok(SynthKind::Linear),
            "wide-gaussian" => Ok(SynthKind::WideGaussian),
            other => Err(Error::Config(format!(
                "unknown synthetic dataset {other:?}; expected cosine, linear or wide-gaussian"
            ))),
        }
    }
}

pub fn synth_dataset(kind: SynthKind, n: usize, d: usize, seed: u64) -> Result<Dataset> {
    if n < 10 {
        return Err(Error::Config(format!("synthetic datasets need at least 10 rows, got {n}")));
    }
    if d == 0 {
        return Err(Error::Config("synthetic datasets need at least one feature".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = kind.weights(d);
    let noise = Normal::new(WIDE_GAUSSIAN_MEAN, WIDE_GAUSSIAN_STD).expect("valid normal");
    let mut features = Vec::with_capacity(n);
    let mut targets = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let dot: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
        let y = match kind {
            SynthKind::Cosine => (dot + COSINE_OFFSET).cos(),
            SynthKind::Linear => dot + LINEAR_INTERCEPT,
            SynthKind::WideGaussian => noise.sample(&mut rng),
        };
        features.push(x);
        targets.push(y);
    }
    Dataset::from_rows(features, targets)
}
