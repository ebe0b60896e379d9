//! Simultaneous perturbation stochastic approximation.
//!
//! At iteration `t` (0-based) with gains `aₜ = a/(A+t+1)^α` and
//! `cₜ = c/(t+1)^γ`, a Rademacher direction `Δ` gives the estimate
//! `g = [L(θ+cₜΔ) − L(θ−cₜΔ)]/(2cₜ) · Δ` and the update `θ ← θ − aₜ g`.
//! `Δ` for iteration `t` comes from its own ChaCha stream keyed by the run
//! seed, so the sequence is fixed no matter how loss evaluations are
//! scheduled.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{dataset_loss, ParameterVector};
use crate::circuits::CircuitTemplate;
use crate::data::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpsaConfig {
    pub a: f64,
    pub c: f64,
    /// Stability constant `A`.
    #[serde(rename = "A")]
    pub stability: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SpsaConfig {
    fn default() -> Self {
        Self { a: 0.2, c: 0.1, stability: 0.0, alpha: 0.602, gamma: 0.101, iterations: 1000, seed: 0 }
    }
}

impl SpsaConfig {
    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.a > 0.0 && self.a.is_finite()) {
            return bad(format!("spsa a = {} must be > 0", self.a));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad(format!("spsa c = {} must be > 0", self.c));
        }
        if !(self.stability >= 0.0 && self.stability.is_finite()) {
            return bad(format!("spsa A = {} must be >= 0", self.stability));
        }
        for (name, v) in [("alpha", self.alpha), ("gamma", self.gamma)] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(format!("spsa {name} = {v} must lie in (0, 1]"));
            }
        }
        if self.iterations == 0 {
            return bad("spsa iterations must be >= 1".into());
        }
        Ok(())
    }

    /// `(aₜ, cₜ)` for 0-based iteration `t`.
    pub fn gains(&self, t: usize) -> (f64, f64) {
        let k = (t + 1) as f64;
        (self.a / (self.stability + k).powf(self.alpha), self.c / k.powf(self.gamma))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainRecord {
    pub final_theta: ParameterVector,
    /// `(t, L(θ))` after the update of iteration `t`.
    pub loss_history: Vec<(usize, f64)>,
    pub wall_time_seconds: f64,
}

impl TrainRecord {
    pub fn final_loss(&self) -> Option<f64> {
        self.loss_history.last().map(|&(_, l)| l)
    }
}

/// Rademacher direction for iteration `t` of the run keyed by `seed`.
pub fn perturbation(seed: u64, t: usize, len: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // stream 0 is reserved for parameter initialization
    rng.set_stream(t as u64 + 1);
    (0..len).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
}

/// SPSA over an arbitrary objective.
pub struct Spsa {
    config: SpsaConfig,
}

impl Spsa {
    pub fn new(config: SpsaConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn minimize<F>(&self, objective: F, theta0: Vec<f64>) -> Result<TrainRecord>
    where
        F: Fn(&[f64]) -> Result<f64> + Sync,
    {
        let cfg = &self.config;
        let start = Instant::now();
        let mut theta = ParameterVector::new(theta0)?.into_inner();
        let p = theta.len();
        let mut history = Vec::with_capacity(cfg.iterations);
        let mut plus = vec![0.0; p];
        let mut minus = vec![0.0; p];
        for t in 0..cfg.iterations {
            let (a_t, c_t) = cfg.gains(t);
            let delta = perturbation(cfg.seed, t, p);
            for i in 0..p {
                plus[i] = theta[i] + c_t * delta[i];
                minus[i] = theta[i] - c_t * delta[i];
            }
            let (lp, lm) = rayon::join(|| objective(&plus), || objective(&minus));
            let (lp, lm) = (lp?, lm?);
            if !lp.is_finite() || !lm.is_finite() {
                return Err(Error::NonFiniteLoss { iteration: t });
            }
            let scale = (lp - lm) / (2.0 * c_t);
            for i in 0..p {
                // Δ⁻¹ = Δ for ±1 entries
                theta[i] -= a_t * scale * delta[i];
            }
            let loss = objective(&theta)?;
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss { iteration: t });
            }
            history.push((t, loss));
        }
        Ok(TrainRecord {
            final_theta: ParameterVector::new(theta).map_err(|_| Error::NonFiniteLoss { iteration: cfg.iterations - 1 })?,
            loss_history: history,
            wall_time_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Trains `template` on `data` (already scaled) from a seeded uniform
/// initialization.
pub fn spsa_minimize(template: &CircuitTemplate, data: &Dataset, config: &SpsaConfig) -> Result<TrainRecord> {
    let theta0 = ParameterVector::random(template.total_params(), config.seed);
    spsa_minimize_from(template, data, config, theta0.into_inner())
}

pub fn spsa_minimize_from(
    template: &CircuitTemplate,
    data: &Dataset,
    config: &SpsaConfig,
    theta0: Vec<f64>,
) -> Result<TrainRecord> {
    if data.n_features() != template.n_features() {
        return Err(Error::Arity { what: "dataset feature width", expected: template.n_features(), got: data.n_features() });
    }
    if theta0.len() != template.total_params() {
        return Err(Error::Arity { what: "initial parameters", expected: template.total_params(), got: theta0.len() });
    }
    Spsa::new(*config)?.minimize(|th| dataset_loss(template, th, data), theta0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gains_follow_schedule() {
        let cfg = SpsaConfig::default();
        let (a0, c0) = cfg.gains(0);
        assert_eq!((a0, c0), (0.2, 0.1));
        let (a9, c9) = cfg.gains(9);
        assert!((a9 - 0.2 / 10f64.powf(0.602)).abs() < 1e-15);
        assert!((c9 - 0.1 / 10f64.powf(0.101)).abs() < 1e-15);
    }

    #[test]
    fn config_validation() {
        assert!(SpsaConfig::default().validate().is_ok());
        assert!(SpsaConfig { a: 0.0, ..Default::default() }.validate().is_err());
        assert!(SpsaConfig { alpha: 1.5, ..Default::default() }.validate().is_err());
        assert!(SpsaConfig { gamma: 0.0, ..Default::default() }.validate().is_err());
        assert!(SpsaConfig { iterations: 0, ..Default::default() }.validate().is_err());
        assert!(SpsaConfig { stability: -1.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn perturbations_are_signs_with_small_mean() {
        let mut sum = 0.0;
        for t in 0..100 {
            let d = perturbation(42, t, 100);
            assert!(d.iter().all(|&v| v == 1.0 || v == -1.0));
            sum += d.iter().sum::<f64>();
        }
        assert!((sum / 1e4).abs() < 0.1);
    }

    #[test]
    fn minimizes_a_quadratic() {
        let cfg = SpsaConfig { a: 0.5, iterations: 500, seed: 3, ..Default::default() };
        let target = [0.5, -1.0, 2.0];
        let rec = Spsa::new(cfg)
            .unwrap()
            .minimize(|th| Ok(th.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum()), vec![0.0; 3])
            .unwrap();
        assert_eq!(rec.loss_history.len(), 500);
        assert!(rec.final_loss().unwrap() < 1e-3, "{:?}", rec.final_loss());
    }

    #[test]
    fn aborts_on_non_finite_loss() {
        let cfg = SpsaConfig { iterations: 10, ..Default::default() };
        let err = Spsa::new(cfg)
            .unwrap()
            .minimize(|_| Ok(f64::NAN), vec![0.0])
            .unwrap_err();
        assert!(matches!(err, Error::NonFiniteLoss { iteration: 0 }));
    }
}
