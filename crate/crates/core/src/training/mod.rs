//! Loss, batch prediction, SPSA and gradient oracles.

mod gradient;
mod loss;
mod spsa;

pub use gradient::{central_difference, finite_difference_gradient, parameter_shift_gradient, DEFAULT_FD_STEP};
pub use loss::{dataset_loss, mse_loss, predict_batch};
pub use spsa::{perturbation, spsa_minimize, spsa_minimize_from, Spsa, SpsaConfig, TrainRecord};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trainable angles in circuit slot order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("parameter {i} is not finite")));
        }
        Ok(Self(values))
    }

    /// Independent uniform draws on [-π, π) from stream 0 of `seed`.
    pub fn random(len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(0);
        Self((0..len).map(|_| rng.random_range(-PI..PI)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for ParameterVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ParameterVector> for Vec<f64> {
    fn from(p: ParameterVector) -> Vec<f64> {
        p.0
    }
}

impl AsRef<[f64]> for ParameterVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_init_in_range_and_seeded() {
        let a = ParameterVector::random(100, 5);
        assert!(a.as_slice().iter().all(|v| (-PI..PI).contains(v)));
        assert_eq!(a, ParameterVector::random(100, 5));
        assert_ne!(a, ParameterVector::random(100, 6));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(ParameterVector::new(vec![0.0, f64::NAN]).is_err());
    }
}
