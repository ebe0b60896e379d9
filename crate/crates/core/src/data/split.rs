use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

pub const DEFAULT_TEST_RATIO: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_ratio: f64,
    #[serde(default = "default_test_ratio")]
    pub test_ratio: f64,
    pub seed: u64,
}

fn default_test_ratio() -> f64 {
    DEFAULT_TEST_RATIO
}

impl SplitSpec {
    pub fn new(train_ratio: f64, seed: u64) -> Self {
        Self { train_ratio, test_ratio: DEFAULT_TEST_RATIO, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.train_ratio > 0.0
            && self.test_ratio > 0.0
            && self.train_ratio + self.test_ratio <= 1.0 + 1e-12;
        if !ok {
            return Err(Error::Config(format!(
                "split ratios train={} test={} must be positive and sum to at most 1",
                self.train_ratio, self.test_ratio
            )));
        }
        Ok(())
    }
}

/// Row indices of a split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

// Guards against products like 0.29 * 100 = 28.999999999999996.
fn count(n: usize, ratio: f64) -> usize {
    (n as f64 * ratio + 1e-9).floor() as usize
}

/// Seeded permutation of `0..n`: the first ⌊N·test⌋ entries form the test
/// set, the next ⌊N·train⌋ the training set. The test set depends only on
/// the seed, and training sets for smaller ratios are prefixes of larger
/// ones.
pub fn split_indices(n: usize, spec: &SplitSpec) -> Result<Partition> {
    spec.validate()?;
    let (n_test, n_train) = (count(n, spec.test_ratio), count(n, spec.train_ratio));
    if n_test < 1 || n_train < 1 {
        return Err(Error::Data(format!(
            "{n} rows give {n_train} training and {n_test} test rows; need at least one of each"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
    Ok(Partition { test: perm[..n_test].to_vec(), train: perm[n_test..n_test + n_train].to_vec() })
}

/// `(train, test)` datasets.
pub fn split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let p = split_indices(ds.n_samples(), spec)?;
    Ok((ds.select(&p.train)?, ds.select(&p.test)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn eighty_twenty() {
        let p = split_indices(100, &SplitSpec::new(0.8, 1)).unwrap();
        assert_eq!(p.test.len(), 20);
        assert_eq!(p.train.len(), 80);
        let a: HashSet<_> = p.train.iter().collect();
        assert!(p.test.iter().all(|i| !a.contains(i)));
    }

    #[test]
    fn test_set_independent_of_train_ratio() {
        let a = split_indices(100, &SplitSpec::new(0.1, 9)).unwrap();
        let b = split_indices(100, &SplitSpec::new(0.5, 9)).unwrap();
        assert_eq!(a.test, b.test);
        assert_eq!(a.train.len(), 10);
        assert_eq!(&b.train[..10], &a.train[..]);
    }

    #[test]
    fn too_few_rows() {
        assert!(split_indices(4, &SplitSpec::new(0.8, 0)).is_err());
        assert!(split_indices(100, &SplitSpec::new(0.9, 0)).is_err());
        assert!(split_indices(100, &SplitSpec::new(0.0, 0)).is_err());
    }
}
