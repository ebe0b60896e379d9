use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::training::mse_loss;

/// Coefficient of determination `1 − SS_res / SS_tot`.
pub fn r2<T: Real>(y: &[T], y_hat: &[T]) -> Result<T> {
    if y.len() != y_hat.len() {
        return Err(Error::LengthMismatch(y.len(), y_hat.len()));
    }
    if y.len() < 2 {
        return Err(Error::Data(format!("R^2 needs at least 2 samples, got {}", y.len())));
    }
    let n = T::from_usize(y.len()).expect("length fits");
    let mean = y.iter().copied().sum::<T>() / n;
    let ss_tot: T = y.iter().map(|&v| (v - mean) * (v - mean)).sum();
    if ss_tot <= T::zero() {
        return Err(Error::DegenerateTarget);
    }
    let ss_res: T = y.iter().zip(y_hat).map(|(&a, &b)| (a - b) * (a - b)).sum();
    Ok(T::one() - ss_res / ss_tot)
}

/// Mean absolute error.
pub fn mae<T: Real>(y: &[T], y_hat: &[T]) -> Result<T> {
    if y.len() != y_hat.len() {
        return Err(Error::LengthMismatch(y.len(), y_hat.len()));
    }
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: T = y.iter().zip(y_hat).map(|(&a, &b)| (a - b).abs()).sum();
    Ok(sum / T::from_usize(y.len()).expect("length fits"))
}

pub fn mse<T: Real>(y: &[T], y_hat: &[T]) -> Result<T> {
    mse_loss(y, y_hat)
}

/// Train/test metrics in original target units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub r2_train: f64,
    pub r2_test: f64,
    pub mae_train: f64,
    pub mae_test: f64,
    pub mse_train: f64,
    pub mse_test: f64,
}

impl MetricsReport {
    pub fn compute(y_train: &[f64], p_train: &[f64], y_test: &[f64], p_test: &[f64]) -> Result<Self> {
        Ok(Self {
            r2_train: r2(y_train, p_train)?,
            r2_test: r2(y_test, p_test)?,
            mae_train: mae(y_train, p_train)?,
            mae_test: mae(y_test, p_test)?,
            mse_train: mse(y_train, p_train)?,
            mse_test: mse(y_test, p_test)?,
        })
    }
}

/// Mean and population standard deviation.
pub fn mean_std(v: &[f64]) -> Result<(f64, f64)> {
    if v.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}
