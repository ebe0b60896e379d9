use serde::{Deserialize, Serialize};

use super::metrics::MetricsReport;
use crate::data::{fit_scaler, Dataset};
use crate::error::{Error, Result};

/// Linear model `ŷ = w·x + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub weights: Vec<f64>,
    pub intercept: f64,
}

impl RidgeModel {
    pub fn predict(&self, rows: &[Vec<f64>]) -> Vec<f64> {
        rows.iter()
            .map(|r| r.iter().zip(&self.weights).map(|(x, w)| x * w).sum::<f64>() + self.intercept)
            .collect()
    }
}

/// Closed-form ridge with an unpenalized intercept: solves
/// `(X̃ᵀX̃ + λ·diag(1,…,1,0)) [w; b] = X̃ᵀy` for `X̃ = [X 1]` by Cholesky.
pub fn fit_ridge(rows: &[Vec<f64>], y: &[f64], lambda: f64) -> Result<RidgeModel> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    if rows.len() != y.len() {
        return Err(Error::LengthMismatch(rows.len(), y.len()));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Config(format!("ridge lambda {lambda} must be finite and >= 0")));
    }
    let d = rows[0].len();
    let m = d + 1;
    let mut gram = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    let mut aug = vec![1.0; m];
    for (row, &t) in rows.iter().zip(y) {
        aug[..d].copy_from_slice(row);
        for i in 0..m {
            rhs[i] += aug[i] * t;
            for j in 0..=i {
                gram[i * m + j] += aug[i] * aug[j];
            }
        }
    }
    for i in 0..d {
        gram[i * m + i] += lambda;
    }
    let sol = cholesky_solve(&mut gram, &mut rhs, m)?;
    Ok(RidgeModel { weights: sol[..d].to_vec(), intercept: sol[d] })
}

// Lower-triangular Cholesky in place on the lower half of `a`.
fn cholesky_solve(a: &mut [f64], b: &mut [f64], m: usize) -> Result<Vec<f64>> {
    let scale = (0..m).map(|i| a[i * m + i].abs()).fold(0.0, f64::max).max(1.0);
    for j in 0..m {
        let mut diag = a[j * m + j];
        for k in 0..j {
            diag -= a[j * m + k] * a[j * m + k];
        }
        if diag <= scale * 1e-13 {
            return Err(Error::Singular);
        }
        let l = diag.sqrt();
        a[j * m + j] = l;
        for i in j + 1..m {
            let mut v = a[i * m + j];
            for k in 0..j {
                v -= a[i * m + k] * a[j * m + k];
            }
            a[i * m + j] = v / l;
        }
    }
    // L z = b
    for i in 0..m {
        let mut v = b[i];
        for k in 0..i {
            v -= a[i * m + k] * b[k];
        }
        b[i] = v / a[i * m + i];
    }
    // Lᵀ x = z
    for i in (0..m).rev() {
        let mut v = b[i];
        for k in i + 1..m {
            v -= a[k * m + i] * b[k];
        }
        b[i] = v / a[i * m + i];
    }
    Ok(b.to_vec())
}

/// Ridge fit on min/max-scaled features (scaler fit on `train`), with
/// metrics in original target units.
pub fn ridge_baseline(train: &Dataset, test: &Dataset, lambda: f64) -> Result<MetricsReport> {
    let scaler = fit_scaler(train);
    let xs_train = scaler.transform_features_unclipped(train.features())?;
    let xs_test = scaler.transform_features_unclipped(test.features())?;
    let model = fit_ridge(&xs_train, train.targets(), lambda)?;
    MetricsReport::compute(train.targets(), &model.predict(&xs_train), test.targets(), &model.predict(&xs_test))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_linear_fit() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 / 10.0, ((i * 7) % 5) as f64]).collect();
        let y: Vec<f64> = rows.iter().map(|r| 3.0 * r[0] - 2.0 * r[1] + 1.5).collect();
        let m = fit_ridge(&rows, &y, 1e-10).unwrap();
        assert!((m.weights[0] - 3.0).abs() < 1e-6);
        assert!((m.weights[1] + 2.0).abs() < 1e-6);
        assert!((m.intercept - 1.5).abs() < 1e-6);
    }

    #[test]
    fn huge_lambda_predicts_the_mean() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..10).map(|i| 2.0 * i as f64).collect();
        let m = fit_ridge(&rows, &y, 1e12).unwrap();
        for p in m.predict(&rows) {
            assert!((p - 9.0).abs() < 1e-6);
        }
    }

    #[test]
    fn collinear_without_penalty_is_singular() {
        let rows: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 2.0 * i as f64]).collect();
        let y = vec![1.0; 5];
        let err = fit_ridge(&rows, &y, 0.0).unwrap_err();
        assert!(matches!(err, Error::Singular));
        assert!(err.to_string().contains("> 0"));
        assert!(fit_ridge(&rows, &y, 0.1).is_ok());
    }

    #[test]
    fn input_checks() {
        assert!(matches!(fit_ridge(&[], &[], 1.0), Err(Error::EmptyInput)));
        assert!(fit_ridge(&[vec![1.0]], &[1.0], -1.0).is_err());
    }
}
