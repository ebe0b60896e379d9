use rayon::prelude::*;

use crate::circuits::CircuitTemplate;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mean squared error `(1/N) Σ (yᵢ − ŷᵢ)²`.
pub fn mse_loss<T: Real>(y: &[T], y_hat: &[T]) -> Result<T> {
    if y.len() != y_hat.len() {
        return Err(Error::LengthMismatch(y.len(), y_hat.len()));
    }
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: T = y.iter().zip(y_hat).map(|(&a, &b)| (a - b) * (a - b)).sum();
    Ok(sum / T::from_usize(y.len()).expect("length fits"))
}

/// ⟨Z₀⟩ for every row of `rows`, in order.
///
/// Rows are evaluated in parallel; the output does not depend on the
/// schedule.
pub fn predict_batch(template: &CircuitTemplate, theta: &[f64], rows: &[Vec<f64>]) -> Result<Vec<f64>> {
    rows.par_iter().map(|x| template.evaluate(theta, x)).collect()
}

/// MSE of the template's predictions on `data`.
pub fn dataset_loss(template: &CircuitTemplate, theta: &[f64], data: &Dataset) -> Result<f64> {
    let y_hat = predict_batch(template, theta, data.features())?;
    mse_loss(data.targets(), &y_hat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{assemble_pqc, Ansatz, CircuitSpec, Encoder};

    #[test]
    fn hand_arithmetic() {
        assert_eq!(mse_loss(&[1.0, -1.0], &[0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(mse_loss(&[0.3, 2.0, -4.0], &[0.3, 2.0, -4.0]).unwrap(), 0.0);
        assert!((mse_loss::<f64>(&[0.5], &[0.1]).unwrap() - 0.16).abs() < 1e-15);
        assert!((mse_loss(&[0.5_f32], &[0.1]).unwrap() - 0.16).abs() < 1e-6);
    }

    #[test]
    fn errors() {
        assert!(matches!(mse_loss::<f64>(&[], &[]), Err(Error::EmptyInput)));
        assert!(matches!(mse_loss(&[1.0], &[1.0, 2.0]), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn batch_matches_single_calls() {
        let t = assemble_pqc(&CircuitSpec::new(3, Encoder::A2, Ansatz::HweCnot)).unwrap();
        let theta: Vec<f64> = (0..t.total_params()).map(|i| 0.1 * i as f64).collect();
        assert!(predict_batch(&t, &theta, &[]).unwrap().is_empty());
        let rows: Vec<Vec<f64>> = (0..5).map(|i| vec![0.1 * i as f64, -0.2, 0.3]).collect();
        let batch = predict_batch(&t, &theta, &rows).unwrap();
        for (row, b) in rows.iter().zip(&batch) {
            assert_eq!(*b, t.evaluate(&theta, row).unwrap());
        }
    }
}
