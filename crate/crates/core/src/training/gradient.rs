//! Exact and numerical loss gradients, used to cross-check each other.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use super::{dataset_loss, predict_batch};
use crate::circuits::CircuitTemplate;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::statevector::GateKind;

pub const DEFAULT_FD_STEP: f64 = 1e-4;

// Four-term rule coefficients for controlled rotations, whose generator
// spectrum {0, ±1/2} gives frequencies {1/2, 1}.
const C_PLUS: f64 = (SQRT_2 + 1.0) / (4.0 * SQRT_2);
const C_MINUS: f64 = (SQRT_2 - 1.0) / (4.0 * SQRT_2);

/// `(shift, coefficient)` pairs with `f′(θ) = Σ c·[f(θ+s) − f(θ−s)]`.
fn shift_rule(kind: GateKind) -> Option<&'static [(f64, f64)]> {
    match kind {
        GateKind::RX | GateKind::RY | GateKind::RZ => Some(&[(FRAC_PI_2, 0.5)]),
        GateKind::CRX | GateKind::CRZ => Some(&[(FRAC_PI_2, C_PLUS), (3.0 * FRAC_PI_2, -C_MINUS)]),
        _ => None,
    }
}

/// ∂L/∂θ by the parameter-shift rule applied per sample, combined through
/// `∂L/∂θⱼ = (2/N) Σ (ŷᵢ − yᵢ) ∂ŷᵢ/∂θⱼ`.
pub fn parameter_shift_gradient(template: &CircuitTemplate, theta: &[f64], data: &Dataset) -> Result<Vec<f64>> {
    if theta.len() != template.total_params() {
        return Err(Error::Arity { what: "parameter vector", expected: template.total_params(), got: theta.len() });
    }
    let mut rules = vec![None; template.total_params()];
    for slot in template.slots() {
        if let Some(p) = slot.param() {
            rules[p] = Some(shift_rule(slot.kind).ok_or(Error::NoShiftRule { param: p, kind: slot.kind.name() })?);
        }
    }

    let rows = data.features();
    let y = data.targets();
    let y_hat = predict_batch(template, theta, rows)?;
    let n = y.len() as f64;
    let mut grad = vec![0.0; theta.len()];
    let mut shifted = theta.to_vec();
    for (j, rule) in rules.into_iter().enumerate() {
        let rule = rule.expect("every parameter index has a slot");
        let mut d_pred = vec![0.0; rows.len()];
        for &(s, coeff) in rule {
            shifted[j] = theta[j] + s;
            let up = predict_batch(template, &shifted, rows)?;
            shifted[j] = theta[j] - s;
            let down = predict_batch(template, &shifted, rows)?;
            for (d, (u, l)) in d_pred.iter_mut().zip(up.iter().zip(&down)) {
                *d += coeff * (u - l);
            }
        }
        shifted[j] = theta[j];
        grad[j] = 2.0 / n * y_hat.iter().zip(y).zip(&d_pred).map(|((p, t), d)| (p - t) * d).sum::<f64>();
    }
    Ok(grad)
}

/// Central differences `[f(θ+h eⱼ) − f(θ−h eⱼ)]/(2h)` of any objective.
pub fn central_difference<F>(objective: F, theta: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Config(format!("finite-difference step {h} must be > 0")));
    }
    let mut x = theta.to_vec();
    (0..theta.len())
        .map(|j| {
            x[j] = theta[j] + h;
            let up = objective(&x)?;
            x[j] = theta[j] - h;
            let down = objective(&x)?;
            x[j] = theta[j];
            Ok((up - down) / (2.0 * h))
        })
        .collect()
}

/// Central-difference gradient of the dataset MSE.
pub fn finite_difference_gradient(template: &CircuitTemplate, theta: &[f64], data: &Dataset, h: f64) -> Result<Vec<f64>> {
    central_difference(|th| dataset_loss(template, th, data), theta, h)
}
