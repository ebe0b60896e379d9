use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::metrics::mean_std;
use crate::error::{Error, Result};
use crate::io::write_atomic;

/// Mean and population standard deviation of both parity columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParitySummary {
    pub mean_reference: f64,
    pub std_reference: f64,
    pub mean_predicted: f64,
    pub std_predicted: f64,
}

pub fn parity_summary(y: &[f64], y_hat: &[f64]) -> Result<ParitySummary> {
    if y.len() != y_hat.len() {
        return Err(Error::LengthMismatch(y.len(), y_hat.len()));
    }
    let (mean_reference, std_reference) = mean_std(y)?;
    let (mean_predicted, std_predicted) = mean_std(y_hat)?;
    Ok(ParitySummary { mean_reference, std_reference, mean_predicted, std_predicted })
}

/// `reference,predicted` rows followed by a `# summary:` comment line.
pub fn parity_to_string(y: &[f64], y_hat: &[f64]) -> Result<(String, ParitySummary)> {
    let summary = parity_summary(y, y_hat)?;
    let mut s = String::from("reference,predicted\n");
    for (a, b) in y.iter().zip(y_hat) {
        writeln!(s, "{a},{b}").expect("writing to a String");
    }
    writeln!(
        s,
        "# summary: mean_reference={},std_reference={},mean_predicted={},std_predicted={}",
        summary.mean_reference, summary.std_reference, summary.mean_predicted, summary.std_predicted
    )
    .expect("writing to a String");
    Ok((s, summary))
}

/// Writes a parity file atomically.
pub fn parity_export(y: &[f64], y_hat: &[f64], path: impl AsRef<Path>) -> Result<ParitySummary> {
    let (text, summary) = parity_to_string(y, y_hat)?;
    write_atomic(path.as_ref(), text.as_bytes())?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_pairs() {
        let (s, sum) = parity_to_string(&[1.0, 2.0, 3.0], &[1.5, 2.0, 2.5]).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "reference,predicted");
        assert!(lines[4].starts_with("# summary:"));
        assert_eq!(sum.mean_reference, 2.0);
        assert!((sum.std_predicted - (1.0f64 / 6.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(matches!(parity_to_string(&[], &[]), Err(Error::EmptyInput)));
    }
}
