use std::fs;
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};
use crate::io::write_atomic;

/// Reads a comma-delimited table with a header row. Every non-target column
/// becomes a feature, in file order.
pub fn load_table(path: impl AsRef<Path>, target_column: &str) -> Result<Dataset> {
    let text = fs::read_to_string(path.as_ref())?;
    parse_table(&text, target_column)
}

pub(crate) fn parse_table(text: &str, target_column: &str) -> Result<Dataset> {
    if text.trim().is_empty() {
        return Err(Error::Data("empty file".into()));
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let target_idx = header.iter().position(|h| h == target_column).ok_or_else(|| {
        Error::Data(format!("target column {target_column:?} not found; columns are {}", header.join(", ")))
    })?;

    let mut features = Vec::new();
    let mut targets = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        // header is line 1
        let line = i + 2;
        let mut row = Vec::with_capacity(header.len() - 1);
        for (j, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                row: line,
                column: header[j].clone(),
                message: format!("{cell:?} is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    column: header[j].clone(),
                    message: format!("{cell:?} is not finite"),
                });
            }
            if j == target_idx {
                targets.push(value);
            } else {
                row.push(value);
            }
        }
        features.push(row);
    }
    if targets.is_empty() {
        return Err(Error::Data("table has a header but no data rows".into()));
    }
    let names = header.iter().enumerate().filter(|(j, _)| *j != target_idx).map(|(_, h)| h.clone()).collect();
    Dataset::new(features, targets, names, target_column)
}

/// CSV text of `ds`: features in order, target last.
pub fn table_to_string(ds: &Dataset) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = ds.feature_names().iter().map(String::as_str).collect();
    header.push(ds.target_name());
    w.write_record(&header)?;
    for (row, y) in ds.features().iter().zip(ds.targets()) {
        let mut cells: Vec<String> = row.iter().map(f64::to_string).collect();
        cells.push(y.to_string());
        w.write_record(&cells)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes `ds` atomically in the format [`load_table`] reads.
pub fn save_table(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), table_to_string(ds)?.as_bytes())
}
