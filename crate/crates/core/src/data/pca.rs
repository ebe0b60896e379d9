use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Principal components of a training matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `r × d`, orthonormal rows, descending variance.
    pub components: Vec<Vec<f64>>,
    pub explained_variance: Vec<f64>,
    /// Trace of the training covariance.
    pub total_variance: f64,
}

/// Top-`r` eigenvectors of the sample covariance (denominator N−1) of the
/// training features. Each component's largest-magnitude entry is positive.
pub fn fit_pca(train: &Dataset, r: usize) -> Result<PcaModel> {
    let (n, d) = (train.n_samples(), train.n_features());
    if r == 0 || r > n.min(d) {
        return Err(Error::Config(format!("cannot keep {r} components from {n} samples x {d} features")));
    }
    let mut mean = vec![0.0; d];
    for row in train.features() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);

    let centered = DMatrix::from_fn(n, d, |i, j| train.features()[i][j] - mean[j]);
    let denom = (n.max(2) - 1) as f64;
    let cov = (centered.transpose() * &centered) / denom;
    let total_variance = cov.trace();
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut components = Vec::with_capacity(r);
    let mut explained_variance = Vec::with_capacity(r);
    for &k in order.iter().take(r) {
        let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let pivot = v.iter().copied().fold(0.0_f64, |best, x| if x.abs() > best.abs() { x } else { best });
        if pivot < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        components.push(v);
        explained_variance.push(eig.eigenvalues[k].max(0.0));
    }
    Ok(PcaModel { mean, components, explained_variance, total_variance })
}

impl PcaModel {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Fraction of total variance per kept component.
    pub fn explained_variance_ratio(&self) -> Vec<f64> {
        self.explained_variance
            .iter()
            .map(|v| if self.total_variance > 0.0 { v / self.total_variance } else { 0.0 })
            .collect()
    }

    /// `(x − mean) · componentsᵀ` per row.
    pub fn transform(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter()
            .map(|row| {
                if row.len() != self.mean.len() {
                    return Err(Error::Arity { what: "PCA input row", expected: self.mean.len(), got: row.len() });
                }
                Ok(self
                    .components
                    .iter()
                    .map(|c| c.iter().zip(row).zip(&self.mean).map(|((c, x), m)| c * (x - m)).sum())
                    .collect())
            })
            .collect()
    }

    /// `mean + proj · components` per row.
    pub fn inverse_transform(&self, projected: &[Vec<f64>]) -> Vec<Vec<f64>> {
        projected
            .iter()
            .map(|p| {
                let mut x = self.mean.clone();
                for (coef, comp) in p.iter().zip(&self.components) {
                    for (xi, ci) in x.iter_mut().zip(comp) {
                        *xi += coef * ci;
                    }
                }
                x
            })
            .collect()
    }

    /// `ds` projected onto the components (`pc1 … pcR`), targets unchanged.
    pub fn apply(&self, ds: &Dataset) -> Result<Dataset> {
        let names = (1..=self.n_components()).map(|k| format!("pc{k}")).collect();
        ds.with_features(self.transform(ds.features())?, names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_data_is_fully_explained() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| {
            let a = (i as f64 * 0.37).sin() * 3.0;
            vec![a, 2.0 * a]
        }).collect();
        let ds = Dataset::from_rows(rows, vec![0.0; 20]).unwrap();
        let m = fit_pca(&ds, 1).unwrap();
        assert!((m.explained_variance_ratio()[0] - 1.0).abs() < 1e-10);
        let c = &m.components[0];
        assert!(c[1] > 0.0 && (c[1] / c[0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn single_feature() {
        let ds = Dataset::from_rows(vec![vec![1.0], vec![2.0], vec![6.0]], vec![0.0; 3]).unwrap();
        let m = fit_pca(&ds, 1).unwrap();
        assert_eq!(m.components, vec![vec![1.0]]);
        let p = m.transform(ds.features()).unwrap();
        assert_eq!(p, vec![vec![-2.0], vec![-1.0], vec![3.0]]);
    }

    #[test]
    fn too_many_components() {
        let ds = Dataset::from_rows(vec![vec![1.0, 2.0], vec![2.0, 0.0]], vec![0.0; 2]).unwrap();
        assert!(fit_pca(&ds, 3).is_err());
        assert!(fit_pca(&ds, 0).is_err());
    }
}
