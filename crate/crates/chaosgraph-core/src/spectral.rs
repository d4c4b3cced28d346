//! Dense symmetric eigendecomposition and eigenvalue grouping.
//!
//! Spectra are computed with a dense solver and a hard size cap; there is no
//! sparse/iterative path. Eigenvalues within `1e-8 * max(1, spectral_radius)`
//! of each other are clustered into (value, multiplicity) groups, which is
//! enough to separate the rational closed-form spectra that show up at desk
//! scale.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on dense eigendecomposition size.
pub const DENSE_EIGEN_CAP: usize = 4096;

/// Relative tolerance used to cluster eigenvalues into multiplicity groups.
pub const GROUP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Adjacency,
    NormalizedLaplacian,
}

/// Eigenvalues of a symmetric matrix, ascending, with multiplicity groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub matrix_kind: MatrixKind,
    pub eigenvalues: Vec<f64>,
    /// (group value, multiplicity) after tolerance clustering.
    pub groups: Vec<(f64, usize)>,
}

impl SpectralReport {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// k-th smallest eigenvalue, 1-based (mu_1 is the smallest).
    pub fn mu(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }

    /// Multiplicity of the eigenvalue group containing `value`, 0 if none.
    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.groups
            .iter()
            .find(|(v, _)| (v - value).abs() <= tol)
            .map(|&(_, m)| m)
            .unwrap_or(0)
    }
}

/// Eigenvalues of a symmetric matrix, ascending. Fails past the size cap or
/// if the QL iteration does not converge.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n > DENSE_EIGEN_CAP {
        return Err(Error::SizeLimitExceeded {
            what: "dense eigendecomposition",
            size: n,
            limit: DENSE_EIGEN_CAP,
        });
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(Error::NumericalFailure { n })?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    Ok(vals)
}

/// Eigenvalues and eigenvectors (columns, matching the sorted order).
pub fn symmetric_eigenpairs(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    if n > DENSE_EIGEN_CAP {
        return Err(Error::SizeLimitExceeded {
            what: "dense eigendecomposition",
            size: n,
            limit: DENSE_EIGEN_CAP,
        });
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(Error::NumericalFailure { n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok((vals, vecs))
}

/// Cluster ascending eigenvalues into (value, multiplicity) groups.
pub fn group_eigenvalues(vals: &[f64]) -> Vec<(f64, usize)> {
    if vals.is_empty() {
        return Vec::new();
    }
    let radius = vals.iter().fold(0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let tol = GROUP_TOL * radius;
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > tol {
            let slice = &vals[start..i];
            let mean = slice.iter().sum::<f64>() / slice.len() as f64;
            groups.push((mean, slice.len()));
            start = i;
        }
    }
    groups
}

pub fn report(matrix_kind: MatrixKind, m: &DMatrix<f64>) -> Result<SpectralReport> {
    let eigenvalues = symmetric_eigenvalues(m)?;
    let groups = group_eigenvalues(&eigenvalues);
    Ok(SpectralReport {
        matrix_kind,
        eigenvalues,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn groups_cluster_near_equal_values() {
        let vals = vec![0.0, 1e-12, 0.5, 0.5 + 1e-10, 2.0];
        let groups = group_eigenvalues(&vals);
        assert_eq!(groups.len(), 3);
        assert_eq!(groups[0].1, 2);
        assert_eq!(groups[1].1, 2);
        assert_eq!(groups[2].1, 1);
    }

    #[test]
    fn eigenvalues_of_known_matrix() {
        // P3 normalized Laplacian has spectrum {0, 1, 2}.
        let m = dmatrix![
            1.0, -1.0/2f64.sqrt(), 0.0;
            -1.0/2f64.sqrt(), 1.0, -1.0/2f64.sqrt();
            0.0, -1.0/2f64.sqrt(), 1.0
        ];
        let vals = symmetric_eigenvalues(&m).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!((vals[2] - 2.0).abs() < 1e-12);
    }
}
