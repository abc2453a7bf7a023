use nalgebra::{DMatrix, SymmetricEigen};

use super::Dataset;
use crate::error::{Error, Result};
use crate::point::{common_dim, LabeledPoint};

/// Principal directions of a dataset, strongest first.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `d` orthonormal rows of length `n`.
    pub components: Vec<Vec<f64>>,
    /// Sample variance along each component, non-increasing.
    pub explained_variance: Vec<f64>,
}

impl PcaModel {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(x.iter().zip(&self.mean))
                    .map(|(w, (v, m))| w * (v - m))
                    .sum()
            })
            .collect()
    }

    /// `mean + components^T z`.
    pub fn reconstruct(&self, z: &[f64]) -> Vec<f64> {
        let mut out = self.mean.clone();
        for (c, &s) in self.components.iter().zip(z) {
            for (o, w) in out.iter_mut().zip(c) {
                *o += w * s;
            }
        }
        out
    }
}

/// Fits the top `d` eigenvectors of the sample covariance (N - 1 denominator).
/// Each component is signed so its largest-magnitude entry is positive.
pub fn pca_fit(dataset: &Dataset, d: usize) -> Result<PcaModel> {
    let points = &dataset.points;
    let n = common_dim(points)?;
    if d == 0 || d > n {
        return Err(Error::InvalidConfig(format!(
            "cannot keep {d} components of {n}-dimensional data"
        )));
    }
    let count = points.len();
    if count < 2 {
        return Err(Error::InvalidConfig("PCA needs at least two points".into()));
    }

    let mut mean = vec![0.0; n];
    for p in points {
        for (m, v) in mean.iter_mut().zip(&p.coords) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= count as f64);
    let centered = DMatrix::from_fn(count, n, |i, j| points[i].coords[j] - mean[j]);
    let denom = (count - 1) as f64;

    // Eigen-decompose whichever of X^T X (n x n) or X X^T (N x N) is smaller.
    let (values, vectors) = if n <= count {
        let cov = centered.transpose() * &centered / denom;
        let eig = SymmetricEigen::new(cov);
        (eig.eigenvalues, eig.eigenvectors)
    } else {
        let gram = &centered * centered.transpose() / denom;
        let eig = SymmetricEigen::new(gram);
        let mut dirs = centered.transpose() * &eig.eigenvectors;
        for mut col in dirs.column_iter_mut() {
            let norm = col.norm();
            if norm > 0.0 {
                col /= norm;
            }
        }
        (eig.eigenvalues, dirs)
    };

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut components = Vec::with_capacity(d);
    let mut explained_variance = Vec::with_capacity(d);
    for &k in order.iter().take(d) {
        let mut c: Vec<f64> = vectors.column(k).iter().copied().collect();
        let pivot = c.iter().enumerate().fold(
            0,
            |best, (j, v)| if v.abs() > c[best].abs() { j } else { best },
        );
        if c[pivot] < 0.0 {
            c.iter_mut().for_each(|v| *v = -*v);
        }
        components.push(c);
        explained_variance.push(values[k].max(0.0));
    }
    if components.len() < d {
        return Err(Error::InvalidConfig(format!(
            "only {} components available from {count} points",
            components.len()
        )));
    }
    Ok(PcaModel {
        mean,
        components,
        explained_variance,
    })
}

pub fn pca_transform(model: &PcaModel, dataset: &Dataset) -> Dataset {
    Dataset {
        points: dataset
            .points
            .iter()
            .map(|p| LabeledPoint::new(model.project(&p.coords), p.label))
            .collect(),
        feature_names: (1..=model.n_components())
            .map(|k| format!("pc{k}"))
            .collect(),
        class_names: dataset.class_names.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ds(rows: &[Vec<f64>]) -> Dataset {
        Dataset {
            points: rows
                .iter()
                .map(|r| LabeledPoint::new(r.clone(), 0))
                .collect(),
            feature_names: vec![],
            class_names: vec!["a".into()],
        }
    }

    fn variance(xs: &[f64]) -> f64 {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
    }

    #[test]
    fn rank_one_line() {
        let rows: Vec<Vec<f64>> = (-3..=3)
            .map(|t| vec![3.0 * t as f64, 4.0 * t as f64])
            .collect();
        let data = ds(&rows);
        let model = pca_fit(&data, 1).unwrap();
        let c = &model.components[0];
        assert!((c[0] - 0.6).abs() < 1e-12 && (c[1] - 0.8).abs() < 1e-12);
        let projected: Vec<f64> = pca_transform(&model, &data)
            .points
            .iter()
            .map(|p| p.coords[0])
            .collect();
        let total: f64 = variance(&rows.iter().map(|r| r[0]).collect::<Vec<_>>())
            + variance(&rows.iter().map(|r| r[1]).collect::<Vec<_>>());
        assert!((variance(&projected) - total).abs() < 1e-9);
        assert!((model.explained_variance[0] - total).abs() < 1e-9);
    }

    #[test]
    fn too_many_components_is_an_error() {
        let data = ds(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(pca_fit(&data, 3).is_err());
    }

    #[test]
    fn gram_route_matches_covariance_route() {
        // 3 points in 5 dimensions forces the N x N route
        let rows = vec![
            vec![1.0, 0.0, 2.0, -1.0, 0.5],
            vec![0.0, 1.0, 0.0, 3.0, 0.0],
            vec![2.0, 2.0, -1.0, 0.0, 1.0],
        ];
        let data = ds(&rows);
        let wide = pca_fit(&data, 2).unwrap();
        // same cloud padded with copies has identical covariance up to scale
        let mut padded = rows.clone();
        padded.extend(rows.iter().cloned());
        padded.extend(rows.iter().cloned());
        let tall = pca_fit(&ds(&padded), 2).unwrap();
        for k in 0..2 {
            for j in 0..5 {
                assert!((wide.components[k][j] - tall.components[k][j]).abs() < 1e-9);
            }
        }
    }

    proptest! {
        #[test]
        fn orthonormal_sorted_and_invertible(
            rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 4), 6..20)
        ) {
            let data = ds(&rows);
            let model = pca_fit(&data, 4).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    let dot: f64 = model.components[a].iter().zip(&model.components[b]).map(|(x, y)| x * y).sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((dot - want).abs() < 1e-9);
                }
            }
            prop_assert!(model.explained_variance.windows(2).all(|w| w[0] >= w[1]));
            for r in &rows {
                let back = model.reconstruct(&model.project(r));
                for (x, y) in r.iter().zip(&back) {
                    prop_assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }
}
