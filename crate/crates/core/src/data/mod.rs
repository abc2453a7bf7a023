//! Dataset ingestion and the preprocessing used by the benchmarks:
//! PCA projection, min-max normalization and seeded splits.

mod builtin;
mod csv;
mod idx;
mod normalize;
mod pca;
mod split;

pub use self::builtin::{DatasetId, MNIST_IMAGES, MNIST_LABELS};
pub use self::csv::{load_csv, read_points_csv};
pub use self::idx::load_idx;
pub use self::normalize::{normalize, Normalizer};
pub use self::pca::{pca_fit, pca_transform, PcaModel};
pub use self::split::{split, SplitSpec};

use crate::point::LabeledPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub points: Vec<LabeledPoint>,
    pub feature_names: Vec<String>,
    pub class_names: Vec<String>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n_dims(&self) -> usize {
        self.points
            .first()
            .map_or(self.feature_names.len(), |p| p.dim())
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Same metadata, different points.
    pub fn with_points(&self, points: Vec<LabeledPoint>) -> Self {
        Self {
            points,
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
        }
    }
}
