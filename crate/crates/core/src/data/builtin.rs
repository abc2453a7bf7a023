use std::path::{Path, PathBuf};

use super::{load_csv, load_idx, Dataset};
use crate::error::Result;

pub const MNIST_IMAGES: &str = "mnist/images-idx3-ubyte.gz";
pub const MNIST_LABELS: &str = "mnist/labels-idx1-ubyte.gz";

/// The benchmark datasets as laid out by `tools/prepare_data.py`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetId {
    Iris,
    Wine,
    /// A seeded subsample of this many digits.
    Mnist {
        points: usize,
    },
}

impl DatasetId {
    pub fn name(&self) -> String {
        match self {
            DatasetId::Iris => "iris".into(),
            DatasetId::Wine => "wine".into(),
            DatasetId::Mnist { points } => format!("mnist-{points}"),
        }
    }

    /// Resolves the dataset under `data_dir`. `seed` only affects MNIST subsampling.
    pub fn load(&self, data_dir: &Path, seed: u64) -> Result<Dataset> {
        match self {
            DatasetId::Iris => load_csv(data_dir.join("iris.csv"), None, true),
            DatasetId::Wine => load_csv(data_dir.join("wine.csv"), None, true),
            DatasetId::Mnist { points } => load_idx(
                data_dir.join(MNIST_IMAGES),
                data_dir.join(MNIST_LABELS),
                Some(*points),
                seed,
            ),
        }
    }

    /// `$HYPERCOVER_DATA`, falling back to `./data`.
    pub fn default_data_dir() -> PathBuf {
        std::env::var_os("HYPERCOVER_DATA")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("data"))
    }
}
