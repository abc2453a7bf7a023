use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, seed: u64) -> Self {
        assert!(
            train_fraction > 0.0 && train_fraction < 1.0,
            "train_fraction must lie in (0, 1)"
        );
        Self {
            train_fraction,
            seed,
        }
    }
}

/// Seeded shuffle, then the first `round(fraction * N)` points train and the
/// rest evaluate. Both sides keep at least one point when `N >= 2`.
pub fn split(dataset: &Dataset, spec: SplitSpec) -> (Dataset, Dataset) {
    let n = dataset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
    let n_train = ((spec.train_fraction * n as f64).round() as usize)
        .clamp(1.min(n), n.saturating_sub(1).max(1));
    let pick = |idx: &[usize]| idx.iter().map(|&i| dataset.points[i].clone()).collect();
    (
        dataset.with_points(pick(&order[..n_train])),
        dataset.with_points(pick(&order[n_train..])),
    )
}
