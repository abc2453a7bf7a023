use super::Dataset;
use crate::point::LabeledPoint;

/// Per-axis min-max maps fitted on one dataset and reusable on others.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizer {
    pub min: Vec<f64>,
    pub range: Vec<f64>,
}

impl Normalizer {
    pub fn fit(points: &[LabeledPoint]) -> Self {
        let n = points.first().map_or(0, LabeledPoint::dim);
        let mut min = vec![f64::INFINITY; n];
        let mut max = vec![f64::NEG_INFINITY; n];
        for p in points {
            for (j, &v) in p.coords.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        let range = min.iter().zip(&max).map(|(lo, hi)| hi - lo).collect();
        Self { min, range }
    }

    /// Maps one coordinate vector. Constant training axes map to 0.5; values
    /// outside the training range land outside `[0, 1]`.
    pub fn map(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(j, &v)| {
                if self.range[j] > 0.0 {
                    (v - self.min[j]) / self.range[j]
                } else {
                    0.5
                }
            })
            .collect()
    }

    pub fn apply(&self, dataset: &Dataset) -> Dataset {
        dataset.with_points(
            dataset
                .points
                .iter()
                .map(|p| LabeledPoint::new(self.map(&p.coords), p.label))
                .collect(),
        )
    }
}

/// Min-max normalizes every axis to `[0, 1]` and returns the fitted maps.
pub fn normalize(dataset: &Dataset) -> (Dataset, Normalizer) {
    let norm = Normalizer::fit(&dataset.points);
    (norm.apply(dataset), norm)
}
