use crate::error::{Error, Result};

/// A coordinate vector with its class index.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub coords: Vec<f64>,
    pub label: usize,
}

impl LabeledPoint {
    pub fn new(coords: Vec<f64>, label: usize) -> Self {
        Self { coords, label }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Common dimension of a point set, or an error if empty or ragged.
pub fn common_dim(points: &[LabeledPoint]) -> Result<usize> {
    let first = points.first().ok_or(Error::NoPoints)?;
    let n = first.dim();
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    Ok(n)
}

/// One more than the largest label.
pub fn class_count(points: &[LabeledPoint]) -> usize {
    points.iter().map(|p| p.label + 1).max().unwrap_or(0)
}

/// Number of distinct labels actually present.
pub fn distinct_labels(points: &[LabeledPoint]) -> usize {
    let mut seen: Vec<usize> = points.iter().map(|p| p.label).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
