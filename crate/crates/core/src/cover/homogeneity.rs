use crate::error::{Error, Result};

/// How class pairs absent from a daughter enter the minimum homogeneity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomogeneityRule {
    /// A pair with both counts zero contributes 0 to the minimum.
    #[default]
    ZeroForEmptyPairs,
    /// Pairs with both counts zero are skipped. A daughter with no points, or
    /// whose only pairs are empty, scores 1.
    ExcludeEmptyPairs,
}

/// `|a - b| / (a + b)`, or 0 when both counts are zero.
pub fn pair_homogeneity(count_a: usize, count_b: usize) -> f64 {
    let total = count_a + count_b;
    if total == 0 {
        return 0.0;
    }
    count_a.abs_diff(count_b) as f64 / total as f64
}

/// Minimum of [`pair_homogeneity`] over all unordered pairs of distinct classes.
pub fn daughter_min_homogeneity(class_counts: &[usize]) -> Result<f64> {
    min_homogeneity(class_counts, HomogeneityRule::ZeroForEmptyPairs)
}

pub fn min_homogeneity(class_counts: &[usize], rule: HomogeneityRule) -> Result<f64> {
    let m = class_counts.len();
    if m < 2 {
        return Err(Error::TooFewClasses(m));
    }
    let mut best = f64::INFINITY;
    for (i, &a) in class_counts.iter().enumerate() {
        for &b in &class_counts[i + 1..] {
            if a == 0 && b == 0 {
                match rule {
                    HomogeneityRule::ZeroForEmptyPairs => return Ok(0.0),
                    HomogeneityRule::ExcludeEmptyPairs => continue,
                }
            }
            best = best.min(pair_homogeneity(a, b));
        }
    }
    Ok(if best.is_finite() { best } else { 1.0 })
}
