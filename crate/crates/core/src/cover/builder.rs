use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::homogeneity::{min_homogeneity, HomogeneityRule};
use super::hypercube::{aspect_ratio, bisect, bounding_box, CubeStatus, Hypercube};
use crate::error::{Error, Result};
use crate::point::{class_count, common_dim, distinct_labels, LabeledPoint};

/// Coordinates outside this band suggest the caller skipped normalization.
const SANITY_BAND: f64 = 10.0;

/// Geometry constraints and knobs for [`build_cover`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverConfig {
    /// Smallest daughter extent a bisection may produce along its split axis.
    pub min_length: f64,
    /// Largest `max B / min B` a daughter may have. `INFINITY` disables the check.
    pub max_aspect_ratio: f64,
    pub rng_seed: u64,
    /// Boundary softening length used when compiling the cover.
    pub epsilon: f64,
    pub fill_porosity: bool,
    pub homogeneity_rule: HomogeneityRule,
}

impl CoverConfig {
    pub const DEFAULT_MAX_ASPECT_RATIO: f64 = 4.0;

    pub fn new(min_length: f64) -> Self {
        Self {
            min_length,
            max_aspect_ratio: Self::DEFAULT_MAX_ASPECT_RATIO,
            rng_seed: 0,
            epsilon: min_length,
            fill_porosity: true,
            homogeneity_rule: HomogeneityRule::default(),
        }
    }

    /// Defaults derived from the data: `l = clamp(l*/2, 0.01, 0.25)`.
    pub fn for_points(points: &[LabeledPoint]) -> Result<Self> {
        let l_star = min_interclass_distance(points)?;
        Ok(Self::new(Self::default_min_length(l_star)))
    }

    pub fn default_min_length(l_star: f64) -> f64 {
        (0.5 * l_star).clamp(0.01, 0.25)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_max_aspect_ratio(mut self, r_star: f64) -> Self {
        self.max_aspect_ratio = r_star;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_fill(mut self, fill: bool) -> Self {
        self.fill_porosity = fill;
        self
    }

    pub fn with_homogeneity_rule(mut self, rule: HomogeneityRule) -> Self {
        self.homogeneity_rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_length > 0.0 && self.min_length.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "min_length must be positive, got {}",
                self.min_length
            )));
        }
        if !(self.max_aspect_ratio >= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "max_aspect_ratio must be >= 1, got {}",
                self.max_aspect_ratio
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// A finished cover: leaves that tile the bounding cube of the training data.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    pub bounding_cube: Hypercube,
    /// Leaves in the order they were finalized. A leaf's index is its cube id.
    pub leaves: Vec<Hypercube>,
    pub config: CoverConfig,
    pub n_dims: usize,
    pub n_classes: usize,
    /// Number of bisections performed during the build.
    pub bisections: usize,
}

/// Leaf counts per status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StatusCounts {
    pub homogeneous: usize,
    pub inhomogeneous: usize,
    pub violating: usize,
    pub empty: usize,
    pub filled: usize,
}

impl Cover {
    fn with_status(&self, pred: fn(CubeStatus) -> bool) -> impl Iterator<Item = &Hypercube> {
        self.leaves.iter().filter(move |c| pred(c.status))
    }

    pub fn homogeneous(&self) -> impl Iterator<Item = &Hypercube> {
        self.with_status(|s| matches!(s, CubeStatus::Homogeneous(_)))
    }

    pub fn violating(&self) -> impl Iterator<Item = &Hypercube> {
        self.with_status(|s| matches!(s, CubeStatus::Violating { .. }))
    }

    pub fn empty(&self) -> impl Iterator<Item = &Hypercube> {
        self.with_status(|s| s == CubeStatus::Empty)
    }

    pub fn filled(&self) -> impl Iterator<Item = &Hypercube> {
        self.with_status(|s| matches!(s, CubeStatus::Filled(_)))
    }

    pub fn status_counts(&self) -> StatusCounts {
        let mut counts = StatusCounts::default();
        for leaf in &self.leaves {
            match leaf.status {
                CubeStatus::Homogeneous(_) => counts.homogeneous += 1,
                CubeStatus::Inhomogeneous => counts.inhomogeneous += 1,
                CubeStatus::Violating { .. } => counts.violating += 1,
                CubeStatus::Empty => counts.empty += 1,
                CubeStatus::Filled(_) => counts.filled += 1,
            }
        }
        counts
    }

    /// The leaf whose half-open box contains `x`.
    pub fn leaf_containing(&self, x: &[f64]) -> Option<(usize, &Hypercube)> {
        if !self.bounding_cube.contains(x) {
            return None;
        }
        self.leaves.iter().enumerate().find(|(_, c)| c.contains(x))
    }

    pub fn total_leaf_volume(&self) -> f64 {
        self.leaves.iter().map(Hypercube::volume).sum()
    }
}

/// Minimum Euclidean distance between two points of different classes.
pub fn min_interclass_distance(points: &[LabeledPoint]) -> Result<f64> {
    if distinct_labels(points) < 2 {
        return Err(Error::InterclassDistanceUndefined);
    }
    common_dim(points)?;
    let mut best_sq = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p.label == q.label {
                continue;
            }
            let d: f64 = p
                .coords
                .iter()
                .zip(&q.coords)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            best_sq = best_sq.min(d);
        }
    }
    Ok(best_sq.sqrt())
}

/// Axes whose midpoint split keeps the split extent `>= l` and the daughters'
/// aspect ratio `<= r*`.
pub fn feasible_axes(cube: &Hypercube, config: &CoverConfig) -> Vec<usize> {
    (0..cube.dim())
        .filter(|&axis| {
            // the daughters' actual extents, so the check agrees with `bisect` to the bit
            let mid = cube.midpoint(axis);
            [mid - cube.lower[axis], cube.upper[axis] - mid]
                .into_iter()
                .all(|half| {
                    half >= config.min_length
                        && within_aspect_limit(
                            aspect_ratio(cube.breadths().enumerate().map(|(j, b)| {
                                if j == axis {
                                    half
                                } else {
                                    b
                                }
                            })),
                            config.max_aspect_ratio,
                        )
                })
        })
        .collect()
}

/// Power-of-two breadth ratios sit exactly on common limits such as 4, so
/// allow rounding noise.
fn within_aspect_limit(ratio: f64, r_star: f64) -> bool {
    ratio <= r_star * (1.0 + 1e-12)
}

/// `(axis, max(h_a, h_b))` for a trial midpoint split along each axis.
pub fn score_axes(
    cube: &Hypercube,
    points: &[LabeledPoint],
    axes: &[usize],
    n_classes: usize,
    rule: HomogeneityRule,
) -> Result<Vec<(usize, f64)>> {
    if axes.is_empty() {
        return Err(Error::NoAxes);
    }
    let mut below = vec![0usize; n_classes];
    let mut above = vec![0usize; n_classes];
    axes.iter()
        .map(|&axis| {
            if axis >= cube.dim() {
                return Err(Error::AxisOutOfRange {
                    axis,
                    n_dims: cube.dim(),
                });
            }
            below.fill(0);
            above.fill(0);
            let mid = cube.midpoint(axis);
            for &i in &cube.point_indices {
                let p = &points[i];
                if p.coords[axis] < mid {
                    below[p.label] += 1;
                } else {
                    above[p.label] += 1;
                }
            }
            let h_a = min_homogeneity(&below, rule)?;
            let h_b = min_homogeneity(&above, rule)?;
            Ok((axis, h_a.max(h_b)))
        })
        .collect()
}

/// Picks the axis with the best score; ties are broken uniformly at random
/// among the tied axes taken in ascending order.
pub fn select_bisection_axis<R: Rng + ?Sized>(scores: &[(usize, f64)], rng: &mut R) -> usize {
    let best = scores
        .iter()
        .map(|&(_, s)| s)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut tied: Vec<usize> = scores
        .iter()
        .filter(|&&(_, s)| s == best)
        .map(|&(a, _)| a)
        .collect();
    assert!(
        !tied.is_empty(),
        "select_bisection_axis called with no scores"
    );
    if tied.len() == 1 {
        return tied[0];
    }
    tied.sort_unstable();
    tied[rng.random_range(0..tied.len())]
}

fn majority_label(cube: &Hypercube, points: &[LabeledPoint], n_classes: usize) -> usize {
    let mut counts = vec![0usize; n_classes];
    for &i in &cube.point_indices {
        counts[points[i].label] += 1;
    }
    // first maximum wins, i.e. ties go to the lowest class index
    let mut best = 0;
    for (c, &n) in counts.iter().enumerate() {
        if n > counts[best] {
            best = c;
        }
    }
    best
}

fn has_coincident_cross_class(cube: &Hypercube, points: &[LabeledPoint]) -> bool {
    let idx = &cube.point_indices;
    idx.iter().enumerate().any(|(k, &i)| {
        idx[k + 1..]
            .iter()
            .any(|&j| points[i].label != points[j].label && points[i].coords == points[j].coords)
    })
}

/// Builds the adaptive cover by constrained midpoint bisection.
///
/// Cubes with mixed labels are pulled depth-first from a work stack. If no
/// axis can be split without breaking the length or aspect-ratio limits the
/// cube becomes a violating leaf classified by majority; otherwise the
/// best-scoring axis is split and each daughter is routed by its contents.
/// Empty leaves are filled afterwards when `config.fill_porosity` is set.
pub fn build_cover(points: &[LabeledPoint], config: &CoverConfig) -> Result<Cover> {
    config.validate()?;
    let n_dims = common_dim(points)?;
    if distinct_labels(points) < 2 {
        return Err(Error::SingleClass);
    }
    let n_classes = class_count(points);
    if points
        .iter()
        .any(|p| p.coords.iter().any(|v| !(v.abs() <= SANITY_BAND)))
    {
        warn!("coordinates outside [-{SANITY_BAND}, {SANITY_BAND}]; was the data normalized?");
    }

    let root = bounding_box(points)?;
    let bounding_cube = Hypercube::new(root.lower.clone(), root.upper.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut working = vec![root];
    let mut leaves = Vec::new();
    let mut bisections = 0usize;
    let mut warned_duplicates = false;

    while let Some(mut cube) = working.pop() {
        let axes = feasible_axes(&cube, config);
        if axes.is_empty() {
            if !warned_duplicates && has_coincident_cross_class(&cube, points) {
                warn!("coincident points with different labels; their cube is left violating");
                warned_duplicates = true;
            }
            cube.status = CubeStatus::Violating {
                majority: majority_label(&cube, points, n_classes),
            };
            leaves.push(cube);
            continue;
        }
        let scores = score_axes(&cube, points, &axes, n_classes, config.homogeneity_rule)?;
        let axis = select_bisection_axis(&scores, &mut rng);
        let (a, b) = bisect(&cube, axis, points)?;
        for d in [&a, &b] {
            assert!(
                d.extent(axis) >= config.min_length,
                "bisection produced split extent below min_length"
            );
            assert!(
                within_aspect_limit(d.aspect_ratio(), config.max_aspect_ratio),
                "bisection produced aspect ratio above max_aspect_ratio"
            );
        }
        bisections += 1;
        // push b first so the lower daughter is processed next
        for d in [b, a] {
            match d.status {
                CubeStatus::Inhomogeneous => working.push(d),
                _ => leaves.push(d),
            }
        }
    }

    let cover = Cover {
        bounding_cube,
        leaves,
        config: *config,
        n_dims,
        n_classes,
        bisections,
    };
    if config.fill_porosity && cover.empty().next().is_some() {
        crate::porosity::fill(&cover)
    } else {
        Ok(cover)
    }
}
