use crate::error::{Error, Result};
use crate::point::{common_dim, LabeledPoint};

/// Classification state of a cube in the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubeStatus {
    /// Every contained point carries this class.
    Homogeneous(usize),
    /// Mixed classes, still eligible for bisection.
    Inhomogeneous,
    /// Mixed classes but no bisection satisfies the geometry constraints.
    /// Classifies as its majority label.
    Violating {
        majority: usize,
    },
    Empty,
    /// Previously empty; class assigned by porosity filling.
    Filled(usize),
}

impl CubeStatus {
    /// The class this cube votes for and compiles to, if any.
    pub fn class(self) -> Option<usize> {
        match self {
            CubeStatus::Homogeneous(c) | CubeStatus::Filled(c) => Some(c),
            CubeStatus::Violating { majority } => Some(majority),
            CubeStatus::Inhomogeneous | CubeStatus::Empty => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CubeStatus::Homogeneous(_) => "homogeneous",
            CubeStatus::Inhomogeneous => "inhomogeneous",
            CubeStatus::Violating { .. } => "violating",
            CubeStatus::Empty => "empty",
            CubeStatus::Filled(_) => "filled",
        }
    }
}

/// Axis-aligned box `lower[j] <= x[j] < upper[j]` together with the training
/// points it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypercube {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub status: CubeStatus,
    /// Indices into the training set. Empty for cubes read back from JSON,
    /// which only carry a count.
    pub point_indices: Vec<usize>,
    point_count: usize,
}

impl Hypercube {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        debug_assert_eq!(lower.len(), upper.len());
        Self {
            lower,
            upper,
            status: CubeStatus::Empty,
            point_indices: Vec::new(),
            point_count: 0,
        }
    }

    pub(crate) fn with_points(mut self, indices: Vec<usize>) -> Self {
        self.point_count = indices.len();
        self.point_indices = indices;
        self
    }

    /// A cube that only knows how many points it held.
    pub(crate) fn detached(
        lower: Vec<f64>,
        upper: Vec<f64>,
        status: CubeStatus,
        count: usize,
    ) -> Self {
        Self {
            lower,
            upper,
            status,
            point_indices: Vec::new(),
            point_count: count,
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn n_points(&self) -> usize {
        self.point_count
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.upper[axis] - self.lower[axis]
    }

    pub fn breadths(&self) -> impl Iterator<Item = f64> + '_ {
        self.lower.iter().zip(&self.upper).map(|(lo, hi)| hi - lo)
    }

    /// `max B / min B` over the per-axis breadths.
    pub fn aspect_ratio(&self) -> f64 {
        aspect_ratio(self.breadths())
    }

    pub fn volume(&self) -> f64 {
        self.breadths().product()
    }

    pub fn midpoint(&self, axis: usize) -> f64 {
        0.5 * (self.lower[axis] + self.upper[axis])
    }

    pub fn centroid(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.midpoint(j)).collect()
    }

    /// Half-open membership test.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v < hi)
    }

    /// Smallest distance from an interior `x` to any face of this cube.
    pub fn interior_margin(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| (v - lo).min(hi - v))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn aspect_ratio(breadths: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = breadths.fold((f64::INFINITY, 0.0_f64), |(lo, hi), b| {
        (lo.min(b), hi.max(b))
    });
    hi / lo
}

/// Componentwise bounding box of `points`, with the upper faces nudged outward
/// so boundary-maximal points satisfy the half-open membership rule.
pub fn bounding_box(points: &[LabeledPoint]) -> Result<Hypercube> {
    let n = common_dim(points)?;
    let mut lower = vec![f64::INFINITY; n];
    let mut upper = vec![f64::NEG_INFINITY; n];
    for p in points {
        for (j, &v) in p.coords.iter().enumerate() {
            lower[j] = lower[j].min(v);
            upper[j] = upper[j].max(v);
        }
    }
    for j in 0..n {
        let span = upper[j] - lower[j];
        if span > 0.0 {
            upper[j] += (1e-9 * span).max(1e-9);
        } else {
            lower[j] -= 1e-9;
            upper[j] += 1e-9;
        }
    }
    let mut cube = Hypercube::new(lower, upper).with_points((0..points.len()).collect());
    cube.status = CubeStatus::Inhomogeneous;
    Ok(cube)
}

/// Status implied by the labels of the contained points.
pub fn classify_labels<I: IntoIterator<Item = usize>>(labels: I) -> CubeStatus {
    let mut iter = labels.into_iter();
    let Some(first) = iter.next() else {
        return CubeStatus::Empty;
    };
    if iter.all(|l| l == first) {
        CubeStatus::Homogeneous(first)
    } else {
        CubeStatus::Inhomogeneous
    }
}

pub fn classify_cube(cube: &Hypercube, points: &[LabeledPoint]) -> CubeStatus {
    classify_labels(cube.point_indices.iter().map(|&i| points[i].label))
}

/// Splits `cube` at the midpoint of `axis`. Points exactly on the midpoint go
/// to the upper daughter. Daughter statuses are recomputed from their points.
pub fn bisect(
    cube: &Hypercube,
    axis: usize,
    points: &[LabeledPoint],
) -> Result<(Hypercube, Hypercube)> {
    if axis >= cube.dim() {
        return Err(Error::AxisOutOfRange {
            axis,
            n_dims: cube.dim(),
        });
    }
    let mid = cube.midpoint(axis);
    let (below, above): (Vec<usize>, Vec<usize>) = cube
        .point_indices
        .iter()
        .partition(|&&i| points[i].coords[axis] < mid);

    let mut a_upper = cube.upper.clone();
    a_upper[axis] = mid;
    let mut b_lower = cube.lower.clone();
    b_lower[axis] = mid;

    let mut a = Hypercube::new(cube.lower.clone(), a_upper).with_points(below);
    let mut b = Hypercube::new(b_lower, cube.upper.clone()).with_points(above);
    a.status = classify_cube(&a, points);
    b.status = classify_cube(&b, points);
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64], l: usize) -> LabeledPoint {
        LabeledPoint::new(c.to_vec(), l)
    }

    #[test]
    fn bounding_box_min_max_then_inflated() {
        let pts = [pt(&[0.0, 0.0], 0), pt(&[1.0, 2.0], 1), pt(&[-1.0, 3.0], 0)];
        let b = bounding_box(&pts).unwrap();
        assert_eq!(b.lower, vec![-1.0, 0.0]);
        assert!(b.upper[0] > 1.0 && b.upper[0] < 1.0 + 1e-8);
        assert!(b.upper[1] > 3.0 && b.upper[1] < 3.0 + 1e-8);
        assert!(pts.iter().all(|p| b.contains(&p.coords)));
    }

    #[test]
    fn degenerate_box_gets_positive_extent() {
        let b = bounding_box(&[pt(&[5.0, 5.0], 0)]).unwrap();
        for j in 0..2 {
            assert!(b.lower[j] < 5.0 && b.upper[j] > 5.0);
            assert!(b.extent(j) > 0.0);
        }
        assert!(b.contains(&[5.0, 5.0]));
    }

    #[test]
    fn bounding_box_errors() {
        assert!(matches!(bounding_box(&[]), Err(Error::NoPoints)));
        let mixed = [pt(&[0.0], 0), pt(&[0.0, 1.0], 1)];
        assert!(matches!(
            bounding_box(&mixed),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bisect_at_midpoint() {
        let cube = Hypercube::new(vec![0.0, 0.0], vec![1.0, 4.0]);
        let (a, b) = bisect(&cube, 1, &[]).unwrap();
        assert_eq!(
            (a.lower.clone(), a.upper.clone()),
            (vec![0.0, 0.0], vec![1.0, 2.0])
        );
        assert_eq!(
            (b.lower.clone(), b.upper.clone()),
            (vec![0.0, 2.0], vec![1.0, 4.0])
        );
        assert_eq!(a.volume(), cube.volume() / 2.0);
        assert_eq!(b.volume(), cube.volume() / 2.0);
        assert!(matches!(
            bisect(&cube, 2, &[]),
            Err(Error::AxisOutOfRange { axis: 2, n_dims: 2 })
        ));
    }

    #[test]
    fn midpoint_points_go_to_upper_daughter() {
        let pts = [pt(&[0.5], 0), pt(&[0.25], 1)];
        let cube = Hypercube::new(vec![0.0], vec![1.0]).with_points(vec![0, 1]);
        let (a, b) = bisect(&cube, 0, &pts).unwrap();
        assert_eq!(a.point_indices, vec![1]);
        assert_eq!(b.point_indices, vec![0]);
        assert_eq!(a.status, CubeStatus::Homogeneous(1));
        assert_eq!(b.status, CubeStatus::Homogeneous(0));
    }

    #[test]
    fn classify_labels_cases() {
        assert_eq!(classify_labels([]), CubeStatus::Empty);
        assert_eq!(classify_labels([2, 2, 2]), CubeStatus::Homogeneous(2));
        assert_eq!(classify_labels([0, 1]), CubeStatus::Inhomogeneous);
    }

    #[test]
    fn half_open_membership() {
        let c = Hypercube::new(vec![0.0], vec![1.0]);
        assert!(c.contains(&[0.0]));
        assert!(!c.contains(&[1.0]));
        assert!(!c.contains(&[0.5, 0.5]));
    }
}
