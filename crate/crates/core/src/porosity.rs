//! Assigns classes to empty leaves by facet-contact voting, repeated in
//! synchronous rounds until the cover has no empty leaves.

use log::warn;
use rayon::prelude::*;

use crate::cover::{Cover, CubeStatus, Hypercube};
use crate::error::{Error, Result};

/// Relative facet-matching tolerance, scaled by the bounding cube's largest extent.
const FACET_TOL: f64 = 1e-9;

/// A positive-area contact between two leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactRecord {
    pub neighbor_id: usize,
    pub shared_axis: usize,
    pub area: f64,
}

/// (n-1)-volume of the facet shared by `a` and `b`, or 0 if they do not share
/// a facet of positive measure.
pub fn contact_area(a: &Hypercube, b: &Hypercube, tol: f64) -> f64 {
    contact(a, b, tol).map_or(0.0, |(_, area)| area)
}

fn contact(a: &Hypercube, b: &Hypercube, tol: f64) -> Option<(usize, f64)> {
    debug_assert_eq!(a.dim(), b.dim());
    let mut touching = None;
    let mut area = 1.0;
    for j in 0..a.dim() {
        let overlap = a.upper[j].min(b.upper[j]) - a.lower[j].max(b.lower[j]);
        if overlap > tol {
            area *= overlap;
        } else if overlap.abs() <= tol {
            if touching.is_some() {
                return None;
            }
            touching = Some(j);
        } else {
            return None;
        }
    }
    touching.map(|axis| (axis, area))
}

/// Default tolerance for a cover.
pub fn facet_tolerance(cover: &Cover) -> f64 {
    let scale = cover.bounding_cube.breadths().fold(0.0_f64, f64::max);
    FACET_TOL * scale.max(1.0)
}

/// Positive-area adjacency between leaves, indexed by leaf id.
#[derive(Debug, Clone)]
pub struct ContactGraph {
    pub contacts: Vec<Vec<ContactRecord>>,
}

impl ContactGraph {
    /// All-pairs facet search, pruned by a sweep along axis 0.
    pub fn new(leaves: &[Hypercube], tol: f64) -> Self {
        let mut order: Vec<usize> = (0..leaves.len()).collect();
        order.sort_by(|&i, &j| leaves[i].lower[0].total_cmp(&leaves[j].lower[0]));

        let found: Vec<Vec<(usize, usize, usize, f64)>> = order
            .par_iter()
            .enumerate()
            .map(|(pos, &i)| {
                let a = &leaves[i];
                let reach = a.upper[0] + tol;
                order[pos + 1..]
                    .iter()
                    .take_while(|&&j| leaves[j].lower[0] <= reach)
                    .filter_map(|&j| {
                        contact(a, &leaves[j], tol).map(|(axis, area)| (i, j, axis, area))
                    })
                    .collect()
            })
            .collect();

        let mut contacts = vec![Vec::new(); leaves.len()];
        for (i, j, shared_axis, area) in found.into_iter().flatten() {
            contacts[i].push(ContactRecord {
                neighbor_id: j,
                shared_axis,
                area,
            });
            contacts[j].push(ContactRecord {
                neighbor_id: i,
                shared_axis,
                area,
            });
        }
        for list in &mut contacts {
            list.sort_by_key(|c| c.neighbor_id);
        }
        Self { contacts }
    }

    pub fn for_cover(cover: &Cover) -> Self {
        Self::new(&cover.leaves, facet_tolerance(cover))
    }
}

fn vote(cover: &Cover, graph: &ContactGraph, leaf: usize, tally: &mut [f64]) -> Option<usize> {
    tally.fill(0.0);
    for c in &graph.contacts[leaf] {
        if let Some(class) = cover.leaves[c.neighbor_id].status.class() {
            tally[class] += c.area;
        }
    }
    let mut best = 0;
    for (k, &t) in tally.iter().enumerate() {
        if t > tally[best] {
            best = k;
        }
    }
    (tally[best] > 0.0).then_some(best)
}

fn step_with(cover: &Cover, graph: &ContactGraph) -> (Cover, usize) {
    let assignments: Vec<(usize, usize)> = cover
        .leaves
        .par_iter()
        .enumerate()
        .filter(|(_, leaf)| leaf.status == CubeStatus::Empty)
        .map_init(
            || vec![0.0; cover.n_classes],
            |tally, (i, _)| vote(cover, graph, i, tally).map(|c| (i, c)),
        )
        .flatten()
        .collect();
    let mut next = cover.clone();
    for &(i, class) in &assignments {
        next.leaves[i].status = CubeStatus::Filled(class);
    }
    (next, assignments.len())
}

/// One synchronous round. Every empty leaf reads the pre-round statuses.
pub fn fill_step(cover: &Cover) -> (Cover, usize) {
    step_with(cover, &ContactGraph::for_cover(cover))
}

/// Repeats [`fill_step`] until no empty leaves remain.
pub fn fill(cover: &Cover) -> Result<Cover> {
    if cover.empty().next().is_none() {
        return Ok(cover.clone());
    }
    if cover.leaves.iter().all(|l| l.status.class().is_none()) {
        return Err(Error::NoSeedLeaves);
    }
    let graph = ContactGraph::for_cover(cover);
    let mut current = cover.clone();
    loop {
        let (next, assigned) = step_with(&current, &graph);
        current = next;
        if current.empty().next().is_none() {
            return Ok(current);
        }
        if assigned == 0 {
            warn!(
                "{} empty leaves have no positive-area path to a classified leaf",
                current.empty().count()
            );
            return Ok(current);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverConfig;

    fn cube(lo: &[f64], hi: &[f64]) -> Hypercube {
        Hypercube::new(lo.to_vec(), hi.to_vec())
    }

    fn leaf(lo: f64, hi: f64, status: CubeStatus) -> Hypercube {
        let mut c = cube(&[lo], &[hi]);
        c.status = status;
        c
    }

    fn cover_of(leaves: Vec<Hypercube>, n_classes: usize) -> Cover {
        let n = leaves[0].dim();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for l in &leaves {
            for j in 0..n {
                lo[j] = lo[j].min(l.lower[j]);
                hi[j] = hi[j].max(l.upper[j]);
            }
        }
        Cover {
            bounding_cube: Hypercube::new(lo, hi),
            leaves,
            config: CoverConfig::new(0.1),
            n_dims: n,
            n_classes,
            bisections: 0,
        }
    }

    #[test]
    fn contact_area_examples() {
        let tol = 1e-9;
        let unit = cube(&[0.0, 0.0], &[1.0, 1.0]);
        assert_eq!(
            contact_area(&unit, &cube(&[1.0, 0.5], &[2.0, 1.5]), tol),
            0.5
        );
        assert_eq!(
            contact_area(&unit, &cube(&[1.0, 1.0], &[2.0, 2.0]), tol),
            0.0
        );
        let unit3 = cube(&[0.0; 3], &[1.0; 3]);
        assert_eq!(
            contact_area(&unit3, &cube(&[1.0, 0.0, 0.0], &[2.0, 1.0, 1.0]), tol),
            1.0
        );
        // overlapping volumes are not facet contacts
        assert_eq!(
            contact_area(&unit, &cube(&[0.5, 0.5], &[2.0, 2.0]), tol),
            0.0
        );
        // separated
        assert_eq!(
            contact_area(&unit, &cube(&[1.5, 0.0], &[2.0, 1.0]), tol),
            0.0
        );
    }

    #[test]
    fn argmax_area_wins() {
        // empty [0,1]^2 with A on the left (area 1 x 0.5) and B below (0.25)
        let mut empty = cube(&[1.0, 1.0], &[2.0, 2.0]);
        empty.status = CubeStatus::Empty;
        let mut a = cube(&[0.0, 1.0], &[1.0, 1.5]);
        a.status = CubeStatus::Homogeneous(0);
        let mut b = cube(&[1.0, 0.0], &[1.25, 1.0]);
        b.status = CubeStatus::Homogeneous(1);
        let cover = cover_of(vec![empty, a, b], 2);
        let (next, n) = fill_step(&cover);
        assert_eq!(n, 1);
        assert_eq!(next.leaves[0].status, CubeStatus::Filled(0));
    }

    #[test]
    fn isolated_empty_waits_a_round() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.25, CubeStatus::Homogeneous(1)),
                leaf(0.25, 0.5, CubeStatus::Empty),
                leaf(0.5, 0.75, CubeStatus::Empty),
            ],
            2,
        );
        let (next, n) = fill_step(&cover);
        assert_eq!(n, 1);
        assert_eq!(next.leaves[1].status, CubeStatus::Filled(1));
        assert_eq!(next.leaves[2].status, CubeStatus::Empty);
    }

    #[test]
    fn ties_go_to_lowest_class() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.5, CubeStatus::Homogeneous(2)),
                leaf(0.5, 1.0, CubeStatus::Empty),
                leaf(1.0, 1.5, CubeStatus::Homogeneous(0)),
            ],
            3,
        );
        let (next, _) = fill_step(&cover);
        assert_eq!(next.leaves[1].status, CubeStatus::Filled(0));
    }

    #[test]
    fn two_sided_fill_uses_pre_round_state() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.25, CubeStatus::Homogeneous(0)),
                leaf(0.25, 0.5, CubeStatus::Empty),
                leaf(0.5, 0.75, CubeStatus::Empty),
                leaf(0.75, 1.0, CubeStatus::Homogeneous(1)),
            ],
            2,
        );
        let (after_one, n) = fill_step(&cover);
        assert_eq!(n, 2);
        let filled = fill(&cover).unwrap();
        assert_eq!(filled, after_one);
        assert_eq!(filled.leaves[1].status, CubeStatus::Filled(0));
        assert_eq!(filled.leaves[2].status, CubeStatus::Filled(1));
    }

    #[test]
    fn violating_leaves_vote_with_majority() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.5, CubeStatus::Violating { majority: 1 }),
                leaf(0.5, 1.0, CubeStatus::Empty),
            ],
            2,
        );
        assert_eq!(
            fill(&cover).unwrap().leaves[1].status,
            CubeStatus::Filled(1)
        );
    }

    #[test]
    fn no_empty_leaves_is_identity() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.5, CubeStatus::Homogeneous(0)),
                leaf(0.5, 1.0, CubeStatus::Homogeneous(1)),
            ],
            2,
        );
        assert_eq!(fill(&cover).unwrap(), cover);
    }

    #[test]
    fn all_empty_is_an_error() {
        let cover = cover_of(
            vec![
                leaf(0.0, 0.5, CubeStatus::Empty),
                leaf(0.5, 1.0, CubeStatus::Empty),
            ],
            2,
        );
        assert!(matches!(fill(&cover), Err(Error::NoSeedLeaves)));
    }

    #[test]
    fn contact_graph_is_symmetric() {
        let leaves = vec![
            cube(&[0.0, 0.0], &[0.5, 1.0]),
            cube(&[0.5, 0.0], &[1.0, 0.5]),
            cube(&[0.5, 0.5], &[1.0, 1.0]),
        ];
        let g = ContactGraph::new(&leaves, 1e-9);
        assert_eq!(g.contacts[0].len(), 2);
        assert_eq!(g.contacts[1].len(), 2);
        assert_eq!(g.contacts[2].len(), 2);
        let c = g.contacts[1].iter().find(|c| c.neighbor_id == 2).unwrap();
        assert_eq!((c.shared_axis, c.area), (1, 0.5));
    }
}
