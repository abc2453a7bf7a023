//! Brute-force uniform grid covering, used as ground truth for small
//! dimensions only. The cell count grows as `(extent / l)^n`.

use super::hypercube::{bounding_box, Hypercube};
use crate::error::{Error, Result};
use crate::point::LabeledPoint;

const MAX_CELLS: f64 = 1e6;
const MAX_DIMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Empty,
    Homogeneous(usize),
    Ambiguous,
}

/// A regular grid over a box with every cell classified by point membership.
#[derive(Debug, Clone)]
pub struct UniformGrid {
    pub domain: Hypercube,
    pub bins: Vec<usize>,
    cells: Vec<CellClass>,
}

impl UniformGrid {
    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[CellClass] {
        &self.cells
    }

    /// Row-major index of the cell containing `x`, if inside the domain.
    pub fn cell_index(&self, x: &[f64]) -> Option<usize> {
        if !self.domain.contains(x) {
            return None;
        }
        let mut idx = 0;
        for (j, &v) in x.iter().enumerate() {
            let t = (v - self.domain.lower[j]) / self.domain.extent(j);
            let k = ((t * self.bins[j] as f64).floor() as usize).min(self.bins[j] - 1);
            idx = idx * self.bins[j] + k;
        }
        Some(idx)
    }

    pub fn classify(&self, x: &[f64]) -> Option<CellClass> {
        self.cell_index(x).map(|i| self.cells[i])
    }
}

/// Uniform grid over the bounding box of `points` with cell edges `<= l`.
pub fn uniform_cover_oracle(points: &[LabeledPoint], l: f64) -> Result<UniformGrid> {
    let domain = bounding_box(points)?;
    uniform_cover_oracle_in(points, l, Hypercube::new(domain.lower, domain.upper))
}

/// Uniform grid over an explicit domain.
pub fn uniform_cover_oracle_in(
    points: &[LabeledPoint],
    l: f64,
    domain: Hypercube,
) -> Result<UniformGrid> {
    if !(l > 0.0) {
        return Err(Error::InvalidConfig(format!("l must be positive, got {l}")));
    }
    let n = domain.dim();
    let bins: Vec<usize> = (0..n)
        .map(|j| ((domain.extent(j) / l).ceil() as usize).max(1))
        .collect();
    let cells_f: f64 = bins.iter().map(|&b| b as f64).product();
    if n > MAX_DIMS || cells_f > MAX_CELLS {
        return Err(Error::UniformCoverIntractable {
            cells: cells_f,
            limit: MAX_CELLS,
        });
    }
    let mut grid = UniformGrid {
        domain,
        bins,
        cells: vec![CellClass::Empty; cells_f as usize],
    };
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        let Some(i) = grid.cell_index(&p.coords) else {
            continue;
        };
        grid.cells[i] = match grid.cells[i] {
            CellClass::Empty => CellClass::Homogeneous(p.label),
            CellClass::Homogeneous(c) if c == p.label => CellClass::Homogeneous(c),
            _ => CellClass::Ambiguous,
        };
    }
    Ok(grid)
}
