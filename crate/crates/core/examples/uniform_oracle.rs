//! Uniform grid versus adaptive bisection on the same data.

use hypercover::cover::{
    build_cover, min_interclass_distance, uniform_cover_oracle, CellClass, CoverConfig,
};
use hypercover::LabeledPoint;

fn main() {
    let points: Vec<LabeledPoint> = (0..60)
        .map(|i| {
            let x = (i as f64 * 0.618_034).fract();
            let y = (i as f64 * 0.414_214).fract();
            let label = usize::from(y > 0.3 + 0.4 * x);
            LabeledPoint::new(vec![x, y], label)
        })
        .collect();
    let l_star = min_interclass_distance(&points).unwrap();
    let l = 0.3 * l_star;

    let grid = uniform_cover_oracle(&points, l).unwrap();
    let count = |f: fn(&CellClass) -> bool| grid.cells().iter().filter(|c| f(c)).count();
    println!("l* = {l_star:.4}, l = {l:.4}");
    println!(
        "uniform grid: {} cells ({} empty, {} homogeneous, {} ambiguous)",
        grid.n_cells(),
        count(|c| *c == CellClass::Empty),
        count(|c| matches!(c, CellClass::Homogeneous(_))),
        count(|c| *c == CellClass::Ambiguous)
    );

    let config = CoverConfig::new(l)
        .with_max_aspect_ratio(f64::INFINITY)
        .with_fill(false);
    let cover = build_cover(&points, &config).unwrap();
    println!("adaptive cover: {} leaves", cover.leaves.len());

    let agree = points
        .iter()
        .filter(|p| {
            let leaf = cover.leaf_containing(&p.coords).unwrap().1;
            grid.classify(&p.coords) == Some(CellClass::Homogeneous(p.label))
                && leaf.status.class() == Some(p.label)
        })
        .count();
    println!(
        "{agree}/{} points carry their own label in both",
        points.len()
    );
}
