//! Builds a cover of two interleaved spirals and draws it.
//!
//! cargo run --example cover_2d_svg -- [out.svg]

use hypercover::cover::{build_cover, min_interclass_distance, CoverConfig};
use hypercover::LabeledPoint;

fn spirals(n: usize) -> Vec<LabeledPoint> {
    (0..n)
        .flat_map(|i| {
            let t = 0.5 + 2.5 * i as f64 / n as f64;
            let r = 0.12 * t;
            let (s, c) = (t * 2.4).sin_cos();
            [
                LabeledPoint::new(vec![0.5 + r * c, 0.5 + r * s], 0),
                LabeledPoint::new(vec![0.5 - r * c, 0.5 - r * s], 1),
            ]
        })
        .collect()
}

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "cover_2d.svg".into());
    let points = spirals(120);
    let l_star = min_interclass_distance(&points).unwrap();
    let config = CoverConfig::for_points(&points).unwrap().with_seed(1);
    println!(
        "l* = {l_star:.4}, l = {:.4}, r* = {}",
        config.min_length, config.max_aspect_ratio
    );

    let cover = build_cover(&points, &config).unwrap();
    let counts = cover.status_counts();
    println!(
        "{} leaves after {} bisections: {} homogeneous, {} violating, {} filled",
        cover.leaves.len(),
        cover.bisections,
        counts.homogeneous,
        counts.violating,
        counts.filled
    );

    std::fs::write(&out, cover.to_svg(&points).unwrap()).unwrap();
    println!("wrote {out}");
}
