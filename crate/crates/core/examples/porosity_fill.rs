//! Empty leaves before and after facet-area voting.

use hypercover::cover::{build_cover, CoverConfig, CubeStatus};
use hypercover::porosity::{facet_tolerance, fill, fill_step, ContactGraph};
use hypercover::LabeledPoint;

fn main() {
    // alternating class bands along the diagonal leave the off-diagonal blocks empty
    let points: Vec<LabeledPoint> = (0..40)
        .map(|i| {
            let t = i as f64 / 39.0;
            let wobble = 0.03 * (i as f64 * 1.7).sin();
            LabeledPoint::new(vec![t, t + wobble], (i / 8) % 3)
        })
        .collect();
    let config = CoverConfig::new(0.05).with_fill(false).with_seed(3);
    let porous = build_cover(&points, &config).unwrap();
    println!("before: {:?}", porous.status_counts());

    let graph = ContactGraph::for_cover(&porous);
    let tol = facet_tolerance(&porous);
    let edges: usize = graph.contacts.iter().map(Vec::len).sum::<usize>() / 2;
    println!(
        "{} leaves share {edges} facets (tolerance {tol:.1e})",
        porous.leaves.len()
    );

    let mut round = porous.clone();
    let mut k = 0;
    while round.empty().next().is_some() {
        let (next, assigned) = fill_step(&round);
        k += 1;
        println!("round {k}: assigned {assigned}");
        round = next;
    }

    let filled = fill(&porous).unwrap();
    assert_eq!(filled, round);
    assert_eq!(fill(&filled).unwrap(), filled);
    let by_class = |c: usize| {
        filled
            .leaves
            .iter()
            .filter(|l| l.status == CubeStatus::Filled(c))
            .count()
    };
    println!("after:  {:?}", filled.status_counts());
    println!(
        "filled leaves per class: {} {} {}",
        by_class(0),
        by_class(1),
        by_class(2)
    );
}
