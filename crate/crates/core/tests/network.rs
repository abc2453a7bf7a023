mod common;

use common::{blobs, distance_to_boundary, rng, sample_in, spirals, uniform_labeled};
use hypercover::cover::{build_cover, Cover, CoverConfig};
use hypercover::network::{compile, geometric_classify, Activation, CompiledNetwork};
use hypercover::LabeledPoint;
use proptest::prelude::*;
use rand::Rng;

/// Class scores straight from the leaf geometry: per class, the sum over its
/// leaves of `max(0, 1 - d1 / eps)` where `d1` is the L1 distance to the box.
fn score_oracle(cover: &Cover, eps: f64, x: &[f64]) -> Vec<f64> {
    let mut scores = vec![0.0; cover.n_classes];
    for leaf in &cover.leaves {
        let Some(c) = leaf.status.class() else {
            continue;
        };
        let d1: f64 = x
            .iter()
            .enumerate()
            .map(|(j, &v)| (leaf.lower[j] - v).max(0.0) + (v - leaf.upper[j]).max(0.0))
            .sum();
        scores[c] += (1.0 - d1 / eps).max(0.0);
    }
    scores
}

fn covers() -> Vec<(Vec<LabeledPoint>, CoverConfig)> {
    vec![
        (spirals(80, 2), CoverConfig::new(0.03).with_seed(1)),
        (
            blobs(30, &[[0.2, 0.2], [0.8, 0.25], [0.5, 0.8]], 0.1, 3),
            CoverConfig::new(0.05).with_epsilon(0.01),
        ),
        (
            uniform_labeled(150, 3, 3, 6),
            CoverConfig::new(0.05).with_seed(2),
        ),
    ]
}

#[test]
fn forward_matches_geometric_scores() {
    for (points, config) in covers() {
        let cover = build_cover(&points, &config).unwrap();
        let net = compile(&cover, config.epsilon).unwrap();
        assert!(net.is_relu_realizable());
        assert_eq!(net.layers.len(), 4);
        let k = net.n_cubes();
        let n = cover.n_dims;
        assert_eq!(
            (net.layers[0].outputs(), net.layers[0].inputs()),
            (2 * n * k, n)
        );
        assert_eq!(net.layers[3].activation, Activation::Softmax);
        let mut rng = rng(21);
        let dense = net.to_dense();
        for _ in 0..2000 {
            // probe slightly beyond the bounding box as well
            let x: Vec<f64> = (0..n)
                .map(|j| {
                    let (lo, hi) = (cover.bounding_cube.lower[j], cover.bounding_cube.upper[j]);
                    rng.random_range(lo - 0.1..hi + 0.1)
                })
                .collect();
            let got = net.pre_softmax(&x).unwrap();
            let want = score_oracle(&cover, config.epsilon, &x);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
            }
            assert_eq!(dense.pre_softmax(&x).unwrap(), got);
            let (probs, class) = net.forward(&x).unwrap();
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert_eq!(class, net.predict(&x).unwrap());
        }
    }
}

#[test]
fn training_points_classified_when_epsilon_is_small() {
    for (points, config) in covers() {
        let cover = build_cover(&points, &config).unwrap();
        if cover.status_counts().violating > 0 {
            continue;
        }
        // far below every leaf width, so no neighbour reaches a training point
        let net = compile(&cover, 1e-6).unwrap();
        for p in &points {
            assert_eq!(net.predict(&p.coords).unwrap(), p.label);
        }
    }
}

#[test]
fn deep_interior_points_follow_the_containing_leaf() {
    for (points, config) in covers() {
        let cover = build_cover(&points, &config).unwrap();
        let eps = config.epsilon;
        let net = compile(&cover, eps).unwrap();
        let mut rng = rng(5);
        let mut checked = 0;
        for _ in 0..10_000 {
            let x = sample_in(&cover.bounding_cube, &mut rng);
            if cover
                .leaves
                .iter()
                .all(|l| distance_to_boundary(l, &x) > eps)
            {
                assert_eq!(
                    Some(net.predict(&x).unwrap()),
                    geometric_classify(&cover, &x)
                );
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn network_json_round_trip() {
    let (points, config) = covers().remove(0);
    let cover = build_cover(&points, &config).unwrap();
    let net = compile(&cover, config.epsilon).unwrap();
    let text = net.to_json();
    let back = CompiledNetwork::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    assert_eq!(back.class_blocks, net.class_blocks);
    let mut rng = rng(8);
    for _ in 0..100 {
        let x = sample_in(&cover.bounding_cube, &mut rng);
        let (a, _) = net.forward(&x).unwrap();
        let (b, _) = back.forward(&x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() <= 1e-12);
        }
    }
}

#[test]
fn cover_json_round_trip() {
    for (points, config) in covers() {
        let cover = build_cover(&points, &config).unwrap();
        let text = cover.to_json();
        let back = Cover::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.leaves.len(), cover.leaves.len());
        let net = compile(&back, config.epsilon).unwrap();
        assert_eq!(net, compile(&cover, config.epsilon).unwrap());
    }
}

#[test]
fn malformed_network_json_is_rejected() {
    for text in ["", "{}", "[1,2]", r#"{"n_inputs": 2}"#] {
        assert!(CompiledNetwork::from_json(text).is_err(), "{text:?}");
    }
}

#[test]
fn wrong_dimension_is_an_error() {
    let (points, config) = covers().remove(0);
    let net = compile(&build_cover(&points, &config).unwrap(), config.epsilon).unwrap();
    assert!(net.predict(&[0.5]).is_err());
    assert!(net.predict(&[0.5, 0.5, 0.5]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn export_import_export_is_stable(
        n in 10usize..80,
        classes in 2usize..4,
        seed in any::<u64>(),
        eps in 0.001f64..0.5,
    ) {
        let points = uniform_labeled(n, 2, classes, seed);
        prop_assume!(hypercover::point::distinct_labels(&points) >= 2);
        let config = CoverConfig::new(0.05).with_seed(seed);
        let cover = build_cover(&points, &config).unwrap();
        // a class can lose all support when its only points sit in violating leaves
        let Ok(net) = compile(&cover, eps) else { return Ok(()) };
        let cover_text = cover.to_json();
        prop_assert_eq!(Cover::from_json(&cover_text).unwrap().to_json(), cover_text);
        let net_text = net.to_json();
        let back = CompiledNetwork::from_json(&net_text).unwrap();
        prop_assert_eq!(back.to_json(), net_text.clone());
        prop_assert_eq!(back.epsilon, eps);
    }
}
