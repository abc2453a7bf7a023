#![allow(dead_code)]

use std::path::PathBuf;

use hypercover::cover::{Cover, Hypercube};
use hypercover::mlp::Mlp;
use hypercover::LabeledPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Isotropic Gaussian blobs in the unit square, one per class.
pub fn blobs(n_per_class: usize, centers: &[[f64; 2]], sigma: f64, seed: u64) -> Vec<LabeledPoint> {
    let mut rng = rng(seed);
    let noise = Normal::new(0.0, sigma).unwrap();
    let mut out = Vec::new();
    for (label, c) in centers.iter().enumerate() {
        for _ in 0..n_per_class {
            let x = (c[0] + noise.sample(&mut rng)).clamp(0.0, 1.0);
            let y = (c[1] + noise.sample(&mut rng)).clamp(0.0, 1.0);
            out.push(LabeledPoint::new(vec![x, y], label));
        }
    }
    out
}

/// Two interleaved spiral arms, scaled into the unit square.
pub fn spirals(n_per_arm: usize, seed: u64) -> Vec<LabeledPoint> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for arm in 0..2 {
        for i in 0..n_per_arm {
            let t = 0.5 + 2.5 * i as f64 / n_per_arm as f64;
            let phase = std::f64::consts::PI * arm as f64;
            let r = t / 3.0 * 0.45 + rng.random_range(-0.01..0.01);
            let x = 0.5 + r * (2.0 * t + phase).cos();
            let y = 0.5 + r * (2.0 * t + phase).sin();
            out.push(LabeledPoint::new(vec![x, y], arm));
        }
    }
    out
}

/// Uniform points labeled by which side of `sin` curve they fall on.
pub fn uniform_labeled(n: usize, dim: usize, n_classes: usize, seed: u64) -> Vec<LabeledPoint> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let x: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
            let s: f64 = x
                .iter()
                .enumerate()
                .map(|(j, v)| (3.0 * v + j as f64).sin())
                .sum();
            let label = ((s + dim as f64) / (2.0 * dim as f64) * n_classes as f64) as usize;
            LabeledPoint::new(x, label.min(n_classes - 1))
        })
        .collect()
}

/// Euclidean distance from `x` to the boundary of `cube`, inside or out.
pub fn distance_to_boundary(cube: &Hypercube, x: &[f64]) -> f64 {
    let inside = x
        .iter()
        .enumerate()
        .all(|(j, &v)| v >= cube.lower[j] && v <= cube.upper[j]);
    if inside {
        x.iter()
            .enumerate()
            .map(|(j, &v)| (v - cube.lower[j]).min(cube.upper[j] - v))
            .fold(f64::INFINITY, f64::min)
    } else {
        x.iter()
            .enumerate()
            .map(|(j, &v)| {
                let d = (cube.lower[j] - v).max(v - cube.upper[j]).max(0.0);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub fn sample_in(cube: &Hypercube, rng: &mut impl Rng) -> Vec<f64> {
    (0..cube.dim())
        .map(|j| rng.random_range(cube.lower[j]..cube.upper[j]))
        .collect()
}

/// Number of leaves whose half-open box holds `x`, counted by brute force.
pub fn containing_leaves(cover: &Cover, x: &[f64]) -> usize {
    cover
        .leaves
        .iter()
        .filter(|c| {
            x.iter()
                .enumerate()
                .all(|(j, &v)| v >= c.lower[j] && v < c.upper[j])
        })
        .count()
}

/// Sign of every hidden pre-activation for every point.
pub fn relu_pattern(mlp: &Mlp, points: &[LabeledPoint]) -> Vec<bool> {
    let (_, hidden) = mlp.layers.split_last().unwrap();
    let mut out = Vec::new();
    for p in points {
        let mut h = p.coords.clone();
        for layer in hidden {
            let z = layer.affine(&h);
            out.extend(z.iter().map(|&v| v > 0.0));
            h = layer.apply(&h);
        }
    }
    out
}

/// Compares backprop against central differences on `samples` random
/// coordinates. Coordinates whose `+-h` stencil changes the ReLU pattern sit
/// on a kink, where the loss has no derivative, and are redrawn. Returns the
/// worst relative error and how many coordinates were redrawn.
pub fn gradient_check(
    mlp: &Mlp,
    points: &[LabeledPoint],
    samples: usize,
    seed: u64,
) -> (f64, usize) {
    let (_, analytic) = mlp.gradient(points).unwrap();
    let base = mlp.parameters();
    let pattern = relu_pattern(mlp, points);
    let mut rng = rng(seed);
    let h = 1e-5;
    let mut probe = mlp.clone();
    let (mut worst, mut checked, mut redrawn) = (0.0f64, 0, 0);
    while checked < samples {
        let i = rng.random_range(0..base.len());
        let mut p = base.clone();
        p[i] = base[i] + h;
        probe.set_parameters(&p);
        let up = probe.loss(points).unwrap();
        let up_pattern = relu_pattern(&probe, points);
        p[i] = base[i] - h;
        probe.set_parameters(&p);
        let down = probe.loss(points).unwrap();
        if up_pattern != pattern || relu_pattern(&probe, points) != pattern {
            redrawn += 1;
            continue;
        }
        checked += 1;
        let numeric = (up - down) / (2.0 * h);
        let scale = analytic[i].abs().max(numeric.abs());
        if scale > 1e-8 {
            worst = worst.max((analytic[i] - numeric).abs() / scale);
        }
    }
    (worst, redrawn)
}
