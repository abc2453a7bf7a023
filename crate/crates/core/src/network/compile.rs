use super::layer::{argmax, softmax_in_place, Activation, AffineLayer, CsrMatrix, Weights};
use crate::cover::{Cover, CubeStatus, Hypercube};
use crate::error::{Error, Result};

/// The `2n` half-space constraints `W x + v <= 0` bounding one cube.
///
/// Rows `0..n` are the upper faces (`x_j - upper_j`), rows `n..2n` the lower
/// faces (`lower_j - x_j`).
#[derive(Debug, Clone, PartialEq)]
pub struct CubeInequalities {
    pub n: usize,
    /// Row-major `2n x n`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl CubeInequalities {
    /// `W x + v`.
    pub fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..2 * n)
            .map(|r| {
                let row = &self.weights[r * n..(r + 1) * n];
                row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.biases[r]
            })
            .collect()
    }
}

pub fn cube_to_inequalities(cube: &Hypercube) -> CubeInequalities {
    let n = cube.dim();
    let mut weights = vec![0.0; 2 * n * n];
    let mut biases = vec![0.0; 2 * n];
    for j in 0..n {
        weights[j * n + j] = 1.0;
        biases[j] = -cube.upper[j];
        weights[(n + j) * n + j] = -1.0;
        biases[n + j] = cube.lower[j];
    }
    CubeInequalities { n, weights, biases }
}

/// Sum of rectified constraint residuals: zero inside the closed cube,
/// the L1 exterior distance outside.
pub fn theta_k(ineqs: &CubeInequalities, x: &[f64]) -> f64 {
    ineqs.residuals(x).into_iter().map(|r| r.max(0.0)).sum()
}

/// Feed-forward classifier compiled from a cover.
///
/// Layers, with `K` class-assigned cubes ordered by class block:
/// 1. relu, `2nK x n`: every cube's face residuals.
/// 2. relu, `K x 2nK`: per-cube residual sum `theta_k`.
/// 3. relu, `K x K`: membership `mu_k = relu(1 - theta_k / epsilon)`.
/// 4. softmax, `m x K`: per-class sum of memberships.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledNetwork {
    pub layers: Vec<AffineLayer>,
    pub n_inputs: usize,
    pub n_classes: usize,
    pub epsilon: f64,
    /// Cover leaf ids feeding each class output, in layer order.
    pub class_blocks: Vec<Vec<usize>>,
}

/// Compiles every class-assigned leaf of `cover` into a four-layer network.
pub fn compile(cover: &Cover, epsilon: f64) -> Result<CompiledNetwork> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if cover
        .leaves
        .iter()
        .any(|l| l.status == CubeStatus::Inhomogeneous)
    {
        return Err(Error::IncompleteCover);
    }
    let n = cover.n_dims;
    let m = cover.n_classes;
    let mut class_blocks = vec![Vec::new(); m];
    for (id, leaf) in cover.leaves.iter().enumerate() {
        if let Some(c) = leaf.status.class() {
            class_blocks[c].push(id);
        }
    }
    if let Some(c) = class_blocks.iter().position(Vec::is_empty) {
        return Err(Error::ClassWithoutSupport(c));
    }
    let order: Vec<usize> = class_blocks.iter().flatten().copied().collect();
    let k_total = order.len();

    let mut faces = Vec::with_capacity(2 * n * k_total);
    let mut face_bias = Vec::with_capacity(2 * n * k_total);
    for &id in &order {
        let cube = &cover.leaves[id];
        for j in 0..n {
            faces.push(vec![(j, 1.0)]);
            face_bias.push(-cube.upper[j]);
        }
        for j in 0..n {
            faces.push(vec![(j, -1.0)]);
            face_bias.push(cube.lower[j]);
        }
    }
    let layer1 = AffineLayer::new(
        Weights::Sparse(CsrMatrix::from_rows(n, faces)),
        face_bias,
        Activation::Relu,
    );

    let sums = (0..k_total)
        .map(|p| (2 * n * p..2 * n * (p + 1)).map(|c| (c, 1.0)).collect())
        .collect();
    let layer2 = AffineLayer::new(
        Weights::Sparse(CsrMatrix::from_rows(2 * n * k_total, sums)),
        vec![0.0; k_total],
        Activation::Relu,
    );

    let soften = (0..k_total).map(|p| vec![(p, -1.0 / epsilon)]).collect();
    let layer3 = AffineLayer::new(
        Weights::Sparse(CsrMatrix::from_rows(k_total, soften)),
        vec![1.0; k_total],
        Activation::Relu,
    );

    let mut start = 0;
    let mut votes = Vec::with_capacity(m);
    for block in &class_blocks {
        votes.push((start..start + block.len()).map(|p| (p, 1.0)).collect());
        start += block.len();
    }
    let layer4 = AffineLayer::new(
        Weights::Sparse(CsrMatrix::from_rows(k_total, votes)),
        vec![0.0; m],
        Activation::Softmax,
    );

    Ok(CompiledNetwork {
        layers: vec![layer1, layer2, layer3, layer4],
        n_inputs: n,
        n_classes: m,
        epsilon,
        class_blocks,
    })
}

impl CompiledNetwork {
    pub fn n_cubes(&self) -> usize {
        self.class_blocks.iter().map(Vec::len).sum()
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Activations after each hidden layer, ending with the final layer's
    /// affine output (before softmax).
    fn hidden(&self, x: &[f64]) -> Vec<f64> {
        let (last, hidden) = self.layers.split_last().expect("network has layers");
        let h = hidden.iter().fold(x.to_vec(), |h, layer| layer.apply(&h));
        last.affine(&h)
    }

    /// Class scores before the softmax.
    pub fn pre_softmax(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        Ok(self.hidden(x))
    }

    /// Softmax scores and the predicted class (ties to the lowest index).
    pub fn forward(&self, x: &[f64]) -> Result<(Vec<f64>, usize)> {
        let mut scores = self.pre_softmax(x)?;
        let predicted = argmax(&scores);
        self.layers
            .last()
            .expect("network has layers")
            .activation
            .apply(&mut scores);
        Ok((scores, predicted))
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(argmax(&self.pre_softmax(x)?))
    }

    /// Per-cube `theta_k` in layer order.
    pub fn cube_thetas(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        let h = self.layers[0].apply(x);
        Ok(self.layers[1].apply(&h))
    }

    /// Scores from the unclamped per-class sum `sum_k (1 - theta_k / epsilon)`,
    /// kept for comparison with the clamped network.
    pub fn forward_unclamped(&self, x: &[f64]) -> Result<(Vec<f64>, usize)> {
        let thetas = self.cube_thetas(x)?;
        let mut scores = Vec::with_capacity(self.n_classes);
        let mut start = 0;
        for block in &self.class_blocks {
            let s: f64 = thetas[start..start + block.len()]
                .iter()
                .map(|t| 1.0 - t / self.epsilon)
                .sum();
            scores.push(s);
            start += block.len();
        }
        let predicted = argmax(&scores);
        softmax_in_place(&mut scores);
        Ok((scores, predicted))
    }

    /// True when every layer but the last is affine followed by ReLU or
    /// identity and the last is a softmax.
    pub fn is_relu_realizable(&self) -> bool {
        let Some((last, hidden)) = self.layers.split_last() else {
            return false;
        };
        last.activation == Activation::Softmax
            && hidden
                .iter()
                .all(|l| matches!(l.activation, Activation::Relu | Activation::Identity))
    }

    /// Copy with every weight matrix stored densely.
    pub fn to_dense(&self) -> Self {
        let mut out = self.clone();
        for layer in &mut out.layers {
            layer.weights = layer.weights.clone().into_dense();
        }
        out
    }
}

/// Class of the leaf containing `x`, or `None` outside the cover or in an
/// unassigned leaf.
pub fn geometric_classify(cover: &Cover, x: &[f64]) -> Option<usize> {
    cover
        .leaf_containing(x)
        .and_then(|(_, leaf)| leaf.status.class())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverConfig;

    fn leaf(lo: &[f64], hi: &[f64], status: CubeStatus) -> Hypercube {
        let mut c = Hypercube::new(lo.to_vec(), hi.to_vec());
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
    fn inequalities_one_dimension() {
        let ineq = cube_to_inequalities(&Hypercube::new(vec![0.0], vec![1.0]));
        assert_eq!(ineq.weights, vec![1.0, -1.0]);
        assert_eq!(ineq.biases, vec![-1.0, 0.0]);
        assert_eq!(ineq.residuals(&[1.25]), vec![0.25, -1.25]);
        assert_eq!(theta_k(&ineq, &[0.5]), 0.0);
        assert_eq!(theta_k(&ineq, &[1.25]), 0.25);
    }

    #[test]
    fn inequalities_unit_square() {
        let ineq = cube_to_inequalities(&Hypercube::new(vec![0.0, 0.0], vec![1.0, 1.0]));
        assert_eq!(ineq.residuals(&[0.5, 0.5]), vec![-0.5; 4]);
        assert!((theta_k(&ineq, &[1.3, -0.2]) - 0.5).abs() < 1e-15);
        assert_eq!(ineq.weights, vec![1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn two_cube_forward_trace() {
        let cover = cover_of(
            vec![
                leaf(&[0.0], &[1.0], CubeStatus::Homogeneous(0)),
                leaf(&[2.0], &[3.0], CubeStatus::Homogeneous(1)),
            ],
            2,
        );
        let net = compile(&cover, 0.1).unwrap();
        // theta_B(0.5) = 1.5, mu_B = relu(1 - 15) = 0
        assert_eq!(net.cube_thetas(&[0.5]).unwrap(), vec![0.0, 1.5]);
        assert_eq!(net.pre_softmax(&[0.5]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(net.forward(&[0.5]).unwrap().1, 0);
        // exactly epsilon outside the class-1 cube
        assert_eq!(net.pre_softmax(&[3.1]).unwrap()[1], 0.0);
        // far from everything: uniform scores, class 0 by tie rule
        let (scores, pred) = net.forward(&[10.0]).unwrap();
        assert_eq!(scores, vec![0.5, 0.5]);
        assert_eq!(pred, 0);
        assert!(net.forward(&[0.5, 0.5]).is_err());
    }

    #[test]
    fn layer_shapes() {
        let cover = cover_of(
            vec![
                leaf(&[0.0, 0.0], &[0.5, 1.0], CubeStatus::Homogeneous(1)),
                leaf(&[0.5, 0.0], &[1.0, 0.5], CubeStatus::Filled(0)),
                leaf(
                    &[0.5, 0.5],
                    &[1.0, 1.0],
                    CubeStatus::Violating { majority: 1 },
                ),
            ],
            2,
        );
        let net = compile(&cover, 0.05).unwrap();
        let shapes: Vec<(usize, usize)> = net
            .layers
            .iter()
            .map(|l| (l.outputs(), l.inputs()))
            .collect();
        assert_eq!(shapes, vec![(12, 2), (3, 12), (3, 3), (2, 3)]);
        assert_eq!(net.class_blocks, vec![vec![1], vec![0, 2]]);
        assert!(net.is_relu_realizable());
    }

    #[test]
    fn unsupported_class_and_incomplete_cover_fail() {
        let cover = cover_of(
            vec![
                leaf(&[0.0], &[1.0], CubeStatus::Homogeneous(0)),
                leaf(&[1.0], &[2.0], CubeStatus::Empty),
            ],
            2,
        );
        assert!(matches!(
            compile(&cover, 0.1),
            Err(Error::ClassWithoutSupport(1))
        ));
        let cover = cover_of(
            vec![
                leaf(&[0.0], &[1.0], CubeStatus::Homogeneous(0)),
                leaf(&[1.0], &[2.0], CubeStatus::Inhomogeneous),
            ],
            2,
        );
        assert!(matches!(compile(&cover, 0.1), Err(Error::IncompleteCover)));
    }

    #[test]
    fn unclamped_mode_penalizes_distant_cubes() {
        let cover = cover_of(
            vec![
                leaf(&[0.0], &[1.0], CubeStatus::Homogeneous(0)),
                leaf(&[1.0], &[2.0], CubeStatus::Homogeneous(1)),
                leaf(&[2.0], &[3.0], CubeStatus::Homogeneous(1)),
            ],
            2,
        );
        let net = compile(&cover, 0.5).unwrap();
        // inside the first class-1 cube, but the second class-1 cube sits at
        // exterior distance 0.5 and contributes 1 - 0.5/0.5 = 0
        let (_, clamped) = net.forward(&[1.5]).unwrap();
        let (_, literal) = net.forward_unclamped(&[1.5]).unwrap();
        assert_eq!(clamped, 1);
        assert_eq!(literal, 1);
        // deep inside class 0, class 1's far cube drives its literal sum negative
        let (scores, _) = net.forward_unclamped(&[0.5]).unwrap();
        assert!(scores[0] > scores[1]);
    }

    #[test]
    fn geometric_classify_cases() {
        let cover = cover_of(
            vec![
                leaf(&[0.0], &[1.0], CubeStatus::Homogeneous(0)),
                leaf(&[1.0], &[2.0], CubeStatus::Homogeneous(1)),
            ],
            2,
        );
        assert_eq!(geometric_classify(&cover, &[1.5]), Some(1));
        assert_eq!(geometric_classify(&cover, &[1.0]), Some(1));
        assert_eq!(geometric_classify(&cover, &[2.5]), None);
    }
}
