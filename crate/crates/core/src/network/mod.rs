//! Compiling covers into ReLU networks, and the dense/sparse layer types they
//! share with the baseline MLP.

mod compile;
pub(crate) mod io;
mod layer;

pub use compile::{
    compile, cube_to_inequalities, geometric_classify, theta_k, CompiledNetwork, CubeInequalities,
};
pub use layer::{argmax, softmax_in_place, Activation, AffineLayer, CsrMatrix, Weights};
