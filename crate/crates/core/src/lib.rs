//! One-shot ReLU classifiers built from adaptive hypercube covers.
//!
//! The pipeline has three stages:
//!
//! 1. [`cover::build_cover`] recursively bisects the bounding box of the
//!    training data until every leaf is homogeneous, empty, or too small to
//!    split under the minimum-length and aspect-ratio limits.
//! 2. [`porosity::fill`] assigns classes to empty leaves by area-weighted
//!    voting across shared facets.
//! 3. [`network::compile`] turns each class-assigned leaf into `2n` ReLU
//!    half-space units and wires them into a four-layer softmax classifier.
//!
//! No weights are trained. [`mlp`] provides a conventionally trained
//! baseline and [`bench`] the replicated 70/30 evaluation protocol used to
//! compare the two.
//!
//! ```
//! use hypercover::cover::{build_cover, CoverConfig};
//! use hypercover::network::compile;
//! use hypercover::LabeledPoint;
//!
//! let points = vec![
//!     LabeledPoint::new(vec![0.1, 0.2], 0),
//!     LabeledPoint::new(vec![0.9, 0.8], 1),
//!     LabeledPoint::new(vec![0.2, 0.9], 1),
//! ];
//! let config = CoverConfig::for_points(&points).unwrap();
//! let cover = build_cover(&points, &config).unwrap();
//! let net = compile(&cover, config.epsilon).unwrap();
//! for p in &points {
//!     assert_eq!(net.predict(&p.coords).unwrap(), p.label);
//! }
//! ```

pub mod bench;
pub mod cli;
pub mod cover;
pub mod data;
pub mod error;
mod json;
pub mod mlp;
pub mod network;
pub mod point;
pub mod porosity;

pub use error::{Error, Result};
pub use point::LabeledPoint;
