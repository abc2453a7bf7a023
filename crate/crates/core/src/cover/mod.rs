//! Adaptive hypercube covers of labeled point clouds.

mod builder;
mod export;
mod homogeneity;
mod hypercube;
pub mod oracle;

pub use builder::{
    build_cover, feasible_axes, min_interclass_distance, score_axes, select_bisection_axis, Cover,
    CoverConfig, StatusCounts,
};
pub use homogeneity::{
    daughter_min_homogeneity, min_homogeneity, pair_homogeneity, HomogeneityRule,
};
pub use hypercube::{bisect, bounding_box, classify_cube, classify_labels, CubeStatus, Hypercube};
pub use oracle::{uniform_cover_oracle, uniform_cover_oracle_in, CellClass, UniformGrid};
