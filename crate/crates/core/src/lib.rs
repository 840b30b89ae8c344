//! Chebyshev centers of finite point nets in Euclidean space and in the
//! hyperbolic plane, the Hausdorff metric between nets, and a lab of
//! randomized verifiers and counterexample generators for Lipschitz bounds
//! on the center map.

// Negated float comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod hausdorff;
pub mod hyperbolic;
pub mod lab;
mod linalg;
pub mod tolerance;

pub use chebyshev::{cheb, cheb_1d, cheb_oracle, cheb_with_seed, circumball_of_support, ChebResult};
pub use error::{Error, Result};
pub use geometry::{
    diameter, distance, midpoint, point_to_net_distance, project_to_hyperplane, ray_point,
    Hyperplane, Net, Point, Ray,
};
pub use hausdorff::{alpha, alpha_ball_contains};
