//! Adaptive heavy ball (AHB) iterative regularization for linear and
//! nonlinear ill-posed problems `F(x) = y`, with Landweber-type, ν-method and
//! Nesterov baselines, strongly convex regularizers and built-in test
//! problems.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bregman;
pub mod error;
pub mod noise;
pub mod norm_estimate;
pub mod problem;
pub mod problems;
pub mod regularizers;
pub mod solvers;
pub mod space;
pub mod stopping;

pub use bregman::bregman_distance;
pub use error::{Error, Result};
pub use noise::{add_noise_exact, add_noise_relative};
pub use norm_estimate::estimate_operator_norm;
pub use problem::ForwardProblem;
pub use regularizers::{QuadraticReg, Regularizer, TVQuadraticReg};
pub use space::GridVector;
pub use stopping::StoppingRule;
