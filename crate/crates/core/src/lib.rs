//! Classification on convex sets with and without missing covariates.
//!
//! When each class is uniformly distributed on a convex region, the Bayes rule
//! depends only on region membership, the class prior and the region volumes.
//! This crate provides
//!
//! * [`geometry`]: vertex-represented convex hulls with membership, distance,
//!   volume and hull-vs-body discrepancy estimators in any dimension;
//! * [`bodies`]: ground-truth convex bodies with samplers, volumes and projections;
//! * [`classify`]: the oracle Bayes rule and its convex-hull plug-in version;
//! * [`missing`]: MAR missingness mechanisms, kernel-regression estimates of the
//!   missingness probabilities, and the oracle and plug-in rules when a block of
//!   covariates may be unobserved;
//! * [`harness`]: Monte Carlo error estimation and consistency experiments;
//! * [`cli`]: dataset ingestion, model persistence, and the commands behind the
//!   `convexclass` binary.

pub mod bodies;
pub mod classify;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod cli;
pub mod missing;

pub use error::{Error, Result};
