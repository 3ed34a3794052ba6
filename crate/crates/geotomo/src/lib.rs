//! Numerical geometric tomography at desk scale.
//!
//! The crate models star and convex bodies in R^n through their radial and
//! support oracles, estimates section and projection functionals by seeded
//! Monte Carlo, and checks a family of slicing and projection inequalities
//! on a catalog of concrete bodies. Everything downstream of a fixed seed is
//! deterministic, including the parallel execution path.

pub mod bodies;
pub mod brunn;
pub mod ellipsoid;
pub mod error;
pub mod harness;
pub mod hull;
pub(crate) mod linalg;
pub mod quad;
pub mod radon;
pub mod report;

pub use error::{Error, Result};
