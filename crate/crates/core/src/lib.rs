//! Positroid and Lagrangian positroid cells: Weyl group intervals, bounded
//! affine permutations, plabic graphs (plain and symmetric), exact boundary
//! measurement, and the linear-algebra checks that tie them together.

pub mod affine;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod plabic;
pub mod poly;
pub mod positroid;
pub mod symmetric;

pub use error::{Error, Result};
