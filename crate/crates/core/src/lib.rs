//! Matching fields for Gr(3,n), their tropical line arrangements, and exact
//! verification of the combinatorial mutation induced by swapping two
//! adjacent lines.

pub mod arrange;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod lp;
pub mod mutate;
pub mod planner;
pub mod polytope;
pub mod rational;
pub mod regions;
pub mod render;

pub use error::{Error, Result};
