//! Cohomology of homogeneous bundles on two-step flag varieties, Schur
//! complexes, and minimal free resolutions of orbit closures of `A₃` quiver
//! representations.

pub mod bott;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod lr;
pub mod partitions;
pub mod quiver;
pub mod schurcx;
pub mod split;

pub use error::{Error, Result};
pub use partitions::{Partition, Weight};
