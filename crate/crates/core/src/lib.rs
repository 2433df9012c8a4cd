//! Graded slices of directed, undirected and weighted graph complexes, their
//! differentials and chain maps, and exact cohomology dimensions.

pub mod complexes;
pub mod differentials;
pub mod error;
pub mod graphs;
pub mod homology;
pub mod linalg;

pub use error::{Error, Result};
