//! Coarse graph theory toolkit: exact metrics, planarity certificates, tree
//! decompositions, quasi-isometry measurement, fat minors, asymptotic
//! dimension covers and crossing bounds for powers of planar graphs.

pub mod cli;
pub mod dimension;
pub mod error;
pub mod fatminor;
pub mod graph;
pub mod lcr;
pub mod planarize;
pub mod qi;
pub mod sources;
pub mod treedec;

pub use error::{Error, Result};
pub use graph::Graph;
