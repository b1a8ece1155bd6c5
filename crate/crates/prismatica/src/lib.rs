//! Finite simplicial sets, their prismatic subdivisions and star prismatic
//! sets, integer homology of the associated total complexes, and lattice
//! gauge fields with pointwise evaluation of a prismatic classifying map.

#![allow(clippy::needless_range_loop)]

pub mod classifying;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod homology;
pub mod prismatic;
pub mod simplicial_core;
pub mod star;

pub use error::{Error, Result};
