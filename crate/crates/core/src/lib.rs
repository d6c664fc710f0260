//! Exact combinatorics of cosilting pairs and maximal rigid sets over the
//! cluster-tilted algebras of type A-tilde attached to triangulations of a
//! marked annulus, with Hom/Ext computations as an independent check.

pub mod algebra;
pub mod annulus;
pub mod cosilting;
pub mod error;
pub mod fixtures;
pub mod homext;
pub mod linalg;
pub mod oracle;
pub mod triangulation;

pub use error::{Error, Result};
