//! Combinatorics of the modular branching rule for affine Hecke algebras of
//! type A at a root of unity.
//!
//! The crate provides Kashiwara crystals on aperiodic multisegments and on
//! charged multipartitions, the maps relating them, a small Hall algebra of
//! the cyclic quiver with PBW and canonical bases, and exact checks of the
//! affine Hecke algebra presentation through its polynomial representation.

pub mod branching;
pub mod crystal;
pub mod embeddings;
pub mod error;
pub mod fock;
pub mod graph;
pub mod hall;
pub mod hecke;
pub mod laurent;
pub mod multiseg_crystal;
pub mod types;

pub use error::{Error, ErrorClass, Result};
pub use graph::CrystalGraph;
pub use laurent::LaurentPoly;
pub use types::*;
