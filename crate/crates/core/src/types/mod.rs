//! Exact value types shared by every other module.

mod dimension;
mod multisegment;
mod partition;
mod residue;
mod segment;
mod weight;

pub use dimension::DimensionVector;
pub use multisegment::Multisegment;
pub use partition::{node_content, ChargedMultiPartition, Multicharge, Node, Partition};
pub use residue::{Modulus, Residue};
pub use segment::Segment;
pub use weight::WeightExpr;
