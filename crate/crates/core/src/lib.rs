//! Nonstandard enlargements of infinite graphs, made executable.
//!
//! Infinite 0-graphs and transfinite 1-graphs are presented lazily, walk
//! distances are ordinals below ω², hypernodes are computable index sequences
//! decided by a three-valued cofinite kernel, and galaxies are handled
//! through verdict predicates and constructive witnesses.

pub mod arith;
pub mod cli;
pub mod galaxy;
pub mod graph;
pub mod node;
pub mod ordinal;
pub mod transfinite;
pub mod ultrapower;

pub use galaxy::{
    build_galaxy_chain, closer_than, in_principal_galaxy, limitedly_distant, verify_partial_order, GalaxyChain,
    GalaxyError, GalaxyVerdict, Relation,
};
pub use graph::{Distance, Edit, EditOp, FamilyKind, GraphError, GraphInstance};
pub use node::{Ctor, NodeId, NodeRef, OneNodeId};
pub use ordinal::{Ordinal, OrdinalError};
pub use transfinite::{OneFamily, OneGraph};
pub use ultrapower::{hyperdistance, HyperClass, Hypernode, IndexSequence, Space, Trivalent, UltraError};
