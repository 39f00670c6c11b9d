//! The ultrapower of a graph: hypernodes as sequences of nodes modulo a free
//! ultrafilter, decided through eventual forms on residue classes.

pub mod form;
pub mod hypernode;
pub mod hyperordinal;
pub mod kernel;
pub mod sequence;

use thiserror::Error;

use crate::graph::GraphError;
use crate::transfinite::TransfiniteError;

pub use form::{Ev, Form, Periodic};
pub use hypernode::{
    hyperdistance, hypernode_eq, is_standard, make_hyperbranch, random_hypernode, standard_node, standard_value,
    ChainTag, Hyperbranch, Hypernode, IndexMap, Repr, Space, DEFAULT_HORIZON,
};
pub use hyperordinal::{compare_hyperordinals, HyperClass, Hyperordinal, Trichotomy};
pub use kernel::{classify, in_filter, KernelError, Trivalent};
pub use sequence::{CmpOp, ExplicitSeq, IndexSequence, Predicate, SeqClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UltraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("sequence class violated: {0}")]
    ClassViolation(String),
    #[error("a_{n} = {node} is not a node of the graph")]
    NotMember { n: u64, node: String },
    #[error("hypernodes live in different graphs")]
    SpaceMismatch,
    #[error("not a hyperbranch: endpoints are not adjacent for almost all n")]
    NotAHyperbranch,
    #[error("hyperbranch membership depends on the choice of ultrafilter")]
    HyperbranchFilterDependent,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transfinite(#[from] TransfiniteError),
}
