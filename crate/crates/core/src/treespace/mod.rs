//! Rooted phylogenetic tree space `BHV_n`, the subspace `T_n` of fully-grown
//! trees, and the suspension structure on the one-point compactification.

mod complex;
mod dh;
mod graph;
mod point;
mod topology;

use thiserror::Error;

pub use complex::{suspension, suspension_cells, tn_skeleton, Cone, SuspensionCell, SuspensionComplex, TnComplex};
pub use dh::{dh_matching, dh_matching_of, dh_topology, dh_tree, perfect_matchings, Matching};
pub use graph::Graph;
pub use point::{smash_join, smash_split, BhvPoint, Grown};
pub(crate) use topology::full_clade;
pub use topology::{
    clade_labels, clade_of, compatible, count_binary_topologies, double_factorial, enumerate_binary_topologies,
    BinaryTopology, Clade,
};

use crate::trees::{Label, TreeError};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum TreeSpaceError {
    #[error("{0}")]
    Domain(String),
    #[error("tree is not binary on leaves 1..n")]
    NotBinary,
    #[error("cannot decode pair {{{},{}}}: {reason}", pair.0, pair.1)]
    Decode { pair: (Label, Label), reason: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}
