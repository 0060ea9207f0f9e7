//! Real points of the moduli spaces of stable genus-zero curves, their
//! Kapranov and orientation double covers, built as quotients of
//! `K_n x S_{n+1}`; and the fold of the orientation cover onto compactified
//! tree space.

mod cell;
mod complex;
mod fold;

use thiserror::Error;

pub use cell::{CellLabel, CoverSpec};
pub use complex::{
    cube_count, cubes, enumerate_complex, euler_characteristic, orientability, tile_count, vertex_figure, CubeLabel,
    QuotientComplex,
};
pub use fold::{
    cube_clades, cube_topology, fiber_count, fiber_counts, fold_cell, CubeCell, EdgeState, FoldMap, FoldedPoint,
};

use crate::associahedron::AssocError;
use crate::treespace::TreeSpaceError;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ModuliError {
    #[error("{0}")]
    Domain(String),
    #[error("too large: {0}")]
    Resource(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Assoc(#[from] AssocError),
    #[error(transparent)]
    TreeSpace(#[from] TreeSpaceError),
}
