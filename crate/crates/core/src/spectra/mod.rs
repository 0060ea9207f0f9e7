//! Spectra of real symmetric matrices and what can be read off them: the gap
//! simplex, eigenvalue strata and their tree resolution, symmetric-function
//! coordinates, and lifts to the cover of configurations.

mod jacobi;
mod matrix;
mod resolve;
mod spectrum;
mod symmetric;

use thiserror::Error;

pub use jacobi::{eigen, eigenvalues, Eigen};
pub use matrix::SymmetricMatrix;
pub use resolve::{lift_config, resolve_tree, Dendrogram};
pub use spectrum::{
    config_join, config_split, gap_vector, normal_form, stratum, ConfigSplit, GapVector, NormalForm, Spectrum,
    StratumPartition,
};
pub use symmetric::{affine_on_e, discriminant, elem_symmetric, SymCoeffs};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpectraError {
    #[error("invalid matrix: {0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Numeric(String),
    #[error("degenerate spectrum: all eigenvalues equal")]
    Degenerate,
    #[error("not a configuration: {0}")]
    NotConfiguration(String),
    #[error("on the discriminant: {0}")]
    OnDiscriminant(String),
}
