//! Eigenvalue strata of real symmetric matrices resolved by trees: planar and
//! labeled metric trees, the space of fully grown trees, associahedra, the
//! real moduli spaces tiled by them and their double covers, spectra and gap
//! simplices, and the `zeta(2)` period.

pub mod associahedron;
pub mod moduli;
pub mod periods;
pub mod spectra;
pub mod trees;
pub mod treespace;

use thiserror::Error;

pub use associahedron::{catalan, AssocError, Bracketing};
pub use moduli::{CoverSpec, ModuliError};
pub use periods::{PeriodError, PeriodEstimate};
pub use spectra::{SpectraError, Spectrum, SymmetricMatrix};
pub use trees::{ExtWeight, Label, MetricTree, PlanarMetricTree, TreeError};
pub use treespace::{BinaryTopology, TreeSpaceError};

/// Any error of the library, sorted into the three kinds a caller acts on.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    TreeSpace(#[from] TreeSpaceError),
    #[error(transparent)]
    Assoc(#[from] AssocError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Period(#[from] PeriodError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input or a precondition that does not hold.
    Input,
    /// A numerical method failed or a computed invariant came out wrong.
    Numeric,
    /// The request is beyond the supported size.
    Resource,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Input => 1,
            ErrorKind::Numeric => 2,
            ErrorKind::Resource => 3,
        }
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Tree(_) | Error::TreeSpace(_) => ErrorKind::Input,
            Error::Assoc(e) => assoc_kind(e),
            Error::Moduli(e) => match e {
                ModuliError::Resource(_) | ModuliError::Unsupported(_) => ErrorKind::Resource,
                ModuliError::Inconsistent(_) => ErrorKind::Numeric,
                ModuliError::Assoc(a) => assoc_kind(a),
                ModuliError::Domain(_) | ModuliError::TreeSpace(_) => ErrorKind::Input,
            },
            Error::Spectra(e) => match e {
                SpectraError::Numeric(_) => ErrorKind::Numeric,
                _ => ErrorKind::Input,
            },
            Error::Period(e) => match e {
                PeriodError::Resource(_) => ErrorKind::Resource,
                PeriodError::Domain(_) => ErrorKind::Input,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}

fn assoc_kind(e: &AssocError) -> ErrorKind {
    match e {
        AssocError::Range(_) => ErrorKind::Resource,
        AssocError::Inconsistent(_) => ErrorKind::Numeric,
        _ => ErrorKind::Input,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::from(TreeError::DuplicateLabel(3)).exit_code(), 1);
        assert_eq!(Error::from(SpectraError::Numeric("x".into())).exit_code(), 2);
        assert_eq!(Error::from(catalan(99).unwrap_err()).exit_code(), 3);
        assert_eq!(Error::from(ModuliError::Resource("n = 6".into())).exit_code(), 3);
        assert_eq!(Error::from(SpectraError::Degenerate).exit_code(), 1);
    }
}
