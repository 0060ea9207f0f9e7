//! The associahedron `K_n`: bracketings and the face poset, the cube charts of
//! planar metric trees, the embedding into configurations of points on a
//! line, the dihedral action, and the fold that collapses the boundary.

mod bracketing;
mod dihedral;
mod embed;
mod fold;
mod poset;

use thiserror::Error;

pub use bracketing::{Bracket, Bracketing};
pub use dihedral::{dihedral_act, DihedralGen, DihedralWord};
pub use embed::{embed_config, Configuration};
pub use fold::{collapse_fold, fold_preimages, folding_degree};
pub use poset::{cube_decomposition, face_poset, faces, vertices, CubeChart, CubeDecomposition, FacePoset, Gluing};

use crate::trees::TreeError;
use crate::treespace::double_factorial;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum AssocError {
    #[error("out of range: {0}")]
    Range(String),
    #[error("{0}")]
    Domain(String),
    #[error("[{0}..{1}] is not a proper bracket")]
    InvalidBracket(u8, u8),
    #[error("brackets {0:?} and {1:?} cross")]
    Crossing(Bracket, Bracket),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of vertices of `K_n`, the Catalan number `C_{n-1}`.
pub fn catalan(n: usize) -> Result<u128, AssocError> {
    if !(2..=60).contains(&n) {
        return Err(AssocError::Range(format!("catalan needs 2 <= n <= 60, got {n}")));
    }
    let m = n as u128;
    let c = binomial(2 * m - 2, m - 1) / m;
    if n <= 25 {
        let fact: u128 = (1..=m).product();
        let lhs = (1u128 << (n - 1)) * double_factorial(2 * n as u128 - 3);
        if c * fact != lhs {
            return Err(AssocError::Inconsistent(format!("C_(n-1) n! != 2^(n-1) (2n-3)!! at n = {n}")));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(2).unwrap(), 1);
        assert_eq!(catalan(3).unwrap(), 2);
        assert_eq!(catalan(4).unwrap(), 5);
        assert_eq!(catalan(5).unwrap(), 14);
        assert_eq!(catalan(11).unwrap(), 16796);
        assert!(catalan(1).is_err());
    }

    #[test]
    fn catalan_counts_orthants() {
        for n in 2..=10 {
            let fact: u128 = (1..=n as u128).product();
            let orthants = (1u128 << (n - 1)) * double_factorial(2 * n as u128 - 3);
            assert_eq!(catalan(n).unwrap() * fact, orthants);
        }
    }
}
