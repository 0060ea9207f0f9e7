use std::fmt;
use std::str::FromStr;

use super::AssocError;
use crate::trees::{reflect, rotate_root, PlanarMetricTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DihedralGen {
    /// Rotate the marks one step, the first leaf becoming the root.
    Rho,
    /// Reflect the planar order, fixing the root.
    Epsilon,
}

/// An element of `D_{n+1}` written as a word in `ρ` and `ε`; the rightmost
/// letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DihedralWord(pub Vec<DihedralGen>);

impl FromStr for DihedralWord {
    type Err = AssocError;

    /// Letters `r`/`ρ` and `e`/`ε`; `id`, `1` or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "1" {
            return Ok(DihedralWord::default());
        }
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '*' && *c != '.')
            .map(|c| match c {
                'r' | 'ρ' => Ok(DihedralGen::Rho),
                'e' | 'ε' => Ok(DihedralGen::Epsilon),
                other => Err(AssocError::Domain(format!("'{other}' is not a dihedral generator"))),
            })
            .collect::<Result<_, _>>()
            .map(DihedralWord)
    }
}

impl fmt::Display for DihedralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for g in &self.0 {
            f.write_str(match g {
                DihedralGen::Rho => "r",
                DihedralGen::Epsilon => "e",
            })?;
        }
        Ok(())
    }
}

pub fn dihedral_act(word: &DihedralWord, tree: &PlanarMetricTree) -> PlanarMetricTree {
    word.0.iter().rev().fold(tree.clone(), |t, g| match g {
        DihedralGen::Rho => rotate_root(&t),
        DihedralGen::Epsilon => reflect(&t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associahedron::{vertices, Bracketing};

    fn word(s: &str) -> DihedralWord {
        s.parse().unwrap()
    }

    fn same(a: &PlanarMetricTree, b: &PlanarMetricTree) -> bool {
        a.compacted() == b.compacted()
    }

    #[test]
    fn parse_words() {
        assert_eq!(word("").0.len(), 0);
        assert_eq!(word("id").to_string(), "id");
        assert_eq!(word("ρε").0, vec![DihedralGen::Rho, DihedralGen::Epsilon]);
        assert_eq!(word("r e r").to_string(), "rer");
        assert!("rx".parse::<DihedralWord>().is_err());
    }

    #[test]
    fn group_laws_on_vertices() {
        for n in 2..=6 {
            let id = DihedralWord::default();
            let rho_n1 = DihedralWord(vec![DihedralGen::Rho; n + 1]);
            for t in vertices(n).unwrap() {
                assert!(same(&dihedral_act(&id, &t), &t));
                assert!(same(&dihedral_act(&rho_n1, &t), &t), "n={n}");
                assert!(same(&dihedral_act(&word("ee"), &t), &t));
                // ε ρ ε = ρ^{-1}, so ε ρ ε ρ = id
                assert!(same(&dihedral_act(&word("erer"), &t), &t));
                if n >= 3 {
                    assert!(!same(&dihedral_act(&DihedralWord(vec![DihedralGen::Rho; n]), &t), &t)
                        || t.leaf_labels() != dihedral_act(&word("r"), &t).leaf_labels());
                }
            }
        }
    }

    #[test]
    fn reflection_of_the_pentagon() {
        // ε fixes one vertex of K_4 and swaps the other four in two pairs
        let v = vertices(4).unwrap();
        let faces: Vec<Bracketing> = v.iter().map(|t| Bracketing::from_tree(t).unwrap().0).collect();
        let image: Vec<usize> = faces
            .iter()
            .map(|f| faces.iter().position(|g| *g == f.reflected()).unwrap())
            .collect();
        let fixed = (0..5).filter(|&i| image[i] == i).count();
        assert_eq!(fixed, 1);
        assert!((0..5).all(|i| image[image[i]] == i));
        // the same permutation through the tree action
        for (i, t) in v.iter().enumerate() {
            let r = Bracketing::from_tree(&dihedral_act(&word("e"), t)).unwrap().0;
            assert_eq!(r, faces[image[i]]);
        }
    }
}
