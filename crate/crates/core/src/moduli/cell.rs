use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::associahedron::{Bracket, Bracketing};
use crate::trees::{ExtWeight, Label, PlanarMetricTree};

/// Which morphisms generate the equivalence on `K_n x S_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverSpec {
    /// Twists only, on labelings that keep mark 0 at the root.
    Kapranov,
    /// Twists and rotations of the root.
    Orientation,
    /// Twists, rotations and the reflection fixing the root.
    Full,
}

impl CoverSpec {
    pub fn name(self) -> &'static str {
        match self {
            CoverSpec::Kapranov => "kapranov",
            CoverSpec::Orientation => "orientation",
            CoverSpec::Full => "full",
        }
    }

    pub(crate) fn admits(self, sigma: &[u8]) -> bool {
        self != CoverSpec::Kapranov || sigma[0] == 0
    }
}

impl std::str::FromStr for CoverSpec {
    type Err = ModuliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kapranov" => Ok(CoverSpec::Kapranov),
            "orientation" | "or" => Ok(CoverSpec::Orientation),
            "full" => Ok(CoverSpec::Full),
            other => Err(ModuliError::Domain(format!("unknown cover '{other}'"))),
        }
    }
}

/// A face of `K_n` (its broken edges) with a labeling of the marks:
/// `sigma[0]` sits on the root and `sigma[p]` on the leaf at position `p`.
///
/// The derived order compares faces first, then labelings lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellLabel {
    pub face: Bracketing,
    pub sigma: Vec<u8>,
}

impl CellLabel {
    pub fn new(face: Bracketing, sigma: Vec<u8>) -> Result<Self, ModuliError> {
        let mut seen = vec![false; face.n() + 1];
        if sigma.len() != seen.len() || sigma.iter().any(|&s| s as usize >= seen.len() || std::mem::replace(&mut seen[s as usize], true)) {
            return Err(ModuliError::Domain(format!("{sigma:?} is not a permutation of 0..={}", face.n())));
        }
        Ok(CellLabel { face, sigma })
    }

    pub fn n(&self) -> usize {
        self.face.n()
    }

    pub fn dimension(&self) -> usize {
        self.face.dimension()
    }

    /// The degenerate labeled tree of the cell, broken edges at infinity.
    pub fn tree(&self) -> PlanarMetricTree {
        let marks: Vec<Label> = self.sigma.iter().map(|&s| s as Label).collect();
        self.face.to_labeled_tree(&vec![ExtWeight::INFINITY; self.face.brackets().len()], &marks)
    }

    /// Reverses the planar order below a broken edge.
    pub fn twist(&self, b: Bracket) -> Result<CellLabel, ModuliError> {
        if !self.face.contains(b) {
            return Err(ModuliError::Domain(format!("edge {b:?} of {} has finite weight", self.face)));
        }
        let mut sigma = self.sigma.clone();
        sigma[b.0 as usize..=b.1 as usize].reverse();
        Ok(CellLabel { face: self.face.twisted(b), sigma })
    }

    /// Reverses the side of a broken edge that does not carry mark 0: below
    /// the edge as in [`twist`](Self::twist), or else the rest of the tree,
    /// which reads as a twist followed by a reflection.
    pub fn anchored_twist(&self, b: Bracket) -> Result<CellLabel, ModuliError> {
        let t = self.twist(b)?;
        if self.sigma[b.0 as usize..=b.1 as usize].contains(&0) {
            Ok(t.reflect())
        } else {
            Ok(t)
        }
    }

    /// The twist that glues cells of `cover` along the broken edge `b`.
    ///
    /// The Kapranov and full quotients reverse the part below the edge. The
    /// orientation cover needs a rule that commutes with moving the root: for
    /// even `n` it reverses the side carrying an even number of marks, which
    /// keeps the tiles coherently oriented; for odd `n` both sides have the
    /// same parity and it reverses the side away from mark 0.
    pub fn cover_twist(&self, b: Bracket, cover: CoverSpec) -> Result<CellLabel, ModuliError> {
        match cover {
            CoverSpec::Kapranov | CoverSpec::Full => self.twist(b),
            CoverSpec::Orientation if self.n() % 2 == 1 => self.anchored_twist(b),
            CoverSpec::Orientation => {
                let t = self.twist(b)?;
                Ok(if (b.1 - b.0 + 1).is_multiple_of(2) { t } else { t.reflect() })
            }
        }
    }

    /// Moves the root one step clockwise.
    pub fn rotate(&self) -> CellLabel {
        let m = self.sigma.len();
        CellLabel { face: self.face.rotated(), sigma: (0..m).map(|q| self.sigma[(q + 1) % m]).collect() }
    }

    /// Reverses the planar order, keeping the root.
    pub fn reflect(&self) -> CellLabel {
        let mut sigma = self.sigma.clone();
        sigma[1..].reverse();
        CellLabel { face: self.face.reflected(), sigma }
    }

    /// Images under the generating morphisms of `cover`.
    pub(crate) fn neighbours(&self, cover: CoverSpec) -> Vec<CellLabel> {
        let mut out: Vec<CellLabel> = self
            .face
            .brackets()
            .iter()
            .map(|&b| self.cover_twist(b, cover).expect("bracket of the face"))
            .collect();
        if cover != CoverSpec::Kapranov {
            out.push(self.rotate());
        }
        if cover == CoverSpec::Full {
            out.push(self.reflect());
        }
        out
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sigma.iter().map(|x| x.to_string()).collect();
        write!(f, "{} [{}]", self.face, s.join(" "))
    }
}

/// Lexicographic rank of a permutation of `0..m`.
pub(crate) fn perm_rank(sigma: &[u8]) -> usize {
    let m = sigma.len();
    let mut rank = 0;
    for i in 0..m {
        let smaller = sigma[i + 1..].iter().filter(|&&x| x < sigma[i]).count();
        rank = rank * (m - i) + smaller;
    }
    rank
}

/// All permutations of `0..m` in lexicographic order.
pub(crate) fn permutations(m: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..m as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associahedron::faces;
    use crate::trees::{reflect, reverse_at_edge, rotate_root};

    fn read(t: &PlanarMetricTree) -> CellLabel {
        let (face, _) = Bracketing::from_tree(t).unwrap();
        let mut sigma = vec![t.root_label().unwrap() as u8];
        sigma.extend(t.leaf_labels().iter().map(|&l| l as u8));
        CellLabel::new(face, sigma).unwrap()
    }

    #[test]
    fn permutation_ranks() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(perm_rank(p), i);
        }
    }

    #[test]
    fn morphisms_match_tree_moves() {
        let sigmas = [vec![0, 1, 2, 3, 4, 5], vec![3, 5, 0, 2, 1, 4], vec![5, 4, 3, 2, 1, 0]];
        for face in faces(5).unwrap() {
            for sigma in &sigmas {
                let c = CellLabel::new(face.clone(), sigma.clone()).unwrap();
                let t = c.tree();
                assert_eq!(read(&rotate_root(&t)), c.rotate(), "{c}");
                assert_eq!(read(&reflect(&t)), c.reflect(), "{c}");
                for (e, lo, hi) in t.edge_intervals() {
                    let b = (lo as u8 + 1, hi as u8 + 1);
                    let (tw, _) = reverse_at_edge(&t, e).unwrap();
                    assert_eq!(read(&tw), c.twist(b).unwrap(), "{c} at {b:?}");
                }
            }
        }
    }

    #[test]
    fn twists_are_involutions_and_need_broken_edges() {
        for face in faces(5).unwrap() {
            let c = CellLabel::new(face.clone(), vec![2, 0, 4, 1, 5, 3]).unwrap();
            for &b in face.brackets() {
                let t = c.twist(b).unwrap();
                assert_eq!(t.twist(b).unwrap(), c);
            }
            for &b in face.brackets() {
                // after a reflection the same edge reads as the mirrored bracket
                let t = c.anchored_twist(b).unwrap();
                let flipped = c.sigma[b.0 as usize..=b.1 as usize].contains(&0);
                let same = if flipped { (6 - b.1, 6 - b.0) } else { b };
                assert_eq!(t.anchored_twist(same).unwrap(), c);
            }
            for b in face.addable() {
                assert!(c.twist(b).is_err());
            }
        }
    }

    #[test]
    fn rotation_order_and_dihedral_relation() {
        for face in faces(4).unwrap() {
            let c = CellLabel::new(face, vec![4, 2, 0, 3, 1]).unwrap();
            let mut r = c.clone();
            for _ in 0..5 {
                r = r.rotate();
            }
            assert_eq!(r, c);
            assert_eq!(c.reflect().reflect(), c);
            assert_eq!(c.rotate().reflect().rotate().reflect(), c);
        }
    }

    #[test]
    fn rejects_bad_labelings() {
        let f = Bracketing::empty(3);
        assert!(CellLabel::new(f.clone(), vec![0, 1, 1, 2]).is_err());
        assert!(CellLabel::new(f.clone(), vec![0, 1, 2]).is_err());
        assert!(CellLabel::new(f, vec![0, 1, 2, 4]).is_err());
    }
}
