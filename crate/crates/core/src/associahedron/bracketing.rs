use std::fmt;

use serde::{Deserialize, Serialize};

use super::AssocError;
use crate::trees::{ExtWeight, Label, PlanarMetricTree};

/// Inclusive interval of leaf positions `lo..=hi`, 1-based.
pub type Bracket = (u8, u8);

/// A laminar family of proper brackets on `n` letters: a face of `K_n`.
///
/// Each bracket is an internal edge of the corresponding planar tree, so a
/// face of dimension `n - 2 - k` carries `k` brackets. Brackets are kept
/// sorted, which makes the derived ordering the canonical face order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bracketing {
    n: u8,
    brackets: Vec<Bracket>,
}

pub(crate) fn nested_or_disjoint(a: Bracket, b: Bracket) -> bool {
    a.1 < b.0 || b.1 < a.0 || (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1)
}

impl Bracketing {
    pub fn new(n: usize, mut brackets: Vec<Bracket>) -> Result<Self, AssocError> {
        if !(2..=64).contains(&n) {
            return Err(AssocError::Range(format!("n = {n}")));
        }
        brackets.sort_unstable();
        brackets.dedup();
        for &(lo, hi) in &brackets {
            let size = (hi as usize + 1).saturating_sub(lo as usize);
            if lo < 1 || hi as usize > n || lo > hi || size < 2 || size > n - 1 {
                return Err(AssocError::InvalidBracket(lo, hi));
            }
        }
        for (i, &a) in brackets.iter().enumerate() {
            if let Some(&b) = brackets[i + 1..].iter().find(|&&b| !nested_or_disjoint(a, b)) {
                return Err(AssocError::Crossing(a, b));
            }
        }
        Ok(Bracketing { n: n as u8, brackets })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, brackets: Vec<Bracket>) -> Self {
        Bracketing { n: n as u8, brackets }
    }

    pub fn empty(n: usize) -> Self {
        Bracketing { n: n as u8, brackets: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn dimension(&self) -> usize {
        self.n() - 2 - self.brackets.len()
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == 0
    }

    pub fn contains(&self, b: Bracket) -> bool {
        self.brackets.binary_search(&b).is_ok()
    }

    /// Proper brackets that can be added without crossing.
    pub fn addable(&self) -> Vec<Bracket> {
        let n = self.n;
        let mut out = Vec::new();
        for lo in 1..=n {
            for hi in lo + 1..=n {
                let b = (lo, hi);
                if ((hi - lo + 1) as usize) < self.n()
                    && !self.contains(b)
                    && self.brackets.iter().all(|&c| nested_or_disjoint(b, c))
                {
                    out.push(b);
                }
            }
        }
        out
    }

    pub fn with(&self, b: Bracket) -> Self {
        let mut brackets = self.brackets.clone();
        let at = brackets.binary_search(&b).unwrap_or_else(|e| e);
        brackets.insert(at, b);
        Bracketing { n: self.n, brackets }
    }

    pub fn without(&self, b: Bracket) -> Self {
        Bracketing { n: self.n, brackets: self.brackets.iter().copied().filter(|&c| c != b).collect() }
    }

    /// `a <= b` in the face order: `a` refines `b` by adding brackets.
    pub fn is_face_of(&self, other: &Bracketing) -> bool {
        self.n == other.n && other.brackets.iter().all(|&b| self.contains(b))
    }

    fn map(&self, f: impl Fn(Bracket) -> Bracket) -> Self {
        let mut brackets: Vec<Bracket> = self.brackets.iter().map(|&b| f(b)).collect();
        brackets.sort_unstable();
        Bracketing { n: self.n, brackets }
    }

    /// Relabeling after one clockwise rotation of the marks (root = mark 0):
    /// position `p` moves to `p - 1`, and the first leaf becomes the root.
    pub fn rotated(&self) -> Self {
        let n = self.n;
        self.map(|(lo, hi)| if lo >= 2 { (lo - 1, hi - 1) } else { (hi, n) })
    }

    /// Reading the leaves in the opposite order.
    pub fn reflected(&self) -> Self {
        let n = self.n;
        self.map(|(lo, hi)| (n + 1 - hi, n + 1 - lo))
    }

    /// Mirrors every bracket inside `b`, which must be present.
    pub fn twisted(&self, b: Bracket) -> Self {
        debug_assert!(self.contains(b));
        let s = b.0 + b.1;
        self.map(|c| if b.0 <= c.0 && c.1 <= b.1 { (s - c.1, s - c.0) } else { c })
    }

    /// The planar tree of this face with leaves `1..=n`, root label 0, and the
    /// given weight on each bracket's edge (same order as [`brackets`](Self::brackets)).
    pub fn to_tree(&self, weights: &[ExtWeight]) -> PlanarMetricTree {
        let marks: Vec<Label> = (0..=self.n as Label).collect();
        self.to_labeled_tree(weights, &marks)
    }

    /// Like [`to_tree`](Self::to_tree) with `marks[0]` on the root and
    /// `marks[p]` on the leaf at position `p`.
    pub fn to_labeled_tree(&self, weights: &[ExtWeight], marks: &[Label]) -> PlanarMetricTree {
        assert_eq!(weights.len(), self.brackets.len());
        assert_eq!(marks.len(), self.n() + 1);
        let mut t = PlanarMetricTree::with_root(Some(marks[0]));
        // brackets sorted by (lo, hi) put enclosing intervals after the ones they
        // start with, so order by (lo, -hi) to visit parents first
        let mut order: Vec<usize> = (0..self.brackets.len()).collect();
        order.sort_by_key(|&i| (self.brackets[i].0, std::cmp::Reverse(self.brackets[i].1)));
        // stack of (bracket end, node)
        let mut open: Vec<(u8, usize)> = vec![(self.n, t.root())];
        let mut next = order.into_iter().peekable();
        for pos in 1..=self.n {
            while open.last().is_some_and(|&(end, _)| end < pos) {
                open.pop();
            }
            while let Some(&i) = next.peek() {
                if self.brackets[i].0 != pos {
                    break;
                }
                next.next();
                let parent = open.last().expect("root").1;
                let id = t.push_internal(parent, weights[i]);
                open.push((self.brackets[i].1, id));
            }
            let parent = open.last().expect("root").1;
            t.push_leaf(parent, marks[pos as usize]);
        }
        t
    }

    /// Face of a planar tree read by leaf positions, with the weights in bracket order.
    pub fn from_tree(tree: &PlanarMetricTree) -> Result<(Self, Vec<ExtWeight>), AssocError> {
        let n = tree.leaf_count();
        let mut pairs: Vec<(Bracket, ExtWeight)> = tree
            .edge_intervals()
            .into_iter()
            .map(|(e, lo, hi)| (((lo + 1) as u8, (hi + 1) as u8), tree.weight(e)))
            .collect();
        pairs.sort_by_key(|p| p.0);
        let b = Bracketing::new(n, pairs.iter().map(|p| p.0).collect())?;
        if b.brackets.len() != pairs.len() {
            return Err(AssocError::Domain("tree has repeated clades".into()));
        }
        Ok((b, pairs.into_iter().map(|p| p.1).collect()))
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // letters with brackets, e.g. ((12)3)4
        let mut s = String::new();
        for pos in 1..=self.n {
            for _ in self.brackets.iter().filter(|b| b.0 == pos) {
                s.push('(');
            }
            s.push_str(&pos.to_string());
            if self.n > 9 && pos < self.n {
                s.push(' ');
            }
            for _ in self.brackets.iter().filter(|b| b.1 == pos) {
                s.push(')');
            }
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{reflect, rotate_root, write_newick};

    #[test]
    fn rejects_crossing_and_improper() {
        assert!(matches!(Bracketing::new(4, vec![(1, 2), (2, 3)]), Err(AssocError::Crossing(..))));
        assert!(matches!(Bracketing::new(4, vec![(1, 4)]), Err(AssocError::InvalidBracket(1, 4))));
        assert!(matches!(Bracketing::new(4, vec![(2, 2)]), Err(AssocError::InvalidBracket(2, 2))));
        assert!(Bracketing::new(4, vec![(1, 2), (1, 3)]).is_ok());
    }

    #[test]
    fn tree_conversion() {
        let b = Bracketing::new(4, vec![(1, 2), (1, 3)]).unwrap();
        assert_eq!(b.to_string(), "((12)3)4");
        let t = b.to_tree(&[ExtWeight::new(0.5).unwrap(), ExtWeight::INFINITY]);
        assert_eq!(write_newick(&t), "(((1,2):0.5,3):inf,4)0;");
        let (back, w) = Bracketing::from_tree(&t).unwrap();
        assert_eq!(back, b);
        assert_eq!(w[0].value(), 0.5);
        assert!(w[1].is_infinite());
    }

    #[test]
    fn moves_agree_with_tree_moves() {
        // every face of K_5, via trees and via brackets
        let faces = crate::associahedron::faces(5).unwrap();
        for f in &faces {
            let zeros = vec![ExtWeight::ZERO; f.brackets().len()];
            let t = f.to_tree(&zeros);
            let (rot, _) = Bracketing::from_tree(&rotate_root(&t)).unwrap();
            assert_eq!(rot, f.rotated(), "{f}");
            let (refl, _) = Bracketing::from_tree(&reflect(&t)).unwrap();
            assert_eq!(refl, f.reflected(), "{f}");
            for &b in f.brackets() {
                let edge = t
                    .edge_intervals()
                    .into_iter()
                    .find(|&(_, lo, hi)| (lo as u8 + 1, hi as u8 + 1) == b)
                    .unwrap()
                    .0;
                // brackets are read by position, so the leaf labels do not matter
                let (tw, _) = crate::trees::reverse_at_edge(&t, edge).unwrap();
                let (tb, _) = Bracketing::from_tree(&tw).unwrap();
                assert_eq!(tb, f.twisted(b), "{f} at {b:?}");
                assert_eq!(f.twisted(b).twisted(b), *f);
            }
        }
    }
}
