use serde::{Deserialize, Serialize};

use super::TreeSpaceError;
use crate::trees::{ExtWeight, Label, MetricTree, PlanarMetricTree};

/// A set of leaf labels from `1..=n` (bit `l - 1` for label `l`).
pub type Clade = u64;

pub fn clade_of(labels: impl IntoIterator<Item = Label>) -> Clade {
    labels.into_iter().fold(0, |acc, l| acc | (1 << (l - 1)))
}

pub fn clade_labels(c: Clade) -> Vec<Label> {
    (0..64).filter(|b| c & (1 << b) != 0).map(|b| b as Label + 1).collect()
}

/// Nested or disjoint.
pub fn compatible(a: Clade, b: Clade) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

pub(crate) fn full_clade(n: usize) -> Clade {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// `(2n - 3)!!`, the number of rooted binary trees on `n` labeled leaves.
pub fn count_binary_topologies(n: usize) -> Result<u128, TreeSpaceError> {
    if n < 2 {
        return Err(TreeSpaceError::Domain(format!("need n >= 2, got {n}")));
    }
    Ok(double_factorial(2 * n as u128 - 3))
}

pub fn double_factorial(m: u128) -> u128 {
    (1..=m).rev().step_by(2).product()
}

/// The shape of a rooted binary tree on leaves `1..=n`: its `n - 2` clades
/// below internal non-root edges, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryTopology {
    n: usize,
    clades: Vec<Clade>,
}

impl BinaryTopology {
    /// Checks that `clades` are the internal clades of a binary tree on `1..=n`.
    pub fn new(n: usize, mut clades: Vec<Clade>) -> Result<Self, TreeSpaceError> {
        clades.sort_unstable();
        clades.dedup();
        let full = full_clade(n);
        let ok = n >= 2
            && clades.len() == n - 2
            && clades.iter().all(|&c| c & !full == 0 && (2..n as u32).contains(&c.count_ones()))
            && clades.iter().enumerate().all(|(i, &a)| clades[i + 1..].iter().all(|&b| compatible(a, b)));
        if !ok {
            return Err(TreeSpaceError::NotBinary);
        }
        Ok(BinaryTopology { n, clades })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clades(&self) -> &[Clade] {
        &self.clades
    }

    /// The two children of every internal vertex (root included), as clades.
    pub fn sibling_pairs(&self) -> Vec<(Clade, Clade, Clade)> {
        let full = full_clade(self.n);
        let nodes: Vec<Clade> = self
            .clades
            .iter()
            .copied()
            .chain((0..self.n).map(|i| 1 << i))
            .collect();
        let parent_of = |c: Clade| -> Clade {
            self.clades
                .iter()
                .copied()
                .filter(|&p| p != c && p & c == c)
                .min_by_key(|p| p.count_ones())
                .unwrap_or(full)
        };
        let mut out = Vec::new();
        for p in self.clades.iter().copied().chain(std::iter::once(full)) {
            let mut kids: Vec<Clade> = nodes.iter().copied().filter(|&c| parent_of(c) == p && c != p).collect();
            kids.sort_unstable();
            debug_assert_eq!(kids.len(), 2);
            out.push((p, kids[0], kids[1]));
        }
        out
    }

    pub fn from_tree(tree: &MetricTree) -> Result<Self, TreeSpaceError> {
        let t = tree.representative();
        if !t.is_binary() {
            return Err(TreeSpaceError::NotBinary);
        }
        let n = t.leaf_count();
        let mut labels = t.leaf_labels();
        labels.sort_unstable();
        if labels != (1..=n as Label).collect::<Vec<_>>() {
            return Err(TreeSpaceError::Domain("leaves must be labeled 1..n".into()));
        }
        Self::new(n, tree.clades().into_iter().map(|(ls, _)| clade_of(ls)).collect())
    }

    /// Binary planar representative with the smaller clade first at every vertex
    /// and the given weights on the clades (all zero when `weights` is `None`).
    pub fn to_planar(&self, weights: Option<&[f64]>) -> PlanarMetricTree {
        let mut t = PlanarMetricTree::with_root(None);
        let pairs = self.sibling_pairs();
        let mut stack = vec![(full_clade(self.n), t.root())];
        while let Some((c, at)) = stack.pop() {
            let &(_, a, b) = pairs.iter().find(|(p, _, _)| *p == c).expect("internal clade");
            let (first, second) = if a.trailing_zeros() < b.trailing_zeros() { (a, b) } else { (b, a) };
            for kid in [first, second] {
                if kid.count_ones() == 1 {
                    t.push_leaf(at, kid.trailing_zeros() + 1);
                } else {
                    let w = match weights {
                        Some(ws) => ws[self.clades.binary_search(&kid).expect("clade")],
                        None => 0.0,
                    };
                    let id = t.push_internal(at, ExtWeight::new(w).expect("nonnegative weight"));
                    stack.push((kid, id));
                }
            }
        }
        t
    }

    pub fn to_tree(&self) -> MetricTree {
        crate::trees::forget_planarity(&self.to_planar(None))
    }
}

/// Every rooted binary topology on `1..=n`, sorted.
pub fn enumerate_binary_topologies(n: usize) -> Result<Vec<BinaryTopology>, TreeSpaceError> {
    if !(2..=12).contains(&n) {
        return Err(TreeSpaceError::Domain(format!("enumeration supports 2 <= n <= 12, got {n}")));
    }
    // Each tree as its full node-clade set (leaves and root included); add
    // leaf k above every node of every tree on 1..k-1.
    let mut trees: Vec<Vec<Clade>> = vec![vec![0b01, 0b10, 0b11]];
    for k in 3..=n {
        let new = 1u64 << (k - 1);
        let mut next = Vec::with_capacity(trees.len() * (2 * k - 3));
        for nodes in &trees {
            for &c in nodes {
                let mut grown: Vec<Clade> = nodes.iter().map(|&d| if d & c == c { d | new } else { d }).collect();
                grown.push(c);
                grown.push(new);
                next.push(grown);
            }
        }
        trees = next;
    }
    let full = full_clade(n);
    let mut out: Vec<BinaryTopology> = trees
        .into_iter()
        .map(|nodes| {
            let internal = nodes.into_iter().filter(|&c| c != full && c.count_ones() > 1).collect();
            BinaryTopology::new(n, internal).expect("enumerated tree is binary")
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{forget_planarity, parse_newick};

    #[test]
    fn double_factorial_values() {
        assert_eq!(count_binary_topologies(2).unwrap(), 1);
        assert_eq!(count_binary_topologies(3).unwrap(), 3);
        assert_eq!(count_binary_topologies(4).unwrap(), 15);
        assert!(count_binary_topologies(1).is_err());
    }

    #[test]
    fn enumeration_matches_formula() {
        for n in 2..=7 {
            let all = enumerate_binary_topologies(n).unwrap();
            assert_eq!(all.len() as u128, count_binary_topologies(n).unwrap(), "n={n}");
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn tree_conversion_round_trips() {
        let t = forget_planarity(&parse_newick("((1,3),(2,4));").unwrap());
        let top = BinaryTopology::from_tree(&t).unwrap();
        assert_eq!(top.clades(), &[0b0101, 0b1010]);
        assert_eq!(top.to_tree(), t);
        assert_eq!(crate::trees::write_newick(&top.to_planar(None)), "((1,3),(2,4));");
        let bad = forget_planarity(&parse_newick("(1,2,3);").unwrap());
        assert_eq!(BinaryTopology::from_tree(&bad), Err(TreeSpaceError::NotBinary));
    }
}
