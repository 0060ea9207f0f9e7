use serde::Serialize;

use super::{
    config_join, eigenvalues, gap_vector, normal_form, ConfigSplit, SpectraError, Spectrum, StratumPartition,
    SymmetricMatrix,
};
use crate::trees::{write_newick, ExtWeight, Label, NodeId, PlanarMetricTree};

/// Single-linkage tree of a normalised spectrum. Leaves are the eigenvalue
/// indices `1..=n` in order, every internal node sits at the normalised gap
/// that merged its two halves, and each internal edge has weight equal to the
/// difference of heights.
#[derive(Clone, Debug, Serialize)]
pub struct Dendrogram {
    pub tree: PlanarMetricTree,
    /// Height of every node, indexed by node id; zero on leaves.
    pub heights: Vec<f64>,
}

impl Dendrogram {
    pub fn newick(&self) -> String {
        write_newick(&self.tree)
    }

    pub fn height(&self) -> f64 {
        self.heights[self.tree.root()]
    }

    /// The clusters left after removing every node above `h`.
    pub fn cut(&self, h: f64) -> StratumPartition {
        let mut blocks = Vec::new();
        let mut stack = vec![self.tree.root()];
        while let Some(id) = stack.pop() {
            if self.heights[id] <= h {
                let leaves = self.tree.leaves_below(id);
                blocks.push(leaves.iter().map(|&l| self.tree.label(l).expect("leaf") as usize).collect());
            } else {
                stack.extend(self.tree.children(id).iter().rev());
            }
        }
        StratumPartition { blocks, tol: h }
    }
}

enum Cluster {
    Leaf(usize),
    Join(Box<Cluster>, Box<Cluster>, f64),
}

impl Cluster {
    fn height(&self) -> f64 {
        match self {
            Cluster::Leaf(_) => 0.0,
            Cluster::Join(_, _, h) => *h,
        }
    }
}

fn attach(c: &Cluster, parent: NodeId, parent_height: f64, t: &mut PlanarMetricTree, heights: &mut Vec<f64>) {
    match c {
        Cluster::Leaf(k) => {
            t.push_leaf(parent, *k as Label);
            heights.push(0.0);
        }
        Cluster::Join(a, b, h) => {
            let w = ExtWeight::new(parent_height - h).expect("heights increase towards the root");
            let id = t.push_internal(parent, w);
            heights.push(*h);
            attach(a, id, *h, t, heights);
            attach(b, id, *h, t, heights);
        }
    }
}

/// Merges neighbouring eigenvalues in order of increasing normalised gap,
/// breaking ties from the left.
pub fn resolve_tree(s: &Spectrum) -> Result<Dendrogram, SpectraError> {
    let d = gap_vector(s)?;
    let n = s.len();
    let mut order: Vec<usize> = (0..n - 1).collect();
    order.sort_by(|&i, &j| d.deltas()[i].total_cmp(&d.deltas()[j]));
    // slot[i] holds the cluster whose leftmost index is i; right[i] its end
    let mut slot: Vec<Option<Cluster>> = (1..=n).map(|k| Some(Cluster::Leaf(k))).collect();
    let mut start: Vec<usize> = (0..n).collect();
    let mut end: Vec<usize> = (0..n).collect();
    for k in order {
        let (ls, rs) = (start[k], k + 1);
        let re = end[rs];
        let left = slot[ls].take().expect("left cluster");
        let right = slot[rs].take().expect("right cluster");
        let h = d.deltas()[k].max(left.height()).max(right.height());
        slot[ls] = Some(Cluster::Join(Box::new(left), Box::new(right), h));
        end[ls] = re;
        start[re] = ls;
    }
    let top = slot[0].take().expect("everything merged");
    let Cluster::Join(a, b, h) = top else { unreachable!("n >= 2") };
    let mut tree = PlanarMetricTree::with_root(None);
    let mut heights = vec![h];
    attach(&a, tree.root(), h, &mut tree, &mut heights);
    attach(&b, tree.root(), h, &mut tree, &mut heights);
    Ok(Dendrogram { tree, heights })
}

/// The point of the `n!`-sheeted cover over `Q` on sheet `sigma` (1-based):
/// the `k`-th smallest eigenvalue is placed at index `sigma[k]`, so that
/// [`config_split`](super::config_split) of the result returns `sigma`.
pub fn lift_config(q: &SymmetricMatrix, sigma: &[usize], tol: f64) -> Result<Vec<f64>, SpectraError> {
    let n = q.n();
    if sigma.len() != n {
        return Err(SpectraError::Domain(format!("sheet {sigma:?} for a {n}x{n} matrix")));
    }
    let s = eigenvalues(q, (tol * 1e-3).max(f64::EPSILON))?;
    let spread = s.spread();
    let min_gap = s.values().windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if !(spread > 0.0) || min_gap <= tol * spread {
        return Err(SpectraError::OnDiscriminant(format!(
            "smallest eigenvalue gap {min_gap:e} against spread {spread:e}"
        )));
    }
    let nf = normal_form(&s)?;
    config_join(&ConfigSplit { offset: nf.offset, scale: nf.scale, delta: nf.delta, sigma: sigma.to_vec() })
}
