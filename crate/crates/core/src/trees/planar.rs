use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExtWeight, TreeError};

pub type NodeId = usize;
pub type Label = u32;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Node {
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Set on leaves only.
    pub label: Option<Label>,
    /// Weight of the edge to the parent. Only meaningful on non-root internal nodes.
    pub weight: ExtWeight,
}

/// A rooted tree with labeled leaves, weighted internal edges and a fixed
/// clockwise order of children at every vertex.
///
/// The root may carry a label of its own (mark 0 when the root is read as the
/// zeroth leaf). Equality is planar structural equality: same shape, same child
/// order, same labels and weights, regardless of node numbering.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanarMetricTree {
    nodes: Vec<Node>,
    root: NodeId,
    root_label: Option<Label>,
}

impl PlanarMetricTree {
    /// A lone root with no children; finish it with [`push_leaf`](Self::push_leaf) /
    /// [`push_internal`](Self::push_internal) and then [`validate`](Self::validate).
    pub fn with_root(root_label: Option<Label>) -> Self {
        PlanarMetricTree {
            nodes: vec![Node { parent: None, children: Vec::new(), label: None, weight: ExtWeight::ZERO }],
            root: 0,
            root_label,
        }
    }

    pub fn push_leaf(&mut self, parent: NodeId, label: Label) -> NodeId {
        self.push(parent, Some(label), ExtWeight::ZERO)
    }

    pub fn push_internal(&mut self, parent: NodeId, weight: ExtWeight) -> NodeId {
        self.push(parent, None, weight)
    }

    fn push(&mut self, parent: NodeId, label: Option<Label>, weight: ExtWeight) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node { parent: Some(parent), children: Vec::new(), label, weight });
        self.nodes[parent].children.push(id);
        id
    }

    /// Corolla on leaves `1..=n`, root label 0.
    pub fn corolla(n: usize) -> Self {
        let mut t = Self::with_root(Some(0));
        for l in 1..=n {
            t.push_leaf(0, l as Label);
        }
        t
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        let mut seen = HashSet::new();
        if let Some(l) = self.root_label {
            seen.insert(l);
        }
        if self.nodes[self.root].children.len() < 2 {
            return Err(TreeError::Invalid("root must have at least two children".into()));
        }
        for id in self.preorder() {
            let node = &self.nodes[id];
            match node.label {
                Some(l) => {
                    if !node.children.is_empty() {
                        return Err(TreeError::Invalid(format!("labeled node {l} has children")));
                    }
                    if !seen.insert(l) {
                        return Err(TreeError::DuplicateLabel(l));
                    }
                }
                None => {
                    if id != self.root && node.children.len() < 2 {
                        return Err(TreeError::Invalid(format!(
                            "internal node {id} has {} children",
                            node.children.len()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn root_label(&self) -> Option<Label> {
        self.root_label
    }

    pub fn set_root_label(&mut self, label: Option<Label>) {
        self.root_label = label;
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn label(&self, id: NodeId) -> Option<Label> {
        self.nodes[id].label
    }

    pub fn weight(&self, id: NodeId) -> ExtWeight {
        self.nodes[id].weight
    }

    pub fn set_weight(&mut self, id: NodeId, w: ExtWeight) {
        self.nodes[id].weight = w;
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.nodes[id].children.is_empty()
    }

    pub(crate) fn children_mut(&mut self, id: NodeId) -> &mut Vec<NodeId> {
        &mut self.nodes[id].children
    }

    /// Nodes reachable from the root, parents before children, children in planar order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.nodes[id].children.iter().rev());
        }
        out
    }

    /// Leaves in clockwise planar order.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.preorder().into_iter().filter(|&id| self.is_leaf(id)).collect()
    }

    pub fn leaf_labels(&self) -> Vec<Label> {
        self.leaves().into_iter().map(|id| self.nodes[id].label.expect("leaf label")).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Internal edges, named by their lower endpoint, in preorder.
    pub fn internal_edges(&self) -> Vec<NodeId> {
        self.preorder()
            .into_iter()
            .filter(|&id| id != self.root && !self.is_leaf(id))
            .collect()
    }

    pub fn is_binary(&self) -> bool {
        self.preorder()
            .into_iter()
            .all(|id| self.is_leaf(id) || self.nodes[id].children.len() == 2)
    }

    /// Leaves below `id`, in planar order.
    pub fn leaves_below(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            if self.is_leaf(v) {
                out.push(v);
            }
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }

    /// Positions (0-based, planar order) of the leaves below each internal edge,
    /// as inclusive intervals, in preorder of the edges.
    pub fn edge_intervals(&self) -> Vec<(NodeId, usize, usize)> {
        let leaves = self.leaves();
        let pos = |id: NodeId| leaves.iter().position(|&l| l == id).expect("leaf");
        self.internal_edges()
            .into_iter()
            .map(|e| {
                let below = self.leaves_below(e);
                (e, pos(below[0]), pos(*below.last().expect("nonempty")))
            })
            .collect()
    }

    /// Compact copy with nodes renumbered in preorder.
    pub fn compacted(&self) -> Self {
        let order = self.preorder();
        let mut index = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let nodes = order
            .iter()
            .map(|&old| {
                let n = &self.nodes[old];
                Node {
                    parent: n.parent.map(|p| index[p]),
                    children: n.children.iter().map(|&c| index[c]).collect(),
                    label: n.label,
                    weight: n.weight,
                }
            })
            .collect();
        PlanarMetricTree { nodes, root: 0, root_label: self.root_label }
    }

    fn planar_encoding(&self, id: NodeId, out: &mut String) {
        let node = &self.nodes[id];
        if let Some(l) = node.label {
            out.push_str(&l.to_string());
        } else {
            out.push('(');
            for (i, &c) in node.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.planar_encoding(c, out);
            }
            out.push(')');
        }
        if id != self.root && node.label.is_none() {
            out.push(':');
            out.push_str(&node.weight.to_string());
        }
    }

    /// Order-insensitive encoding: children sorted by their own encodings.
    pub(crate) fn canonical_encoding(&self, id: NodeId) -> String {
        let node = &self.nodes[id];
        if let Some(l) = node.label {
            return l.to_string();
        }
        let mut parts: Vec<String> = node.children.iter().map(|&c| self.canonical_encoding(c)).collect();
        parts.sort();
        let mut s = format!("({})", parts.join(","));
        if id != self.root {
            s.push(':');
            s.push_str(&node.weight.to_string());
        }
        s
    }
}

impl PartialEq for PlanarMetricTree {
    fn eq(&self, other: &Self) -> bool {
        let (mut a, mut b) = (String::new(), String::new());
        self.planar_encoding(self.root, &mut a);
        other.planar_encoding(other.root, &mut b);
        self.root_label == other.root_label && a == b
    }
}

impl Eq for PlanarMetricTree {}

impl fmt::Display for PlanarMetricTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::write_newick(self))
    }
}

/// A rooted leaf-labeled metric tree without a planar structure.
#[derive(Clone, Debug)]
pub struct MetricTree {
    inner: PlanarMetricTree,
    key: String,
}

impl MetricTree {
    pub fn leaf_count(&self) -> usize {
        self.inner.leaf_count()
    }

    /// One planar representative of this tree.
    pub fn representative(&self) -> &PlanarMetricTree {
        &self.inner
    }

    /// Deterministic encoding shared by exactly the isomorphic trees.
    pub fn canonical_form(&self) -> &str {
        &self.key
    }

    /// Leaf-label sets below each internal edge, with the edge weight, sorted.
    pub fn clades(&self) -> Vec<(Vec<Label>, ExtWeight)> {
        let t = &self.inner;
        let mut out: Vec<_> = t
            .internal_edges()
            .into_iter()
            .map(|e| {
                let mut ls: Vec<Label> = t.leaves_below(e).into_iter().filter_map(|l| t.label(l)).collect();
                ls.sort_unstable();
                (ls, t.weight(e))
            })
            .collect();
        out.sort();
        out
    }
}

impl PartialEq for MetricTree {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for MetricTree {}

impl std::hash::Hash for MetricTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

pub fn forget_planarity(tree: &PlanarMetricTree) -> MetricTree {
    let root = match tree.root_label() {
        Some(l) => format!("{l}"),
        None => String::new(),
    };
    let key = format!("{root}|{}", tree.canonical_encoding(tree.root()));
    MetricTree { inner: tree.clone(), key }
}

/// Label- and weight-preserving isomorphism test.
pub fn isomorphic(a: &MetricTree, b: &MetricTree) -> Result<bool, TreeError> {
    let (na, nb) = (a.leaf_count(), b.leaf_count());
    if na != nb {
        return Err(TreeError::LeafCountMismatch(na, nb));
    }
    Ok(a == b)
}
