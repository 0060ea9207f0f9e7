use super::{ExtWeight, Label, NodeId, PlanarMetricTree, TreeError};

/// Breaks `tree` along every internal edge of infinite weight.
///
/// Each broken edge becomes a fresh leaf on the upper component and the root
/// label of the lower one. Fresh labels continue after the largest label in
/// use, numbered in preorder of the broken edges. The root component comes
/// first, then the others in preorder.
pub fn degeneration(tree: &PlanarMetricTree) -> Vec<PlanarMetricTree> {
    let broken: Vec<NodeId> = tree
        .internal_edges()
        .into_iter()
        .filter(|&e| tree.weight(e).is_infinite())
        .collect();
    if broken.is_empty() {
        return vec![tree.clone()];
    }
    let max_label = tree
        .leaf_labels()
        .into_iter()
        .chain(tree.root_label())
        .max()
        .unwrap_or(0);
    let fresh = |e: NodeId| -> Label {
        max_label + 1 + broken.iter().position(|&b| b == e).expect("broken edge") as Label
    };

    let mut out = Vec::with_capacity(broken.len() + 1);
    let tops = std::iter::once((tree.root(), tree.root_label())).chain(broken.iter().map(|&e| (e, Some(fresh(e)))));
    for (top, root_label) in tops {
        let mut comp = PlanarMetricTree::with_root(root_label);
        let mut stack: Vec<(NodeId, NodeId)> = tree.children(top).iter().rev().map(|&c| (c, 0)).collect();
        while let Some((old, parent)) = stack.pop() {
            if let Some(l) = tree.label(old) {
                comp.push_leaf(parent, l);
            } else if tree.weight(old).is_infinite() {
                comp.push_leaf(parent, fresh(old));
            } else {
                let id = comp.push_internal(parent, tree.weight(old));
                stack.extend(tree.children(old).iter().rev().map(|&c| (c, id)));
            }
        }
        out.push(comp);
    }
    out
}

/// Mirror-reverses the planar embedding of the part of the tree below `edge`.
///
/// Returns the new tree and `tau` with `tau[old_position] = new_position` over
/// the planar leaf positions (0-based). An edge over a single leaf gives back
/// the same tree and the identity.
pub fn reverse_at_edge(tree: &PlanarMetricTree, edge: NodeId) -> Result<(PlanarMetricTree, Vec<usize>), TreeError> {
    if edge == tree.root() || !tree.preorder().contains(&edge) {
        return Err(TreeError::NotAnEdge(edge));
    }
    let before = tree.leaves();
    let mut out = tree.clone();
    let mut stack = vec![edge];
    while let Some(v) = stack.pop() {
        out.children_mut(v).reverse();
        stack.extend(out.children(v).iter().copied());
    }
    let after = out.leaves();
    let tau = before
        .iter()
        .map(|id| after.iter().position(|x| x == id).expect("same leaves"))
        .collect();
    Ok((out, tau))
}

/// Reverses the child order at every vertex.
pub fn reflect(tree: &PlanarMetricTree) -> PlanarMetricTree {
    let mut out = tree.clone();
    for v in tree.preorder() {
        out.children_mut(v).reverse();
    }
    out
}

/// One-step clockwise rotation of the marks, the root read as mark 0.
///
/// The first leaf becomes the root and the old root becomes the last leaf,
/// carrying its label (0 when the root is unlabeled). Weights of internal
/// edges travel with the edges.
pub fn rotate_root(tree: &PlanarMetricTree) -> PlanarMetricTree {
    // Undirected ribbon structure: every vertex lists its neighbours in
    // clockwise order; the old root mark is a virtual leaf hanging off the root.
    let t = tree.compacted();
    let count = t.preorder().len();
    let mark = count;
    let mut ring: Vec<Vec<NodeId>> = vec![Vec::new(); count + 1];
    for v in t.preorder() {
        let up = if v == t.root() { mark } else { t.parent(v).expect("parent") };
        ring[v].push(up);
        ring[v].extend(t.children(v).iter().copied());
    }
    ring[mark].push(t.root());
    // weight of undirected edge {v, parent(v)} stored on v
    let edge_weight = |a: NodeId, b: NodeId| -> ExtWeight {
        if a < count && t.parent(a) == Some(b) {
            t.weight(a)
        } else if b < count && t.parent(b) == Some(a) {
            t.weight(b)
        } else {
            ExtWeight::ZERO
        }
    };
    let label_of = |v: NodeId| -> Option<Label> {
        if v == mark {
            Some(t.root_label().unwrap_or(0))
        } else {
            t.label(v)
        }
    };

    let new_root_mark = t.leaves()[0];
    let top = ring[new_root_mark][0];
    let mut out = PlanarMetricTree::with_root(label_of(new_root_mark));
    // (vertex, came_from, parent in new tree)
    let mut stack: Vec<(NodeId, NodeId, NodeId)> = Vec::new();
    let push_children = |v: NodeId, from: NodeId, at: NodeId, stack: &mut Vec<(NodeId, NodeId, NodeId)>| {
        let nb = &ring[v];
        let k = nb.iter().position(|&x| x == from).expect("neighbour");
        let rest: Vec<NodeId> = (1..nb.len()).map(|i| nb[(k + i) % nb.len()]).collect();
        for &c in rest.iter().rev() {
            stack.push((c, v, at));
        }
    };
    push_children(top, new_root_mark, out.root(), &mut stack);
    while let Some((v, from, at)) = stack.pop() {
        if ring[v].len() == 1 {
            out.push_leaf(at, label_of(v).expect("leaf label"));
        } else {
            let id = out.push_internal(at, edge_weight(v, from));
            push_children(v, from, id, &mut stack);
        }
    }
    out
}
