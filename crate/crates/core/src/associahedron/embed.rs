use serde::Serialize;

use super::AssocError;
use crate::trees::{Label, NodeId, PlanarMetricTree};

/// Points `0 = v_1 <= v_2 <= ... <= v_n` on the line, up to translation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    points: Vec<f64>,
}

impl Configuration {
    pub fn new(points: Vec<f64>) -> Result<Self, AssocError> {
        if points.first() != Some(&0.0) {
            return Err(AssocError::Domain("a configuration starts at 0".into()));
        }
        if points.windows(2).any(|w| !(w[0] <= w[1]) || !w[1].is_finite()) {
            return Err(AssocError::Domain("configuration points must be finite and nondecreasing".into()));
        }
        Ok(Configuration { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn to_csv_row(&self) -> String {
        self.points.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `W_k` for each pair of neighbouring leaves: the total weight of the internal
/// edges above their lowest common ancestor. Infinite when one of them is broken.
pub(crate) fn gap_exponents(tree: &PlanarMetricTree) -> Vec<f64> {
    let leaves = tree.leaves();
    let path = |v: NodeId| -> Vec<NodeId> {
        let mut p = vec![v];
        while let Some(u) = tree.parent(*p.last().expect("nonempty")) {
            p.push(u);
        }
        p
    };
    leaves
        .windows(2)
        .map(|pair| {
            let a = path(pair[0]);
            let b = path(pair[1]);
            let lca = *a.iter().find(|v| b.contains(v)).expect("common root");
            path(lca)
                .into_iter()
                .filter(|&v| v != tree.root())
                .map(|v| tree.weight(v).value())
                .sum()
        })
        .collect()
}

/// Places the leaves of a planar metric tree on the line with gaps `exp(-W_k)`.
pub fn embed_config(tree: &PlanarMetricTree) -> Result<Configuration, AssocError> {
    let labels = tree.leaf_labels();
    if labels.len() < 2 {
        return Err(AssocError::Domain(format!("need at least 2 leaves, got {}", labels.len())));
    }
    if labels.iter().enumerate().any(|(i, &l)| l != i as Label + 1) {
        return Err(AssocError::Domain("leaves must be labeled 1..n in planar order".into()));
    }
    let mut points = Vec::with_capacity(labels.len());
    let mut v = 0.0;
    points.push(v);
    for w in gap_exponents(tree) {
        v += (-w).exp();
        points.push(v);
    }
    Configuration::new(points)
}
