//! Rooted metric trees, planar and abstract, with Newick I/O and the
//! elementary moves: degeneration, twists, root rotation and reflection.

mod moves;
mod newick;
mod planar;
mod weight;

use thiserror::Error;

pub use moves::{degeneration, reflect, reverse_at_edge, rotate_root};
pub use newick::{parse_newick, write_newick};
pub use planar::{forget_planarity, isomorphic, Label, MetricTree, Node, NodeId, PlanarMetricTree};
pub use weight::ExtWeight;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum TreeError {
    #[error("newick parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("invalid weight {0}")]
    InvalidWeight(f64),
    #[error("node {0} does not name an edge")]
    NotAnEdge(NodeId),
    #[error("leaf counts differ: {0} vs {1}")]
    LeafCountMismatch(usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_cherries_forget_to_same_tree() {
        let a = parse_newick("((1,2),3);").unwrap();
        let b = parse_newick("((2,1),3);").unwrap();
        assert_ne!(a, b);
        assert!(isomorphic(&forget_planarity(&a), &forget_planarity(&b)).unwrap());
    }

    #[test]
    fn isomorphism_checks_labels_and_weights() {
        let t = forget_planarity(&parse_newick("((1,2):0.5,3);").unwrap());
        assert!(isomorphic(&t, &t).unwrap());
        let other = forget_planarity(&parse_newick("((1,3):0.5,2);").unwrap());
        assert!(!isomorphic(&t, &other).unwrap());
        let heavier = forget_planarity(&parse_newick("((1,2):0.5000000001,3);").unwrap());
        assert!(!isomorphic(&t, &heavier).unwrap());
        let bigger = forget_planarity(&parse_newick("((1,2),3,4);").unwrap());
        assert_eq!(isomorphic(&t, &bigger), Err(TreeError::LeafCountMismatch(3, 4)));
    }

    #[test]
    fn json_has_nodes_and_parents() {
        let t = parse_newick("((1,2):inf,3);").unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["nodes"][1]["weight"], "inf");
        assert_eq!(v["nodes"][2]["parent"], 1);
        let back: PlanarMetricTree = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }
}
