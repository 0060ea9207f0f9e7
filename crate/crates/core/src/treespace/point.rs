use serde::{Deserialize, Serialize};

use super::{BinaryTopology, Clade, TreeSpaceError};

/// A point of BHV space: a binary topology with one nonnegative finite weight
/// per internal edge.
///
/// Points on shared orthant faces compare equal: zero-weight edges are
/// contracted before comparison.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BhvPoint {
    topology: BinaryTopology,
    weights: Vec<f64>,
}

impl BhvPoint {
    /// `weights[i]` belongs to `topology.clades()[i]`.
    pub fn new(topology: BinaryTopology, weights: Vec<f64>) -> Result<Self, TreeSpaceError> {
        if weights.len() != topology.clades().len() {
            return Err(TreeSpaceError::Domain(format!(
                "expected {} weights, got {}",
                topology.clades().len(),
                weights.len()
            )));
        }
        if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(TreeSpaceError::Domain(format!("weight {w} is not a finite nonnegative number")));
        }
        Ok(BhvPoint { topology, weights })
    }

    pub fn topology(&self) -> &BinaryTopology {
        &self.topology
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    /// The corolla, represented in the orthant of the caterpillar `((1,2),3),...`.
    pub fn corolla(n: usize) -> Result<Self, TreeSpaceError> {
        if n < 2 {
            return Err(TreeSpaceError::Domain(format!("need n >= 2, got {n}")));
        }
        let clades = (2..n).map(|k| (1u64 << k) - 1).collect();
        let top = BinaryTopology::new(n, clades)?;
        Ok(BhvPoint { weights: vec![0.0; n - 2], topology: top })
    }

    /// Clades with positive weight, sorted.
    pub fn contracted(&self) -> Vec<(Clade, f64)> {
        let mut out: Vec<_> = self
            .topology
            .clades()
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
            .filter(|&(_, w)| w > 0.0)
            .collect();
        out.sort_by_key(|&(c, _)| c);
        out
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_fully_grown(&self) -> bool {
        self.max_weight() == 1.0 && self.weights.iter().all(|&w| w <= 1.0)
    }
}

impl PartialEq for BhvPoint {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.contracted() == other.contracted()
    }
}

/// The second factor of `BHV_n = [0, inf) ∧ T_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Grown {
    /// The cone point; only paired with scale 0.
    Cone { n: usize },
    /// A fully-grown tree: weights in `[0, 1]`, at least one equal to 1.
    Tree(BhvPoint),
}

/// Splits off the largest weight and rescales the tree to be fully grown.
pub fn smash_split(p: &BhvPoint) -> (f64, Grown) {
    let scale = p.max_weight();
    if scale == 0.0 {
        return (0.0, Grown::Cone { n: p.n() });
    }
    let weights = p.weights.iter().map(|&w| if w == scale { 1.0 } else { w / scale }).collect();
    (scale, Grown::Tree(BhvPoint { topology: p.topology.clone(), weights }))
}

pub fn smash_join(scale: f64, grown: &Grown) -> Result<BhvPoint, TreeSpaceError> {
    if !(scale.is_finite() && scale >= 0.0) {
        return Err(TreeSpaceError::Domain(format!("scale {scale} must be finite and nonnegative")));
    }
    match grown {
        Grown::Cone { n } if scale == 0.0 => BhvPoint::corolla(*n),
        Grown::Cone { .. } => Err(TreeSpaceError::Domain("a positive scale needs a fully-grown tree".into())),
        Grown::Tree(t) if !t.is_fully_grown() => Err(TreeSpaceError::Domain("tree is not fully grown".into())),
        Grown::Tree(t) if scale == 0.0 => BhvPoint::corolla(t.n()),
        Grown::Tree(t) => BhvPoint::new(t.topology.clone(), t.weights.iter().map(|&w| w * scale).collect()),
    }
}
