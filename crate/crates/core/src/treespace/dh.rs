//! Diaconis–Holmes correspondence between rooted binary trees on `n` labeled
//! leaves and perfect matchings of `{1, ..., 2n - 2}`.
//!
//! Internal vertices get labels `n + 1, n + 2, ...` in the order they are
//! produced by collapsing cherries: at every step the cherry holding the
//! smallest live label is recorded and replaced by its parent under the next
//! unused label. The root gets `2n - 1` and is not part of the matching.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BinaryTopology, Clade, TreeSpaceError};
use crate::trees::{Label, MetricTree};

/// A perfect matching stored as sorted pairs `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(Label, Label)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (Label, Label)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(Label, Label)] {
        &self.pairs
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn dh_matching(tree: &MetricTree) -> Result<Matching, TreeSpaceError> {
    let top = BinaryTopology::from_tree(tree)?;
    Ok(dh_matching_of(&top))
}

pub fn dh_matching_of(top: &BinaryTopology) -> Matching {
    let n = top.n();
    // parent clade -> its two children
    let siblings: BTreeMap<Clade, (Clade, Clade)> =
        top.sibling_pairs().into_iter().map(|(p, a, b)| (p, (a, b))).collect();
    let mut live: BTreeMap<Clade, Label> = (0..n).map(|i| (1u64 << i, i as Label + 1)).collect();
    let mut next = n as Label + 1;
    let mut pairs = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let (parent, a, b) = siblings
            .iter()
            .filter_map(|(&p, &(x, y))| Some((p, *live.get(&x)?, *live.get(&y)?)))
            .min_by_key(|&(_, a, b)| a.min(b))
            .expect("a binary tree always has a cherry");
        let (x, y) = siblings[&parent];
        live.remove(&x);
        live.remove(&y);
        live.insert(parent, next);
        pairs.push((a, b));
        next += 1;
    }
    Matching::new(pairs)
}

/// Inverse of [`dh_matching`].
pub fn dh_tree(m: &Matching, n: usize) -> Result<MetricTree, TreeSpaceError> {
    Ok(dh_topology(m, n)?.to_tree())
}

pub fn dh_topology(m: &Matching, n: usize) -> Result<BinaryTopology, TreeSpaceError> {
    if n < 2 {
        return Err(TreeSpaceError::Domain(format!("need n >= 2, got {n}")));
    }
    let max = 2 * n as Label - 2;
    let bad = |pair: (Label, Label), reason: &str| TreeSpaceError::Decode { pair, reason: reason.to_string() };
    if m.pairs().len() != n - 1 {
        return Err(TreeSpaceError::Domain(format!("expected {} pairs, got {}", n - 1, m.pairs().len())));
    }
    let mut seen = vec![false; max as usize + 1];
    for &(a, b) in m.pairs() {
        if a == 0 || b > max {
            return Err(bad((a, b), "label out of range"));
        }
        if a == b || seen[a as usize] || seen[b as usize] {
            return Err(bad((a, b), "label used twice"));
        }
        seen[a as usize] = true;
        seen[b as usize] = true;
    }

    let mut live: BTreeMap<Label, Clade> = (1..=n as Label).map(|l| (l, 1u64 << (l - 1))).collect();
    let mut used = vec![false; m.pairs().len()];
    let mut clades = Vec::with_capacity(n - 2);
    for step in 0..n - 1 {
        let pick = m
            .pairs()
            .iter()
            .enumerate()
            .filter(|&(i, (a, b))| !used[i] && live.contains_key(a) && live.contains_key(b))
            .min_by_key(|(_, (a, _))| *a)
            .map(|(i, _)| i);
        let Some(i) = pick else {
            let (i, _) = m.pairs().iter().enumerate().find(|&(i, _)| !used[i]).expect("unused pair");
            return Err(bad(m.pairs()[i], "refers to a label that is never created"));
        };
        used[i] = true;
        let (a, b) = m.pairs()[i];
        let merged = live.remove(&a).unwrap() | live.remove(&b).unwrap();
        live.insert(n as Label + 1 + step as Label, merged);
        if step + 2 < n {
            clades.push(merged);
        }
    }
    BinaryTopology::new(n, clades)
}

/// All perfect matchings of `{1, ..., 2k}`, sorted.
pub fn perfect_matchings(k: usize) -> Vec<Matching> {
    fn rec(rest: &[Label], acc: &mut Vec<(Label, Label)>, out: &mut Vec<Matching>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(Matching::new(acc.iter().copied()));
            return;
        };
        for i in 0..tail.len() {
            let remaining: Vec<Label> = tail.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            acc.push((first, tail[i]));
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    let labels: Vec<Label> = (1..=2 * k as Label).collect();
    let mut out = Vec::new();
    rec(&labels, &mut Vec::new(), &mut out);
    out.sort();
    out
}
