use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{catalan, AssocError, Bracket, Bracketing};
use crate::trees::{ExtWeight, PlanarMetricTree};

fn proper_brackets(n: usize) -> Vec<Bracket> {
    let mut out = Vec::new();
    for lo in 1..=n {
        for hi in lo + 1..=n {
            if hi - lo < n - 1 {
                out.push((lo as u8, hi as u8));
            }
        }
    }
    out
}

/// Every face of `K_n`, sorted by dimension (vertices first) and then by brackets.
pub fn faces(n: usize) -> Result<Vec<Bracketing>, AssocError> {
    if !(2..=9).contains(&n) {
        return Err(AssocError::Range(format!("faces need 2 <= n <= 9, got {n}")));
    }
    let all = proper_brackets(n);
    let mut out = Vec::new();
    let mut chosen: Vec<Bracket> = Vec::new();
    fn grow(all: &[Bracket], from: usize, chosen: &mut Vec<Bracket>, n: usize, out: &mut Vec<Bracketing>) {
        out.push(Bracketing::from_sorted_unchecked(n, chosen.clone()));
        for i in from..all.len() {
            if chosen.iter().all(|&c| super::bracketing::nested_or_disjoint(c, all[i])) {
                chosen.push(all[i]);
                grow(all, i + 1, chosen, n, out);
                chosen.pop();
            }
        }
    }
    grow(&all, 0, &mut chosen, n, &mut out);
    out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The planar binary trees with leaves `1..=n`: the vertices of `K_n`, each
/// with every internal edge broken (weight infinity).
pub fn vertices(n: usize) -> Result<Vec<PlanarMetricTree>, AssocError> {
    if !(2..=10).contains(&n) {
        return Err(AssocError::Range(format!("vertices need 2 <= n <= 10, got {n}")));
    }
    Ok(full_bracketings(n)
        .into_iter()
        .map(|b| b.to_tree(&vec![ExtWeight::INFINITY; n - 2]))
        .collect())
}

/// Full bracketings in sorted order, built recursively by splitting at the root.
pub(crate) fn full_bracketings(n: usize) -> Vec<Bracketing> {
    fn splits(lo: u8, hi: u8) -> Vec<Vec<Bracket>> {
        if lo == hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in lo..hi {
            for left in splits(lo, m) {
                for right in splits(m + 1, hi) {
                    let mut b = left.clone();
                    if m > lo {
                        b.push((lo, m));
                    }
                    b.extend(right.iter().copied());
                    if hi > m + 1 {
                        b.push((m + 1, hi));
                    }
                    out.push(b);
                }
            }
        }
        out
    }
    let mut out: Vec<Bracketing> = splits(1, n as u8)
        .into_iter()
        .map(|mut b| {
            b.sort_unstable();
            Bracketing::from_sorted_unchecked(n, b)
        })
        .collect();
    out.sort();
    out
}

/// Faces of `K_n` ordered by refinement.
#[derive(Clone, Debug, Serialize)]
pub struct FacePoset {
    pub n: usize,
    /// Sorted by dimension, then brackets.
    pub faces: Vec<Bracketing>,
    /// Cover relations `(a, b)`: face `a` is `b` with one bracket added.
    pub hasse: Vec<(usize, usize)>,
}

pub fn face_poset(n: usize) -> Result<FacePoset, AssocError> {
    if !(2..=7).contains(&n) {
        return Err(AssocError::Range(format!("face_poset needs 2 <= n <= 7, got {n}")));
    }
    let faces = faces(n)?;
    let index: HashMap<&Bracketing, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut hasse = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for &b in f.brackets() {
            hasse.push((i, index[&f.without(b)]));
        }
    }
    hasse.sort_unstable();
    Ok(FacePoset { n, faces, hasse })
}

impl FacePoset {
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n - 1];
        for face in &self.faces {
            f[face.dimension()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Every closed interval `[a, b]` with `a < b` has as many faces of even
    /// dimension as of odd dimension.
    pub fn is_eulerian(&self) -> bool {
        self.faces.iter().all(|b| {
            let below: Vec<&Bracketing> = self.faces.iter().filter(|c| c.is_face_of(b)).collect();
            below.iter().filter(|a| *a != &b).all(|a| {
                let sum: i64 = below
                    .iter()
                    .filter(|c| a.is_face_of(c))
                    .map(|c| if c.dimension() % 2 == 0 { 1 } else { -1 })
                    .sum();
                sum == 0
            })
        })
    }
}

/// A point of one cube chart: a planar binary tree with a weight in `[0, inf]`
/// on each internal edge, listed in bracket order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeChart {
    pub topology: Bracketing,
    pub coords: Vec<ExtWeight>,
}

impl CubeChart {
    pub fn new(topology: Bracketing, coords: Vec<ExtWeight>) -> Result<Self, AssocError> {
        if !topology.is_full() {
            return Err(AssocError::Domain(format!("chart topology {topology} is not binary")));
        }
        if coords.len() != topology.brackets().len() {
            return Err(AssocError::Domain(format!(
                "chart {topology} takes {} coordinates, got {}",
                topology.brackets().len(),
                coords.len()
            )));
        }
        Ok(CubeChart { topology, coords })
    }

    /// From coordinates `u = 1 - exp(-w)` in `[0, 1]`.
    pub fn from_unit(topology: Bracketing, u: &[f64]) -> Result<Self, AssocError> {
        let coords = u
            .iter()
            .map(|&x| {
                if !(0.0..=1.0).contains(&x) {
                    Err(AssocError::Domain(format!("unit coordinate {x} is outside [0, 1]")))
                } else if x == 1.0 {
                    Ok(ExtWeight::INFINITY)
                } else {
                    Ok(ExtWeight::new(-(-x).ln_1p())?)
                }
            })
            .collect::<Result<_, _>>()?;
        CubeChart::new(topology, coords)
    }

    pub fn unit_coords(&self) -> Vec<f64> {
        self.coords.iter().map(|w| 1.0 - w.exp_neg()).collect()
    }

    pub fn tree(&self) -> PlanarMetricTree {
        self.topology.to_tree(&self.coords)
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }
}

/// Two charts glued along the face spanned by their common edges: the
/// coordinates of the other edges vanish there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gluing {
    pub a: usize,
    pub b: usize,
    pub common: Bracketing,
}

/// `K_n` as a union of `C_{n-1}` cubes, one per planar binary tree, all
/// meeting at the corolla corner.
#[derive(Clone, Debug, Serialize)]
pub struct CubeDecomposition {
    pub n: usize,
    pub charts: Vec<Bracketing>,
    /// Pairs of charts sharing a codimension-one face.
    pub adjacent: Vec<Gluing>,
}

pub fn cube_decomposition(n: usize) -> Result<CubeDecomposition, AssocError> {
    if !(2..=7).contains(&n) {
        return Err(AssocError::Range(format!("cube_decomposition needs 2 <= n <= 7, got {n}")));
    }
    let charts = full_bracketings(n);
    debug_assert_eq!(charts.len() as u128, catalan(n)?);
    let mut adjacent = Vec::new();
    for (a, x) in charts.iter().enumerate() {
        for (b, y) in charts.iter().enumerate().skip(a + 1) {
            let common: Vec<Bracket> = x.brackets().iter().copied().filter(|&c| y.contains(c)).collect();
            if common.len() + 3 == n {
                adjacent.push(Gluing { a, b, common: Bracketing::from_sorted_unchecked(n, common) });
            }
        }
    }
    Ok(CubeDecomposition { n, charts, adjacent })
}

impl CubeDecomposition {
    /// The face shared by two charts; always contains the corolla corner.
    pub fn shared_face(&self, a: usize, b: usize) -> Bracketing {
        let y = &self.charts[b];
        let common = self.charts[a].brackets().iter().copied().filter(|&c| y.contains(c)).collect();
        Bracketing::from_sorted_unchecked(self.n, common)
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.charts.len()];
        for g in &self.adjacent {
            adj[g.a].push(g.b);
            adj[g.b].push(g.a);
        }
        let mut seen = vec![false; self.charts.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn corolla_corner(&self, chart: usize) -> CubeChart {
        CubeChart { topology: self.charts[chart].clone(), coords: vec![ExtWeight::ZERO; self.n - 2] }
    }
}
