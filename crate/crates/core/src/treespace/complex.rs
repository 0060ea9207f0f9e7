use std::collections::HashMap;

use serde::Serialize;

use super::graph::Graph;
use super::{clade_labels, compatible, full_clade, BinaryTopology, Clade, TreeSpaceError};

/// `T_n` in the sum-normalised model: one simplex per set of pairwise
/// compatible clades, glued along the faces where weights vanish. Vertices are
/// trees with a single internal edge; top simplices are binary topologies.
#[derive(Clone, Debug, Serialize)]
pub struct TnComplex {
    pub n: usize,
    /// Vertex `i` is the tree whose only internal clade is `vertices[i]`.
    pub vertices: Vec<Clade>,
    /// `simplices[k]` lists the k-simplices as sorted vertex indices, sorted.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

pub fn tn_skeleton(n: usize) -> Result<TnComplex, TreeSpaceError> {
    if !(3..=6).contains(&n) {
        return Err(TreeSpaceError::Domain(format!("T_n is built for 3 <= n <= 6, got {n}")));
    }
    let full = full_clade(n);
    let vertices: Vec<Clade> = (1..full)
        .filter(|c| (2..n as u32).contains(&c.count_ones()))
        .collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..vertices.len()).map(|v| vec![v]).collect()];
    for _ in 1..n - 2 {
        let prev = simplices.last().expect("nonempty");
        let mut next = Vec::new();
        for s in prev {
            let last = *s.last().expect("nonempty simplex");
            for v in last + 1..vertices.len() {
                if s.iter().all(|&u| compatible(vertices[u], vertices[v])) {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
        }
        simplices.push(next);
    }
    Ok(TnComplex { n, vertices, simplices })
}

impl TnComplex {
    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    pub fn one_skeleton(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .simplices
            .get(1)
            .map(|es| es.iter().map(|e| (e[0], e[1])).collect())
            .unwrap_or_default();
        Graph::from_edges(self.vertices.len(), &edges)
    }

    /// Index of simplex `s` (sorted vertex list) among the simplices of its dimension.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.simplices.get(s.len().checked_sub(1)?)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    /// Codimension-one faces of the k-simplex `idx`, as indices of (k-1)-simplices.
    pub fn boundary(&self, k: usize, idx: usize) -> Vec<usize> {
        if k == 0 {
            return Vec::new();
        }
        let s = &self.simplices[k][idx];
        (0..s.len())
            .map(|drop| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                self.index_of(&face).expect("faces of a flag complex are present")
            })
            .collect()
    }

    /// The top simplex of a binary topology.
    pub fn top_simplex(&self, top: &BinaryTopology) -> Option<usize> {
        let mut verts: Vec<usize> = top
            .clades()
            .iter()
            .map(|c| self.vertices.binary_search(c).ok())
            .collect::<Option<_>>()?;
        verts.sort_unstable();
        self.index_of(&verts)
    }

    pub fn vertex_name(&self, v: usize) -> String {
        let labels: Vec<String> = clade_labels(self.vertices[v]).iter().map(|l| l.to_string()).collect();
        format!("{{{}}}", labels.join(","))
    }

    pub fn to_dot(&self) -> String {
        let names: Vec<String> = (0..self.vertices.len()).map(|v| self.vertex_name(v)).collect();
        self.one_skeleton().to_dot(&format!("T{}", self.n), &names)
    }
}

fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cone {
    Lower,
    Upper,
}

/// A cell of the unreduced suspension of `T_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SuspensionCell {
    Apex(Cone),
    /// A k-simplex of `T_n` on the equator.
    Base { dim: usize, simplex: usize },
    /// The (k+1)-cell joining a k-simplex to one apex.
    Lifted { dim: usize, simplex: usize, cone: Cone },
}

impl SuspensionCell {
    pub fn dimension(&self) -> usize {
        match *self {
            SuspensionCell::Apex(_) => 0,
            SuspensionCell::Base { dim, .. } => dim,
            SuspensionCell::Lifted { dim, .. } => dim + 1,
        }
    }
}

/// CW structure on `BHV_n^+ = S T_n`: two apexes, the cells of `T_n`, and one
/// lifted cell per simplex per apex.
#[derive(Clone, Debug)]
pub struct SuspensionComplex {
    pub base: TnComplex,
    pub cells: Vec<Vec<SuspensionCell>>,
}

pub fn suspension(n: usize) -> Result<SuspensionComplex, TreeSpaceError> {
    let base = tn_skeleton(n)?;
    let top = base.dimension() + 1;
    let mut cells: Vec<Vec<SuspensionCell>> = vec![Vec::new(); top + 1];
    cells[0].extend([SuspensionCell::Apex(Cone::Lower), SuspensionCell::Apex(Cone::Upper)]);
    for (dim, list) in base.simplices.iter().enumerate() {
        for simplex in 0..list.len() {
            cells[dim].push(SuspensionCell::Base { dim, simplex });
            for cone in [Cone::Lower, Cone::Upper] {
                cells[dim + 1].push(SuspensionCell::Lifted { dim, simplex, cone });
            }
        }
    }
    for list in &mut cells {
        list.sort();
    }
    Ok(SuspensionComplex { base, cells })
}

/// Cell counts of the suspension by dimension.
pub fn suspension_cells(n: usize) -> Result<Vec<usize>, TreeSpaceError> {
    Ok(suspension(n)?.counts())
}

impl SuspensionComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.counts())
    }

    pub fn top_cells(&self) -> &[SuspensionCell] {
        self.cells.last().expect("nonempty")
    }

    pub fn boundary(&self, cell: &SuspensionCell) -> Vec<SuspensionCell> {
        match *cell {
            SuspensionCell::Apex(_) => Vec::new(),
            SuspensionCell::Base { dim, simplex } => self
                .base
                .boundary(dim, simplex)
                .into_iter()
                .map(|s| SuspensionCell::Base { dim: dim - 1, simplex: s })
                .collect(),
            SuspensionCell::Lifted { dim, simplex, cone } => {
                let mut out = vec![SuspensionCell::Base { dim, simplex }];
                if dim == 0 {
                    out.push(SuspensionCell::Apex(cone));
                } else {
                    out.extend(
                        self.base
                            .boundary(dim, simplex)
                            .into_iter()
                            .map(|s| SuspensionCell::Lifted { dim: dim - 1, simplex: s, cone }),
                    );
                }
                out
            }
        }
    }

    /// Whether the mod-2 boundary of every boundary vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.cells.iter().flatten().all(|c| {
            let mut parity: HashMap<SuspensionCell, usize> = HashMap::new();
            for f in self.boundary(c) {
                for g in self.boundary(&f) {
                    *parity.entry(g).or_default() += 1;
                }
            }
            parity.values().all(|p| p % 2 == 0)
        })
    }
}
