use std::collections::VecDeque;

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    /// The Petersen graph as the Kneser graph K(5, 2).
    pub fn petersen() -> Self {
        let pairs: Vec<u8> = (0..5u8)
            .flat_map(|i| (i + 1..5).map(move |j| (1 << i) | (1 << j)))
            .collect();
        let mut edges = Vec::new();
        for (a, &x) in pairs.iter().enumerate() {
            for (b, &y) in pairs.iter().enumerate().skip(a + 1) {
                if x & y == 0 {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(pairs.len(), &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Length of a shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.adj.len() {
            let mut dist = vec![usize::MAX; self.adj.len()];
            let mut parent = vec![usize::MAX; self.adj.len()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// An explicit isomorphism `self -> other` (`map[v]` is the image of `v`),
    /// found by backtracking; every returned map is checked edge by edge.
    pub fn isomorphism_to(&self, other: &Graph) -> Option<Vec<usize>> {
        let n = self.adj.len();
        if n != other.adj.len() || self.edge_count() != other.edge_count() {
            return None;
        }
        let mut deg_a: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut deg_b: Vec<usize> = other.adj.iter().map(Vec::len).collect();
        deg_a.sort_unstable();
        deg_b.sort_unstable();
        if deg_a != deg_b {
            return None;
        }
        // BFS order so each new vertex has an already-mapped neighbour when possible
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend(other, &order, 0, &mut map, &mut used) {
            debug_assert!(self.edges().iter().all(|&(a, b)| other.adj[map[a]].contains(&map[b])));
            Some(map)
        } else {
            None
        }
    }

    fn extend(&self, other: &Graph, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for cand in 0..other.adj.len() {
            if used[cand] || other.adj[cand].len() != self.adj[v].len() {
                continue;
            }
            let consistent = self.adj[v]
                .iter()
                .filter(|&&w| map[w] != usize::MAX)
                .all(|&w| other.adj[cand].contains(&map[w]))
                && (0..self.adj.len())
                    .filter(|&w| map[w] != usize::MAX && !self.adj[v].contains(&w))
                    .all(|w| !other.adj[cand].contains(&map[w]));
            if !consistent {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if self.extend(other, order, k + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }

    /// Graphviz edge list.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("graph {name} {{\n");
        for (v, label) in labels.iter().enumerate().take(self.adj.len()) {
            out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}
