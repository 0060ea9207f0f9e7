use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::cell::{perm_rank, permutations};
use super::{CellLabel, CoverSpec, ModuliError};
use crate::associahedron::{catalan, faces, Bracketing};
use crate::treespace::double_factorial;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// The smaller root wins, so every class is rooted at its least member.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Numbering of `K_n x S_{n+1}` compatible with the order on [`CellLabel`].
#[derive(Clone, Debug)]
struct CellIndex {
    faces: Vec<Bracketing>,
    face_pos: HashMap<Bracketing, usize>,
    perms: Vec<Vec<u8>>,
}

impl CellIndex {
    fn new(n: usize) -> Result<Self, ModuliError> {
        let mut faces = faces(n)?;
        faces.sort();
        let face_pos = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        Ok(CellIndex { faces, face_pos, perms: permutations(n + 1) })
    }

    fn len(&self) -> usize {
        self.faces.len() * self.perms.len()
    }

    fn id(&self, c: &CellLabel) -> u32 {
        (self.face_pos[&c.face] * self.perms.len() + perm_rank(&c.sigma)) as u32
    }

    fn cell(&self, id: u32) -> CellLabel {
        let id = id as usize;
        CellLabel { face: self.faces[id / self.perms.len()].clone(), sigma: self.perms[id % self.perms.len()].clone() }
    }
}

/// A quotient of `K_n x S_{n+1}` by the morphisms of a [`CoverSpec`].
#[derive(Clone, Debug, Serialize)]
pub struct QuotientComplex {
    pub n: usize,
    pub cover: CoverSpec,
    /// `cells[k]` holds the least member of each k-dimensional class, sorted.
    pub cells: Vec<Vec<CellLabel>>,
    /// `boundary[k][i]` lists the (k-1)-classes on the boundary of class `i`,
    /// with multiplicity, sorted.
    pub boundary: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    index: CellIndex,
    #[serde(skip)]
    class: Vec<u32>,
    #[serde(skip)]
    members: Vec<Vec<Vec<u32>>>,
}

const INACTIVE: u32 = u32::MAX;

/// Glues the cells of `K_n x S_{n+1}` along the generating morphisms of `cover`.
pub fn enumerate_complex(n: usize, cover: CoverSpec) -> Result<QuotientComplex, ModuliError> {
    if !(3..=5).contains(&n) {
        return Err(ModuliError::Resource(format!(
            "the cell complex is enumerated for 3 <= n <= 5, got {n}"
        )));
    }
    let index = CellIndex::new(n)?;
    let total = index.len();
    let mut uf = UnionFind::new(total);
    let mut active = vec![false; total];
    for id in 0..total as u32 {
        let cell = index.cell(id);
        if !cover.admits(&cell.sigma) {
            continue;
        }
        active[id as usize] = true;
        for next in cell.neighbours(cover) {
            uf.union(id, index.id(&next));
        }
    }

    let mut cells: Vec<Vec<CellLabel>> = vec![Vec::new(); n - 1];
    let mut class = vec![INACTIVE; total];
    let mut members: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n - 1];
    for id in 0..total as u32 {
        if !active[id as usize] {
            continue;
        }
        let root = uf.find(id);
        if root == id {
            let c = index.cell(id);
            let k = c.dimension();
            class[id as usize] = cells[k].len() as u32;
            cells[k].push(c);
            members[k].push(Vec::new());
        }
        let k = index.faces[id as usize / index.perms.len()].dimension();
        let ci = class[root as usize];
        class[id as usize] = ci;
        members[k][ci as usize].push(id);
    }

    let mut complex = QuotientComplex { n, cover, cells, boundary: Vec::new(), index, class, members };
    complex.boundary = complex.compute_boundary()?;
    if !complex.boundary_squares_to_zero() {
        return Err(ModuliError::Inconsistent("boundary of a boundary is nonzero mod 2".into()));
    }
    Ok(complex)
}

impl QuotientComplex {
    fn class_id(&self, c: &CellLabel) -> usize {
        self.class[self.index.id(c) as usize] as usize
    }

    /// Faces of one member, as classes one dimension down.
    fn member_boundary(&self, c: &CellLabel) -> Vec<usize> {
        let mut out: Vec<usize> = c
            .face
            .addable()
            .into_iter()
            .map(|b| self.class_id(&CellLabel { face: c.face.with(b), sigma: c.sigma.clone() }))
            .collect();
        out.sort_unstable();
        out
    }

    /// Boundaries of the representatives, checked against every other member.
    fn compute_boundary(&self) -> Result<Vec<Vec<Vec<usize>>>, ModuliError> {
        let mut out = vec![vec![Vec::new(); self.cells[0].len()]];
        for k in 1..self.cells.len() {
            let mut level = Vec::with_capacity(self.cells[k].len());
            for (i, rep) in self.cells[k].iter().enumerate() {
                let b = self.member_boundary(rep);
                for &m in &self.members[k][i] {
                    if self.member_boundary(&self.index.cell(m)) != b {
                        return Err(ModuliError::Inconsistent(format!(
                            "boundary of class {rep} depends on the representative"
                        )));
                    }
                }
                level.push(b);
            }
            out.push(level);
        }
        Ok(out)
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.cells.len()).all(|k| {
            self.boundary[k].iter().all(|faces| {
                let mut parity: HashMap<usize, u32> = HashMap::new();
                for &f in faces {
                    for &g in &self.boundary[k - 1][f] {
                        *parity.entry(g).or_default() ^= 1;
                    }
                }
                parity.values().all(|&p| p == 0)
            })
        })
    }

    pub fn dimension(&self) -> usize {
        self.n - 2
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Dimension and index of the class containing `cell`.
    pub fn class_of(&self, cell: &CellLabel) -> Option<(usize, usize)> {
        if cell.n() != self.n || !self.cover.admits(&cell.sigma) {
            return None;
        }
        Some((cell.dimension(), self.class_id(cell)))
    }

    pub fn members(&self, dim: usize, class: usize) -> Vec<CellLabel> {
        self.members[dim][class].iter().map(|&id| self.index.cell(id)).collect()
    }

    pub fn orbit_size(&self, dim: usize, class: usize) -> usize {
        self.members[dim][class].len()
    }

    /// Every labeled cell that is part of the complex, in order.
    pub(crate) fn all_cells(&self) -> impl Iterator<Item = CellLabel> + '_ {
        (0..self.index.len() as u32)
            .filter(|&id| self.class[id as usize] != INACTIVE)
            .map(|id| self.index.cell(id))
    }

    /// Graphviz incidence of the 2-skeleton: one node per class of dimension
    /// at most 2, one edge per boundary incidence.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph M{}_{} {{\n", self.n + 1, self.cover.name());
        for k in 0..self.cells.len().min(3) {
            for (i, c) in self.cells[k].iter().enumerate() {
                out.push_str(&format!("  c{k}_{i} [label=\"{c}\"];\n"));
            }
        }
        for k in 1..self.cells.len().min(3) {
            for (i, faces) in self.boundary[k].iter().enumerate() {
                for f in faces {
                    out.push_str(&format!("  c{k}_{i} -- c{}_{f};\n", k - 1));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn euler_characteristic(c: &QuotientComplex) -> i64 {
    c.counts()
        .iter()
        .enumerate()
        .map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) })
        .sum()
}

/// Number of associahedral tiles.
pub fn tile_count(c: &QuotientComplex) -> usize {
    c.cells[c.dimension()].len()
}

/// A cube of the tiling: the cube of chart `vertex` in the tile labeled by `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubeLabel {
    pub vertex: Bracketing,
    pub sigma: Vec<u8>,
}

impl CubeLabel {
    fn as_cell(&self) -> CellLabel {
        CellLabel { face: self.vertex.clone(), sigma: self.sigma.clone() }
    }

    /// Least label of the same cube: tiles are identified by rotations (and
    /// reflections for the full quotient), which carry their cubes along.
    pub(crate) fn canonical(&self, cover: CoverSpec) -> CubeLabel {
        let base = self.as_cell();
        let mut images = vec![base.clone()];
        if cover != CoverSpec::Kapranov {
            let mut cur = base;
            for _ in 1..self.sigma.len() {
                cur = cur.rotate();
                images.push(cur.clone());
            }
        }
        if cover == CoverSpec::Full {
            let mirrored: Vec<CellLabel> = images.iter().map(CellLabel::reflect).collect();
            images.extend(mirrored);
        }
        let least = images.into_iter().min().expect("nonempty orbit");
        CubeLabel { vertex: least.face, sigma: least.sigma }
    }
}

/// Least representatives of all cubes, sorted.
pub fn cubes(c: &QuotientComplex) -> Vec<CubeLabel> {
    let set: BTreeSet<CubeLabel> = c
        .all_cells()
        .filter(|cell| cell.face.is_full())
        .map(|cell| CubeLabel { vertex: cell.face, sigma: cell.sigma }.canonical(c.cover))
        .collect();
    set.into_iter().collect()
}

fn require_orientation(c: &QuotientComplex, what: &str) -> Result<(), ModuliError> {
    if c.cover != CoverSpec::Orientation {
        return Err(ModuliError::Domain(format!("{what} is defined on the orientation cover")));
    }
    Ok(())
}

/// Number of cubes in the orientation cover, checked against the tile count
/// and against `2^{n-1} (2n-3)!!`.
pub fn cube_count(c: &QuotientComplex) -> Result<u128, ModuliError> {
    require_orientation(c, "cube_count")?;
    let counted = cubes(c).len() as u128;
    let by_tiles = tile_count(c) as u128 * catalan(c.n)?;
    let by_orthants = (1u128 << (c.n - 1)) * double_factorial(2 * c.n as u128 - 3);
    if counted != by_tiles || counted != by_orthants {
        return Err(ModuliError::Inconsistent(format!(
            "{counted} cubes, {by_tiles} from tiles, {by_orthants} from orthants"
        )));
    }
    Ok(counted)
}

/// Number of tiles meeting at vertex class `vertex`, counted as the cubes
/// having that vertex as their far corner.
pub fn vertex_figure(c: &QuotientComplex, vertex: usize) -> Result<usize, ModuliError> {
    require_orientation(c, "vertex_figure")?;
    if vertex >= c.cells[0].len() {
        return Err(ModuliError::Domain(format!("no vertex {vertex}")));
    }
    let set: BTreeSet<CubeLabel> = c
        .members(0, vertex)
        .into_iter()
        .map(|m| CubeLabel { vertex: m.face, sigma: m.sigma }.canonical(c.cover))
        .collect();
    Ok(set.len())
}

/// Whether the tiles of a surface (`n = 4`) can be oriented consistently.
///
/// Every tile is a copy of the pentagon `K_4` with one fixed orientation. The
/// morphisms act on tiles and edges as maps of the pentagon; tracking their
/// effect on orientations gives, for each edge, a parity constraint between
/// the two tiles along it, solved by propagation over the dual graph.
pub fn orientability(c: &QuotientComplex) -> Result<bool, ModuliError> {
    if c.n != 4 {
        return Err(ModuliError::Unsupported(format!("orientability needs a surface (n = 4), got n = {}", c.n)));
    }
    let pentagon = Pentagon::new();

    // orientation of each tile member relative to its class representative
    let mut tile_sign: HashMap<CellLabel, i8> = HashMap::new();
    for rep in &c.cells[2] {
        let mut queue = VecDeque::from([(rep.clone(), 1i8)]);
        tile_sign.insert(rep.clone(), 1);
        while let Some((cell, s)) = queue.pop_front() {
            let mut next = Vec::new();
            if c.cover != CoverSpec::Kapranov {
                next.push((cell.rotate(), s * pentagon.degree(Bracketing::rotated)));
            }
            if c.cover == CoverSpec::Full {
                next.push((cell.reflect(), s * pentagon.degree(Bracketing::reflected)));
            }
            for (m, t) in next {
                match tile_sign.get(&m) {
                    Some(&old) if old != t => return Ok(false),
                    Some(_) => {}
                    None => {
                        tile_sign.insert(m.clone(), t);
                        queue.push_back((m, t));
                    }
                }
            }
        }
    }

    // for each edge class: the tiles along it with the orientation they induce
    let mut constraints: Vec<(usize, usize, i8)> = Vec::new();
    for (e, rep) in c.cells[1].iter().enumerate() {
        let start = pentagon.start(rep);
        let mut frame: HashMap<CellLabel, CellLabel> = HashMap::from([(rep.clone(), start)]);
        let mut queue = VecDeque::from([rep.clone()]);
        while let Some(cell) = queue.pop_front() {
            let v = frame[&cell].clone();
            let b = cell.face.brackets()[0];
            let mut next = vec![(cell.cover_twist(b, c.cover)?, v.cover_twist(b, c.cover)?)];
            if c.cover != CoverSpec::Kapranov {
                next.push((cell.rotate(), v.rotate()));
            }
            if c.cover == CoverSpec::Full {
                next.push((cell.reflect(), v.reflect()));
            }
            for (m, w) in next {
                match frame.get(&m) {
                    Some(old) if *old != w => return Ok(false),
                    Some(_) => {}
                    None => {
                        frame.insert(m.clone(), w);
                        queue.push_back(m);
                    }
                }
            }
        }
        let mut sides: BTreeSet<(usize, i8)> = BTreeSet::new();
        for (m, v) in &frame {
            let along = if pentagon.start(m) == *v { 1 } else { -1 };
            let tile = CellLabel { face: Bracketing::empty(4), sigma: m.sigma.clone() };
            sides.insert((c.class_id(&tile), along * tile_sign[&tile]));
        }
        let sides: Vec<(usize, i8)> = sides.into_iter().collect();
        match sides.as_slice() {
            [(a, x), (b, y)] => constraints.push((*a, *b, -x * y)),
            [_] => return Ok(false),
            _ => {
                return Err(ModuliError::Inconsistent(format!("edge {e} borders {} tile sides", sides.len())));
            }
        }
    }

    // s(b) = rel * s(a) for every constraint
    let tiles = c.cells[2].len();
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); tiles];
    for &(a, b, rel) in &constraints {
        adj[a].push((b, rel));
        adj[b].push((a, rel));
    }
    let mut sign = vec![0i8; tiles];
    for s in 0..tiles {
        if sign[s] != 0 {
            continue;
        }
        sign[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &(b, rel) in &adj[a] {
                let want = rel * sign[a];
                if sign[b] == 0 {
                    sign[b] = want;
                    queue.push_back(b);
                } else if sign[b] != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The pentagon `K_4` with its vertices in cyclic order.
struct Pentagon {
    cycle: Vec<Bracketing>,
}

impl Pentagon {
    fn new() -> Self {
        let verts: Vec<Bracketing> = faces(4).expect("n = 4").into_iter().filter(Bracketing::is_full).collect();
        let adjacent = |a: &Bracketing, b: &Bracketing| a.brackets().iter().filter(|&&x| b.contains(x)).count() == 1;
        let mut cycle = vec![verts[0].clone()];
        while cycle.len() < verts.len() {
            let last = cycle.last().expect("nonempty");
            let next = verts
                .iter()
                .find(|v| adjacent(last, v) && !cycle.contains(v))
                .expect("the 1-skeleton of K_4 is a 5-cycle")
                .clone();
            cycle.push(next);
        }
        Pentagon { cycle }
    }

    fn position(&self, v: &Bracketing) -> usize {
        self.cycle.iter().position(|x| x == v).expect("vertex of K_4")
    }

    /// +1 when `f` preserves the cyclic order of the vertices, -1 when it reverses it.
    fn degree(&self, f: fn(&Bracketing) -> Bracketing) -> i8 {
        let a = self.position(&f(&self.cycle[0]));
        let b = self.position(&f(&self.cycle[1]));
        if (b + 5 - a) % 5 == 1 {
            1
        } else {
            -1
        }
    }

    /// The vertex at which the edge `cell` starts when its tile is traversed in cyclic order.
    fn start(&self, cell: &CellLabel) -> CellLabel {
        let b = cell.face.brackets()[0];
        let ends: Vec<usize> = (0..5).filter(|&i| self.cycle[i].contains(b)).collect();
        let first = if (ends[1] + 5 - ends[0]) % 5 == 1 { ends[0] } else { ends[1] };
        CellLabel { face: self.cycle[first].clone(), sigma: cell.sigma.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circles_for_n3() {
        let full = enumerate_complex(3, CoverSpec::Full).unwrap();
        assert_eq!(full.counts(), vec![3, 3]);
        assert_eq!(euler_characteristic(&full), 0);
        let or = enumerate_complex(3, CoverSpec::Orientation).unwrap();
        assert_eq!(or.counts(), vec![6, 6]);
        assert_eq!(tile_count(&or), 6);
        assert_eq!(cube_count(&or).unwrap(), 12);
        // every vertex of a circle lies on two intervals
        assert!((0..6).all(|v| vertex_figure(&or, v).unwrap() == 2));
    }

    #[test]
    fn surfaces_for_n4() {
        let full = enumerate_complex(4, CoverSpec::Full).unwrap();
        assert_eq!(full.counts(), vec![15, 30, 12]);
        assert_eq!(euler_characteristic(&full), -3);
        assert!(!orientability(&full).unwrap());

        let or = enumerate_complex(4, CoverSpec::Orientation).unwrap();
        assert_eq!(or.counts(), vec![30, 60, 24]);
        assert_eq!(euler_characteristic(&or), -6);
        assert!(orientability(&or).unwrap());
        assert_eq!(cube_count(&or).unwrap(), 120);
        assert!((0..30).all(|v| vertex_figure(&or, v).unwrap() == 4));

        let kap = enumerate_complex(4, CoverSpec::Kapranov).unwrap();
        assert_eq!(tile_count(&kap), 24);
        assert_eq!(euler_characteristic(&kap), -6);
        assert!(!orientability(&kap).unwrap());
    }

    #[test]
    fn three_dimensional_cover() {
        let or = enumerate_complex(5, CoverSpec::Orientation).unwrap();
        assert_eq!(tile_count(&or), 120);
        assert_eq!(cube_count(&or).unwrap(), 1680);
        let v = or.cells[0].len();
        assert!((0..v).all(|i| vertex_figure(&or, i).unwrap() == 8));
        let full = enumerate_complex(5, CoverSpec::Full).unwrap();
        assert_eq!(tile_count(&full), 60);
        assert!(matches!(orientability(&full), Err(ModuliError::Unsupported(_))));
    }

    #[test]
    fn representatives_are_least_members() {
        let c = enumerate_complex(4, CoverSpec::Full).unwrap();
        for k in 0..3 {
            for (i, rep) in c.cells[k].iter().enumerate() {
                assert!(c.members(k, i).iter().all(|m| m >= rep));
                assert_eq!(c.class_of(rep), Some((k, i)));
            }
        }
    }

    #[test]
    fn range_and_cover_checks() {
        assert!(matches!(enumerate_complex(6, CoverSpec::Full), Err(ModuliError::Resource(_))));
        let full = enumerate_complex(3, CoverSpec::Full).unwrap();
        assert!(cube_count(&full).is_err());
        assert!(vertex_figure(&full, 0).is_err());
    }
}
