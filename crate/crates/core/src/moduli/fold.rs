use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{cubes, CubeLabel};
use super::{CellLabel, CoverSpec, ModuliError, QuotientComplex};
use crate::trees::ExtWeight;
use crate::treespace::{suspension, BhvPoint, BinaryTopology, Clade, Cone, SuspensionCell, SuspensionComplex};

/// Clade of each bracket of a labeled binary tree, read with mark 0 as the root:
/// the labels below the bracket, or the other side when mark 0 is below it.
pub fn cube_clades(cube: &CubeLabel) -> Vec<Clade> {
    let n = cube.vertex.n();
    let all: Clade = (1u64 << n) - 1;
    cube.vertex
        .brackets()
        .iter()
        .map(|&(lo, hi)| {
            let below: Vec<u8> = cube.sigma[lo as usize..=hi as usize].to_vec();
            let clade: Clade = below.iter().filter(|&&l| l > 0).map(|&l| 1u64 << (l - 1)).sum();
            if below.contains(&0) {
                all & !clade
            } else {
                clade
            }
        })
        .collect()
}

pub fn cube_topology(cube: &CubeLabel) -> Result<BinaryTopology, ModuliError> {
    Ok(BinaryTopology::new(cube.vertex.n(), cube_clades(cube))?)
}

/// Where each cube of the orientation cover lands in the suspension of `T_n`.
///
/// A cube maps onto the cone over the top simplex of its tree shape. Over each
/// shape lie exactly two vertex classes, the two orientations of the tree;
/// the lesser one folds onto the lower cone and the other onto the upper.
#[derive(Clone, Debug)]
pub struct FoldMap {
    pub suspension: SuspensionComplex,
    sheet: Vec<Cone>,
}

impl FoldMap {
    pub fn new(c: &QuotientComplex) -> Result<Self, ModuliError> {
        if c.cover != CoverSpec::Orientation {
            return Err(ModuliError::Domain("the fold is defined on the orientation cover".into()));
        }
        let suspension = suspension(c.n)?;
        let mut by_shape: BTreeMap<BinaryTopology, Vec<usize>> = BTreeMap::new();
        for v in 0..c.cells[0].len() {
            let mut shapes = c
                .members(0, v)
                .into_iter()
                .map(|m| cube_topology(&CubeLabel { vertex: m.face, sigma: m.sigma }));
            let first = shapes.next().expect("nonempty class")?;
            for s in shapes {
                if s? != first {
                    return Err(ModuliError::Inconsistent(format!("vertex class {v} has two tree shapes")));
                }
            }
            by_shape.entry(first).or_default().push(v);
        }
        let mut sheet = vec![Cone::Lower; c.cells[0].len()];
        for (shape, vs) in &by_shape {
            match vs.as_slice() {
                [_, upper] => sheet[*upper] = Cone::Upper,
                _ => {
                    return Err(ModuliError::Inconsistent(format!(
                        "{} vertex classes over {:?}",
                        vs.len(),
                        shape.clades()
                    )));
                }
            }
        }
        Ok(FoldMap { suspension, sheet })
    }

    fn sheet_of(&self, c: &QuotientComplex, cube: &CubeLabel) -> Result<Cone, ModuliError> {
        let cell = CellLabel::new(cube.vertex.clone(), cube.sigma.clone())?;
        match c.class_of(&cell) {
            Some((0, v)) => Ok(self.sheet[v]),
            _ => Err(ModuliError::Domain(format!("{cell} is not a vertex of the complex"))),
        }
    }

    /// The top suspension cell a cube folds onto.
    pub fn fold_cube(&self, c: &QuotientComplex, cube: &CubeLabel) -> Result<SuspensionCell, ModuliError> {
        let shape = cube_topology(cube)?;
        let simplex = self
            .suspension
            .base
            .top_simplex(&shape)
            .ok_or_else(|| ModuliError::Inconsistent("tree shape missing from T_n".into()))?;
        Ok(SuspensionCell::Lifted { dim: c.n - 3, simplex, cone: self.sheet_of(c, cube)? })
    }

    /// The suspension cell containing the image of an open face of a cube.
    pub fn fold_cell(&self, c: &QuotientComplex, cell: &CubeCell) -> Result<SuspensionCell, ModuliError> {
        if cell.states.len() != cell.cube.vertex.brackets().len() {
            return Err(ModuliError::Domain("one state per edge of the cube".into()));
        }
        if cell.states.contains(&EdgeState::Infinite) {
            return Ok(SuspensionCell::Apex(Cone::Upper));
        }
        let clades = cube_clades(&cell.cube);
        let mut verts: Vec<usize> = Vec::new();
        for (clade, state) in clades.iter().zip(&cell.states) {
            if *state == EdgeState::Open {
                let v = self.suspension.base.vertices.binary_search(clade).map_err(|_| {
                    ModuliError::Inconsistent("clade missing from T_n".into())
                })?;
                verts.push(v);
            }
        }
        if verts.is_empty() {
            return Ok(SuspensionCell::Apex(Cone::Lower));
        }
        verts.sort_unstable();
        let simplex = self
            .suspension
            .base
            .index_of(&verts)
            .ok_or_else(|| ModuliError::Inconsistent("clades of one tree are not a simplex".into()))?;
        Ok(SuspensionCell::Lifted { dim: verts.len() - 1, simplex, cone: self.sheet_of(c, &cell.cube)? })
    }

    /// Image of a point of a cube: the corolla goes to the cone point and any
    /// broken edge to the point at infinity.
    pub fn fold_point(
        &self,
        c: &QuotientComplex,
        cube: &CubeLabel,
        coords: &[ExtWeight],
    ) -> Result<FoldedPoint, ModuliError> {
        if coords.len() != cube.vertex.brackets().len() {
            return Err(ModuliError::Domain("one coordinate per edge of the cube".into()));
        }
        if coords.iter().any(|w| w.is_infinite()) {
            return Ok(FoldedPoint::Infinity);
        }
        let scale: f64 = coords.iter().map(|w| w.value()).sum();
        if scale == 0.0 {
            return Ok(FoldedPoint::Cone);
        }
        let shape = cube_topology(cube)?;
        let clades = cube_clades(cube);
        let weights = shape
            .clades()
            .iter()
            .map(|k| coords[clades.iter().position(|x| x == k).expect("same clades")].value() / scale)
            .collect();
        Ok(FoldedPoint::Tree { cone: self.sheet_of(c, cube)?, scale, tree: BhvPoint::new(shape, weights)? })
    }
}

/// State of one coordinate on an open face of a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeState {
    Zero,
    Open,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeCell {
    pub cube: CubeLabel,
    pub states: Vec<EdgeState>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FoldedPoint {
    /// The corolla.
    Cone,
    /// The compactification point.
    Infinity,
    /// A tree of total weight `scale` with sum-normalised weights, on one cone.
    Tree { cone: Cone, scale: f64, tree: BhvPoint },
}

pub fn fold_cell(c: &QuotientComplex, cell: &CubeCell) -> Result<SuspensionCell, ModuliError> {
    FoldMap::new(c)?.fold_cell(c, cell)
}

/// Number of cubes folding onto a top suspension cell.
pub fn fiber_count(c: &QuotientComplex, target: &SuspensionCell) -> Result<usize, ModuliError> {
    Ok(fiber_counts(c)?
        .into_iter()
        .find(|(t, _)| t == target)
        .ok_or_else(|| ModuliError::Domain(format!("{target:?} is not a top cell of the suspension")))?
        .1)
}

/// Fiber size over every top suspension cell.
pub fn fiber_counts(c: &QuotientComplex) -> Result<Vec<(SuspensionCell, usize)>, ModuliError> {
    let map = FoldMap::new(c)?;
    let mut counts: BTreeMap<SuspensionCell, usize> =
        map.suspension.top_cells().iter().map(|&t| (t, 0)).collect();
    for cube in cubes(c) {
        let t = map.fold_cube(c, &cube)?;
        *counts
            .get_mut(&t)
            .ok_or_else(|| ModuliError::Inconsistent(format!("{t:?} is not a top cell")))? += 1;
    }
    Ok(counts.into_iter().collect())
}
