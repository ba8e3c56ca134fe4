use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{CellExport, ComplexExport, FpCell, FpComplex};
use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::ncp::{InitializedChain, NcpLattice};

/// A cell `(m, w, e < w₁ < … < w_k)` of `F̂_Q`; `element` is a group id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqCell {
    pub height: i64,
    pub element: usize,
    pub chain: InitializedChain,
}

impl FqCell {
    pub fn new(height: i64, element: usize, chain: InitializedChain) -> Self {
        FqCell { height, element, chain }
    }

    pub fn dim(&self) -> usize {
        self.chain.len()
    }

    /// Forgets the group coordinate.
    pub fn project(&self) -> FpCell {
        FpCell::new(self.height, self.chain.clone())
    }

    /// `(m, w), (m + |w₁|, w·w₁), …, (m + |w_k|, w·w_k)`, heights increasing.
    pub fn vertices(&self, lattice: &NcpLattice) -> Vec<(i64, usize)> {
        let g = lattice.group();
        let mut out = vec![(self.height, self.element)];
        out.extend(
            self.chain
                .nodes()
                .iter()
                .map(|&v| (self.height + lattice.rank_of(v) as i64, g.mul(self.element, lattice.element(v)))),
        );
        out
    }

    /// The cell spanned by vertices listed in increasing height, if any.
    pub fn from_vertices(lattice: &NcpLattice, vertices: &[(i64, usize)]) -> Option<FqCell> {
        let (&(m, w), rest) = vertices.split_first()?;
        let g = lattice.group();
        let mut nodes = Vec::with_capacity(rest.len());
        for &(h, u) in rest {
            let node = lattice.node(g.left_quotient(w, u))?;
            if lattice.rank_of(node) as i64 != h - m {
                return None;
            }
            nodes.push(node);
        }
        let cell = FqCell::new(m, w, InitializedChain::from_nodes(nodes));
        cell.in_fq(lattice).then_some(cell)
    }

    pub fn in_fq(&self, lattice: &NcpLattice) -> bool {
        let even = self.height.rem_euclid(2) == 0;
        self.element < lattice.group().order()
            && (lattice.group().determinant_sign(self.element) == 1) == even
            && self.project().in_fp(lattice)
    }

    /// Signed faces, top face first, as for `F̂_P`.
    pub fn faces(&self, lattice: &NcpLattice) -> Vec<(FqCell, i64)> {
        let Some(first) = self.chain.first() else { return Vec::new() };
        let (shift, shifted) = lattice.shift_chain(&self.chain);
        let top = FqCell::new(
            self.height + shift as i64,
            lattice.group().mul(self.element, lattice.element(first)),
            shifted,
        );
        let mut out = vec![(top, 1)];
        for j in 1..=self.chain.len() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.push((FqCell::new(self.height, self.element, self.chain.without(j - 1)), sign));
        }
        out
    }

    pub fn describe(&self, lattice: &NcpLattice) -> String {
        let mut parts = vec!["e".to_string()];
        parts.extend(self.chain.nodes().iter().map(|&w| lattice.repr(w)));
        format!("({}, {}, {})", self.height, lattice.group().repr(self.element), parts.join(" < "))
    }
}

/// The small model `F̂_Q`, the preimage of `F̂_P` in the `W⁺`-cover.
#[derive(Debug, Clone)]
pub struct FqComplex {
    lattice: Arc<NcpLattice>,
    cells: Vec<Vec<FqCell>>,
    index: HashMap<FqCell, usize>,
    complex: DeltaComplex,
}

impl FqComplex {
    pub fn build(fp: &FpComplex) -> Result<Self> {
        let lattice = fp.lattice_arc();
        let g = lattice.group();
        let even: Vec<usize> = (0..g.order()).filter(|&w| g.determinant_sign(w) == 1).collect();
        let odd: Vec<usize> = (0..g.order()).filter(|&w| g.determinant_sign(w) == -1).collect();
        let mut cells = Vec::new();
        for k in 0..=fp.dimension() {
            let mut level: Vec<FqCell> = fp
                .cells(k)
                .iter()
                .flat_map(|c| {
                    let ws = if c.height % 2 == 0 { &even } else { &odd };
                    ws.iter().map(move |&w| FqCell::new(c.height, w, c.chain.clone()))
                })
                .collect();
            level.sort();
            cells.push(level);
        }
        let index: HashMap<FqCell, usize> =
            cells.iter().flat_map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
        let mut faces = Vec::with_capacity(cells.len());
        for level in &cells {
            let mut lf = Vec::with_capacity(level.len());
            for c in level {
                let mut cf = Vec::new();
                for (f, s) in c.faces(&lattice) {
                    let i = index.get(&f).ok_or_else(|| {
                        Error::Structural(format!("face {} of {} leaves F̂_Q", f.describe(&lattice), c.describe(&lattice)))
                    })?;
                    cf.push((*i, s));
                }
                lf.push(cf);
            }
            faces.push(lf);
        }
        let complex = DeltaComplex::from_faces(faces)?;
        Ok(FqComplex { lattice, cells, index, complex })
    }

    pub fn lattice(&self) -> &NcpLattice {
        &self.lattice
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn cells(&self, dim: usize) -> &[FqCell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn dimension(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn index_of(&self, cell: &FqCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    /// Index of the cell spanned by `vertices` (increasing heights).
    pub fn cell_with_vertices(&self, vertices: &[(i64, usize)]) -> Option<(usize, usize)> {
        let c = FqCell::from_vertices(&self.lattice, vertices)?;
        let dim = c.dim();
        self.index_of(&c).map(|i| (dim, i))
    }

    /// Vertex heights strictly increase along every cell, every vertex set
    /// spans exactly one cell, and the faces of a cell are the cells on its
    /// codimension-one vertex subsets.
    pub fn verify_simplicial(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (k, level) in self.cells.iter().enumerate() {
            for (i, c) in level.iter().enumerate() {
                let vs = c.vertices(&self.lattice);
                if vs.windows(2).any(|p| p[0].0 >= p[1].0) {
                    return Err(Error::Structural(format!(
                        "{} has non-increasing vertex heights",
                        c.describe(&self.lattice)
                    )));
                }
                if !seen.insert(vs.clone()) {
                    return Err(Error::Structural(format!(
                        "vertex set of {} is shared with another cell",
                        c.describe(&self.lattice)
                    )));
                }
                if self.cell_with_vertices(&vs) != Some((k, i)) {
                    return Err(Error::Structural(format!(
                        "{} is not recovered from its vertices",
                        c.describe(&self.lattice)
                    )));
                }
                for (j, &(f, _)) in self.complex.faces(k, i).iter().enumerate() {
                    let mut sub = vs.clone();
                    sub.remove(j);
                    if self.cells[k - 1][f].vertices(&self.lattice) != sub {
                        return Err(Error::Structural(format!(
                            "face {j} of {} does not drop vertex {j}",
                            c.describe(&self.lattice)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(m, w, σ) ↦ (m, σ)` as indices into `fp`, per dimension.
    pub fn covering_projection(&self, fp: &FpComplex) -> Result<Vec<Vec<usize>>> {
        self.cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| {
                        fp.index_of(&c.project()).ok_or_else(|| {
                            Error::Structural(format!("{} projects outside F̂_P", c.describe(&self.lattice)))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            schema: 1,
            group: self.lattice.group().family().to_string(),
            space: "fq".into(),
            dims: self.complex.counts(),
            cells: self
                .cells
                .iter()
                .enumerate()
                .flat_map(|(dim, level)| {
                    level.iter().enumerate().map(move |(id, c)| CellExport {
                        id,
                        dim,
                        height: c.height,
                        chain: c.chain.nodes().to_vec(),
                        w: Some(c.element),
                    })
                })
                .collect(),
            boundary: self.complex.boundary_export(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::ReflectionGroup;
    use crate::homology::HomologyGroup;

    fn build(spec: &str) -> (FpComplex, FqComplex) {
        let g = Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap());
        let fp = FpComplex::build(Arc::new(NcpLattice::canonical(g).unwrap())).unwrap();
        let fq = FqComplex::build(&fp).unwrap();
        (fp, fq)
    }

    #[test]
    fn dihedral_is_complete_bipartite() {
        for t in [3usize, 4, 7] {
            let (_, fq) = build(&format!("I2_{t}"));
            assert_eq!(fq.complex().counts(), vec![2 * t, t * t]);
            let g = fq.lattice().group();
            for v in fq.cells(0) {
                let rotation = g.determinant_sign(v.element) == 1;
                assert_eq!(rotation, v.height == 0);
            }
            let mut pairs = HashSet::new();
            for i in 0..fq.cells(1).len() {
                let b = fq.complex().faces(1, i);
                let ends: Vec<i64> = b.iter().map(|&(f, _)| fq.cells(0)[f].height).collect();
                assert_eq!(ends, vec![1, 0]);
                pairs.insert((b[0].0, b[1].0));
            }
            assert_eq!(pairs.len(), t * t);
            assert_eq!(
                fq.complex().homology().unwrap(),
                vec![HomologyGroup::free(1), HomologyGroup::free((t - 1) * (t - 1))]
            );
            fq.verify_simplicial().unwrap();
        }
    }

    #[test]
    fn a2_matches_k33() {
        let (_, fq) = build("A2");
        assert_eq!(fq.complex().counts(), vec![6, 9]);
    }

    #[test]
    fn a3_counts_and_projection() {
        let (fp, fq) = build("A3");
        let half = fq.lattice().group().order() / 2;
        let expected: Vec<usize> = fp.complex().counts().iter().map(|c| c * half).collect();
        assert_eq!(fq.complex().counts(), expected);
        fq.complex().check_boundary_squared().unwrap();
        fq.verify_simplicial().unwrap();
        let proj = fq.covering_projection(&fp).unwrap();
        for (k, level) in proj.iter().enumerate() {
            let mut fibre = vec![0usize; fp.cells(k).len()];
            for (i, &p) in level.iter().enumerate() {
                fibre[p] += 1;
                let up: Vec<usize> = fq.complex().faces(k, i).iter().map(|&(f, _)| proj[k - 1][f]).collect();
                let down: Vec<usize> = fp.complex().faces(k, p).iter().map(|&(f, _)| f).collect();
                assert_eq!(up, down);
            }
            assert!(fibre.iter().all(|&c| c == half));
        }
    }

    #[test]
    fn deck_translation_preserves_cells() {
        let (_, fq) = build("I2_5");
        let g = fq.lattice().group();
        for v in (0..g.order()).filter(|&v| g.determinant_sign(v) == 1) {
            for c in fq.cells(1) {
                let moved = FqCell::new(c.height, g.mul(v, c.element), c.chain.clone());
                assert!(fq.index_of(&moved).is_some());
                assert_eq!(moved.project(), c.project());
            }
        }
    }
}
