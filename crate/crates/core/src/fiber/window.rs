use std::collections::HashMap;
use std::sync::Arc;

use super::FpCell;
use crate::error::{Error, Result};
use crate::ncp::NcpLattice;

/// A face of a window cell: either a cell of the window (by index within
/// its dimension) or a cell whose height falls outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowFace {
    Inside(usize),
    Outside(FpCell),
}

/// All cells `(m, σ)` of `X_{P*}` with `lo ≤ m ≤ hi`, any initialized chain.
#[derive(Debug, Clone)]
pub struct XpWindow {
    lattice: Arc<NcpLattice>,
    lo: i64,
    hi: i64,
    cells: Vec<Vec<FpCell>>,
    index: HashMap<FpCell, usize>,
    faces: Vec<Vec<Vec<(WindowFace, i64)>>>,
}

impl XpWindow {
    pub fn build(lattice: Arc<NcpLattice>, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Shape(format!("empty window [{lo}, {hi}]")));
        }
        let chains = lattice.all_chains();
        let cells: Vec<Vec<FpCell>> = chains
            .iter()
            .map(|level| {
                let mut cs: Vec<FpCell> =
                    (lo..=hi).flat_map(|m| level.iter().map(move |c| FpCell::new(m, c.clone()))).collect();
                cs.sort();
                cs
            })
            .collect();
        let index: HashMap<FpCell, usize> =
            cells.iter().flat_map(|l| l.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
        let faces = cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| {
                        c.faces(&lattice)
                            .into_iter()
                            .map(|(f, s)| match index.get(&f) {
                                Some(&i) => (WindowFace::Inside(i), s),
                                None => (WindowFace::Outside(f), s),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(XpWindow { lattice, lo, hi, cells, index, faces })
    }

    pub fn lattice(&self) -> &NcpLattice {
        &self.lattice
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains_height(&self, m: i64) -> bool {
        (self.lo..=self.hi).contains(&m)
    }

    pub fn cells(&self, dim: usize) -> &[FpCell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Number of cell dimensions, `n + 1`.
    pub fn levels(&self) -> usize {
        self.cells.len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, cell: &FpCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn faces(&self, dim: usize, index: usize) -> &[(WindowFace, i64)] {
        &self.faces[dim][index]
    }

    /// Whether every face of the cell lies in the window.
    pub fn is_closed(&self, dim: usize, index: usize) -> bool {
        self.faces[dim][index].iter().all(|(f, _)| matches!(f, WindowFace::Inside(_)))
    }

    /// For each cell, the window cells having it as a face.
    pub fn cofaces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut co: Vec<Vec<Vec<usize>>> = self.cells.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for k in 1..self.cells.len() {
            for (i, fs) in self.faces[k].iter().enumerate() {
                for (f, _) in fs {
                    if let WindowFace::Inside(f) = f {
                        if !co[k - 1][*f].contains(&i) {
                            co[k - 1][*f].push(i);
                        }
                    }
                }
            }
        }
        co
    }

    /// `∂∂ = 0` on every cell whose faces and faces of faces all lie in the
    /// window. Returns the number of cells checked.
    pub fn check_boundary_squared(&self) -> Result<usize> {
        let mut checked = 0;
        for k in 2..self.cells.len() {
            'cell: for i in 0..self.cells[k].len() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (f, s) in &self.faces[k][i] {
                    let WindowFace::Inside(f) = f else { continue 'cell };
                    for (g, t) in &self.faces[k - 1][*f] {
                        let WindowFace::Inside(g) = g else { continue 'cell };
                        *acc.entry(*g).or_default() += s * t;
                    }
                }
                if let Some((g, v)) = acc.into_iter().find(|&(_, v)| v != 0) {
                    return Err(Error::Structural(format!(
                        "∂∂{} has coefficient {v} on {}",
                        self.cells[k][i].describe(&self.lattice),
                        self.cells[k - 2][g].describe(&self.lattice)
                    )));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::ReflectionGroup;
    use crate::ncp::InitializedChain;

    fn lattice(spec: &str) -> Arc<NcpLattice> {
        let g = Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap());
        Arc::new(NcpLattice::canonical(g).unwrap())
    }

    #[test]
    fn dihedral_single_height() {
        let w = XpWindow::build(lattice("I2_5"), 0, 0).unwrap();
        assert_eq!(w.counts(), vec![1, 6, 5]);
        for c in w.cells(2) {
            assert_eq!(c.chain.last(), Some(w.lattice().top()));
        }
    }

    #[test]
    fn top_face_of_chain_through_gamma() {
        let l = lattice("I2_4");
        let w = XpWindow::build(Arc::clone(&l), -1, 1).unwrap();
        let r = l.truncate(1, 1)[0];
        let cell = FpCell::new(0, InitializedChain::from_nodes(vec![r, l.top()]));
        let top = cell.top_face(&l).unwrap();
        assert_eq!(top.height, 1);
        assert_eq!(top.chain.nodes(), &[l.quotient(r, l.top()).unwrap()]);
        let i = w.index_of(&cell).unwrap();
        assert!(w.is_closed(2, i));
        let j = w.index_of(&FpCell::new(1, cell.chain.clone())).unwrap();
        assert!(matches!(w.faces(2, j)[0], (WindowFace::Outside(_), 1)));
    }

    #[test]
    fn a3_window_census() {
        let l = lattice("A3");
        let w = XpWindow::build(Arc::clone(&l), -1, 2).unwrap();
        let per_height: Vec<usize> = l.all_chains().iter().map(Vec::len).collect();
        assert_eq!(w.counts(), per_height.iter().map(|c| 4 * c).collect::<Vec<_>>());
        assert!(w.check_boundary_squared().unwrap() > 0);
    }

    #[test]
    fn reversed_window_is_rejected() {
        assert!(XpWindow::build(lattice("A2"), 2, 1).is_err());
    }
}
