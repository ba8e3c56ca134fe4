use std::collections::HashMap;
use std::sync::Arc;

use super::{CellExport, ComplexExport, FpCell};
use crate::complex::{CellSet, DeltaComplex};
use crate::error::{Error, Result};
use crate::ncp::{InitializedChain, NcpLattice};

/// Signed faces of a cell of `F̂_P`, checking that the cell and all of its
/// faces satisfy the height bound.
pub fn fp_boundary(lattice: &NcpLattice, cell: &FpCell) -> Result<Vec<(FpCell, i64)>> {
    if !cell.in_fp(lattice) {
        return Err(Error::Structural(format!("{} is not a cell of F̂_P", cell.describe(lattice))));
    }
    let faces = cell.faces(lattice);
    if let Some((bad, _)) = faces.iter().find(|(f, _)| !f.in_fp(lattice)) {
        return Err(Error::Structural(format!(
            "face {} of {} leaves F̂_P",
            bad.describe(lattice),
            cell.describe(lattice)
        )));
    }
    Ok(faces)
}

/// The small model `F̂_P`: cells `(m, e < w₁ < … < w_k)` with `0 ≤ m < n − |w_k|`.
#[derive(Debug, Clone)]
pub struct FpComplex {
    lattice: Arc<NcpLattice>,
    cells: Vec<Vec<FpCell>>,
    index: HashMap<FpCell, usize>,
    complex: DeltaComplex,
}

impl FpComplex {
    pub fn build(lattice: Arc<NcpLattice>) -> Result<Self> {
        let n = lattice.rank();
        let below_gamma: Vec<usize> = (1..lattice.len()).filter(|&w| w != lattice.top()).collect();
        let mut cells: Vec<Vec<FpCell>> = Vec::with_capacity(n);
        for k in 0..n {
            let mut level = Vec::new();
            for chain in lattice.chains_within(&below_gamma, k) {
                let top = chain.last().map_or(0, |w| lattice.rank_of(w));
                for m in 0..(n - top) as i64 {
                    level.push(FpCell::new(m, chain.clone()));
                }
            }
            level.sort();
            cells.push(level);
        }
        let index: HashMap<FpCell, usize> =
            cells.iter().flat_map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
        let faces = cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| {
                        fp_boundary(&lattice, c)?
                            .into_iter()
                            .map(|(f, s)| {
                                index.get(&f).map(|&i| (i, s)).ok_or_else(|| {
                                    Error::Structural(format!("face {} was not enumerated", f.describe(&lattice)))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let complex = DeltaComplex::from_faces(faces)?;
        Ok(FpComplex { lattice, cells, index, complex })
    }

    pub fn lattice(&self) -> &NcpLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<NcpLattice> {
        Arc::clone(&self.lattice)
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn cells(&self, dim: usize) -> &[FpCell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn dimension(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn index_of(&self, cell: &FpCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    /// `A_i = {(m, σ) : m ≥ n − i − 1}` for `i = 0..n−1`; `A_{n−1}` is everything.
    pub fn a_filtration(&self) -> Vec<CellSet> {
        let n = self.lattice.rank() as i64;
        (0..n).map(|i| self.filtration_level(i)).collect()
    }

    /// `A_i`, with `A_{-1}` empty.
    pub fn filtration_level(&self, i: i64) -> CellSet {
        let n = self.lattice.rank() as i64;
        CellSet::from_predicate(&self.complex, |k, idx| self.cells[k][idx].height >= n - i - 1)
    }

    /// Every cell is a face of some `(0, e ⋖ w₁ ⋖ … ⋖ w_{n−1})`: reports the
    /// first cell that is not.
    pub fn check_pure(&self) -> Result<()> {
        let top = self.dimension();
        let mut reached: Vec<Vec<bool>> = self.cells.iter().map(|l| vec![false; l.len()]).collect();
        for (i, c) in self.cells[top].iter().enumerate() {
            let saturated = c.chain.nodes().iter().enumerate().all(|(j, &w)| self.lattice.rank_of(w) == j + 1);
            if c.height == 0 && saturated {
                reached[top][i] = true;
            }
        }
        for k in (1..=top).rev() {
            for i in 0..self.cells[k].len() {
                if reached[k][i] {
                    for &(f, _) in self.complex.faces(k, i) {
                        reached[k - 1][f] = true;
                    }
                }
            }
        }
        for (k, level) in reached.iter().enumerate() {
            if let Some(i) = level.iter().position(|&b| !b) {
                return Err(Error::Structural(format!(
                    "{} is not a face of a top cell",
                    self.cells[k][i].describe(&self.lattice)
                )));
            }
        }
        Ok(())
    }

    /// Whether relabelling chains by the lattice map `phi` carries the cells of
    /// `self` bijectively onto those of `other`, preserving signed faces.
    pub fn isomorphic_via(&self, other: &FpComplex, phi: &[usize]) -> bool {
        if self.complex.counts() != other.complex.counts() || phi.len() != self.lattice.len() {
            return false;
        }
        let relabel = |c: &FpCell| {
            FpCell::new(c.height, InitializedChain::from_nodes(c.chain.nodes().iter().map(|&w| phi[w]).collect()))
        };
        let maps: Vec<Vec<Option<usize>>> =
            self.cells.iter().map(|level| level.iter().map(|c| other.index_of(&relabel(c))).collect()).collect();
        for (k, level) in maps.iter().enumerate() {
            let mut hit = vec![false; level.len()];
            for (i, img) in level.iter().enumerate() {
                let Some(j) = *img else { return false };
                if std::mem::replace(&mut hit[j], true) {
                    return false;
                }
                let mapped: Vec<(Option<usize>, i64)> =
                    self.complex.faces(k, i).iter().map(|&(f, s)| (maps[k - 1][f], s)).collect();
                let target: Vec<(Option<usize>, i64)> =
                    other.complex.faces(k, j).iter().map(|&(f, s)| (Some(f), s)).collect();
                if mapped != target {
                    return false;
                }
            }
        }
        true
    }

    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            schema: 1,
            group: self.lattice.group().family().to_string(),
            space: "fp".into(),
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
                        w: None,
                    })
                })
                .collect(),
            boundary: self.complex.boundary_export(),
        }
    }
}
