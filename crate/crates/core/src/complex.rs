//! Δ-complexes: graded cells with signed integer boundaries.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyGroup, IntegerMatrix};

/// Cells graded by dimension; `faces[k][i]` lists the signed faces of the
/// `k`-cell `i` as indices into dimension `k − 1`. Faces may repeat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeltaComplex {
    faces: Vec<Vec<Vec<(usize, i64)>>>,
}

/// A selection of cells, one flag per cell per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    members: Vec<Vec<bool>>,
}

impl CellSet {
    pub fn empty(complex: &DeltaComplex) -> Self {
        CellSet { members: complex.counts().iter().map(|&c| vec![false; c]).collect() }
    }

    pub fn full(complex: &DeltaComplex) -> Self {
        CellSet { members: complex.counts().iter().map(|&c| vec![true; c]).collect() }
    }

    pub fn from_predicate(complex: &DeltaComplex, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        CellSet {
            members: complex.counts().iter().enumerate().map(|(k, &c)| (0..c).map(|i| keep(k, i)).collect()).collect(),
        }
    }

    pub fn contains(&self, dim: usize, index: usize) -> bool {
        self.members.get(dim).and_then(|m| m.get(index)).copied().unwrap_or(false)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.iter().filter(|&&b| b).count()).collect()
    }

    pub fn is_subset_of(&self, other: &CellSet) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(k, m)| m.iter().enumerate().all(|(i, &b)| !b || other.contains(k, i)))
    }

    /// Highest dimension containing a cell.
    pub fn dimension(&self) -> Option<usize> {
        self.members.iter().rposition(|m| m.iter().any(|&b| b))
    }
}

impl DeltaComplex {
    pub fn from_faces(faces: Vec<Vec<Vec<(usize, i64)>>>) -> Result<Self> {
        for k in 0..faces.len() {
            for (i, fs) in faces[k].iter().enumerate() {
                if k == 0 && !fs.is_empty() {
                    return Err(Error::Structural(format!("vertex {i} has faces")));
                }
                if k > 0 {
                    if let Some((f, _)) = fs.iter().find(|(f, _)| *f >= faces[k - 1].len()) {
                        return Err(Error::Structural(format!("cell {i} of dim {k} names missing face {f}")));
                    }
                }
            }
        }
        let mut faces = faces;
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        Ok(DeltaComplex { faces })
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn faces(&self, dim: usize, index: usize) -> &[(usize, i64)] {
        &self.faces[dim][index]
    }

    /// Signed faces with repeated entries merged and zero totals removed.
    pub fn boundary_of(&self, dim: usize, index: usize) -> BTreeMap<usize, i64> {
        let mut acc = BTreeMap::new();
        for &(f, c) in &self.faces[dim][index] {
            *acc.entry(f).or_insert(0) += c;
        }
        acc.retain(|_, v| *v != 0);
        acc
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Sparse check of `∂∘∂ = 0`, reporting the first offending cell.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for k in 2..self.faces.len() {
            for i in 0..self.faces[k].len() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, c) in &self.faces[k][i] {
                    for &(g, d) in &self.faces[k - 1][f] {
                        *acc.entry(g).or_insert(0) += c * d;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::BoundarySquared { degree: k as i64 });
                }
            }
        }
        Ok(())
    }

    /// Matrix of `∂_dim : C_dim → C_{dim−1}`.
    pub fn boundary_matrix(&self, dim: usize) -> IntegerMatrix {
        let rows = if dim == 0 { 0 } else { self.count(dim - 1) };
        let mut m = IntegerMatrix::zeros(rows, self.count(dim));
        if dim > 0 {
            for (j, fs) in self.faces[dim].iter().enumerate() {
                for &(f, c) in fs {
                    *m.get_mut(f, j) += BigInt::from(c);
                }
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let counts = self.counts();
        if counts.is_empty() {
            return ChainComplex::new(0, vec![0], vec![]).expect("shape");
        }
        let boundaries = (1..counts.len()).map(|k| self.boundary_matrix(k)).collect();
        ChainComplex::new(0, counts, boundaries).expect("boundary shapes follow cell counts")
    }

    /// `H_k` for `k = 0..=dim`.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        self.check_boundary_squared()?;
        Ok(self.chain_complex().homology()?.into_iter().map(|(_, g)| g).collect())
    }

    /// Reduced homology in degrees `−1..=dim`.
    pub fn reduced_homology(&self) -> Result<Vec<(i64, HomologyGroup)>> {
        self.check_boundary_squared()?;
        self.chain_complex().augmented().homology()
    }

    /// Closed under taking faces.
    pub fn check_subcomplex(&self, set: &CellSet) -> Result<()> {
        for k in 1..self.faces.len() {
            for i in 0..self.faces[k].len() {
                if !set.contains(k, i) {
                    continue;
                }
                if let Some(&(f, _)) = self.faces[k][i].iter().find(|(f, _)| !set.contains(k - 1, *f)) {
                    return Err(Error::NotSubcomplex(format!(
                        "cell {i} of dim {k} has face {f} outside the set"
                    )));
                }
            }
        }
        Ok(())
    }

    fn kept_indices(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        (0..self.faces.len()).map(|k| (0..self.faces[k].len()).filter(|&i| keep(k, i)).collect()).collect()
    }

    /// The subcomplex spanned by `set`, reindexed.
    pub fn subcomplex(&self, set: &CellSet) -> Result<DeltaComplex> {
        self.check_subcomplex(set)?;
        let kept = self.kept_indices(|k, i| set.contains(k, i));
        let renumber: Vec<Vec<Option<usize>>> = kept
            .iter()
            .enumerate()
            .map(|(k, ids)| {
                let mut r = vec![None; self.count(k)];
                for (new, &old) in ids.iter().enumerate() {
                    r[old] = Some(new);
                }
                r
            })
            .collect();
        let faces = kept
            .iter()
            .enumerate()
            .map(|(k, ids)| {
                ids.iter()
                    .map(|&i| {
                        self.faces[k][i]
                            .iter()
                            .map(|&(f, c)| (renumber[k - 1][f].expect("closed under faces"), c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        DeltaComplex::from_faces(faces)
    }

    /// Chain complex of `C / A` for a subcomplex `A`, in degrees `0..=dim`.
    pub fn relative_chain_complex(&self, sub: &CellSet) -> Result<ChainComplex> {
        self.pair_chain_complex(&CellSet::full(self), sub)
    }

    /// Chain complex of `B / A` for subcomplexes `A ⊆ B`.
    pub fn pair_chain_complex(&self, outer: &CellSet, sub: &CellSet) -> Result<ChainComplex> {
        self.check_subcomplex(outer)?;
        self.check_subcomplex(sub)?;
        if !sub.is_subset_of(outer) {
            return Err(Error::NotSubcomplex("inner set is not contained in the outer one".into()));
        }
        let kept = self.kept_indices(|k, i| outer.contains(k, i) && !sub.contains(k, i));
        if kept.is_empty() {
            return ChainComplex::new(0, vec![0], vec![]);
        }
        let dims: Vec<usize> = kept.iter().map(Vec::len).collect();
        let boundaries = (1..kept.len()).map(|k| self.boundary_matrix(k).select(&kept[k - 1], &kept[k])).collect();
        ChainComplex::new(0, dims, boundaries)
    }

    /// `H_k(C, A)` for `k = 0..=dim`.
    pub fn relative_homology(&self, sub: &CellSet) -> Result<Vec<HomologyGroup>> {
        Ok(self.relative_chain_complex(sub)?.homology()?.into_iter().map(|(_, g)| g).collect())
    }

    /// `H_k(B, A)` for `k = 0..=dim`.
    pub fn pair_homology(&self, outer: &CellSet, sub: &CellSet) -> Result<Vec<HomologyGroup>> {
        Ok(self.pair_chain_complex(outer, sub)?.homology()?.into_iter().map(|(_, g)| g).collect())
    }

    /// For each cell, the cells having it as a face (with multiplicity folded).
    pub fn cofaces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut co: Vec<Vec<Vec<usize>>> = self.counts().iter().map(|&c| vec![Vec::new(); c]).collect();
        for k in 1..self.faces.len() {
            for (i, fs) in self.faces[k].iter().enumerate() {
                for &(f, _) in fs {
                    if !co[k - 1][f].contains(&i) {
                        co[k - 1][f].push(i);
                    }
                }
            }
        }
        co
    }

    pub fn boundary_export(&self) -> Vec<BoundaryExport> {
        (1..self.faces.len())
            .map(|k| BoundaryExport {
                dim: k,
                rows: self.count(k - 1),
                cols: self.count(k),
                entries: self.faces[k]
                    .iter()
                    .enumerate()
                    .flat_map(|(j, _)| self.boundary_of(k, j).into_iter().map(move |(r, v)| [r as i64, j as i64, v]))
                    .collect(),
            })
            .collect()
    }
}

/// Sparse boundary matrix `∂_dim` as `[row, col, value]` triples.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryExport {
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[i64; 3]>,
}
