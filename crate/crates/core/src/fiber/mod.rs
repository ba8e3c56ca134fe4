//! Cell complexes built from the lattice: the small models `F̂_P` and `F̂_Q`,
//! finite height windows of the infinite cyclic cover `X_{P*}`, and order
//! complexes of truncated lattices.
//!
//! A cell `(m, e < w₁ < … < w_k)` is a simplex with vertices at heights
//! `m, m + |w₁|, …, m + |w_k|`. Its faces are signed by vertex position: the
//! top face (deleting `e`, translating the chain by `w₁⁻¹` and raising the
//! height by `|w₁|`) carries `+1`, and deleting `w_j` carries `(−1)^j`.

mod fp;
mod fq;
mod order;
mod window;

use serde::Serialize;

pub use fp::{fp_boundary, FpComplex};
pub use fq::{FqCell, FqComplex};
pub use order::OrderComplex;
pub use window::{WindowFace, XpWindow};

use crate::complex::BoundaryExport;
use crate::ncp::{InitializedChain, NcpLattice};

/// A cell `(m, e < w₁ < … < w_k)` of `X_{P*}`; its dimension is `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpCell {
    pub height: i64,
    pub chain: InitializedChain,
}

/// Cells of a window of `X_{P*}` have the same shape as cells of `F̂_P`.
pub type XpWindowCell = FpCell;

impl FpCell {
    pub fn new(height: i64, chain: InitializedChain) -> Self {
        FpCell { height, chain }
    }

    pub fn vertex(height: i64) -> Self {
        FpCell { height, chain: InitializedChain::empty() }
    }

    pub fn dim(&self) -> usize {
        self.chain.len()
    }

    /// Rank of the last chain element, `0` for the empty chain.
    pub fn top_rank(&self, lattice: &NcpLattice) -> usize {
        self.chain.last().map_or(0, |w| lattice.rank_of(w))
    }

    /// Membership in `F̂_P`: `0 ≤ m < n − |w_k|`.
    pub fn in_fp(&self, lattice: &NcpLattice) -> bool {
        lattice.is_chain(&self.chain)
            && self.height >= 0
            && self.height < (lattice.rank() - self.top_rank(lattice)) as i64
    }

    pub fn ends_in_gamma(&self, lattice: &NcpLattice) -> bool {
        self.chain.last() == Some(lattice.top())
    }

    /// `(m + |w₁|, e < w₁⁻¹w₂ < … < w₁⁻¹w_k)`.
    pub fn top_face(&self, lattice: &NcpLattice) -> Option<FpCell> {
        if self.chain.is_empty() {
            return None;
        }
        let (shift, chain) = lattice.shift_chain(&self.chain);
        Some(FpCell { height: self.height + shift as i64, chain })
    }

    /// Deletes the last chain element.
    pub fn bottom_face(&self) -> Option<FpCell> {
        if self.chain.is_empty() {
            return None;
        }
        Some(FpCell { height: self.height, chain: self.chain.without(self.chain.len() - 1) })
    }

    /// Signed faces in vertex order: top face first.
    pub fn faces(&self, lattice: &NcpLattice) -> Vec<(FpCell, i64)> {
        let Some(top) = self.top_face(lattice) else { return Vec::new() };
        let mut out = vec![(top, 1)];
        for j in 1..=self.chain.len() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.push((FpCell { height: self.height, chain: self.chain.without(j - 1) }, sign));
        }
        out
    }

    pub fn describe(&self, lattice: &NcpLattice) -> String {
        let mut parts = vec!["e".to_string()];
        parts.extend(self.chain.nodes().iter().map(|&w| lattice.repr(w)));
        format!("({}, {})", self.height, parts.join(" < "))
    }
}

/// One cell in a complex export. `id` is the index within its dimension;
/// `chain` holds lattice node ids and `w` the group element id for `F̂_Q`.
#[derive(Debug, Clone, Serialize)]
pub struct CellExport {
    pub id: usize,
    pub dim: usize,
    pub height: i64,
    pub chain: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexExport {
    pub schema: u32,
    pub group: String,
    pub space: String,
    pub dims: Vec<usize>,
    pub cells: Vec<CellExport>,
    pub boundary: Vec<BoundaryExport>,
}
