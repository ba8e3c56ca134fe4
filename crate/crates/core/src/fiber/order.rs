use std::collections::HashMap;

use crate::complex::DeltaComplex;
use crate::error::Result;
use crate::ncp::NcpLattice;

/// Order complex of a set of lattice nodes: `q`-simplices are chains of
/// `q + 1` elements, listed bottom to top.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    complex: DeltaComplex,
}

impl OrderComplex {
    pub fn build(lattice: &NcpLattice, nodes: &[usize]) -> Result<Self> {
        let mut nodes = nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for q in 0.. {
            let level: Vec<Vec<usize>> =
                lattice.chains_within(&nodes, q + 1).into_iter().map(|c| c.nodes().to_vec()).collect();
            if level.is_empty() {
                break;
            }
            simplices.push(level);
        }
        let index: HashMap<Vec<usize>, usize> =
            simplices.iter().flat_map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i))).collect();
        let faces = simplices
            .iter()
            .enumerate()
            .map(|(q, level)| {
                level
                    .iter()
                    .map(|s| {
                        if q == 0 {
                            return Vec::new();
                        }
                        (0..s.len())
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                (index[&f], if i % 2 == 0 { 1 } else { -1 })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let complex = DeltaComplex::from_faces(faces)?;
        Ok(OrderComplex { simplices, index, complex })
    }

    /// `|L_[i, j]|`: elements of rank `i..=j`.
    pub fn truncated(lattice: &NcpLattice, i: usize, j: usize) -> Result<Self> {
        Self::build(lattice, &lattice.truncate(i, j))
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}
