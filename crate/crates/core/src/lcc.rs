//! The lattice chain complex `C_p = H̃_{p−1}(|L_[1,p]|)` with boundary
//! induced by the top face map `Ω`, and its comparison with `F̂_P`.
//!
//! `C_0 = H̃_{−1}(∅) = Z` is generated by the empty chain. `C_p = 0` for
//! `p ≥ n`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::complex::CellSet;
use crate::error::{Error, Result};
use crate::fiber::{FpCell, FpComplex, OrderComplex};
use crate::homology::{ChainComplex, HomologyEntry, HomologyGroup, IntegerMatrix};
use crate::ncp::{InitializedChain, NcpLattice};

/// `H̃_*(|L_[1,p]|)` with a cycle basis for the top degree `p − 1`.
#[derive(Debug, Clone)]
pub struct TruncatedHomology {
    pub p: usize,
    /// Reduced homology in degrees `−1..=p−1`.
    pub reduced: Vec<(i64, HomologyGroup)>,
    /// Maximal chains `w₁ ⋖ … ⋖ w_p`, the `(p−1)`-simplices.
    pub simplices: Vec<Vec<usize>>,
    /// Free generators of `H̃_{p−1}`, as coefficient vectors over `simplices`.
    pub cycle_basis: Vec<Vec<BigInt>>,
}

impl TruncatedHomology {
    /// `H̃_{p−1}`.
    pub fn group(&self) -> HomologyGroup {
        self.group_in(self.p as i64 - 1)
    }

    pub fn group_in(&self, degree: i64) -> HomologyGroup {
        self.reduced.iter().find(|(d, _)| *d == degree).map_or_else(HomologyGroup::zero, |(_, g)| g.clone())
    }

    /// Reduced homology vanishes off degree `p − 1` and is free there.
    pub fn is_concentrated(&self) -> bool {
        self.reduced.iter().all(|(d, g)| if *d == self.p as i64 - 1 { g.is_free() } else { g.is_zero() })
    }
}

pub fn truncated_reduced_homology(lattice: &NcpLattice, p: usize) -> Result<TruncatedHomology> {
    if p >= lattice.rank() {
        return Err(Error::Shape(format!("p = {p} must be below the rank {}", lattice.rank())));
    }
    if p == 0 {
        return Ok(TruncatedHomology {
            p,
            reduced: vec![(-1, HomologyGroup::free(1))],
            simplices: vec![Vec::new()],
            cycle_basis: vec![vec![BigInt::from(1)]],
        });
    }
    let order = OrderComplex::truncated(lattice, 1, p)?;
    let cc = order.complex().chain_complex().augmented();
    let reduced = cc.homology()?;
    let basis = cc.basis(p as i64 - 1)?;
    Ok(TruncatedHomology {
        p,
        reduced,
        simplices: order.simplices(p - 1).to_vec(),
        cycle_basis: basis.free_generators().to_vec(),
    })
}

/// `Ω(w₁ ⋖ … ⋖ w_p) = (w₁⁻¹w₂ ⋖ … ⋖ w₁⁻¹w_p)`. The input must have
/// `|w_i| = i`.
pub fn omega(lattice: &NcpLattice, simplex: &[usize]) -> Result<Vec<usize>> {
    if simplex.iter().enumerate().any(|(i, &w)| w >= lattice.len() || lattice.rank_of(w) != i + 1) {
        return Err(Error::Structural(format!("{simplex:?} is not a chain of maximal rank")));
    }
    if !lattice.is_chain(&InitializedChain::from_nodes(simplex.to_vec())) {
        return Err(Error::Structural(format!("{simplex:?} is not a chain")));
    }
    let (_, shifted) = lattice.shift_chain(&InitializedChain::from_nodes(simplex.to_vec()));
    Ok(shifted.nodes().to_vec())
}

/// `Σ a_σ d_i(σ) = 0` for each `i`, where `d_i` deletes `w_i` with sign
/// `(−1)^{i−1}`. Returns the first `i` that fails.
pub fn check_length_distribution(t: &TruncatedHomology) -> std::result::Result<(), usize> {
    for z in &t.cycle_basis {
        for i in 1..=t.p {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let mut acc: HashMap<Vec<usize>, BigInt> = HashMap::new();
            for (s, a) in t.simplices.iter().zip(z) {
                if a.is_zero() {
                    continue;
                }
                let mut face = s.clone();
                face.remove(i - 1);
                *acc.entry(face).or_default() += a * sign;
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(i);
            }
        }
    }
    Ok(())
}

/// The complex `0 → C_{n−1} → … → C_1 → C_0 → 0` with `∂ = Ω_*`.
#[derive(Debug, Clone)]
pub struct LatticeChainComplex {
    pub pieces: Vec<TruncatedHomology>,
    /// `boundaries[p − 1] : C_p → C_{p−1}` in the chosen bases.
    pub boundaries: Vec<IntegerMatrix>,
    pub complex: ChainComplex,
}

impl LatticeChainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(|t| t.cycle_basis.len()).collect()
    }

    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        Ok(self.complex.homology()?.into_iter().map(|(_, g)| g).collect())
    }
}

pub fn build_lattice_chain_complex(lattice: &NcpLattice) -> Result<LatticeChainComplex> {
    let n = lattice.rank();
    let pieces = (0..n).map(|p| truncated_reduced_homology(lattice, p)).collect::<Result<Vec<_>>>()?;
    let mut boundaries = Vec::new();
    for p in 1..n {
        let src = &pieces[p];
        let tgt = &pieces[p - 1];
        let tgt_index: HashMap<&[usize], usize> =
            tgt.simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let tgt_basis = if p >= 2 {
            let order = OrderComplex::truncated(lattice, 1, p - 1)?;
            Some(order.complex().chain_complex().augmented().basis(p as i64 - 2)?)
        } else {
            None
        };
        let mut columns = Vec::with_capacity(src.cycle_basis.len());
        for z in &src.cycle_basis {
            let mut image = vec![BigInt::zero(); tgt.simplices.len()];
            for (s, a) in src.simplices.iter().zip(z) {
                if a.is_zero() {
                    continue;
                }
                let o = omega(lattice, s)?;
                let j = tgt_index.get(o.as_slice()).ok_or_else(|| {
                    Error::Structural(format!("Ω({s:?}) = {o:?} is not a top simplex one level down"))
                })?;
                image[*j] += a;
            }
            let coords = match &tgt_basis {
                Some(b) => {
                    let c = b.coordinates(&image)?;
                    if c.torsion.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Structural(format!("Ω image in degree {p} has a torsion component")));
                    }
                    c.free
                }
                None => image,
            };
            columns.push(coords);
        }
        boundaries.push(IntegerMatrix::from_columns(tgt.cycle_basis.len(), &columns));
    }
    let dims: Vec<usize> = pieces.iter().map(|t| t.cycle_basis.len()).collect();
    let complex = ChainComplex::new(0, dims, boundaries.clone())?;
    complex.check_boundary_squared()?;
    Ok(LatticeChainComplex { pieces, boundaries, complex })
}

/// Comparison of the new cells of `A_p` (height `i = n − p − 1`) with the
/// cone on `|L_[1,p]|` attached to `A_{p−1}` by `g_i`.
#[derive(Debug, Clone, Serialize)]
pub struct ConeCheck {
    pub p: usize,
    pub height: i64,
    /// Cells of `A_p ∖ A_{p−1}` per dimension equal augmented simplex counts of `|L_[1,p]|`.
    pub counts_match: bool,
    /// `g_i(σ)` lies in `A_{p−1}` and is the top face of `(i, σ)`.
    pub attaching_map_ok: bool,
    /// The rest of `∂(i, σ)` is `−(i, ∂σ)`.
    pub cone_boundary_ok: bool,
    pub relative: Vec<HomologyEntry>,
    pub expected: Vec<HomologyEntry>,
    pub homology_matches: bool,
}

impl ConeCheck {
    pub fn ok(&self) -> bool {
        self.counts_match && self.attaching_map_ok && self.cone_boundary_ok && self.homology_matches
    }
}

/// `g_i(w₁ < … < w_k) = (i + |w₁|, e < w₁⁻¹w₂ < … < w₁⁻¹w_k)`.
pub fn attaching_map(lattice: &NcpLattice, i: i64, simplex: &[usize]) -> FpCell {
    let (shift, chain) = lattice.shift_chain(&InitializedChain::from_nodes(simplex.to_vec()));
    FpCell::new(i + shift as i64, chain)
}

pub fn mapping_cone_check(fp: &FpComplex, p: usize) -> Result<ConeCheck> {
    let l = fp.lattice();
    let n = l.rank();
    if p >= n {
        return Err(Error::Shape(format!("p = {p} must be below the rank {n}")));
    }
    let height = (n - p - 1) as i64;
    let a_p = fp.filtration_level(p as i64);
    let a_prev = fp.filtration_level(p as i64 - 1);
    let order = if p > 0 { Some(OrderComplex::truncated(l, 1, p)?) } else { None };

    // Augmented simplex counts: the empty simplex, then q-simplices.
    let mut simplex_counts = vec![1usize];
    if let Some(o) = &order {
        simplex_counts.extend(o.complex().counts());
    }
    let new_counts: Vec<usize> = (0..=fp.dimension())
        .map(|k| (0..fp.cells(k).len()).filter(|&i| a_p.contains(k, i) && !a_prev.contains(k, i)).count())
        .collect();
    let mut padded = simplex_counts.clone();
    padded.resize(new_counts.len().max(padded.len()), 0);
    let mut new_padded = new_counts.clone();
    new_padded.resize(padded.len(), 0);
    let counts_match = padded == new_padded;

    let mut attaching_map_ok = true;
    let mut cone_boundary_ok = true;
    for k in 0..=fp.dimension() {
        for (idx, cell) in fp.cells(k).iter().enumerate() {
            if !a_p.contains(k, idx) || a_prev.contains(k, idx) {
                continue;
            }
            if cell.height != height {
                attaching_map_ok = false;
                continue;
            }
            if k == 0 {
                continue;
            }
            let sigma = cell.chain.nodes();
            let g = attaching_map(l, height, sigma);
            let g_ok = fp.index_of(&g).is_some_and(|gi| a_prev.contains(k - 1, gi));
            let faces = fp.complex().faces(k, idx);
            attaching_map_ok &= g_ok && fp.cells(k - 1)[faces[0].0] == g && faces[0].1 == 1;
            // Simplicial boundary of σ: deleting position j (0-based) has sign (−1)^j.
            for (j, &(f, s)) in faces.iter().enumerate().skip(1) {
                let mut d = sigma.to_vec();
                d.remove(j - 1);
                let expected_sign = if (j - 1) % 2 == 0 { -1 } else { 1 };
                let face = &fp.cells(k - 1)[f];
                cone_boundary_ok &= face.height == height && face.chain.nodes() == d.as_slice() && s == expected_sign;
            }
        }
    }

    let relative_groups = fp.complex().pair_homology(&a_p, &a_prev)?;
    let reduced: Vec<(i64, HomologyGroup)> = match &order {
        Some(o) => o.complex().reduced_homology()?,
        None => vec![(-1, HomologyGroup::free(1))],
    };
    let expected_groups: Vec<HomologyGroup> = (0..relative_groups.len() as i64)
        .map(|q| reduced.iter().find(|(d, _)| *d == q - 1).map_or_else(HomologyGroup::zero, |(_, g)| g.clone()))
        .collect();
    let extra_nonzero = reduced.iter().any(|(d, g)| *d + 1 >= relative_groups.len() as i64 && !g.is_zero());
    let homology_matches = relative_groups == expected_groups && !extra_nonzero;
    let entries = |gs: &[HomologyGroup]| gs.iter().enumerate().map(|(q, g)| HomologyEntry::new(q as i64, g)).collect();
    Ok(ConeCheck {
        p,
        height,
        counts_match,
        attaching_map_ok,
        cone_boundary_ok,
        relative: entries(&relative_groups),
        expected: entries(&expected_groups),
        homology_matches,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LccPiece {
    pub p: usize,
    pub rank: usize,
    pub reduced: Vec<HomologyEntry>,
    pub concentrated: bool,
    pub length_distribution_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LccReport {
    pub schema: u32,
    pub group: String,
    pub pieces: Vec<LccPiece>,
    /// `∂_p : C_p → C_{p−1}` for `p = 1..n−1`, rows indexing `C_{p−1}`.
    pub boundaries: Vec<Vec<Vec<serde_json::Value>>>,
    pub homology: Vec<HomologyEntry>,
    pub fp_homology: Vec<HomologyEntry>,
    pub matches_fp: bool,
}

impl LccReport {
    pub fn ok(&self) -> bool {
        self.matches_fp && self.pieces.iter().all(|p| p.concentrated && p.length_distribution_ok)
    }
}

pub fn lcc_report(fp: &FpComplex) -> Result<LccReport> {
    let l = fp.lattice();
    let lcc = build_lattice_chain_complex(l)?;
    let homology = lcc.homology()?;
    let fp_homology = fp.complex().homology()?;
    let pieces = lcc
        .pieces
        .iter()
        .map(|t| LccPiece {
            p: t.p,
            rank: t.cycle_basis.len(),
            reduced: t.reduced.iter().map(|(d, g)| HomologyEntry::new(*d, g)).collect(),
            concentrated: t.is_concentrated(),
            length_distribution_ok: check_length_distribution(t).is_ok(),
        })
        .collect();
    let boundaries = lcc
        .boundaries
        .iter()
        .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(crate::homology::bigint_json).collect()).collect())
        .collect();
    Ok(LccReport {
        schema: 1,
        group: l.group().family().to_string(),
        pieces,
        boundaries,
        matches_fp: homology == fp_homology,
        homology: homology.iter().enumerate().map(|(d, g)| HomologyEntry::new(d as i64, g)).collect(),
        fp_homology: fp_homology.iter().enumerate().map(|(d, g)| HomologyEntry::new(d as i64, g)).collect(),
    })
}

/// `A_p` for `p = −1..n−1`, `A_{−1}` empty.
pub fn filtration_pair(fp: &FpComplex, p: usize) -> (CellSet, CellSet) {
    (fp.filtration_level(p as i64), fp.filtration_level(p as i64 - 1))
}
