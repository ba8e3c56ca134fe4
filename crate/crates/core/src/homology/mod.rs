//! Exact integral homology of finite chain complexes.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use matrix::IntegerMatrix;
pub use snf::{invariant_factors, smith_normal_form, SnfResult};

use crate::error::{Error, Result};

/// `Z^betti ⊕ Z/t₁ ⊕ … ⊕ Z/t_r` with `t₁ | t₂ | … | t_r`, all `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// JSON row for one degree.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct HomologyEntry {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<serde_json::Value>,
}

impl HomologyEntry {
    pub fn new(degree: i64, group: &HomologyGroup) -> Self {
        HomologyEntry { degree, betti: group.betti, torsion: group.torsion.iter().map(bigint_json).collect() }
    }
}

/// A JSON number when the value fits in `i64`, otherwise its decimal string.
pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn group_from_factors(dim: usize, rank_out: usize, incoming: &[BigInt]) -> HomologyGroup {
    let betti = dim - rank_out - incoming.len();
    let torsion = incoming.iter().filter(|t| !t.is_one()).cloned().collect();
    HomologyGroup { betti, torsion }
}

/// A finite chain complex of free abelian groups in degrees
/// `offset ..= offset + dims.len() − 1`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    offset: i64,
    dims: Vec<usize>,
    // boundaries[i]: C_{offset+i} → C_{offset+i−1}.
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// `boundaries[i]` is the differential out of degree `offset + i + 1`.
    pub fn new(offset: i64, dims: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        let mut all = vec![IntegerMatrix::zeros(0, dims.first().copied().unwrap_or(0))];
        for (i, b) in boundaries.into_iter().enumerate() {
            if b.rows() != dims[i] || b.cols() != dims[i + 1] {
                return Err(Error::Shape(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    offset + i as i64 + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
            all.push(b);
        }
        Ok(ChainComplex { offset, dims, boundaries: all })
    }

    pub fn min_degree(&self) -> i64 {
        self.offset
    }

    pub fn max_degree(&self) -> i64 {
        self.offset + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.min_degree()..=self.max_degree()
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |i| self.dims[i])
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let i = degree - self.offset;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// Differential `C_degree → C_{degree−1}`.
    pub fn boundary(&self, degree: i64) -> IntegerMatrix {
        match self.slot(degree) {
            Some(i) => self.boundaries[i].clone(),
            None => IntegerMatrix::zeros(self.dim(degree - 1), self.dim(degree)),
        }
    }

    fn boundary_ref(&self, degree: i64) -> Option<&IntegerMatrix> {
        self.slot(degree).map(|i| &self.boundaries[i])
    }

    pub fn check_boundary_squared(&self) -> Result<()> {
        for d in self.degrees() {
            if d - 1 < self.offset {
                continue;
            }
            let (Some(a), Some(b)) = (self.boundary_ref(d - 1), self.boundary_ref(d)) else { continue };
            if a.rows() == 0 || b.cols() == 0 {
                continue;
            }
            if !a.mul(b)?.is_zero() {
                return Err(Error::BoundarySquared { degree: d });
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d.rem_euclid(2) == 0 { self.dim(d) as i64 } else { -(self.dim(d) as i64) }).sum()
    }

    /// Homology in every degree of the complex.
    pub fn homology(&self) -> Result<Vec<(i64, HomologyGroup)>> {
        self.check_boundary_squared()?;
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(invariant_factors).collect();
        Ok(self
            .degrees()
            .map(|d| {
                let i = (d - self.offset) as usize;
                let incoming: &[BigInt] = factors.get(i + 1).map_or(&[], Vec::as_slice);
                (d, group_from_factors(self.dims[i], factors[i].len(), incoming))
            })
            .collect())
    }

    /// The augmented complex: one extra generator in degree `offset − 1`
    /// receiving the sum of all lowest-degree generators. Meant for complexes
    /// starting in degree 0; its homology is reduced homology.
    pub fn augmented(&self) -> ChainComplex {
        let mut dims = vec![1];
        dims.extend(self.dims.iter().copied());
        let mut eps = IntegerMatrix::zeros(1, self.dims.first().copied().unwrap_or(0));
        for j in 0..eps.cols() {
            eps.set(0, j, BigInt::one());
        }
        let mut boundaries = vec![IntegerMatrix::zeros(0, 1), eps];
        boundaries.extend(self.boundaries.iter().skip(1).cloned());
        ChainComplex { offset: self.offset - 1, dims, boundaries }
    }

    /// Cycle representatives and a coordinate map for `H_degree`.
    pub fn basis(&self, degree: i64) -> Result<HomologyBasis> {
        self.check_boundary_squared()?;
        HomologyBasis::new(self, degree)
    }
}

/// Coordinates of a homology class: free part and torsion residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

/// A deterministic basis of `H_k` built from two Smith normal forms: one of
/// `∂_k` (giving a basis of the cycles) and one of `∂_{k+1}` written in
/// cycle coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub degree: i64,
    pub group: HomologyGroup,
    outgoing: IntegerMatrix,
    cycle_rank_offset: usize,
    v_inv: IntegerMatrix,
    u_rel: IntegerMatrix,
    rel_factors: Vec<BigInt>,
    free_generators: Vec<Vec<BigInt>>,
    torsion_generators: Vec<(BigInt, Vec<BigInt>)>,
}

impl HomologyBasis {
    fn new(c: &ChainComplex, degree: i64) -> Result<Self> {
        let n = c.dim(degree);
        let outgoing = c.boundary(degree);
        let incoming = c.boundary(degree + 1);
        let s_out = smith_normal_form(&outgoing);
        let r = s_out.rank;
        let z = n - r;
        let kernel_cols: Vec<usize> = (r..n).collect();
        let all_rows: Vec<usize> = (0..n).collect();
        let kernel = s_out.v.select(&all_rows, &kernel_cols);
        let rel = {
            let coords = s_out.v_inv.mul(&incoming)?;
            for i in 0..r {
                if coords.row(i).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Structural(format!("boundaries in degree {degree} are not cycles")));
                }
            }
            coords.select(&kernel_cols, &(0..incoming.cols()).collect::<Vec<_>>())
        };
        let s_rel = smith_normal_form(&rel);
        let gens = kernel.mul(&s_rel.u_inv)?;
        let rel_factors = s_rel.invariant_factors();
        let free_generators = (s_rel.rank..z).map(|j| gens.column(j)).collect();
        let torsion_generators = (0..s_rel.rank)
            .filter(|&i| !rel_factors[i].is_one())
            .map(|i| (rel_factors[i].clone(), gens.column(i)))
            .collect();
        let group = group_from_factors(n, r, &rel_factors);
        Ok(HomologyBasis {
            degree,
            group,
            outgoing,
            cycle_rank_offset: r,
            v_inv: s_out.v_inv,
            u_rel: s_rel.u,
            rel_factors,
            free_generators,
            torsion_generators,
        })
    }

    /// Cycles representing a basis of the free part.
    pub fn free_generators(&self) -> &[Vec<BigInt>] {
        &self.free_generators
    }

    /// `(order, cycle)` for each torsion summand.
    pub fn torsion_generators(&self) -> &[(BigInt, Vec<BigInt>)] {
        &self.torsion_generators
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> Result<bool> {
        Ok(self.outgoing.mul_vec(chain)?.iter().all(Zero::is_zero))
    }

    /// Class of a cycle in this basis.
    pub fn coordinates(&self, chain: &[BigInt]) -> Result<ClassCoordinates> {
        if !self.is_cycle(chain)? {
            return Err(Error::NotACycle(format!("chain in degree {}", self.degree)));
        }
        let c = self.v_inv.mul_vec(chain)?;
        let tail = &c[self.cycle_rank_offset..];
        let y = self.u_rel.mul_vec(tail)?;
        let s = self.rel_factors.len();
        let torsion = (0..s)
            .filter(|&i| !self.rel_factors[i].is_one())
            .map(|i| y[i].mod_floor(&self.rel_factors[i]))
            .collect();
        Ok(ClassCoordinates { free: y[s..].to_vec(), torsion })
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, chain: &[BigInt]) -> Result<bool> {
        let c = self.coordinates(chain)?;
        Ok(c.free.iter().all(Zero::is_zero) && c.torsion.iter().all(Zero::is_zero))
    }
}

/// Degreewise integer matrices `f_d : C_d → D_d`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    maps: Vec<(i64, IntegerMatrix)>,
}

impl ChainMap {
    pub fn new(maps: Vec<(i64, IntegerMatrix)>) -> Self {
        ChainMap { maps }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap { maps: c.degrees().map(|d| (d, IntegerMatrix::identity(c.dim(d)))).collect() }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap { maps: source.degrees().map(|d| (d, IntegerMatrix::zeros(target.dim(d), source.dim(d)))).collect() }
    }

    pub fn at(&self, degree: i64) -> Option<&IntegerMatrix> {
        self.maps.iter().find(|(d, _)| *d == degree).map(|(_, m)| m)
    }

    fn at_or_zero(&self, degree: i64, rows: usize, cols: usize) -> IntegerMatrix {
        self.at(degree).cloned().unwrap_or_else(|| IntegerMatrix::zeros(rows, cols))
    }

    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        let mut maps = Vec::new();
        for (d, f) in &first.maps {
            if let Some(g) = self.at(*d) {
                maps.push((*d, g.mul(f)?));
            }
        }
        Ok(ChainMap { maps })
    }

    /// Checks `f ∘ ∂ = ∂ ∘ f` in every degree, naming the first offending
    /// source generator.
    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        let lo = source.min_degree().min(target.min_degree());
        let hi = source.max_degree().max(target.max_degree());
        for d in lo..=hi {
            let f_d = self.at_or_zero(d, target.dim(d), source.dim(d));
            let f_below = self.at_or_zero(d - 1, target.dim(d - 1), source.dim(d - 1));
            if f_d.rows() != target.dim(d) || f_d.cols() != source.dim(d) {
                return Err(Error::Shape(format!("chain map in degree {d} has wrong shape")));
            }
            let left = f_below.mul(&source.boundary(d))?;
            let right = target.boundary(d).mul(&f_d)?;
            if left != right {
                let col = (0..left.cols()).find(|&j| left.column(j) != right.column(j)).unwrap_or(0);
                return Err(Error::NotChainMap(format!("degree {d}, source cell {col}")));
            }
        }
        Ok(())
    }
}

/// Matrix of the map induced on the free part of homology in `degree`, in
/// the bases produced by [`ChainComplex::basis`]. Columns index source
/// generators.
pub fn induced_map_on_homology(
    source: &ChainComplex,
    target: &ChainComplex,
    f: &ChainMap,
    degree: i64,
) -> Result<IntegerMatrix> {
    f.check(source, target)?;
    let sb = source.basis(degree)?;
    let tb = if std::ptr::eq(source, target) { sb.clone() } else { target.basis(degree)? };
    induced_map_with_bases(&sb, &tb, f)
}

/// As [`induced_map_on_homology`] with precomputed bases; does not re-check
/// the chain-map property.
pub fn induced_map_with_bases(source: &HomologyBasis, target: &HomologyBasis, f: &ChainMap) -> Result<IntegerMatrix> {
    let d = source.degree;
    let m = f
        .at(d)
        .ok_or_else(|| Error::Shape(format!("chain map has no component in degree {d}")))?;
    let columns: Vec<Vec<BigInt>> = source
        .free_generators()
        .iter()
        .map(|g| Ok(target.coordinates(&m.mul_vec(g)?)?.free))
        .collect::<Result<_>>()?;
    Ok(IntegerMatrix::from_columns(target.group.betti, &columns))
}
