//! Cellular monodromy: the action of `−1` on `F̂_P` and of `−2` on `F̂_Q`,
//! with the induced automorphisms of homology.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::fiber::{FpCell, FpComplex, FqComplex};
use crate::homology::{bigint_json, induced_map_on_homology, ChainMap, IntegerMatrix};
use crate::ncp::NcpLattice;

/// A dimension-preserving map on cells: `images[k][i] = (j, ±1)` sends the
/// `k`-cell `i` to `±` the `k`-cell `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularMap {
    pub images: Vec<Vec<(usize, i64)>>,
}

impl CellularMap {
    pub fn is_bijection(&self) -> bool {
        self.images.iter().all(|level| {
            let mut hit = vec![false; level.len()];
            level.iter().all(|&(j, _)| j < hit.len() && !std::mem::replace(&mut hit[j], true))
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CellularMap) -> CellularMap {
        CellularMap {
            images: first
                .images
                .iter()
                .zip(&self.images)
                .map(|(a, b)| a.iter().map(|&(j, s)| (b[j].0, s * b[j].1)).collect())
                .collect(),
        }
    }

    pub fn chain_map(&self) -> ChainMap {
        ChainMap::new(
            self.images
                .iter()
                .enumerate()
                .map(|(k, level)| {
                    let mut m = IntegerMatrix::zeros(level.len(), level.len());
                    for (i, &(j, s)) in level.iter().enumerate() {
                        m.set(j, i, BigInt::from(s));
                    }
                    (k as i64, m)
                })
                .collect(),
        )
    }

    /// Checks `f ∘ ∂ = ∂ ∘ f` on `complex`.
    pub fn check_chain_map(&self, complex: &DeltaComplex) -> Result<()> {
        let cc = complex.chain_complex();
        self.chain_map().check(&cc, &cc)
    }
}

/// `(m, σ) ↦ (m − 1, σ)` for `m > 0`; `(0, e < w₁ < … < w_k) ↦
/// (|w₁| − 1, e < w₁⁻¹w₂ < … < w₁⁻¹w_k < w₁⁻¹γ)`, and `(0, e) ↦ (n − 1, e)`.
/// The sign is that of the induced vertex permutation.
pub fn monodromy_fp_cell(lattice: &NcpLattice, cell: &FpCell) -> Result<(FpCell, i64)> {
    if !cell.in_fp(lattice) {
        return Err(Error::Structural(format!("{} is not a cell of F̂_P", cell.describe(lattice))));
    }
    if cell.height > 0 {
        return Ok((FpCell::new(cell.height - 1, cell.chain.clone()), 1));
    }
    let extended = cell.chain.pushed(lattice.top());
    let (shift, chain) = lattice.shift_chain(&extended);
    let image = FpCell::new(shift as i64 - 1, chain);
    let sign = if cell.dim().is_multiple_of(2) { 1 } else { -1 };
    if !image.in_fp(lattice) {
        return Err(Error::Structural(format!("monodromy image {} leaves F̂_P", image.describe(lattice))));
    }
    Ok((image, sign))
}

pub fn monodromy_fp(fp: &FpComplex) -> Result<CellularMap> {
    let images = (0..=fp.dimension())
        .map(|k| {
            fp.cells(k)
                .iter()
                .map(|c| {
                    let (img, s) = monodromy_fp_cell(fp.lattice(), c)?;
                    let j = fp.index_of(&img).ok_or_else(|| {
                        Error::Structural(format!("monodromy image {} not enumerated", img.describe(fp.lattice())))
                    })?;
                    Ok((j, s))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellularMap { images })
}

/// Vertex rule of the `−2` action: `(m, w) ↦ (m − 2, w)` for `m ≥ 2`,
/// `(1, w) ↦ (n − 1, wγ)`, `(0, w) ↦ (n − 2, wγ)`.
pub fn monodromy_fq_vertex(lattice: &NcpLattice, vertex: (i64, usize)) -> (i64, usize) {
    let n = lattice.rank() as i64;
    let (m, w) = vertex;
    let gamma = lattice.element(lattice.top());
    match m {
        0 => (n - 2, lattice.group().mul(w, gamma)),
        1 => (n - 1, lattice.group().mul(w, gamma)),
        _ => (m - 2, w),
    }
}

fn permutation_sign(keys: &[i64]) -> i64 {
    let inversions = (0..keys.len())
        .flat_map(|i| (i + 1..keys.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| keys[i] > keys[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Extends the vertex rule simplicially. Fails if the image vertices do not
/// span a cell.
pub fn monodromy_fq(fq: &FqComplex) -> Result<CellularMap> {
    let l = fq.lattice();
    let images = (0..=fq.dimension())
        .map(|k| {
            fq.cells(k)
                .iter()
                .map(|c| {
                    let image: Vec<(i64, usize)> =
                        c.vertices(l).into_iter().map(|v| monodromy_fq_vertex(l, v)).collect();
                    let sign = permutation_sign(&image.iter().map(|v| v.0).collect::<Vec<_>>());
                    let mut sorted = image;
                    sorted.sort();
                    if sorted.windows(2).any(|p| p[0].0 == p[1].0) {
                        return Err(Error::Structural(format!("image of {} collapses", c.describe(l))));
                    }
                    match fq.cell_with_vertices(&sorted) {
                        Some((d, j)) if d == k => Ok((j, sign)),
                        _ => Err(Error::Structural(format!(
                            "image vertices of {} do not span a cell",
                            c.describe(l)
                        ))),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellularMap { images })
}

/// `proj ∘ f_Q = f_P ∘ f_P ∘ proj` on every cell, signs included.
pub fn check_intertwining(fp: &FpComplex, fq: &FqComplex, fp_map: &CellularMap, fq_map: &CellularMap) -> Result<()> {
    let proj = fq.covering_projection(fp)?;
    let twice = fp_map.compose(fp_map);
    for (k, level) in fq_map.images.iter().enumerate() {
        for (i, &(j, s)) in level.iter().enumerate() {
            let up = (proj[k][j], s);
            let down = twice.images[k][proj[k][i]];
            if up != down {
                return Err(Error::Structural(format!(
                    "monodromy of {} projects to {:?}, expected {:?}",
                    fq.cells(k)[i].describe(fq.lattice()),
                    up,
                    down
                )));
            }
        }
    }
    Ok(())
}

/// Least `k ≤ cap` with `M^k = I`, or `None`.
pub fn automorphism_order(m: &IntegerMatrix, cap: usize) -> Result<Option<usize>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}×{} matrix has no order", m.rows(), m.cols())));
    }
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(Some(k));
        }
        p = p.mul(m)?;
    }
    Ok(None)
}

/// Coefficients of `det(xI − M)`, leading coefficient first.
pub fn characteristic_polynomial(m: &IntegerMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}×{} matrix is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::one()];
    let mut acc = IntegerMatrix::zeros(n, n);
    for k in 1..=n {
        // acc = M·acc_prev + c_{n−k+1}·I, then c_{n−k} = −tr(M·acc)/k.
        let mut next = m.mul(&acc)?;
        let c_prev = coeffs.last().expect("nonempty").clone();
        for i in 0..n {
            *next.get_mut(i, i) += &c_prev;
        }
        acc = next;
        let product = m.mul(&acc)?;
        let trace: BigInt = (0..n).map(|i| product.get(i, i)).sum();
        coeffs.push(-trace / BigInt::from(k));
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeAction {
    pub degree: i64,
    pub rank: usize,
    pub matrix: Vec<Vec<serde_json::Value>>,
    pub determinant: serde_json::Value,
    pub order: Option<usize>,
    pub charpoly: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyReport {
    pub schema: u32,
    pub group: String,
    pub space: String,
    pub is_bijection: bool,
    pub is_chain_map: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intertwines: Option<bool>,
    pub cap: usize,
    pub unimodular: bool,
    pub finite_order: bool,
    pub degrees: Vec<DegreeAction>,
}

impl MonodromyReport {
    pub fn ok(&self) -> bool {
        self.is_bijection && self.is_chain_map && self.intertwines != Some(false) && self.unimodular && self.finite_order
    }
}

/// `4 · n · order(γ)`.
pub fn default_cap(lattice: &NcpLattice) -> usize {
    4 * lattice.rank() * lattice.group().element_order(lattice.element(lattice.top()))
}

/// Matrices of the induced action on free homology, per degree.
pub fn induced_actions(complex: &DeltaComplex, map: &CellularMap) -> Result<Vec<(i64, IntegerMatrix)>> {
    let cc = complex.chain_complex();
    let f = map.chain_map();
    f.check(&cc, &cc)?;
    cc.degrees().map(|d| Ok((d, induced_map_on_homology(&cc, &cc, &f, d)?))).collect()
}

fn report(
    group: String,
    space: &str,
    complex: &DeltaComplex,
    map: &CellularMap,
    intertwines: Option<bool>,
    cap: usize,
) -> Result<MonodromyReport> {
    let is_bijection = map.is_bijection();
    let is_chain_map = map.check_chain_map(complex).is_ok();
    let mut degrees = Vec::new();
    let (mut unimodular, mut finite_order) = (true, true);
    if is_chain_map {
        for (d, m) in induced_actions(complex, map)? {
            let det = m.determinant()?;
            let order = automorphism_order(&m, cap)?;
            unimodular &= det.abs().is_one() || m.rows() == 0;
            finite_order &= order.is_some();
            degrees.push(DegreeAction {
                degree: d,
                rank: m.rows(),
                matrix: (0..m.rows()).map(|i| m.row(i).iter().map(bigint_json).collect()).collect(),
                determinant: bigint_json(&det),
                order,
                charpoly: characteristic_polynomial(&m)?.iter().map(bigint_json).collect(),
            });
        }
    }
    Ok(MonodromyReport {
        schema: 1,
        group,
        space: space.into(),
        is_bijection,
        is_chain_map,
        intertwines,
        cap,
        unimodular: unimodular && is_chain_map,
        finite_order: finite_order && is_chain_map,
        degrees,
    })
}

pub fn fp_report(fp: &FpComplex, cap: usize) -> Result<MonodromyReport> {
    let map = monodromy_fp(fp)?;
    report(fp.lattice().group().family().to_string(), "fp", fp.complex(), &map, None, cap)
}

pub fn fq_report(fp: &FpComplex, fq: &FqComplex, cap: usize) -> Result<MonodromyReport> {
    let fp_map = monodromy_fp(fp)?;
    let map = monodromy_fq(fq)?;
    let intertwines = check_intertwining(fp, fq, &fp_map, &map).is_ok();
    report(fq.lattice().group().family().to_string(), "fq", fq.complex(), &map, Some(intertwines), cap)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::ReflectionGroup;
    use crate::ncp::InitializedChain;

    fn fp(spec: &str) -> FpComplex {
        let g = Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap());
        FpComplex::build(Arc::new(NcpLattice::canonical(g).unwrap())).unwrap()
    }

    #[test]
    fn dihedral_vertex_rule() {
        let f = fp("I2_5");
        let l = f.lattice();
        assert_eq!(monodromy_fp_cell(l, &FpCell::vertex(1)).unwrap(), (FpCell::vertex(0), 1));
        assert_eq!(monodromy_fp_cell(l, &FpCell::vertex(0)).unwrap(), (FpCell::vertex(1), 1));
        for r in l.truncate(1, 1) {
            let edge = FpCell::new(0, InitializedChain::from_nodes(vec![r]));
            let (img, _) = monodromy_fp_cell(l, &edge).unwrap();
            let expected = FpCell::new(0, InitializedChain::from_nodes(vec![l.quotient(r, l.top()).unwrap()]));
            assert_eq!(img, expected);
        }
        let m = monodromy_fp(&f).unwrap();
        assert!(m.compose(&m).images[0].iter().enumerate().all(|(i, &(j, s))| i == j && s == 1));
    }

    #[test]
    fn a3_height_shift() {
        let f = fp("A3");
        let l = f.lattice();
        assert_eq!(monodromy_fp_cell(l, &FpCell::vertex(2)).unwrap(), (FpCell::vertex(1), 1));
        assert_eq!(monodromy_fp_cell(l, &FpCell::vertex(0)).unwrap(), (FpCell::vertex(2), 1));
        let m = monodromy_fp(&f).unwrap();
        assert!(m.is_bijection());
        m.check_chain_map(f.complex()).unwrap();
        assert!(monodromy_fp_cell(l, &FpCell::vertex(3)).is_err());
    }

    #[test]
    fn fq_vertex_rule_and_intertwining() {
        let f = fp("I2_4");
        let q = FqComplex::build(&f).unwrap();
        let l = q.lattice();
        let gamma = l.element(l.top());
        for v in q.cells(0) {
            let (h, w) = monodromy_fq_vertex(l, (v.height, v.element));
            assert_eq!((h, w), (v.height, l.group().mul(v.element, gamma)));
        }
        let fq_map = monodromy_fq(&q).unwrap();
        assert!(fq_map.is_bijection());
        fq_map.check_chain_map(q.complex()).unwrap();
        check_intertwining(&f, &q, &monodromy_fp(&f).unwrap(), &fq_map).unwrap();
    }

    #[test]
    fn order_examples() {
        assert_eq!(automorphism_order(&IntegerMatrix::identity(3), 10).unwrap(), Some(1));
        let rot = IntegerMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(automorphism_order(&rot, 10).unwrap(), Some(4));
        assert_eq!(automorphism_order(&rot, 3).unwrap(), None);
        let shear = IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(automorphism_order(&shear, 50).unwrap(), None);
    }

    #[test]
    fn charpoly_examples() {
        let rot = IntegerMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(characteristic_polynomial(&rot).unwrap(), big(&[1, 0, 1]));
        let m = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 1]]);
        // det(xI − M) = x³ − 6x² + 11x − 7, by cofactor expansion.
        assert_eq!(characteristic_polynomial(&m).unwrap(), big(&[1, -6, 11, -7]));
        assert_eq!(characteristic_polynomial(&IntegerMatrix::zeros(0, 0)).unwrap(), big(&[1]));
    }

    #[test]
    fn reports() {
        let f = fp("I2_5");
        let r = fp_report(&f, default_cap(f.lattice())).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.degrees[1].rank, 4);
        let q = FqComplex::build(&f).unwrap();
        let r = fq_report(&f, &q, default_cap(f.lattice())).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.degrees[1].rank, 16);
    }
}
