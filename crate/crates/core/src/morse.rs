//! The acyclic matching on `X_{P*}` whose critical cells are `F̂_P`, checked
//! on finite height windows.
//!
//! A cell whose chain ends in `γ` is paired with its top face when `m ≥ 0`
//! and with its bottom face when `m < 0`. Every other cell outside `F̂_P` is
//! the matching face of exactly one such cell. Cells whose partner lies
//! outside the window are reported as indeterminate.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{FpCell, WindowFace, XpWindow};
use crate::ncp::{InitializedChain, NcpLattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchClass {
    Critical,
    /// The cell is matched with this facet.
    MatchedAsCofaceOf(FpCell),
    /// The cell is a facet matched with this coface.
    MatchedAsFaceOf(FpCell),
    /// The named partner lies outside the window.
    IndeterminateAtWindowEdge(FpCell),
}

impl MatchClass {
    pub fn partner(&self) -> Option<&FpCell> {
        match self {
            MatchClass::Critical => None,
            MatchClass::MatchedAsCofaceOf(p) | MatchClass::MatchedAsFaceOf(p) | MatchClass::IndeterminateAtWindowEdge(p) => {
                Some(p)
            }
        }
    }

    pub fn is_determinate(&self) -> bool {
        !matches!(self, MatchClass::IndeterminateAtWindowEdge(_))
    }
}

/// `(m − n + |w_k|, e < γw_k⁻¹ < γw_k⁻¹w₁ < … < γw_k⁻¹w_{k−1} < γ)`: the
/// unique cell ending in `γ` whose top face is `cell`.
pub fn top_face_preimage(lattice: &NcpLattice, cell: &FpCell) -> Result<FpCell> {
    let g = lattice.group();
    let last = cell.chain.last().unwrap_or(lattice.bottom());
    if last == lattice.top() {
        return Err(Error::Structural(format!("{} already ends in γ", cell.describe(lattice))));
    }
    let n = lattice.rank() as i64;
    if cell.chain.is_empty() {
        return Ok(FpCell::new(cell.height - n, InitializedChain::from_nodes(vec![lattice.top()])));
    }
    let head = g.mul(lattice.element(lattice.top()), g.inv(lattice.element(last)));
    let mut images = vec![head];
    let prefix = &cell.chain.nodes()[..cell.chain.len().saturating_sub(1)];
    images.extend(prefix.iter().map(|&w| g.mul(head, lattice.element(w))));
    let mut nodes = images
        .into_iter()
        .map(|u| {
            lattice
                .node(u)
                .ok_or_else(|| Error::Structural(format!("{} is not below γ", g.repr(u))))
        })
        .collect::<Result<Vec<_>>>()?;
    nodes.push(lattice.top());
    Ok(FpCell::new(cell.height - n + cell.top_rank(lattice) as i64, InitializedChain::from_nodes(nodes)))
}

/// The matching rule, ignoring window bounds.
pub fn matching_partner(lattice: &NcpLattice, cell: &FpCell) -> Result<MatchClass> {
    let n = lattice.rank() as i64;
    if cell.ends_in_gamma(lattice) {
        let face = if cell.height >= 0 { cell.top_face(lattice) } else { cell.bottom_face() };
        return Ok(MatchClass::MatchedAsCofaceOf(face.expect("chain ending in γ is nonempty")));
    }
    if cell.height < 0 {
        return Ok(MatchClass::MatchedAsFaceOf(FpCell::new(cell.height, cell.chain.pushed(lattice.top()))));
    }
    if cell.height - n + cell.top_rank(lattice) as i64 >= 0 {
        return Ok(MatchClass::MatchedAsFaceOf(top_face_preimage(lattice, cell)?));
    }
    Ok(MatchClass::Critical)
}

/// Classifies a cell relative to the window `[lo, hi]`.
pub fn classify(lattice: &NcpLattice, cell: &FpCell, window: (i64, i64)) -> Result<MatchClass> {
    let class = matching_partner(lattice, cell)?;
    Ok(match class {
        MatchClass::MatchedAsCofaceOf(p) | MatchClass::MatchedAsFaceOf(p)
            if !(window.0..=window.1).contains(&p.height) =>
        {
            MatchClass::IndeterminateAtWindowEdge(p)
        }
        other => other,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MorseReport {
    pub group: String,
    pub window: [i64; 2],
    pub is_involution: bool,
    pub is_acyclic: bool,
    pub critical_equals_fp: bool,
    pub unit_incidence: bool,
    pub height_monotone: bool,
    pub euler_matches: bool,
    /// Determinate critical cells per dimension.
    pub critical: Vec<usize>,
    pub fp_cells_in_window: Vec<usize>,
    pub matched_pairs: usize,
    pub indeterminate: usize,
    pub paths_checked: usize,
    pub counterexamples: Vec<String>,
}

impl MorseReport {
    pub fn ok(&self) -> bool {
        self.is_involution
            && self.is_acyclic
            && self.critical_equals_fp
            && self.unit_incidence
            && self.height_monotone
            && self.euler_matches
    }
}

const MAX_COUNTEREXAMPLES: usize = 10;

fn note(out: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if out.len() < MAX_COUNTEREXAMPLES {
        out.push(msg());
    }
}

/// Classification of every window cell, per dimension.
pub fn classify_window(window: &XpWindow) -> Result<Vec<Vec<MatchClass>>> {
    let l = window.lattice();
    (0..window.levels())
        .map(|k| window.cells(k).iter().map(|c| classify(l, c, window.bounds())).collect())
        .collect()
}

/// Checks involution, unit incidence of matched pairs, acyclicity,
/// the critical cell census and height monotonicity along alternating paths.
pub fn verify_matching(window: &XpWindow) -> Result<MorseReport> {
    let l = window.lattice();
    let classes = classify_window(window)?;
    let mut cx = Vec::new();

    // matched_face[k][i]: index in dimension k − 1 of the facet a k-cell is matched with.
    let mut matched_face: Vec<Vec<Option<usize>>> = classes.iter().map(|c| vec![None; c.len()]).collect();
    let mut is_involution = true;
    let mut unit_incidence = true;
    let mut matched_pairs = 0;
    for k in 0..classes.len() {
        for (i, class) in classes[k].iter().enumerate() {
            let cell = &window.cells(k)[i];
            let (pk, expect_face) = match class {
                MatchClass::MatchedAsCofaceOf(_) => (k.checked_sub(1), true),
                MatchClass::MatchedAsFaceOf(_) => (Some(k + 1), false),
                _ => continue,
            };
            let partner = class.partner().expect("matched");
            let found = pk.and_then(|pk| window.index_of(partner).filter(|_| partner.dim() == pk).map(|j| (pk, j)));
            let Some((pk, j)) = found else {
                is_involution = false;
                note(&mut cx, || format!("partner of {} is not a window cell", cell.describe(l)));
                continue;
            };
            let back = &classes[pk][j];
            let names_back = match (back, expect_face) {
                (MatchClass::MatchedAsFaceOf(p), true) | (MatchClass::MatchedAsCofaceOf(p), false) => p == cell,
                _ => false,
            };
            if !names_back {
                is_involution = false;
                note(&mut cx, || {
                    format!("{} names {} which answers {:?}", cell.describe(l), partner.describe(l), back)
                });
                continue;
            }
            if expect_face {
                matched_face[k][i] = Some(j);
                matched_pairs += 1;
                let coeff: i64 = window
                    .faces(k, i)
                    .iter()
                    .filter(|(f, _)| *f == WindowFace::Inside(j))
                    .map(|(_, s)| s)
                    .sum();
                if coeff.abs() != 1 {
                    unit_incidence = false;
                    note(&mut cx, || {
                        format!("{} meets its matched face with coefficient {coeff}", cell.describe(l))
                    });
                }
            }
        }
    }

    // Hasse digraph on determinate cells: matched edges up, other face edges down.
    let offsets: Vec<usize> = (0..window.levels())
        .scan(0, |acc, k| {
            let o = *acc;
            *acc += window.cells(k).len();
            Some(o)
        })
        .collect();
    let total: usize = window.counts().iter().sum();
    let determinate = |k: usize, i: usize| classes[k][i].is_determinate();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut indegree = vec![0usize; total];
    for k in 1..window.levels() {
        for (i, partner) in matched_face[k].iter().enumerate() {
            if !determinate(k, i) {
                continue;
            }
            for (f, _) in window.faces(k, i) {
                let WindowFace::Inside(f) = *f else { continue };
                if !determinate(k - 1, f) {
                    continue;
                }
                let (up, down) = (offsets[k] + i, offsets[k - 1] + f);
                let (from, to) = if *partner == Some(f) { (down, up) } else { (up, down) };
                out_edges[from].push(to);
                indegree[to] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..total).filter(|&v| indegree[v] == 0).collect();
    let mut visited = 0;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for &w in &out_edges[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    let is_acyclic = visited == total;
    if !is_acyclic {
        let stuck = (0..total).find(|&v| indegree[v] > 0).expect("cycle remnant");
        let k = offsets.iter().rposition(|&o| o <= stuck).expect("offset");
        note(&mut cx, || format!("{} lies on a directed cycle", window.cells(k)[stuck - offsets[k]].describe(l)));
    }

    // Critical census.
    let mut critical_equals_fp = true;
    let mut critical = vec![0usize; window.levels()];
    let mut fp_cells = vec![0usize; window.levels()];
    let mut indeterminate = 0;
    for k in 0..window.levels() {
        for (i, class) in classes[k].iter().enumerate() {
            let cell = &window.cells(k)[i];
            let in_fp = cell.in_fp(l);
            let is_critical = *class == MatchClass::Critical;
            critical[k] += usize::from(is_critical);
            fp_cells[k] += usize::from(in_fp);
            indeterminate += usize::from(!class.is_determinate());
            if in_fp != is_critical {
                critical_equals_fp = false;
                note(&mut cx, || format!("{} is classified {:?} (in F̂_P: {in_fp})", cell.describe(l), class));
            }
        }
    }
    while critical.len() > 1 && critical.last() == Some(&0) && fp_cells.last() == Some(&0) {
        critical.pop();
        fp_cells.pop();
    }
    let euler = |v: &[usize]| v.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum::<i64>();
    let euler_matches = euler(&critical) == euler(&fp_cells);

    // Alternating paths c ≻_m c' ≺ c'' ≻_m c''' through cells ending in γ.
    let cofaces = window.cofaces();
    let mut height_monotone = true;
    let mut paths_checked = 0;
    for k in 1..window.levels() {
        for (i, class) in classes[k].iter().enumerate() {
            let MatchClass::MatchedAsCofaceOf(_) = class else { continue };
            let Some(f) = matched_face[k][i] else { continue };
            let c = &window.cells(k)[i];
            for &j in &cofaces[k - 1][f] {
                if j == i || !matches!(classes[k][j], MatchClass::MatchedAsCofaceOf(_)) {
                    continue;
                }
                let next = &window.cells(k)[j];
                paths_checked += 1;
                let monotone = if c.height < 0 { next.height < c.height } else { next.height > c.height };
                if !monotone {
                    height_monotone = false;
                    note(&mut cx, || format!("height does not move from {} to {}", c.describe(l), next.describe(l)));
                }
            }
        }
    }

    Ok(MorseReport {
        group: l.group().family().to_string(),
        window: [window.bounds().0, window.bounds().1],
        is_involution,
        is_acyclic,
        critical_equals_fp,
        unit_incidence,
        height_monotone,
        euler_matches,
        critical,
        fp_cells_in_window: fp_cells,
        matched_pairs,
        indeterminate,
        paths_checked,
        counterexamples: cx,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceReport {
    pub group: String,
    pub window: [i64; 2],
    pub holds: bool,
    /// Cells whose two candidate cofaces both lie in the window.
    pub checked: usize,
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

/// Every cell `(m, e < w₁ < … < w_k)` with `|w_k| < n`, `m − n ≥ lo` and
/// `m ≤ hi` has exactly two cofaces whose chain ends in `γ`.
pub fn verify_incidence(window: &XpWindow) -> Result<IncidenceReport> {
    let l = window.lattice();
    let n = l.rank() as i64;
    let (lo, hi) = window.bounds();
    let cofaces = window.cofaces();
    let mut report = IncidenceReport {
        group: l.group().family().to_string(),
        window: [lo, hi],
        holds: true,
        checked: 0,
        skipped: 0,
        counterexamples: Vec::new(),
    };
    for (k, level) in cofaces.iter().enumerate().take(window.levels() - 1) {
        for (i, cell) in window.cells(k).iter().enumerate() {
            if cell.ends_in_gamma(l) {
                continue;
            }
            if cell.height - n < lo || cell.height > hi {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let through_gamma: Vec<&FpCell> = level[i]
                .iter()
                .map(|&j| &window.cells(k + 1)[j])
                .filter(|c| c.ends_in_gamma(l))
                .collect();
            if through_gamma.len() != 2 {
                report.holds = false;
                note(&mut report.counterexamples, || {
                    format!("{} has {} cofaces ending in γ", cell.describe(l), through_gamma.len())
                });
            }
        }
    }
    Ok(report)
}

/// Matched partners of the cells of `window`, keyed by cell.
pub fn matching_map(window: &XpWindow) -> Result<HashMap<FpCell, MatchClass>> {
    let classes = classify_window(window)?;
    Ok((0..window.levels())
        .flat_map(|k| window.cells(k).iter().cloned().zip(classes[k].iter().cloned()))
        .collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::ReflectionGroup;

    fn lattice(spec: &str) -> Arc<NcpLattice> {
        let g = Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap());
        Arc::new(NcpLattice::canonical(g).unwrap())
    }

    #[test]
    fn dihedral_rules() {
        let l = lattice("I2_5");
        let r = l.truncate(1, 1)[0];
        let top = FpCell::new(0, InitializedChain::from_nodes(vec![r, l.top()]));
        let expected = FpCell::new(1, InitializedChain::from_nodes(vec![l.quotient(r, l.top()).unwrap()]));
        assert_eq!(classify(&l, &top, (-3, 3)).unwrap(), MatchClass::MatchedAsCofaceOf(expected));
        assert_eq!(
            classify(&l, &FpCell::vertex(-1), (-3, 3)).unwrap(),
            MatchClass::MatchedAsFaceOf(FpCell::new(-1, InitializedChain::from_nodes(vec![l.top()])))
        );
        let edge = FpCell::new(0, InitializedChain::from_nodes(vec![r]));
        assert_eq!(classify(&l, &edge, (-3, 3)).unwrap(), MatchClass::Critical);
        // (2, e) is the top face of (0, e < γ).
        assert_eq!(
            classify(&l, &FpCell::vertex(2), (-3, 3)).unwrap(),
            MatchClass::MatchedAsFaceOf(FpCell::new(0, InitializedChain::from_nodes(vec![l.top()])))
        );
    }

    #[test]
    fn preimage_has_the_cell_as_top_face() {
        let l = lattice("A3");
        for k in 0..3 {
            for chain in l.initialized_chains(k) {
                if chain.last() == Some(l.top()) {
                    continue;
                }
                let cell = FpCell::new(5, chain);
                let pre = top_face_preimage(&l, &cell).unwrap();
                assert!(pre.ends_in_gamma(&l));
                assert_eq!(pre.top_face(&l).unwrap(), cell);
            }
        }
    }

    #[test]
    fn dihedral_window() {
        let l = lattice("I2_5");
        let w = XpWindow::build(l, -3, 3).unwrap();
        let r = verify_matching(&w).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.critical, vec![2, 5]);
    }

    #[test]
    fn a3_window() {
        let w = XpWindow::build(lattice("A3"), -4, 4).unwrap();
        let r = verify_matching(&w).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.critical, vec![3, 18, 16]);
        assert!(r.paths_checked > 0);
        let inc = verify_incidence(&w).unwrap();
        assert!(inc.holds && inc.checked > 0, "{inc:?}");
    }

    #[test]
    fn degenerate_window_has_no_false_criticals() {
        let w = XpWindow::build(lattice("A3"), 0, 0).unwrap();
        let r = verify_matching(&w).unwrap();
        assert!(r.indeterminate > 0);
        assert!(r.critical_equals_fp);
        assert!(r.ok(), "{r:?}");
    }
}
