//! The non-crossing partition lattice `L = [e, γ]` under absolute order.
//!
//! Lattice elements are addressed by local node ids: node `0` is `e`, the
//! last node is `γ`, and nodes are sorted by (rank, group id). All downstream
//! modules store chains as sequences of node ids.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::ReflectionGroup;
use crate::error::{Error, Result};

/// A chain `e < w₁ < … < w_k` in `L`, stored without the leading `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InitializedChain(Vec<usize>);

impl InitializedChain {
    pub fn empty() -> Self {
        InitializedChain(Vec::new())
    }

    /// Wraps node ids without checking that they form a chain.
    pub fn from_nodes(nodes: Vec<usize>) -> Self {
        InitializedChain(nodes)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn without(&self, position: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(position);
        InitializedChain(v)
    }

    pub fn pushed(&self, node: usize) -> Self {
        let mut v = self.0.clone();
        v.push(node);
        InitializedChain(v)
    }
}

#[derive(Debug, Clone)]
pub struct NcpLattice {
    group: Arc<ReflectionGroup>,
    members: Vec<usize>,
    node_of: HashMap<usize, usize>,
    ranks: Vec<usize>,
    leq: Vec<bool>,
    covers: Vec<Vec<usize>>,
    quotient: Vec<Option<usize>>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl NcpLattice {
    /// Builds `[e, gamma]`, checking that `gamma` is a Coxeter element and that
    /// every pair of elements has a unique meet and join.
    pub fn new(group: Arc<ReflectionGroup>, gamma: usize) -> Result<Self> {
        if !group.is_coxeter_element(gamma) {
            return Err(Error::NotCoxeter(group.repr(gamma)));
        }
        let mut members: Vec<usize> =
            (0..group.order()).filter(|&w| group.absolute_leq(w, gamma)).collect();
        members.sort_by_key(|&w| (group.reflection_length(w), w));
        let node_of: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let size = members.len();
        let ranks: Vec<usize> = members.iter().map(|&w| group.reflection_length(w)).collect();

        let mut leq = vec![false; size * size];
        let mut quotient = vec![None; size * size];
        for a in 0..size {
            for b in 0..size {
                if group.absolute_leq(members[a], members[b]) {
                    leq[a * size + b] = true;
                    let q = group.left_quotient(members[a], members[b]);
                    quotient[a * size + b] = node_of.get(&q).copied();
                }
            }
        }
        let covers = (0..size)
            .map(|a| (0..size).filter(|&b| leq[a * size + b] && ranks[b] == ranks[a] + 1).collect())
            .collect();

        let mut lattice = NcpLattice {
            group,
            members,
            node_of,
            ranks,
            leq,
            covers,
            quotient,
            meet: Vec::new(),
            join: Vec::new(),
        };
        lattice.compute_bounds()?;
        for a in 0..size {
            for b in 0..size {
                if lattice.leq(a, b) && lattice.quotient[a * size + b].is_none() {
                    return Err(Error::Structural(format!(
                        "left quotient of {} by {} leaves the lattice",
                        lattice.repr(b),
                        lattice.repr(a)
                    )));
                }
            }
        }
        Ok(lattice)
    }

    /// The lattice for the canonical Coxeter element of `group`.
    pub fn canonical(group: Arc<ReflectionGroup>) -> Result<Self> {
        let gamma = group.gamma();
        Self::new(group, gamma)
    }

    fn compute_bounds(&mut self) -> Result<()> {
        let size = self.len();
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let lower: Vec<usize> = (0..size).filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
                let upper: Vec<usize> = (0..size).filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
                let greatest: Vec<usize> =
                    lower.iter().copied().filter(|&x| lower.iter().all(|&y| self.leq(y, x))).collect();
                let least: Vec<usize> =
                    upper.iter().copied().filter(|&x| upper.iter().all(|&y| self.leq(x, y))).collect();
                if greatest.len() != 1 || least.len() != 1 {
                    return Err(Error::Structural(format!(
                        "{} and {} have no unique meet/join",
                        self.repr(a),
                        self.repr(b)
                    )));
                }
                meet[a * size + b] = greatest[0];
                join[a * size + b] = least[0];
            }
        }
        self.meet = meet;
        self.join = join;
        Ok(())
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<ReflectionGroup> {
        Arc::clone(&self.group)
    }

    /// Rank of the ambient group, which is also the rank of `γ`.
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    /// Group id of a node.
    pub fn element(&self, node: usize) -> usize {
        self.members[node]
    }

    pub fn node(&self, group_id: usize) -> Option<usize> {
        self.node_of.get(&group_id).copied()
    }

    pub fn repr(&self, node: usize) -> String {
        self.group.repr(self.members[node])
    }

    /// Reflection length of a node.
    pub fn rank_of(&self, node: usize) -> usize {
        self.ranks[node]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn covers(&self, a: usize) -> &[usize] {
        &self.covers[a]
    }

    /// All covering pairs `(lo, hi)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.covers[a].iter().map(move |&b| (a, b))).collect()
    }

    /// `a⁻¹b` as a node, defined for `a ≤ b`.
    pub fn quotient(&self, a: usize, b: usize) -> Option<usize> {
        self.quotient[a * self.len() + b]
    }

    fn quotient_unchecked(&self, a: usize, b: usize) -> usize {
        self.quotient(a, b).expect("a ≤ b inside the lattice")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    /// `(γw⁻¹, w⁻¹γ)`.
    pub fn complements(&self, w: usize) -> (usize, usize) {
        let g = &self.group;
        let we = self.members[w];
        let left = g.mul(self.members[self.top()], g.inv(we));
        let right = self.quotient_unchecked(w, self.top());
        (self.node(left).expect("left complement stays in L"), right)
    }

    /// Nodes of `L_{[i,j]} = {w : i ≤ |w| ≤ j}`.
    pub fn truncate(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| (i..=j).contains(&self.ranks[w])).collect()
    }

    /// Whether `chain` is a strictly increasing sequence of non-identity nodes.
    pub fn is_chain(&self, chain: &InitializedChain) -> bool {
        let n = chain.nodes();
        n.iter().all(|&w| w != self.bottom() && w < self.len()) && n.windows(2).all(|p| self.less(p[0], p[1]))
    }

    /// Left-translates a chain by the inverse of its first element:
    /// `w₁ < … < w_k ↦ w₁⁻¹w₂ < … < w₁⁻¹w_k`. Returns `|w₁|` and the new chain.
    pub fn shift_chain(&self, chain: &InitializedChain) -> (usize, InitializedChain) {
        let Some(first) = chain.first() else { return (0, InitializedChain::empty()) };
        let rest = chain.nodes()[1..].iter().map(|&w| self.quotient_unchecked(first, w)).collect();
        (self.ranks[first], InitializedChain(rest))
    }

    /// All initialized chains with exactly `k` elements after `e`, in
    /// lexicographic order of node ids.
    pub fn initialized_chains(&self, k: usize) -> Vec<InitializedChain> {
        self.chains_within(&(1..self.len()).collect::<Vec<_>>(), k)
    }

    /// Every initialized chain, grouped by length.
    pub fn all_chains(&self) -> Vec<Vec<InitializedChain>> {
        (0..=self.rank()).map(|k| self.initialized_chains(k)).collect()
    }

    /// Strictly increasing chains of `k` elements drawn from `allowed`.
    pub fn chains_within(&self, allowed: &[usize], k: usize) -> Vec<InitializedChain> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(k);
        self.extend_chains(allowed, k, &mut stack, &mut out);
        out
    }

    fn extend_chains(&self, allowed: &[usize], k: usize, stack: &mut Vec<usize>, out: &mut Vec<InitializedChain>) {
        if stack.len() == k {
            out.push(InitializedChain(stack.clone()));
            return;
        }
        // Remaining slots need strictly increasing ranks, which prunes by rank headroom.
        let needed = k - stack.len();
        for &w in allowed {
            if let Some(&last) = stack.last() {
                if !self.less(last, w) {
                    continue;
                }
            }
            if self.ranks[w] + needed - 1 > self.rank() {
                continue;
            }
            stack.push(w);
            self.extend_chains(allowed, k, stack, out);
            stack.pop();
        }
    }

    /// Maximal chains `e ⋖ w₁ ⋖ … ⋖ w_{n−1} ⋖ γ`, stored as `w₁, …, w_{n−1}, γ`.
    pub fn maximal_chains(&self) -> Vec<InitializedChain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.walk_covers(self.bottom(), &mut stack, &mut out);
        out
    }

    fn walk_covers(&self, from: usize, stack: &mut Vec<usize>, out: &mut Vec<InitializedChain>) {
        if from == self.top() {
            out.push(InitializedChain(stack.clone()));
            return;
        }
        for &next in &self.covers[from] {
            stack.push(next);
            self.walk_covers(next, stack, out);
            stack.pop();
        }
    }

    /// A bijection `φ` of nodes onto `other` preserving rank, order and left
    /// quotients (`φ(a⁻¹b) = φ(a)⁻¹φ(b)`), found by backtracking.
    pub fn isomorphism_to(&self, other: &NcpLattice) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.rank() != other.rank() {
            return None;
        }
        let mut phi = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        self.extend_isomorphism(other, 0, &mut phi, &mut used).then_some(phi)
    }

    fn extend_isomorphism(&self, other: &NcpLattice, v: usize, phi: &mut [usize], used: &mut [bool]) -> bool {
        if v == self.len() {
            return true;
        }
        for u in 0..other.len() {
            if used[u] || other.ranks[u] != self.ranks[v] {
                continue;
            }
            let consistent = (0..v).all(|a| {
                let below = self.leq(a, v);
                below == other.leq(phi[a], u)
                    && (!below || a == self.bottom() || Some(phi[self.quotient_unchecked(a, v)]) == other.quotient(phi[a], u))
            });
            if !consistent {
                continue;
            }
            phi[v] = u;
            used[u] = true;
            if self.extend_isomorphism(other, v + 1, phi, used) {
                return true;
            }
            used[u] = false;
        }
        phi[v] = usize::MAX;
        false
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            schema: 1,
            group: self.group.family().to_string(),
            elements: (0..self.len())
                .map(|id| ElementExport { id, repr: self.repr(id), rank: self.ranks[id] })
                .collect(),
            hasse: self.hasse_edges().into_iter().map(|(a, b)| [a, b]).collect(),
            gamma: self.top(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementExport {
    pub id: usize,
    pub repr: String,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub schema: u32,
    pub group: String,
    pub elements: Vec<ElementExport>,
    pub hasse: Vec<[usize; 2]>,
    pub gamma: usize,
}
