//! Finite real reflection groups of types A, B, D and I2(m).
//!
//! Every group is enumerated in full and its elements are interned as
//! integer ids (positions in the sorted element list). Reflection length is
//! computed by breadth-first search on the Cayley graph of `(W, T)`, so no
//! linear algebra is needed for any family.
//!
//! Canonical Coxeter elements are products of simple reflections in diagram
//! order, composed right to left:
//!
//! * `A_n`: `s_i = (i i+1)`, giving `γ = (1 2 … n+1)`.
//! * `B_n`: `s_i = (i i+1)` for `i < n` and `s_n` negating coordinate `n`,
//!   giving the signed `2n`-cycle `1 → 2 → … → n → −1 → … → −n → 1`.
//! * `D_n`: `s_i = (i i+1)` for `i < n` and `s_n` swapping `n−1 ↔ −n`.
//! * `I2(m)`: `ref_k` is the reflection in the line at angle `kπ/m` and
//!   `rot_k` the rotation by `2πk/m`. The simple reflections are
//!   `ref_1, ref_0` (adjacent mirrors) and `γ = ref_1·ref_0 = rot_1`.

mod element;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub use element::GroupElement;

use crate::error::{Error, Result};

const TABLE_LIMIT: usize = 1024;

/// Family and rank of an irreducible finite real reflection group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    A(usize),
    B(usize),
    D(usize),
    I2(u32),
}

impl GroupFamily {
    pub fn rank(&self) -> usize {
        match *self {
            GroupFamily::A(n) | GroupFamily::B(n) | GroupFamily::D(n) => n,
            GroupFamily::I2(_) => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (family, rank, ok, bound) = match *self {
            GroupFamily::A(n) => ("A", n, (1..=11).contains(&n), "1 <= n <= 11"),
            GroupFamily::B(n) => ("B", n, (2..=10).contains(&n), "2 <= n <= 10"),
            GroupFamily::D(n) => ("D", n, (4..=10).contains(&n), "4 <= n <= 10"),
            GroupFamily::I2(m) => ("I2", m as usize, (3..=1000).contains(&m), "3 <= m <= 1000"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RankOutOfBounds { family, rank, bound })
        }
    }

    /// Number of reflections, from the classification.
    pub fn reflection_count(&self) -> usize {
        match *self {
            GroupFamily::A(n) => n * (n + 1) / 2,
            GroupFamily::B(n) => n * n,
            GroupFamily::D(n) => n * (n - 1),
            GroupFamily::I2(m) => m as usize,
        }
    }

    fn identity(&self) -> GroupElement {
        match *self {
            GroupFamily::A(n) => GroupElement::perm_identity(n + 1),
            GroupFamily::B(n) | GroupFamily::D(n) => GroupElement::signed_identity(n),
            GroupFamily::I2(m) => GroupElement::rotation(m, 0),
        }
    }

    fn simple_reflections(&self) -> Vec<GroupElement> {
        match *self {
            GroupFamily::A(n) => (1..=n).map(|i| GroupElement::transposition(n + 1, i, i + 1)).collect(),
            GroupFamily::B(n) => {
                let mut s: Vec<_> =
                    (1..n).map(|i| GroupElement::signed_transposition(n, i, i + 1, 1)).collect();
                s.push(GroupElement::sign_change(n, n));
                s
            }
            GroupFamily::D(n) => {
                let mut s: Vec<_> =
                    (1..n).map(|i| GroupElement::signed_transposition(n, i, i + 1, 1)).collect();
                s.push(GroupElement::signed_transposition(n, n - 1, n, -1));
                s
            }
            GroupFamily::I2(m) => {
                vec![GroupElement::dihedral_reflection(m, 1), GroupElement::dihedral_reflection(m, 0)]
            }
        }
    }

    fn reflections(&self) -> Vec<GroupElement> {
        match *self {
            GroupFamily::A(n) => {
                let mut t = Vec::new();
                for i in 1..=n + 1 {
                    for j in i + 1..=n + 1 {
                        t.push(GroupElement::transposition(n + 1, i, j));
                    }
                }
                t
            }
            GroupFamily::B(n) | GroupFamily::D(n) => {
                let mut t = Vec::new();
                if let GroupFamily::B(_) = self {
                    t.extend((1..=n).map(|i| GroupElement::sign_change(n, i)));
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        t.push(GroupElement::signed_transposition(n, i, j, 1));
                        t.push(GroupElement::signed_transposition(n, i, j, -1));
                    }
                }
                t
            }
            GroupFamily::I2(m) => (0..m as i64).map(|k| GroupElement::dihedral_reflection(m, k)).collect(),
        }
    }

    /// Parses an element in the family's text form: cycle notation for A,
    /// signed one-line notation for B and D, `rot<k>`/`ref<k>` for I2.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let e = match *self {
            GroupFamily::A(n) => element::parse_cycles(text, n + 1)?,
            GroupFamily::B(n) => element::parse_signed(text, n)?,
            GroupFamily::D(n) => {
                let e = element::parse_signed(text, n)?;
                if let GroupElement::Signed(v) = &e {
                    if v.iter().filter(|&&x| x < 0).count() % 2 != 0 {
                        return Err(Error::BadElement {
                            text: text.to_string(),
                            reason: "type D needs an even number of sign changes".into(),
                        });
                    }
                }
                e
            }
            GroupFamily::I2(m) => element::parse_dihedral(text, m)?,
        };
        Ok(e)
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::A(n) => write!(f, "A{n}"),
            GroupFamily::B(n) => write!(f, "B{n}"),
            GroupFamily::D(n) => write!(f, "D{n}"),
            GroupFamily::I2(m) => write!(f, "I2_{m}"),
        }
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGroupSpec(s.to_string());
        let t = s.trim();
        let family = if let Some(m) = t.strip_prefix("I2_") {
            GroupFamily::I2(m.parse().map_err(|_| bad())?)
        } else {
            let mut chars = t.chars();
            let head = chars.next().ok_or_else(bad)?;
            let n: usize = chars.as_str().parse().map_err(|_| bad())?;
            match head {
                'A' => GroupFamily::A(n),
                'B' => GroupFamily::B(n),
                'D' => GroupFamily::D(n),
                _ => return Err(bad()),
            }
        };
        family.validate()?;
        Ok(family)
    }
}

/// A fully enumerated reflection group with interned elements.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    family: GroupFamily,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    table: Option<Vec<u32>>,
    inverses: Vec<usize>,
    lengths: Vec<usize>,
    dets: Vec<i8>,
    reflections: Vec<usize>,
    simple: Vec<usize>,
    identity: usize,
    gamma: usize,
}

impl ReflectionGroup {
    pub fn new(family: GroupFamily) -> Result<Self> {
        family.validate()?;
        let identity = family.identity();
        let simple = family.simple_reflections();

        // Closure under right multiplication by the generators.
        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let mut queue = VecDeque::from([identity.clone()]);
        seen.insert(identity.clone(), ());
        while let Some(x) = queue.pop_front() {
            for s in &simple {
                let y = x.compose(s)?;
                if seen.insert(y.clone(), ()).is_none() {
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<GroupElement> = seen.into_keys().collect();
        elements.sort();
        let index: HashMap<GroupElement, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let lookup = |e: &GroupElement| index[e];

        let inverses = elements.iter().map(|e| lookup(&e.inverse())).collect();
        let dets = elements.iter().map(GroupElement::determinant_sign).collect();
        let table = if elements.len() <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(elements.len() * elements.len());
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&a.compose(b)?) as u32);
                }
            }
            Some(t)
        } else {
            None
        };
        let reflections: Vec<usize> = family.reflections().iter().map(lookup).collect();
        let simple_ids: Vec<usize> = simple.iter().map(lookup).collect();
        let mut gamma = identity.clone();
        for s in &simple {
            gamma = gamma.compose(s)?;
        }
        let gamma = lookup(&gamma);
        let identity = lookup(&identity);

        let mut group = ReflectionGroup {
            family,
            elements,
            index,
            table,
            inverses,
            lengths: Vec::new(),
            dets,
            reflections,
            simple: simple_ids,
            identity,
            gamma,
        };
        group.lengths = group.bfs_lengths();
        Ok(group)
    }

    fn bfs_lengths(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.elements.len()];
        dist[self.identity] = 0;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &t in &self.reflections {
                let y = self.mul(x, t);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &GroupElement {
        &self.elements[id]
    }

    pub fn id_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn require(&self, e: &GroupElement) -> Result<usize> {
        self.id_of(e).ok_or_else(|| Error::NotInGroup(e.to_string()))
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let e = self.family.parse_element(text)?;
        self.require(&e)
    }

    pub fn repr(&self, id: usize) -> String {
        self.elements[id].to_string()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// The canonical Coxeter element.
    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn simple_reflections(&self) -> &[usize] {
        &self.simple
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => {
                let c = self.elements[a]
                    .compose(&self.elements[b])
                    .expect("elements of one group share a shape");
                self.index[&c]
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a⁻¹·b`.
    pub fn left_quotient(&self, a: usize, b: usize) -> usize {
        self.mul(self.inverses[a], b)
    }

    pub fn reflection_length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    pub fn determinant_sign(&self, w: usize) -> i8 {
        self.dets[w]
    }

    /// `u ≤ w` in absolute order: `|u| + |u⁻¹w| = |w|`.
    pub fn absolute_leq(&self, u: usize, w: usize) -> bool {
        self.lengths[u] + self.lengths[self.left_quotient(u, w)] == self.lengths[w]
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Whether `g` is conjugate to the canonical Coxeter element.
    pub fn is_coxeter_element(&self, g: usize) -> bool {
        if self.lengths[g] != self.lengths[self.gamma] {
            return false;
        }
        (0..self.order()).any(|v| self.mul(self.mul(v, self.gamma), self.inverses[v]) == g)
    }
}
