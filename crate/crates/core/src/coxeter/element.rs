use std::fmt;

use crate::error::{Error, Result};

/// An element of one of the supported reflection groups.
///
/// Products follow the right-to-left convention `(a·b)(x) = a(b(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Type A: `images[i]` is the image of `i + 1`, stored zero-based.
    Perm(Vec<u8>),
    /// Types B and D: `images[i]` is the signed image of `i + 1`, with
    /// `w(-i) = -w(i)` implied.
    Signed(Vec<i8>),
    /// Type I2(m): rotations `rot_k: x ↦ x + k` and reflections
    /// `ref_k: x ↦ k − x` acting on `Z/m`.
    Dihedral { m: u32, reflection: bool, index: u32 },
}

impl GroupElement {
    pub fn perm_identity(points: usize) -> Self {
        GroupElement::Perm((0..points as u8).collect())
    }

    pub fn signed_identity(n: usize) -> Self {
        GroupElement::Signed((1..=n as i8).collect())
    }

    pub fn rotation(m: u32, k: i64) -> Self {
        GroupElement::Dihedral { m, reflection: false, index: k.rem_euclid(m as i64) as u32 }
    }

    pub fn dihedral_reflection(m: u32, k: i64) -> Self {
        GroupElement::Dihedral { m, reflection: true, index: k.rem_euclid(m as i64) as u32 }
    }

    /// Transposition of the one-based points `i` and `j` in a permutation of `points` letters.
    pub fn transposition(points: usize, i: usize, j: usize) -> Self {
        let mut p: Vec<u8> = (0..points as u8).collect();
        p.swap(i - 1, j - 1);
        GroupElement::Perm(p)
    }

    /// Reflection of B/D type swapping `i ↦ sign·j`, `j ↦ sign·i` (one-based, `i != j`).
    pub fn signed_transposition(n: usize, i: usize, j: usize, sign: i8) -> Self {
        let mut v: Vec<i8> = (1..=n as i8).collect();
        v[i - 1] = sign * j as i8;
        v[j - 1] = sign * i as i8;
        GroupElement::Signed(v)
    }

    /// Reflection of B type negating coordinate `i` (one-based).
    pub fn sign_change(n: usize, i: usize) -> Self {
        let mut v: Vec<i8> = (1..=n as i8).collect();
        v[i - 1] = -v[i - 1];
        GroupElement::Signed(v)
    }

    fn shape(&self) -> String {
        match self {
            GroupElement::Perm(p) => format!("S_{}", p.len()),
            GroupElement::Signed(v) => format!("signed_{}", v.len()),
            GroupElement::Dihedral { m, .. } => format!("I2({m})"),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) if a.len() == b.len() => {
                Ok(GroupElement::Perm(b.iter().map(|&x| a[x as usize]).collect()))
            }
            (GroupElement::Signed(a), GroupElement::Signed(b)) if a.len() == b.len() => {
                Ok(GroupElement::Signed(
                    b.iter()
                        .map(|&x| {
                            let y = a[x.unsigned_abs() as usize - 1];
                            if x < 0 {
                                -y
                            } else {
                                y
                            }
                        })
                        .collect(),
                ))
            }
            (
                GroupElement::Dihedral { m, reflection: ra, index: a },
                GroupElement::Dihedral { m: m2, reflection: rb, index: b },
            ) if m == m2 => {
                let (a, b) = (*a as i64, *b as i64);
                Ok(match (ra, rb) {
                    (false, false) => GroupElement::rotation(*m, a + b),
                    (false, true) => GroupElement::dihedral_reflection(*m, a + b),
                    (true, false) => GroupElement::dihedral_reflection(*m, a - b),
                    (true, true) => GroupElement::rotation(*m, a - b),
                })
            }
            _ => Err(Error::FamilyMismatch(self.shape(), other.shape())),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                GroupElement::Perm(inv)
            }
            GroupElement::Signed(v) => {
                let mut inv = vec![0i8; v.len()];
                for (i, &x) in v.iter().enumerate() {
                    let s = if x < 0 { -1 } else { 1 };
                    inv[x.unsigned_abs() as usize - 1] = s * (i as i8 + 1);
                }
                GroupElement::Signed(inv)
            }
            GroupElement::Dihedral { m, reflection: false, index } => {
                GroupElement::rotation(*m, -(*index as i64))
            }
            GroupElement::Dihedral { reflection: true, .. } => self.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i == x as usize),
            GroupElement::Signed(v) => v.iter().enumerate().all(|(i, &x)| x == i as i8 + 1),
            GroupElement::Dihedral { reflection, index, .. } => !reflection && *index == 0,
        }
    }

    /// Determinant of the element in its reflection representation.
    pub fn determinant_sign(&self) -> i8 {
        match self {
            GroupElement::Perm(p) => permutation_sign(p.iter().map(|&x| x as usize)),
            GroupElement::Signed(v) => {
                let negatives = v.iter().filter(|&&x| x < 0).count();
                let s = permutation_sign(v.iter().map(|&x| x.unsigned_abs() as usize - 1));
                if negatives % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            GroupElement::Dihedral { reflection, .. } => {
                if *reflection {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Cycles of a type-A permutation, one-based, each starting at its minimum,
    /// fixed points included.
    pub fn cycles(&self) -> Option<Vec<Vec<usize>>> {
        let GroupElement::Perm(p) = self else { return None };
        let mut seen = vec![false; p.len()];
        let mut out = Vec::new();
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = p[x] as usize;
            }
            out.push(cycle);
        }
        Some(out)
    }
}

fn permutation_sign(images: impl Iterator<Item = usize>) -> i8 {
    let p: Vec<usize> = images.collect();
    let mut seen = vec![false; p.len()];
    let mut sign = 1i8;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(_) => {
                let cycles = self.cycles().unwrap_or_default();
                let nontrivial: Vec<_> = cycles.into_iter().filter(|c| c.len() > 1).collect();
                if nontrivial.is_empty() {
                    return write!(f, "()");
                }
                for c in nontrivial {
                    let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    write!(f, "({})", body.join(" "))?;
                }
                Ok(())
            }
            GroupElement::Signed(v) => {
                let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", body.join(","))
            }
            GroupElement::Dihedral { reflection, index, .. } => {
                write!(f, "{}{}", if *reflection { "ref" } else { "rot" }, index)
            }
        }
    }
}

/// Parses cycle notation such as `(1 2 4)(3 5)` or `()` into a permutation of `points` letters.
pub(crate) fn parse_cycles(text: &str, points: usize) -> Result<GroupElement> {
    let bad = |reason: &str| Error::BadElement { text: text.to_string(), reason: reason.to_string() };
    let trimmed = text.trim();
    if trimmed == "e" {
        return Ok(GroupElement::perm_identity(points));
    }
    let mut p: Vec<u8> = (0..points as u8).collect();
    let mut used = vec![false; points];
    let mut rest = trimmed;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        let Some(after_open) = rest_trim.strip_prefix('(') else {
            return Err(bad("expected `(`"));
        };
        let close = after_open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &after_open[..close];
        let cycle: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
            .collect::<Result<_>>()?;
        for &x in &cycle {
            if x == 0 || x > points {
                return Err(bad("point out of range"));
            }
            if used[x - 1] {
                return Err(bad("cycles are not disjoint"));
            }
            used[x - 1] = true;
        }
        for (i, &x) in cycle.iter().enumerate() {
            p[x - 1] = (cycle[(i + 1) % cycle.len()] - 1) as u8;
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(GroupElement::Perm(p))
}

/// Parses signed one-line notation such as `[2,-1,3]`.
pub(crate) fn parse_signed(text: &str, n: usize) -> Result<GroupElement> {
    let bad = |reason: &str| Error::BadElement { text: text.to_string(), reason: reason.to_string() };
    let body = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("expected `[...]`"))?;
    let v: Vec<i8> = body
        .split(',')
        .map(|s| s.trim().parse::<i8>().map_err(|_| bad("non-numeric entry")))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(bad("wrong number of entries"));
    }
    let mut seen = vec![false; n];
    for &x in &v {
        let a = x.unsigned_abs() as usize;
        if a == 0 || a > n || seen[a - 1] {
            return Err(bad("not a signed permutation"));
        }
        seen[a - 1] = true;
    }
    Ok(GroupElement::Signed(v))
}

pub(crate) fn parse_dihedral(text: &str, m: u32) -> Result<GroupElement> {
    let bad = |reason: &str| Error::BadElement { text: text.to_string(), reason: reason.to_string() };
    let t = text.trim();
    let (reflection, digits) = if let Some(d) = t.strip_prefix("rot") {
        (false, d)
    } else if let Some(d) = t.strip_prefix("ref") {
        (true, d)
    } else {
        return Err(bad("expected rot<k> or ref<k>"));
    };
    let k: u32 = digits.parse().map_err(|_| bad("non-numeric index"))?;
    if k >= m {
        return Err(bad("index out of range"));
    }
    Ok(GroupElement::Dihedral { m, reflection, index: k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_squares_to_identity() {
        let t = GroupElement::transposition(4, 1, 2);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn dihedral_reflections_are_involutions() {
        for a in 0..7 {
            let r = GroupElement::dihedral_reflection(7, a);
            assert_eq!(r.compose(&r).unwrap(), GroupElement::rotation(7, 0));
        }
    }

    #[test]
    fn dihedral_table_matches_affine_action() {
        // rot_k: x ↦ x + k, ref_k: x ↦ k − x on Z/m, composed right to left.
        let m = 6u32;
        let act = |g: &GroupElement, x: i64| match g {
            GroupElement::Dihedral { reflection: false, index, .. } => (x + *index as i64).rem_euclid(6),
            GroupElement::Dihedral { reflection: true, index, .. } => (*index as i64 - x).rem_euclid(6),
            _ => unreachable!(),
        };
        let all: Vec<_> = (0..m as i64)
            .flat_map(|k| [GroupElement::rotation(m, k), GroupElement::dihedral_reflection(m, k)])
            .collect();
        for a in &all {
            for b in &all {
                let ab = a.compose(b).unwrap();
                for x in 0..6 {
                    assert_eq!(act(&ab, x), act(a, act(b, x)));
                }
            }
        }
    }

    #[test]
    fn inverse_of_four_cycle() {
        let c = parse_cycles("(1 2 3 4)", 4).unwrap();
        assert_eq!(c.inverse().to_string(), "(1 4 3 2)");
    }

    #[test]
    fn composition_is_right_to_left() {
        // (1 2)(2 3): 1 ↦ 2, 2 ↦ 3, 3 ↦ 1.
        let a = GroupElement::transposition(3, 1, 2);
        let b = GroupElement::transposition(3, 2, 3);
        assert_eq!(a.compose(&b).unwrap().to_string(), "(1 2 3)");
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(GroupElement::transposition(4, 1, 2).determinant_sign(), -1);
        assert_eq!(GroupElement::rotation(5, 3).determinant_sign(), 1);
        assert_eq!(GroupElement::sign_change(2, 1).determinant_sign(), -1);
        assert_eq!(GroupElement::signed_transposition(3, 1, 2, -1).determinant_sign(), -1);
    }

    #[test]
    fn mismatched_shapes_fail() {
        let a = GroupElement::perm_identity(3);
        let b = GroupElement::perm_identity(4);
        assert!(matches!(a.compose(&b), Err(Error::FamilyMismatch(..))));
        let c = GroupElement::rotation(5, 1);
        assert!(a.compose(&c).is_err());
    }

    #[test]
    fn text_forms_round_trip() {
        let p = parse_cycles("(1 3)(2 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(parse_cycles("()", 4).unwrap(), GroupElement::perm_identity(4));
        let s = parse_signed("[2,-1,3]", 3).unwrap();
        assert_eq!(s.to_string(), "[2,-1,3]");
        assert_eq!(parse_dihedral("ref3", 5).unwrap().to_string(), "ref3");
        assert!(parse_cycles("(1 2)(2 3)", 4).is_err());
        assert!(parse_signed("[1,1]", 2).is_err());
        assert!(parse_dihedral("rot9", 5).is_err());
    }
}
