//! Smith normal form over the integers.
//!
//! Pivots are the nonzero entries of minimal absolute value, ties broken by
//! (row, column) order, so results are reproducible. After diagonalisation
//! the divisibility chain is enforced by 2×2 gcd/lcm moves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal,
/// `D[i][i] | D[i+1][i+1]`, nonnegative diagonal.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Transforms {
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

struct Reducer {
    a: IntegerMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row(target, source, f);
        if let Some(t) = &mut self.t {
            t.u.add_row(target, source, f);
            t.u_inv.add_col(source, target, &-f);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col(target, source, f);
        if let Some(t) = &mut self.t {
            t.v.add_col(target, source, f);
            t.v_inv.add_row(source, target, &-f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    fn pivot_search(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if ax.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                self.add_row(i, t, &-q);
                dirty |= !self.a.get(i, t).is_zero();
            }
            for j in t + 1..self.a.cols() {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                self.add_col(j, t, &-q);
                dirty |= !self.a.get(t, j).is_zero();
            }
            if !dirty {
                return;
            }
            // A remainder smaller than the pivot survived: promote it.
            let mut best = (t, t, self.a.get(t, t).abs());
            for i in t + 1..self.a.rows() {
                let x = self.a.get(i, t).abs();
                if !x.is_zero() && x < best.2 {
                    best = (i, t, x);
                }
            }
            for j in t + 1..self.a.cols() {
                let x = self.a.get(t, j).abs();
                if !x.is_zero() && x < best.2 {
                    best = (t, j, x);
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
    }

    /// Turns `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let a = self.a.get(i, i).clone();
        let b = self.a.get(j, j).clone();
        let ext = a.extended_gcd(&b);
        let (g, x, y) = (ext.gcd, ext.x, ext.y);
        let bg = &b / &g;
        let ag = &a / &g;
        let neg_bg = -&bg;
        let one = BigInt::one();
        // Rows: [[x, y], [-b/g, a/g]], determinant (ax + by)/g = 1.
        self.a.combine_rows(i, j, [&x, &y, &neg_bg, &ag]);
        let qv = -(&y * &bg);
        let sv = &x * &ag;
        // Columns: [[1, -y b/g], [1, x a/g]], determinant 1.
        self.a.combine_cols(i, j, [&one, &qv, &one, &sv]);
        if let Some(t) = &mut self.t {
            t.u.combine_rows(i, j, [&x, &y, &neg_bg, &ag]);
            let neg_y = -&y;
            t.u_inv.combine_cols(i, j, [&ag, &neg_y, &bg, &x]);
            t.v.combine_cols(i, j, [&one, &qv, &one, &sv]);
            let neg_qv = -&qv;
            let neg_one = -&one;
            t.v_inv.combine_rows(i, j, [&sv, &neg_qv, &neg_one, &one]);
        }
    }

    fn run(&mut self) -> usize {
        let limit = self.a.rows().min(self.a.cols());
        let mut rank = 0;
        while rank < limit {
            let Some((i, j)) = self.pivot_search(rank) else { break };
            self.swap_rows(rank, i);
            self.swap_cols(rank, j);
            self.clear_cross(rank);
            if self.a.get(rank, rank).is_negative() {
                self.negate_row(rank);
            }
            rank += 1;
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if !(self.a.get(j, j) % self.a.get(i, i)).is_zero() {
                    self.gcd_lcm(i, j);
                }
            }
        }
        for i in 0..rank {
            if self.a.get(i, i).is_negative() {
                self.negate_row(i);
            }
        }
        rank
    }
}

/// Smith normal form with both transforms and their inverses.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut red = Reducer {
        a: m.clone(),
        t: Some(Transforms {
            u: IntegerMatrix::identity(r),
            u_inv: IntegerMatrix::identity(r),
            v: IntegerMatrix::identity(c),
            v_inv: IntegerMatrix::identity(c),
        }),
    };
    let rank = red.run();
    let t = red.t.expect("transforms tracked");
    SnfResult { u: t.u, u_inv: t.u_inv, d: red.a, v: t.v, v_inv: t.v_inv, rank }
}

/// Nonzero invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut red = Reducer { a: m.clone(), t: None };
    let rank = red.run();
    (0..rank).map(|i| red.a.get(i, i).clone()).collect()
}
