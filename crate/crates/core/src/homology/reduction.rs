//! Chain-complex reduction by elimination of unit pivots.
//!
//! Eliminating a pair `(b, a)` with `<db, a> = u` a unit replaces the
//! complex by a chain-homotopy-equivalent one without `a` and `b`. Only the
//! three degrees around the target degree are kept, together with the two
//! chain maps restricted to that degree: the projection (a list of
//! substitutions) and the inclusion (a list of corrections applied in
//! reverse).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::simplicial::Ring;

/// `x <- x - x[a] * u * col`, applied in elimination order.
#[derive(Clone, Debug)]
pub(crate) struct Substitution {
    pub a: usize,
    pub u: BigInt,
    pub col: Vec<(usize, BigInt)>,
}

/// `x[b] <- -u * sum_c x[c] * row[c]`, applied in reverse elimination order.
#[derive(Clone, Debug)]
pub(crate) struct Correction {
    pub b: usize,
    pub u: BigInt,
    pub row: Vec<(usize, BigInt)>,
}

#[derive(Clone, Debug, Default)]
struct SparseMat {
    cols: Vec<BTreeMap<usize, BigInt>>,
    col_alive: Vec<bool>,
    rows: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
}

impl SparseMat {
    fn new(
        nrows: usize,
        columns: Vec<BTreeMap<usize, BigInt>>,
        row_alive: Vec<bool>,
        col_alive: Vec<bool>,
    ) -> Self {
        let mut rows = vec![BTreeSet::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for &i in col.keys() {
                rows[i].insert(j);
            }
        }
        SparseMat {
            cols: columns,
            col_alive,
            rows,
            row_alive,
        }
    }

    fn remove_col(&mut self, b: usize, touched: &mut Vec<usize>) {
        let col = std::mem::take(&mut self.cols[b]);
        for r in col.keys() {
            self.rows[*r].remove(&b);
            touched.extend(self.rows[*r].iter().copied());
        }
        self.col_alive[b] = false;
    }

    fn remove_row(&mut self, a: usize, touched: &mut Vec<usize>) {
        let users = std::mem::take(&mut self.rows[a]);
        for c in users {
            self.cols[c].remove(&a);
            touched.push(c);
        }
        self.row_alive[a] = false;
    }

    /// Cheapest unit pivot in column `b` by Markowitz cost.
    fn best_pivot(&self, b: usize, ring: Ring) -> Option<(usize, usize)> {
        let clen = self.cols[b].len();
        self.cols[b]
            .iter()
            .filter(|(_, v)| ring.is_unit(v))
            .map(|(&a, _)| ((clen - 1) * (self.rows[a].len() - 1), a))
            .min()
            .map(|(cost, a)| (a, cost))
    }

    /// Clears row `a` using column `b` as pivot, then deletes both.
    /// Returns the pivot column as it was before deletion.
    fn eliminate(
        &mut self,
        b: usize,
        a: usize,
        ring: Ring,
        touched: &mut Vec<usize>,
    ) -> (BigInt, Vec<(usize, BigInt)>) {
        let u = self.cols[b][&a].clone();
        let pivot: Vec<(usize, BigInt)> =
            self.cols[b].iter().map(|(r, v)| (*r, v.clone())).collect();
        let users: Vec<usize> = self.rows[a].iter().copied().filter(|&c| c != b).collect();
        for c in users {
            let factor = &self.cols[c][&a] * &u;
            for (r, v) in &pivot {
                let entry = self.cols[c].entry(*r).or_default();
                let new = ring.normalize(std::mem::take(entry) - &factor * v);
                if new.is_zero() {
                    self.cols[c].remove(r);
                    self.rows[*r].remove(&c);
                } else {
                    *self.cols[c].get_mut(r).expect("just inserted") = new;
                    self.rows[*r].insert(c);
                }
            }
            touched.push(c);
        }
        self.remove_col(b, touched);
        debug_assert!(self.rows[a].is_empty());
        self.row_alive[a] = false;
        (u, pivot)
    }
}

/// Outcome of reducing `C_{k+1} -> C_k -> C_{k-1}`.
pub(crate) struct Reduced {
    pub substitutions: Vec<Substitution>,
    pub corrections: Vec<Correction>,
    pub survivors_k: Vec<usize>,
    /// remaining boundary entries `(row, col, value)` in original indices
    pub lo_entries: Vec<(usize, usize, BigInt)>,
    pub hi_entries: Vec<(usize, usize, BigInt)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Which {
    Lo,
    Hi,
}

/// Reduces the truncated complex. Columns are given as `(row, value)`
/// lists in cell indices; `alive_*` mark cells present in the complex
/// (cells of a relative subcomplex are absent).
pub(crate) fn reduce(
    ring: Ring,
    lo_cols: Vec<Vec<(usize, i32)>>,
    hi_cols: Vec<Vec<(usize, i32)>>,
    alive_lo: Vec<bool>,
    alive_k: Vec<bool>,
    alive_hi: Vec<bool>,
) -> Reduced {
    let to_map = |col: Vec<(usize, i32)>,
                  rows_alive: &[bool],
                  self_alive: bool|
     -> BTreeMap<usize, BigInt> {
        let mut m = BTreeMap::new();
        if !self_alive {
            return m;
        }
        for (r, s) in col {
            if rows_alive[r] {
                let v = ring.normalize(BigInt::from(s));
                if !v.is_zero() {
                    m.insert(r, v);
                }
            }
        }
        m
    };
    let lo_maps: Vec<_> = lo_cols
        .into_iter()
        .enumerate()
        .map(|(j, c)| to_map(c, &alive_lo, alive_k[j]))
        .collect();
    let hi_maps: Vec<_> = hi_cols
        .into_iter()
        .enumerate()
        .map(|(j, c)| to_map(c, &alive_k, alive_hi[j]))
        .collect();
    let mut lo = SparseMat::new(alive_lo.len(), lo_maps, alive_lo, alive_k.clone());
    let mut hi = SparseMat::new(alive_k.len(), hi_maps, alive_k, alive_hi);

    let mut substitutions = Vec::new();
    let mut corrections = Vec::new();

    const THRESHOLDS: [usize; 9] = [0, 1, 2, 4, 8, 16, 64, 256, usize::MAX];
    for &threshold in &THRESHOLDS {
        let mut queue: Vec<(Which, usize)> = (0..hi.cols.len())
            .rev()
            .map(|j| (Which::Hi, j))
            .chain((0..lo.cols.len()).rev().map(|j| (Which::Lo, j)))
            .collect();
        while let Some((which, b)) = queue.pop() {
            let mat = if which == Which::Lo { &lo } else { &hi };
            if !mat.col_alive[b] {
                continue;
            }
            let Some((a, cost)) = mat.best_pivot(b, ring) else {
                continue;
            };
            if cost > threshold {
                continue;
            }
            let mut touched_lo = Vec::new();
            let mut touched_hi = Vec::new();
            match which {
                Which::Lo => {
                    // b is a k-cell, a a (k-1)-cell
                    let row: Vec<(usize, BigInt)> = lo.rows[a]
                        .iter()
                        .map(|&c| (c, lo.cols[c][&a].clone()))
                        .collect();
                    let (u, _) = lo.eliminate(b, a, ring, &mut touched_lo);
                    hi.remove_row(b, &mut touched_hi);
                    corrections.push(Correction { b, u, row });
                }
                Which::Hi => {
                    // b is a (k+1)-cell, a a k-cell
                    let (u, col) = hi.eliminate(b, a, ring, &mut touched_hi);
                    lo.remove_col(a, &mut touched_lo);
                    substitutions.push(Substitution { a, u, col });
                }
            }
            queue.extend(touched_lo.into_iter().map(|c| (Which::Lo, c)));
            queue.extend(touched_hi.into_iter().map(|c| (Which::Hi, c)));
        }
    }

    let survivors_k: Vec<usize> = (0..lo.col_alive.len())
        .filter(|&j| lo.col_alive[j] && hi.row_alive[j])
        .collect();
    let survivors_hi: Vec<usize> = (0..hi.col_alive.len())
        .filter(|&j| hi.col_alive[j])
        .collect();
    let entries = |m: &SparseMat, cols: &[usize]| {
        cols.iter()
            .flat_map(|&j| m.cols[j].iter().map(move |(&i, v)| (i, j, v.clone())))
            .collect::<Vec<_>>()
    };
    Reduced {
        lo_entries: entries(&lo, &survivors_k),
        hi_entries: entries(&hi, &survivors_hi),
        substitutions,
        corrections,
        survivors_k,
    }
}

/// Applies the recorded projection to a sparse `k`-chain.
pub(crate) fn project(ring: Ring, steps: &[Substitution], x: &mut BTreeMap<usize, BigInt>) {
    for step in steps {
        let Some(coef) = x.get(&step.a).cloned() else {
            continue;
        };
        let factor = coef * &step.u;
        for (r, v) in &step.col {
            let entry = x.entry(*r).or_default();
            *entry = ring.normalize(std::mem::take(entry) - &factor * v);
            if entry.is_zero() {
                x.remove(r);
            }
        }
    }
}

/// Applies the recorded inclusion to a sparse `k`-chain of the reduced
/// complex, producing a chain of the original complex.
pub(crate) fn lift(ring: Ring, steps: &[Correction], x: &mut BTreeMap<usize, BigInt>) {
    for step in steps.iter().rev() {
        let mut t = BigInt::zero();
        for (c, v) in &step.row {
            if let Some(xc) = x.get(c) {
                t += xc * v;
            }
        }
        let val = ring.normalize(-(t * &step.u));
        if !val.is_zero() {
            x.insert(step.b, val);
        }
    }
}
