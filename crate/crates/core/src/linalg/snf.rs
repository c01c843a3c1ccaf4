use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D` together with the inverses of the
/// unimodular factors.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct Workspace {
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
    m: usize,
    n: usize,
}

impl Workspace {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for mat in [&mut self.a, &mut self.u] {
            let (s, d) = pick_two(mat, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        // inverse picks up col[src] -= q * col[dst]
        for row in self.u_inv.iter_mut() {
            if !row[dst].is_zero() {
                let delta = q * &row[dst];
                row[src] -= delta;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                if !row[src].is_zero() {
                    let delta = q * &row[src];
                    row[dst] += delta;
                }
            }
        }
        // inverse picks up row[src] -= q * row[dst]
        let (d, s) = pick_two(&mut self.v_inv, dst, src);
        for (x, y) in s.iter_mut().zip(d.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    /// Smallest nonzero magnitude in the active block, ties broken by the
    /// fewest nonzeros in the pivot's row and column, then by position.
    #[allow(clippy::needless_range_loop)]
    fn choose_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut row_count = vec![0usize; self.m];
        let mut col_count = vec![0usize; self.n];
        for i in t..self.m {
            for j in t..self.n {
                if !self.a[i][j].is_zero() {
                    row_count[i] += 1;
                    col_count[j] += 1;
                }
            }
        }
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let mag = x.abs();
                let fill = row_count[i] + col_count[j];
                let better = match &best {
                    None => true,
                    Some((bm, bf, _, _)) => mag < *bm || (mag == *bm && fill < *bf),
                };
                if better {
                    best = Some((mag, fill, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    fn reduce_at(&mut self, t: usize) {
        loop {
            let pivot = self.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..self.m {
                if !self.a[i][t].is_zero() {
                    let q = self.a[i][t].div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    dirty |= !self.a[i][t].is_zero();
                }
            }
            for j in t + 1..self.n {
                if !self.a[t][j].is_zero() {
                    let q = self.a[t][j].div_floor(&pivot);
                    self.add_col(j, t, &-q);
                    dirty |= !self.a[t][j].is_zero();
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it in.
                let mut best = (self.a[t][t].abs(), t, t);
                for i in t + 1..self.m {
                    let x = self.a[i][t].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, i, t);
                    }
                }
                for j in t + 1..self.n {
                    let x = self.a[t][j].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, t, j);
                    }
                }
                self.swap_rows(t, best.1);
                self.swap_cols(t, best.2);
                continue;
            }
            let offender = (t + 1..self.m).find_map(|i| {
                (t + 1..self.n)
                    .find(|&j| !self.a[i][j].is_multiple_of(&pivot))
                    .map(|_| i)
            });
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a[t][t].is_negative() {
            self.negate_row(t);
        }
    }
}

fn pick_two(mat: &mut Dense, a: usize, b: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = mat.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = mat.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// Smith normal form of an integer matrix.
///
/// Returns unimodular `U`, `V` (and their inverses) with `U * A * V = D`,
/// where `D` is diagonal, nonnegative, and each diagonal entry divides the
/// next.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut ws = Workspace {
        a: a.to_dense(),
        u: identity(m),
        u_inv: identity(m),
        v: identity(n),
        v_inv: identity(n),
        m,
        n,
    };
    for t in 0..m.min(n) {
        let Some((i, j)) = ws.choose_pivot(t) else {
            break;
        };
        ws.swap_rows(t, i);
        ws.swap_cols(t, j);
        ws.reduce_at(t);
    }
    SnfResult {
        d: IntMatrix::from_dense(m, n, ws.a),
        u: IntMatrix::from_dense(m, m, ws.u),
        u_inv: IntMatrix::from_dense(m, m, ws.u_inv),
        v: IntMatrix::from_dense(n, n, ws.v),
        v_inv: IntMatrix::from_dense(n, n, ws.v_inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = snf(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.d);
        assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(r.v.mul(&r.v_inv), IntMatrix::identity(a.cols()));
        assert!(r.d.is_diagonal());
        r
    }

    #[test]
    fn one_by_one() {
        let r = check(&IntMatrix::from_rows(&[vec![6]]));
        assert_eq!(r.d, IntMatrix::from_rows(&[vec![6]]));
        assert_eq!(r.u, IntMatrix::identity(1));
        assert_eq!(r.v, IntMatrix::identity(1));
    }

    #[test]
    fn two_by_two() {
        let r = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(r.d, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn zero_matrix() {
        let r = check(&IntMatrix::zeros(3, 2));
        assert!(r.d.is_zero());
        assert_eq!(r.u, IntMatrix::identity(3));
        assert_eq!(r.v, IntMatrix::identity(2));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not a divisibility chain.
        let r = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(
            r.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn negative_pivot_made_positive() {
        let r = check(&IntMatrix::from_rows(&[vec![-5]]));
        assert_eq!(r.d.get(0, 0), BigInt::from(5));
    }
}
