use crate::error::{Error, Result};

/// A dense bit vector over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// A dense matrix over GF(2) stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Gf2Matrix {
            cols,
            rows: rows
                .iter()
                .map(|r| {
                    assert_eq!(r.len(), cols, "ragged rows");
                    BitVector::from_bools(r)
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>(),
        ))
    }

    pub fn rank(&self) -> usize {
        let mut work = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Solves `A x = b` over GF(2); returns `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_gf2(a: &Gf2Matrix, b: &BitVector) -> Result<Option<BitVector>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} against {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    // augmented rows: coefficients plus the rhs bit in the last column
    let mut work: Vec<BitVector> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut aug = BitVector::zeros(n + 1);
            for j in 0..n {
                if row.get(j) {
                    aug.set(j, true);
                }
            }
            aug.set(n, b.get(i));
            aug
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..work.len()).find(|&r| work[r].get(col)) else {
            continue;
        };
        work.swap(rank, p);
        let pivot = work[rank].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if work[rank..].iter().any(|row| row.get(n)) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(n);
    for (r, &col) in pivots.iter().enumerate() {
        x.set(col, work[r].get(n));
    }
    Ok(Some(x))
}
