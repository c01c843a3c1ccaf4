use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fill ratio above which a matrix switches to dense storage.
const DENSE_FILL: f64 = 0.30;

#[derive(Clone, Debug)]
enum Storage {
    Sparse(BTreeMap<(usize, usize), BigInt>),
    Dense(Vec<BigInt>),
}

/// An integer matrix with arbitrary-precision entries.
///
/// Entries live in a sparse map until more than 30% of the positions are
/// nonzero, after which the matrix keeps a dense row-major buffer.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    nnz: usize,
    storage: Storage,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            nnz: 0,
            storage: Storage::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row slices of machine integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.into());
            }
        }
        m
    }

    /// Builds a matrix from a dense row-major table of big integers.
    pub fn from_dense(rows: usize, cols: usize, table: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in table.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in entries {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        match &self.storage {
            Storage::Sparse(map) => map.get(&(i, j)).cloned().unwrap_or_default(),
            Storage::Dense(buf) => buf[i * self.cols + j].clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        match &mut self.storage {
            Storage::Sparse(map) => {
                if value.is_zero() {
                    if map.remove(&(i, j)).is_some() {
                        self.nnz -= 1;
                    }
                } else if map.insert((i, j), value).is_none() {
                    self.nnz += 1;
                }
            }
            Storage::Dense(buf) => {
                let slot = &mut buf[i * self.cols + j];
                match (slot.is_zero(), value.is_zero()) {
                    (true, false) => self.nnz += 1,
                    (false, true) => self.nnz -= 1,
                    _ => {}
                }
                *slot = value;
            }
        }
        self.maybe_densify();
    }

    fn maybe_densify(&mut self) {
        let total = self.rows * self.cols;
        if total == 0 || (self.nnz as f64) <= DENSE_FILL * total as f64 {
            return;
        }
        if let Storage::Sparse(map) = &mut self.storage {
            let mut buf = vec![BigInt::zero(); total];
            for ((i, j), v) in std::mem::take(map) {
                buf[i * self.cols + j] = v;
            }
            self.storage = Storage::Dense(buf);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, BigInt)> {
        match &self.storage {
            Storage::Sparse(map) => map.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect(),
            Storage::Dense(buf) => buf
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k / self.cols, k % self.cols, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_triplets(
            self.cols,
            self.rows,
            self.entries().into_iter().map(|(i, j, v)| (j, i, v)),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let mut by_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in other.entries() {
            by_row[i].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            for (j, b) in &by_row[k] {
                *acc.entry((i, *j)).or_default() += &a * b;
            }
        }
        IntMatrix::from_triplets(
            self.rows,
            other.cols,
            acc.into_iter().map(|((i, j), v)| (i, j, v)),
        )
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, j, v) in self.entries() {
            out[i] += v * &x[j];
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().iter().all(|(i, j, _)| i == j)
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz == 0
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries() == other.entries()
    }
}

impl Eq for IntMatrix {}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switches_to_dense_past_threshold() {
        let mut m = IntMatrix::zeros(4, 4);
        for k in 0..4 {
            m.set(k, k, BigInt::from(1));
        }
        assert!(!m.is_dense());
        m.set(0, 1, BigInt::from(2));
        assert!(m.is_dense());
        assert_eq!(m.nnz(), 5);
        m.set(0, 1, BigInt::zero());
        assert_eq!(m.nnz(), 4);
        assert_eq!(m, IntMatrix::identity(4));
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().get(0, 1), BigInt::from(3));
    }
}
