//! Dense and sparse binary matrices.

use crate::error::{Error, Result};

/// Dense GF(2) matrix, rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    /// Builds a matrix from per-row column supports.
    pub fn from_row_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(supports.len(), cols);
        for (r, s) in supports.iter().enumerate() {
            for &c in s {
                m.flip(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if self.get(r, c) != v {
            self.flip(r, c);
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.get(r, c)).collect()
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let b = other.row_words(j);
                let parity = a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones());
                if parity & 1 == 1 {
                    out.flip(i, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Basis of `{v : self * v = 0}`, one vector per row.
    pub fn nullspace(&self) -> Self {
        let mut e = self.clone();
        let pivots = e.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.flip(b, fc);
            for (r, &pc) in pivots.iter().enumerate() {
                if e.get(r, fc) {
                    basis.flip(b, pc);
                }
            }
        }
        basis
    }
}

/// Sparse binary matrix as per-row and per-column index lists, the form
/// consumed by the decoder and the alist codec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_idx: Vec<Vec<usize>>,
    col_idx: Vec<Vec<usize>>,
}

impl SparseMatrix {
    /// Builds from row supports; entries are sorted and deduplicated.
    pub fn from_rows(cols: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut row_idx = rows;
        let mut col_idx = vec![Vec::new(); cols];
        for (r, row) in row_idx.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            for &c in row.iter() {
                if c >= cols {
                    return Err(Error::DimensionMismatch {
                        expected: cols,
                        got: c + 1,
                    });
                }
                col_idx[c].push(r);
            }
        }
        Ok(Self {
            rows: row_idx.len(),
            cols,
            row_idx,
            col_idx,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_idx[r]
    }

    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_idx[c]
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_idx.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        self.col_idx.iter().map(Vec::len).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.row_idx.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> BitMatrix {
        BitMatrix::from_row_supports(self.cols, &self.row_idx)
    }

    pub fn from_dense(m: &BitMatrix) -> Self {
        let rows = (0..m.rows()).map(|r| m.row_support(r)).collect();
        Self::from_rows(m.cols(), rows).expect("dense rows are in range")
    }

    /// True iff every check is satisfied by the hard decision `bits`.
    pub fn syndrome_is_zero(&self, bits: &[bool]) -> bool {
        self.row_idx
            .iter()
            .all(|row| !row.iter().fold(false, |acc, &c| acc ^ bits[c]))
    }
}
