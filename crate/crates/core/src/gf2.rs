//! Dense bit-packed matrices over GF(2).

use std::fmt;

use crate::error::Gf2Error;

const W: usize = 64;

/// Row-major matrix over GF(2), 64 columns per word. Bits past `cols` are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(W);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
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

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / W] >> (j % W) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols);
        let word = &mut self.data[i * self.stride + j / W];
        let bit = 1u64 << (j % W);
        if v {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    /// Adds 1 at `(i, j)`.
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / W] ^= 1u64 << (j % W);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.ones_in_row(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn ones_in_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * W + b)
            })
        })
    }

    /// Rank by Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut data = self.data.clone();
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (wi, bit) = (col / W, 1u64 << (col % W));
            let Some(p) = (rank..self.rows).find(|&r| data[r * stride + wi] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in wi..stride {
                    data.swap(p * stride + k, rank * stride + k);
                }
            }
            let (head, tail) = data.split_at_mut((rank + 1) * stride);
            let pivot = &head[rank * stride..];
            for row in tail.chunks_exact_mut(stride) {
                if row[wi] & bit != 0 {
                    for k in wi..stride {
                        row[k] ^= pivot[k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// `self * rhs` over GF(2).
    pub fn multiply(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::DimensionMismatch { left_cols: self.cols, right_rows: rhs.rows });
        }
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in self.ones_in_row(i) {
                let src = rhs.row(k);
                for (d, s) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            let s: String = (0..self.cols.min(64)).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {}", s)?;
        }
        Ok(())
    }
}
