//! Minimal dense square matrix used by the materializers and the oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

/// Row-major `order × order` matrix of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from `entry(row, col)`.
    pub fn from_fn(order: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for k in 0..order {
                data.push(entry(i, k));
            }
        }
        Self { order, data }
    }

    /// Returns `None` unless `rows` is square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        Some(Self { order, data: rows.iter().flatten().copied().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, k| self[(k, i)])
    }

    /// Matrix product `self · rhs`.
    ///
    /// # Panics
    /// If the orders differ.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for m in 0..n {
                let a = self[(i, m)];
                if a == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[(i, k)] += a * rhs[(m, k)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Largest entrywise gap `|A_ik − A_ki|`, with its position.
    pub fn asymmetry(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.order {
            for k in i + 1..self.order {
                let gap = (self[(i, k)] - self[(k, i)]).abs();
                if gap > worst.2 {
                    worst = (i, k, gap);
                }
            }
        }
        worst
    }

    /// Symmetric permutation `P A Pᵀ`, where row `i` of the result is row
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        Self::from_fn(self.order, |i, k| self[(perm[i], perm[k])])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, k): (usize, usize)) -> &f64 {
        &self.data[i * self.order + k]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, k): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.order + k]
    }
}
