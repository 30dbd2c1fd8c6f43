//! Small square integer matrices, used for Weyl group elements and σ.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix { n, data: rows.concat() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c];
            }
        }
        IntMatrix { n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a != 0 {
                    for c in 0..n {
                        data[r * n + c] += a * other.data[k * n + c];
                    }
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.data[r * self.n + c] * v[c]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searched up to `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Inverse of a finite-order matrix as its `(order-1)`-th power.
    pub fn finite_order_inverse(&self, bound: usize) -> Option<Self> {
        let k = self.order(bound)?;
        Some(self.pow(k - 1))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_inverse() {
        let s = IntMatrix::from_rows(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]).unwrap();
        assert_eq!(s.order(10), Some(2));
        assert_eq!(s.finite_order_inverse(10).unwrap().mul(&s), IntMatrix::identity(3));
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(shear.order(50), None);
        assert_eq!(s.apply(&[1, 2, 3]), vec![-3, -2, -1]);
        assert_eq!(s.transpose(), s);
    }
}
