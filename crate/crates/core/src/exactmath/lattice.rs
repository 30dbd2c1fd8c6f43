//! Integer lattices in `ℤⁿ` kept in row Hermite normal form.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector of length {got} does not fit a lattice of rank {expected}")]
    Rank { expected: usize, got: usize },
    #[error("integer overflow in lattice reduction")]
    Overflow,
}

/// Sublattice of `ℤⁿ`.
///
/// The generator rows are in Hermite normal form: each row's leading
/// entry (its pivot) is positive, pivots move strictly right, and the
/// entries above a pivot lie in `[0, pivot)`. This form is unique, so two
/// lattices are equal exactly when their stored rows are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    rank: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn hnf(n: usize, gens: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = gens.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, best);
            if m[r][c] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let k = m[i][c].div_euclid(m[r][c]);
                    let pivot = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= k * y;
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        for i in 0..r {
            let k = m[i][c].div_euclid(m[r][c]);
            if k != 0 {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn narrow(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>, LatticeError> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow)).collect())
        .collect()
}

impl IntegerLattice {
    pub fn zero(rank: usize) -> Self {
        IntegerLattice { rank, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        IntegerLattice { rank, rows, pivots: (0..rank).collect() }
    }

    /// Lattice spanned by `generators`.
    pub fn from_generators(rank: usize, generators: &[Vec<i64>]) -> Result<Self, LatticeError> {
        for g in generators {
            if g.len() != rank {
                return Err(LatticeError::Rank { expected: rank, got: g.len() });
            }
        }
        let wide: Vec<Vec<i128>> = generators.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        let (rows, pivots) = hnf(rank, &wide);
        Ok(IntegerLattice { rank, rows: narrow(rows)?, pivots })
    }

    /// `{x ∈ ℤⁿ : a·x = 0}` for an integer matrix `a` with `n` columns.
    pub fn integer_kernel(n: usize, a: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let m = a.len();
        // rows (column j of a | e_j); unimodular row reduction keeps track of combinations
        let aug: Vec<Vec<i128>> = (0..n)
            .map(|j| {
                let mut row: Vec<i128> = a.iter().map(|r| r[j] as i128).collect();
                row.extend((0..n).map(|k| (k == j) as i128));
                row
            })
            .collect();
        let (red, _) = hnf(m + n, &aug);
        let kernel: Vec<Vec<i128>> =
            red.into_iter().filter(|row| row[..m].iter().all(|&x| x == 0)).map(|row| row[m..].to_vec()).collect();
        let gens = narrow(kernel)?;
        Self::from_generators(n, &gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Hermite normal form generators.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, v: &[i64]) -> Result<(), LatticeError> {
        if v.len() != self.rank {
            return Err(LatticeError::Rank { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool, LatticeError> {
        self.check(v)?;
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let d = row[c] as i128;
            if w[c] % d != 0 {
                return Ok(false);
            }
            let k = w[c] / d;
            for (x, &y) in w.iter_mut().zip(row) {
                *x -= k * y as i128;
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    /// Canonical representative of `v + self`: pivot coordinates reduced into `[0, pivot)`.
    pub fn coset_key(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        self.check(v)?;
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = w[c].div_euclid(row[c] as i128);
            if k != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x -= k * y as i128;
                }
            }
        }
        w.into_iter().map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow)).collect()
    }

    /// Image under the linear map sending `e_i` to `columns[i]` (each of length `target_rank`).
    pub fn image(&self, target_rank: usize, columns: &[Vec<i64>]) -> Result<Self, LatticeError> {
        assert_eq!(columns.len(), self.rank);
        let gens: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![0i64; target_rank];
                for (coef, col) in row.iter().zip(columns) {
                    for (o, &c) in out.iter_mut().zip(col) {
                        *o += coef * c;
                    }
                }
                out
            })
            .collect();
        Self::from_generators(target_rank, &gens)
    }

    /// Sum of two lattices.
    pub fn sum(&self, other: &Self) -> Result<Self, LatticeError> {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Self::from_generators(self.rank, &gens)
    }
}
