//! Dense matrices and subspaces over a [`FiniteField`].
//!
//! Matrices store encoded field elements and carry no field reference;
//! every operation takes the field explicitly.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::field::{Elem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}x{1} against {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data; panics if the length is wrong.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn from_row_vecs(cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &FiniteField, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
            })
            .collect()
    }

    pub fn add(&self, f: &FiniteField, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, f: &FiniteField, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.add(f, &other.scale(f, f.neg(1)))
    }

    pub fn scale(&self, f: &FiniteField, s: Elem) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn kronecker(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * r2 + k, j * c2 + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(LinalgError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self, f: &FiniteField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for k in c..m.cols {
                let v = m.get(r, k);
                m.set(r, k, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..m.cols {
                    let pv = m.get(r, k);
                    if pv != 0 {
                        let v = m.get(i, k);
                        m.set(i, k, f.add(v, f.mul(neg, pv)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.rows = r;
        m.data.truncate(r * m.cols);
        (m, pivots)
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.rref(f).1.len()
    }

    /// Null space `{v : self·v = 0}`.
    pub fn kernel(&self, f: &FiniteField) -> Subspace {
        let (r, pivots) = self.rref(f);
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, n, &basis)
    }

    pub fn inverse(&self, f: &FiniteField) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }

    pub fn pow(&self, f: &FiniteField, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).expect("square");
            }
            base = base.mul(f, &base).expect("square");
            e >>= 1;
        }
        acc
    }
}

/// A linear subspace of `F^ambient`, stored by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(f: &FiniteField, ambient: usize, vectors: &[Vec<Elem>]) -> Self {
        Self::from_matrix(f, &Matrix::from_row_vecs(ambient, vectors))
    }

    /// Row span of `m`.
    pub fn from_matrix(f: &FiniteField, m: &Matrix) -> Self {
        let (basis, pivots) = m.rref(f);
        Subspace { ambient: m.cols(), basis, pivots }
    }

    /// Span of the coordinate vectors at `indices`.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = Matrix::zeros(idx.len(), ambient);
        for (r, &i) in idx.iter().enumerate() {
            basis.set(r, i, 1);
        }
        Subspace { ambient, basis, pivots: idx }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows, in reduced row echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn contains(&self, f: &FiniteField, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the echelon basis
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (k, x) in w.iter_mut().enumerate() {
                let b = self.basis.get(r, k);
                if b != 0 {
                    *x = f.add(*x, f.mul(neg, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, f: &FiniteField, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(f, self.basis.row(r)))
    }

    /// Rows spanning the annihilator: `v ∈ self` iff `ann·v = 0`.
    pub fn annihilator(&self, f: &FiniteField) -> Matrix {
        let k = self.basis.kernel(f);
        k.basis.clone()
    }

    pub fn intersect(&self, f: &FiniteField, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        let stacked = self.annihilator(f).vstack(&other.annihilator(f))?;
        if stacked.rows() == 0 {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(stacked.kernel(f))
    }

    pub fn sum(&self, f: &FiniteField, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        Ok(Subspace::from_matrix(f, &self.basis.vstack(&other.basis)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, f: &FiniteField, r: usize, c: usize) -> Matrix {
        Matrix::from_rows(r, c, (0..r * c).map(|_| rng.gen_range(0..f.order())).collect())
    }

    fn all_vectors(q: u32, n: usize) -> Vec<Vec<Elem>> {
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let x = (code % q as usize) as Elem;
                        code /= q as usize;
                        x
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn zero_and_identity_kernels() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(Matrix::zeros(2, 2).kernel(&f2).dim(), 2);
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(Matrix::identity(3).kernel(&f3).dim(), 0);
        assert_eq!(Matrix::zeros(0, 4).kernel(&f3).dim(), 4);
    }

    #[test]
    fn kernel_matches_enumeration_over_f5() {
        let f = FiniteField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let all = all_vectors(5, 6);
        for _ in 0..4 {
            let m = random_matrix(&mut rng, &f, 4, 6);
            let k = m.kernel(&f);
            assert_eq!(k.dim(), 6 - m.rank(&f));
            let count = all.iter().filter(|v| m.mul_vec(&f, v).iter().all(|&x| x == 0)).count();
            assert_eq!(count, 5usize.pow(k.dim() as u32));
            for v in k.vectors() {
                assert!(m.mul_vec(&f, &v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn intersection_matches_enumeration_over_f3() {
        let f = FiniteField::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let all = all_vectors(3, 5);
        for _ in 0..5 {
            let a = Subspace::from_matrix(&f, &random_matrix(&mut rng, &f, 3, 5));
            let b = Subspace::from_matrix(&f, &random_matrix(&mut rng, &f, 3, 5));
            let c = a.intersect(&f, &b).unwrap();
            let count = all.iter().filter(|v| a.contains(&f, v) && b.contains(&f, v)).count();
            assert_eq!(count, 3usize.pow(c.dim() as u32));
            assert!(c.dim() + 5 >= a.dim() + b.dim());
            assert!(c.is_subspace_of(&f, &a) && c.is_subspace_of(&f, &b));
        }
    }

    #[test]
    fn intersection_edge_cases() {
        let f = FiniteField::prime(2).unwrap();
        let a = Subspace::coordinate(4, &[0, 1]);
        let b = Subspace::coordinate(4, &[2, 3]);
        assert_eq!(a.intersect(&f, &b).unwrap().dim(), 0);
        assert_eq!(a.intersect(&f, &a).unwrap(), a);
        assert_eq!(
            a.intersect(&f, &Subspace::zero(3)).unwrap_err(),
            LinalgError::Ambient(4, 3)
        );
    }

    #[test]
    fn inverse_round_trip_in_extension_field() {
        let f = FiniteField::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 10 {
            let m = random_matrix(&mut rng, &f, 4, 4);
            match m.inverse(&f) {
                Ok(inv) => {
                    assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(4));
                    done += 1;
                }
                Err(e) => {
                    assert_eq!(e, LinalgError::Singular);
                    assert!(m.rank(&f) < 4);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(seed in any::<u64>(), r in 0usize..6, c in 1usize..7) {
            let f = FiniteField::new(3, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, &f, r, c);
            let k = m.kernel(&f);
            prop_assert_eq!(k.dim() + m.rank(&f), c);
            for v in k.vectors() {
                prop_assert!(m.mul_vec(&f, &v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn kronecker_is_multiplicative(seed in any::<u64>()) {
            let f = FiniteField::prime(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_matrix(&mut rng, &f, 2, 3), random_matrix(&mut rng, &f, 3, 2));
            let (c, d) = (random_matrix(&mut rng, &f, 2, 2), random_matrix(&mut rng, &f, 2, 2));
            let lhs = a.kronecker(&f, &c).mul(&f, &b.kronecker(&f, &d)).unwrap();
            let rhs = a.mul(&f, &b).unwrap().kronecker(&f, &c.mul(&f, &d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
