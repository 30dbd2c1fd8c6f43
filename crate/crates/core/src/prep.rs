//! Representations of P given by a weight basis and divided-power root operators.
//!
//! A root subgroup acts by `u_β(x) v = Σ_{j ≥ 0} x^j E_β^{(j)} v`. For each
//! root we store the operators `E_β^{(1)}, E_β^{(2)}, …` up to the last
//! nonzero level; `E_β^{(0)}` is the identity and is never stored. A root
//! that is absent from the table is treated as acting trivially only when
//! no two weights of the representation differ by a positive multiple of
//! it, since then every `E_β^{(j)}` with `j ≥ 1` vanishes for weight reasons.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exactmath::{binom_mod, Elem, FiniteField, IntegerLattice, LatticeError, LinalgError, Matrix};
use crate::zipdatum::ZipDatum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrepError {
    #[error("representations are over different fields")]
    FieldMismatch,
    #[error("character lattices differ in rank ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("no operators supplied for the root {0:?}")]
    MissingSupport(Vec<i64>),
    #[error("operator for root {root:?} at level {level} is not {dim}x{dim}")]
    Shape { root: Vec<i64>, level: usize, dim: usize },
    #[error("invalid coordinate pair for a symmetric power")]
    InvalidPair,
    #[error("Frobenius twist by {0} is not a power of the characteristic")]
    BadTwist(u64),
    #[error("matrix does not preserve weight spaces")]
    NotWeightPreserving,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// First invariant violation found by [`PRep::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WeightLength { index: usize },
    Shape { root: Vec<i64>, level: usize },
    WeightBlock { root: Vec<i64>, level: usize, row: usize, col: usize },
    DividedPower { root: Vec<i64>, i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRep {
    field: FiniteField,
    rank: usize,
    weights: Vec<Vec<i64>>,
    ops: BTreeMap<Vec<i64>, Vec<Matrix>>,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scaled(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

fn trim(mut levels: Vec<Matrix>) -> Vec<Matrix> {
    while levels.last().is_some_and(|m| m.is_zero()) {
        levels.pop();
    }
    levels
}

impl PRep {
    /// Builds a representation from explicit data; `ops[β][j-1]` is `E_β^{(j)}`.
    pub fn explicit(
        field: FiniteField,
        rank: usize,
        weights: Vec<Vec<i64>>,
        ops: BTreeMap<Vec<i64>, Vec<Matrix>>,
    ) -> Result<Self, PrepError> {
        let dim = weights.len();
        for (root, levels) in &ops {
            if root.len() != rank {
                return Err(PrepError::RankMismatch(rank, root.len()));
            }
            for (k, m) in levels.iter().enumerate() {
                if m.rows() != dim || m.cols() != dim {
                    return Err(PrepError::Shape { root: root.clone(), level: k + 1, dim });
                }
            }
        }
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(PrepError::RankMismatch(rank, w.len()));
        }
        let ops = ops.into_iter().map(|(k, v)| (k, trim(v))).collect();
        Ok(PRep { field, rank, weights, ops })
    }

    pub fn trivial(field: FiniteField, rank: usize) -> Self {
        Self::character(field, vec![0; rank])
    }

    /// The one-dimensional representation of weight `lambda`.
    pub fn character(field: FiniteField, lambda: Vec<i64>) -> Self {
        let rank = lambda.len();
        PRep { field, rank, weights: vec![lambda], ops: BTreeMap::new() }
    }

    pub fn zero(field: FiniteField, rank: usize) -> Self {
        PRep { field, rank, weights: Vec::new(), ops: BTreeMap::new() }
    }

    /// `Symⁿ` of a two-dimensional standard representation with basis `x, y`
    /// of weights `wx, wy`. Basis vector `i` is `x^{n-i} y^i`.
    ///
    /// The root `β = wx − wy` acts through `y ↦ y + t x` and `−β` through
    /// `x ↦ x + t y`, so `E_β^{(j)}` sends `i` to `i − j` with coefficient
    /// `C(i, j)` and `E_{−β}^{(j)}` sends `i` to `i + j` with `C(n − i, j)`.
    pub fn sym_std(field: FiniteField, wx: Vec<i64>, wy: Vec<i64>, n: usize) -> Result<Self, PrepError> {
        if wx.len() != wy.len() || wx == wy {
            return Err(PrepError::InvalidPair);
        }
        let rank = wx.len();
        let p = field.characteristic() as u64;
        let weights: Vec<Vec<i64>> =
            (0..=n).map(|i| add(&scaled(&wx, (n - i) as i64), &scaled(&wy, i as i64))).collect();
        let beta: Vec<i64> = wx.iter().zip(&wy).map(|(a, b)| a - b).collect();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for j in 1..=n {
            let mut e = Matrix::zeros(n + 1, n + 1);
            let mut f = Matrix::zeros(n + 1, n + 1);
            for i in 0..=n {
                if i >= j {
                    e.set(i - j, i, binom_mod(i as u64, j as u64, p) as Elem);
                }
                if i + j <= n {
                    f.set(i + j, i, binom_mod((n - i) as u64, j as u64, p) as Elem);
                }
            }
            up.push(e);
            down.push(f);
        }
        let mut ops = BTreeMap::new();
        ops.insert(beta.iter().map(|x| -x).collect(), trim(down));
        ops.insert(beta, trim(up));
        Ok(PRep { field, rank, weights, ops })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    /// Roots with stored operator tables.
    pub fn declared_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.ops.keys()
    }

    /// Indices of basis vectors of weight `nu`.
    pub fn weight_indices(&self, nu: &[i64]) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == nu).collect()
    }

    /// Distinct weights in first-appearance order.
    pub fn distinct_weights(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for w in &self.weights {
            if !out.contains(w) {
                out.push(w.clone());
            }
        }
        out
    }

    /// True if some pair of weights differs by a positive multiple of `root`.
    fn root_can_act(&self, root: &[i64]) -> bool {
        if root.iter().all(|&x| x == 0) {
            return false;
        }
        let k0 = root.iter().position(|&x| x != 0).unwrap();
        self.weights.iter().any(|a| {
            self.weights.iter().any(|b| {
                let d = b[k0] - a[k0];
                d % root[k0] == 0 && d / root[k0] > 0 && add(a, &scaled(root, d / root[k0])) == *b
            })
        })
    }

    /// Stored levels for `root`, or an empty slice if the root must act trivially.
    pub fn levels(&self, root: &[i64]) -> Result<&[Matrix], PrepError> {
        match self.ops.get(root) {
            Some(levels) => Ok(levels),
            None if !self.root_can_act(root) => Ok(&[]),
            None => Err(PrepError::MissingSupport(root.to_vec())),
        }
    }

    pub fn supports(&self, root: &[i64]) -> bool {
        self.levels(root).is_ok()
    }

    /// Highest nonzero level of `E_root`.
    pub fn max_level(&self, root: &[i64]) -> Result<usize, PrepError> {
        Ok(self.levels(root)?.len())
    }

    /// `E_root^{(j)}`, with `j = 0` the identity and levels past the table zero.
    pub fn op(&self, root: &[i64], j: usize) -> Result<Matrix, PrepError> {
        if j == 0 {
            return Ok(Matrix::identity(self.dim()));
        }
        Ok(self.levels(root)?.get(j - 1).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(), self.dim())))
    }

    /// `u_root(x) = Σ_j x^j E_root^{(j)}`.
    pub fn root_element(&self, root: &[i64], x: Elem) -> Result<Matrix, PrepError> {
        let f = &self.field;
        let mut acc = Matrix::identity(self.dim());
        let mut xp = 1;
        for e in self.levels(root)? {
            xp = f.mul(xp, x);
            acc = acc.add(f, &e.scale(f, xp))?;
        }
        Ok(acc)
    }

    /// The same representation over a field of the same characteristic.
    pub fn over_field(&self, field: &FiniteField) -> Result<Self, PrepError> {
        if field.characteristic() != self.field.characteristic() {
            return Err(PrepError::FieldMismatch);
        }
        // prime-field entries have the same encoding in every extension
        let mut out = self.clone();
        out.field = field.clone();
        Ok(out)
    }

    fn all_roots<'a>(&'a self, other: &'a PRep) -> Vec<Vec<i64>> {
        let mut roots: Vec<Vec<i64>> = self.ops.keys().chain(other.ops.keys()).cloned().collect();
        roots.sort();
        roots.dedup();
        roots
    }

    fn check_pair(&self, other: &PRep) -> Result<(), PrepError> {
        if self.field != other.field {
            return Err(PrepError::FieldMismatch);
        }
        if self.rank != other.rank {
            return Err(PrepError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Tensor product; basis `(a, b) ↦ a · dim(other) + b`.
    pub fn tensor(&self, other: &PRep) -> Result<Self, PrepError> {
        self.check_pair(other)?;
        let f = &self.field;
        let weights: Vec<Vec<i64>> =
            self.weights.iter().flat_map(|a| other.weights.iter().map(move |b| add(a, b))).collect();
        let mut ops = BTreeMap::new();
        for root in self.all_roots(other) {
            let (la, lb) = (self.levels(&root)?, other.levels(&root)?);
            let top = la.len() + lb.len();
            let mut levels = Vec::with_capacity(top);
            for j in 1..=top {
                let mut acc = Matrix::zeros(weights.len(), weights.len());
                for j1 in j.saturating_sub(lb.len())..=j.min(la.len()) {
                    let a = self.op(&root, j1)?;
                    let b = other.op(&root, j - j1)?;
                    acc = acc.add(f, &a.kronecker(f, &b))?;
                }
                levels.push(acc);
            }
            ops.insert(root, trim(levels));
        }
        Ok(PRep { field: self.field.clone(), rank: self.rank, weights, ops })
    }

    /// Contragredient: `E^{∨(j)} = (−1)^j (E^{(j)})ᵀ`, from `u(x)^{-1} = u(−x)`.
    pub fn dual(&self) -> Self {
        let f = &self.field;
        let weights = self.weights.iter().map(|w| scaled(w, -1)).collect();
        let ops = self
            .ops
            .iter()
            .map(|(root, levels)| {
                let lv = levels
                    .iter()
                    .enumerate()
                    .map(|(k, m)| if k % 2 == 0 { m.transpose().scale(f, f.neg(1)) } else { m.transpose() })
                    .collect();
                (root.clone(), lv)
            })
            .collect();
        PRep { field: self.field.clone(), rank: self.rank, weights, ops }
    }

    /// External tensor product over the product torus; characters are concatenated.
    pub fn boxtimes(&self, other: &PRep) -> Result<Self, PrepError> {
        if self.field != other.field {
            return Err(PrepError::FieldMismatch);
        }
        let f = &self.field;
        let (da, db) = (self.dim(), other.dim());
        let weights: Vec<Vec<i64>> = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a.iter().chain(b).copied().collect()))
            .collect();
        let mut ops = BTreeMap::new();
        for (root, levels) in &self.ops {
            let key: Vec<i64> = root.iter().copied().chain(core::iter::repeat_n(0, other.rank)).collect();
            ops.insert(key, levels.iter().map(|m| m.kronecker(f, &Matrix::identity(db))).collect());
        }
        for (root, levels) in &other.ops {
            let key: Vec<i64> = core::iter::repeat_n(0, self.rank).chain(root.iter().copied()).collect();
            ops.insert(key, levels.iter().map(|m| Matrix::identity(da).kronecker(f, m)).collect());
        }
        Ok(PRep { field: self.field.clone(), rank: self.rank + other.rank, weights, ops })
    }

    /// Tensor with the character `lambda`.
    pub fn char_twist(&self, lambda: &[i64]) -> Result<Self, PrepError> {
        if lambda.len() != self.rank {
            return Err(PrepError::RankMismatch(self.rank, lambda.len()));
        }
        let mut out = self.clone();
        for w in &mut out.weights {
            *w = add(w, lambda);
        }
        Ok(out)
    }

    /// Pullback along the `q`-Frobenius: weights scale by `q`, and
    /// `E^{(qj)}` of the twist is `E^{(j)}` while other levels vanish.
    pub fn frobenius_twist(&self, q: u64) -> Result<Self, PrepError> {
        let p = self.field.characteristic() as u64;
        let mut k = q;
        while k > 1 && k.is_multiple_of(p) {
            k /= p;
        }
        if k != 1 || q < 1 {
            return Err(PrepError::BadTwist(q));
        }
        let q = q as usize;
        let dim = self.dim();
        let weights = self.weights.iter().map(|w| scaled(w, q as i64)).collect();
        let ops = self
            .ops
            .iter()
            .map(|(root, levels)| {
                let mut lv = vec![Matrix::zeros(dim, dim); levels.len() * q];
                for (j, m) in levels.iter().enumerate() {
                    lv[(j + 1) * q - 1] = m.clone();
                }
                (root.clone(), lv)
            })
            .collect();
        Ok(PRep { field: self.field.clone(), rank: self.rank, weights, ops })
    }

    /// Restriction along `P → L`: operators of roots in `R_u(P)` are set to zero.
    pub fn l_semisimplify(&self, zd: &ZipDatum) -> Self {
        let mut out = self.clone();
        for root in zd.root_datum().roots() {
            if zd.in_unipotent_radical(&root) {
                out.ops.insert(root, Vec::new());
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &PRep) -> Result<Self, PrepError> {
        self.check_pair(other)?;
        let (da, db) = (self.dim(), other.dim());
        let n = da + db;
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        let mut ops = BTreeMap::new();
        for root in self.all_roots(other) {
            let (la, lb) = (self.levels(&root)?, other.levels(&root)?);
            let top = la.len().max(lb.len());
            let mut levels = Vec::with_capacity(top);
            for j in 0..top {
                let mut m = Matrix::zeros(n, n);
                if let Some(a) = la.get(j) {
                    for r in 0..da {
                        for c in 0..da {
                            m.set(r, c, a.get(r, c));
                        }
                    }
                }
                if let Some(b) = lb.get(j) {
                    for r in 0..db {
                        for c in 0..db {
                            m.set(da + r, da + c, b.get(r, c));
                        }
                    }
                }
                levels.push(m);
            }
            ops.insert(root, levels);
        }
        Ok(PRep { field: self.field.clone(), rank: self.rank, weights, ops })
    }

    /// Change of basis `E ↦ g E g^{-1}` by a weight-preserving invertible `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Self, PrepError> {
        let f = &self.field;
        for r in 0..g.rows() {
            for c in 0..g.cols() {
                if g.get(r, c) != 0 && self.weights[r] != self.weights[c] {
                    return Err(PrepError::NotWeightPreserving);
                }
            }
        }
        let ginv = g.inverse(f)?;
        let mut out = self.clone();
        for levels in out.ops.values_mut() {
            for m in levels.iter_mut() {
                *m = g.mul(f, m)?.mul(f, &ginv)?;
            }
        }
        Ok(out)
    }

    /// Groups basis indices by the class of their weight modulo `lattice`.
    pub fn weight_classes(&self, lattice: &IntegerLattice) -> Result<BTreeMap<Vec<i64>, Vec<usize>>, PrepError> {
        let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            classes.entry(lattice.coset_key(w)?).or_default().push(i);
        }
        Ok(classes)
    }

    /// Checks level-zero identity, shapes, the weight-block condition and the
    /// divided-power law for every stored root.
    pub fn validate(&self) -> Result<(), Violation> {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let dim = self.dim();
        if let Some(index) = self.weights.iter().position(|w| w.len() != self.rank) {
            return Err(Violation::WeightLength { index });
        }
        for (root, levels) in &self.ops {
            for (k, m) in levels.iter().enumerate() {
                let level = k + 1;
                if m.rows() != dim || m.cols() != dim {
                    return Err(Violation::Shape { root: root.clone(), level });
                }
                for row in 0..dim {
                    for col in 0..dim {
                        if m.get(row, col) != 0
                            && self.weights[row] != add(&self.weights[col], &scaled(root, level as i64))
                        {
                            return Err(Violation::WeightBlock { root: root.clone(), level, row, col });
                        }
                    }
                }
            }
            let top = levels.len();
            let zero = Matrix::zeros(dim, dim);
            let at = |j: usize| if j == 0 { None } else { Some(levels.get(j - 1).unwrap_or(&zero)) };
            for i in 1..=top {
                for j in i..=top {
                    let lhs = at(i).unwrap().mul(f, at(j).unwrap()).expect("square");
                    let rhs = at(i + j).unwrap().scale(f, binom_mod((i + j) as u64, i as u64, p) as Elem);
                    if lhs != rhs {
                        return Err(Violation::DividedPower { root: root.clone(), i, j });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn std_sl2(p: u32, n: usize) -> PRep {
        PRep::sym_std(f(p), vec![1], vec![-1], n).unwrap()
    }

    #[test]
    fn sym_weights_and_validity() {
        let v = std_sl2(3, 4);
        assert_eq!(v.weights(), &[vec![4], vec![2], vec![0], vec![-2], vec![-4]]);
        assert_eq!(v.validate(), Ok(()));
        let t = std_sl2(2, 0);
        assert_eq!(t.dim(), 1);
        assert_eq!(t.max_level(&[2]).unwrap(), 0);
        for p in [2, 3, 5] {
            for n in 0..12 {
                assert_eq!(std_sl2(p, n).validate(), Ok(()), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn u21_levi_block() {
        // V_I(λ) for λ = (3, 1, 2): det^{λ2} ⊗ Sym^{λ1-λ2} ⊗ ξ_{λ3}
        let v = PRep::sym_std(f(2), vec![1, 0, 0], vec![0, 1, 0], 2).unwrap().char_twist(&[1, 1, 2]).unwrap();
        assert_eq!(v.weights(), &[vec![3, 1, 2], vec![2, 2, 2], vec![1, 3, 2]]);
        assert_eq!(v.validate(), Ok(()));
    }

    #[test]
    fn std_tensor_std() {
        let s = std_sl2(2, 1);
        let t = s.tensor(&s).unwrap();
        let mut w: Vec<i64> = t.weights().iter().map(|w| w[0]).collect();
        w.sort();
        assert_eq!(w, vec![-2, 0, 0, 2]);
        assert_eq!(t.weight_indices(&[0]).len(), 2);
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn dual_and_boxtimes() {
        let tr = PRep::trivial(f(3), 1);
        assert_eq!(tr.dual(), tr);
        let v = std_sl2(3, 3);
        let d = v.dual();
        assert_eq!(d.validate(), Ok(()));
        assert_eq!(d.dual(), v);
        let b = v.boxtimes(&std_sl2(3, 2)).unwrap();
        assert_eq!(b.dim(), 12);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.validate(), Ok(()));
        assert!(b.supports(&[2, 0]) && b.supports(&[0, -2]));
    }

    #[test]
    fn frobenius_twists() {
        let v = std_sl2(2, 1);
        let t = v.frobenius_twist(2).unwrap();
        assert_eq!(t.weights(), &[vec![2], vec![-2]]);
        assert!(t.op(&[2], 1).unwrap().is_zero());
        assert_eq!(t.op(&[2], 2).unwrap(), v.op(&[2], 1).unwrap());
        assert_eq!(t.validate(), Ok(()));
        assert_eq!(t.frobenius_twist(2).unwrap(), v.frobenius_twist(4).unwrap());
        let tr = PRep::trivial(f(2), 1);
        assert_eq!(tr.frobenius_twist(2).unwrap(), tr);
        assert_eq!(v.frobenius_twist(3).unwrap_err(), PrepError::BadTwist(3));
        let sym = std_sl2(3, 4);
        assert_eq!(sym.frobenius_twist(9).unwrap().validate(), Ok(()));
    }

    #[test]
    fn missing_support_is_an_error() {
        let v = std_sl2(2, 2);
        assert_eq!(v.op(&[4], 1).unwrap_err(), PrepError::MissingSupport(vec![4]));
        // a root that cannot connect any two weights acts trivially
        assert!(v.op(&[7], 1).unwrap().is_zero());
    }

    #[test]
    fn corrupted_operators_are_flagged() {
        let v = std_sl2(3, 2);
        let mut ops = BTreeMap::new();
        let mut bad = v.op(&[2], 1).unwrap();
        bad.set(2, 0, 1);
        ops.insert(vec![2], vec![bad]);
        let w = PRep::explicit(f(3), 1, v.weights().to_vec(), ops).unwrap();
        assert!(matches!(w.validate(), Err(Violation::WeightBlock { .. })));
    }

    #[test]
    fn random_operators_break_the_divided_power_law() {
        let field = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let weights: Vec<Vec<i64>> = (0..5).map(|i| vec![4 - 2 * i]).collect();
        let mut flagged = 0;
        for _ in 0..20 {
            let mut levels = Vec::new();
            for j in 1..=4usize {
                let mut m = Matrix::zeros(5, 5);
                for c in 0..5 {
                    if c >= j {
                        m.set(c - j, c, rng.gen_range(0..5));
                    }
                }
                levels.push(m);
            }
            let ops = BTreeMap::from([(vec![2], levels)]);
            let v = PRep::explicit(field.clone(), 1, weights.clone(), ops).unwrap();
            if matches!(v.validate(), Err(Violation::DividedPower { .. })) {
                flagged += 1;
            }
        }
        assert!(flagged >= 19);
    }

    #[test]
    fn l_semisimplification_kills_the_radical() {
        let zd = crate::zipdatum::ZipDatum::derive(
            crate::rootdata::RootDatum::split(1, vec![vec![2]], vec![vec![1]], 2).unwrap(),
            vec![1],
        )
        .unwrap();
        let v = std_sl2(2, 1);
        let l = v.l_semisimplify(&zd);
        assert_eq!(l.max_level(&[-2]).unwrap(), 0);
        assert_eq!(l.max_level(&[2]).unwrap(), 1);
        assert_eq!(l.weights(), v.weights());
        assert_eq!(l.l_semisimplify(&zd), l);
    }

    #[test]
    fn conjugation_and_sums_stay_valid() {
        let field = f(3);
        let v = std_sl2(3, 2).direct_sum(&std_sl2(3, 2)).unwrap();
        assert_eq!(v.validate(), Ok(()));
        // mix the two copies of each weight
        let mut g = Matrix::identity(6);
        g.set(0, 3, 1);
        g.set(4, 1, 2);
        let w = v.conjugate(&g).unwrap();
        assert_eq!(w.validate(), Ok(()));
        let mut bad = Matrix::identity(6);
        bad.set(0, 1, 1);
        assert_eq!(v.conjugate(&bad).unwrap_err(), PrepError::NotWeightPreserving);
        let _ = field;
    }
}
