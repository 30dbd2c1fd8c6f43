//! Based root data with a Frobenius action, Weyl groups and their combinatorics.
//!
//! Characters and cocharacters are both `ℤⁿ` with the dot product as
//! pairing. Vectors are columns, so a Weyl element `w` acts on a character
//! `χ` as `w.matrix() · χ`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use thiserror::Error;

use crate::exactmath::field::prime_power;
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::IntMatrix;

/// Default cap on `|W|` and `|Φ⁺|` during enumeration.
pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDatumError {
    #[error("expected vectors of length {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("need as many simple coroots as simple roots")]
    CountMismatch,
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("<α_{0}, α_{0}^∨> is not 2")]
    CartanDiagonal(usize),
    #[error("Cartan matrix entry ({0},{1}) is not a valid generalized Cartan entry")]
    CartanEntry(usize, usize),
    #[error("σ does not permute the simple roots (image of α_{0} is not simple)")]
    SigmaNotPermuting(usize),
    #[error("σ is not compatible with the simple coroots at α_{0}")]
    SigmaCoroots(usize),
    #[error("σ does not have finite order")]
    SigmaInfiniteOrder,
    #[error("enumeration exceeded the bound {0}; the datum is probably not of finite type")]
    Bound(usize),
    #[error("vector is not a root")]
    NotARoot,
}

/// An element of the Weyl group with a reduced word `w = s_{i_1}···s_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    matrix: IntMatrix,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, chi: &[i64]) -> Vec<i64> {
        self.matrix.apply(chi)
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    rank: usize,
    q: u64,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    sigma: IntMatrix,
    sigma_inv: IntMatrix,
    sigma_perm: Vec<usize>,
    reflections: Vec<IntMatrix>,
    positive: BTreeSet<Vec<i64>>,
    weyl: Vec<WeylElement>,
    index: BTreeMap<IntMatrix, usize>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

impl RootDatum {
    /// Builds and validates a root datum; `sigma` acts on characters.
    pub fn new(
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        sigma: Vec<Vec<i64>>,
        q: u64,
    ) -> Result<Self, RootDatumError> {
        Self::with_bound(simple_roots, simple_coroots, sigma, q, DEFAULT_BOUND)
    }

    /// Split datum: σ is the identity.
    pub fn split(rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>, q: u64) -> Result<Self, RootDatumError> {
        Self::new(simple_roots, simple_coroots, IntMatrix::identity(rank).rows(), q)
    }

    pub fn with_bound(
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        sigma: Vec<Vec<i64>>,
        q: u64,
        bound: usize,
    ) -> Result<Self, RootDatumError> {
        let rank = sigma.len();
        if simple_roots.len() != simple_coroots.len() {
            return Err(RootDatumError::CountMismatch);
        }
        for v in simple_roots.iter().chain(&simple_coroots).chain(&sigma) {
            if v.len() != rank {
                return Err(RootDatumError::Shape { expected: rank, got: v.len() });
            }
        }
        if prime_power(q).is_none() {
            return Err(RootDatumError::NotPrimePower(q));
        }
        let l = simple_roots.len();
        for i in 0..l {
            if dot(&simple_roots[i], &simple_coroots[i]) != 2 {
                return Err(RootDatumError::CartanDiagonal(i));
            }
            for j in 0..l {
                if i == j {
                    continue;
                }
                let a = dot(&simple_roots[j], &simple_coroots[i]);
                let b = dot(&simple_roots[i], &simple_coroots[j]);
                if a > 0 || (a == 0) != (b == 0) {
                    return Err(RootDatumError::CartanEntry(i, j));
                }
            }
        }
        let sigma = IntMatrix::from_rows(&sigma).ok_or(RootDatumError::Shape { expected: rank, got: 0 })?;
        let sigma_inv = sigma.finite_order_inverse(bound).ok_or(RootDatumError::SigmaInfiniteOrder)?;
        let sigma_inv_t = sigma_inv.transpose();
        let mut sigma_perm = Vec::with_capacity(l);
        for (i, a) in simple_roots.iter().enumerate() {
            let image = sigma.apply(a);
            let j = simple_roots.iter().position(|b| *b == image).ok_or(RootDatumError::SigmaNotPermuting(i))?;
            if sigma_inv_t.apply(&simple_coroots[i]) != simple_coroots[j] {
                return Err(RootDatumError::SigmaCoroots(i));
            }
            sigma_perm.push(j);
        }
        let reflections: Vec<IntMatrix> = simple_roots
            .iter()
            .zip(&simple_coroots)
            .map(|(a, c)| {
                let rows: Vec<Vec<i64>> = (0..rank)
                    .map(|r| (0..rank).map(|k| i64::from(r == k) - a[r] * c[k]).collect())
                    .collect();
                IntMatrix::from_rows(&rows).expect("square")
            })
            .collect();

        // s_i permutes Φ⁺ ∖ {α_i}, so closing Δ under these moves gives Φ⁺
        let mut positive: BTreeSet<Vec<i64>> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for (i, s) in reflections.iter().enumerate() {
                if beta == simple_roots[i] {
                    continue;
                }
                let img = s.apply(&beta);
                if positive.insert(img.clone()) {
                    if positive.len() > bound {
                        return Err(RootDatumError::Bound(bound));
                    }
                    queue.push_back(img);
                }
            }
        }

        let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
        let id = IntMatrix::identity(rank);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in &reflections {
                let ws = w.mul(s);
                if seen.insert(ws.clone()) {
                    if seen.len() > bound {
                        return Err(RootDatumError::Bound(bound));
                    }
                    queue.push_back(ws);
                }
            }
        }

        let mut rd = RootDatum {
            rank,
            q,
            simple_roots,
            simple_coroots,
            sigma,
            sigma_inv,
            sigma_perm,
            reflections,
            positive,
            weyl: Vec::new(),
            index: BTreeMap::new(),
        };
        let weyl: Vec<WeylElement> = seen.into_iter().map(|m| rd.reduce(m)).collect();
        rd.index = weyl.iter().enumerate().map(|(i, w)| (w.matrix.clone(), i)).collect();
        rd.weyl = weyl;
        Ok(rd)
    }

    fn reduce(&self, matrix: IntMatrix) -> WeylElement {
        let mut w = matrix.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.simple_roots.len()).find(|&i| !self.is_positive(&w.apply(&self.simple_roots[i]))) {
            word.push(i);
            w = w.mul(&self.reflections[i]);
        }
        word.reverse();
        WeylElement { matrix, word }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// σ as a matrix on characters.
    pub fn sigma(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> &IntMatrix {
        &self.sigma_inv
    }

    /// Index `j` with `σ(α_i) = α_j`.
    pub fn sigma_on_simple(&self, i: usize) -> usize {
        self.sigma_perm[i]
    }

    pub fn sigma_inv_on_simple(&self, j: usize) -> usize {
        self.sigma_perm.iter().position(|&x| x == j).expect("σ permutes Δ")
    }

    pub fn is_positive(&self, beta: &[i64]) -> bool {
        self.positive.contains(beta)
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        self.positive.contains(beta) || self.positive.contains(&neg(beta))
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.positive.iter()
    }

    /// All roots, positive ones first, each block in lexicographic order.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.positive.iter().cloned().collect();
        out.extend(self.positive.iter().map(|b| neg(b)));
        out
    }

    pub fn sigma_on_roots(&self, beta: &[i64]) -> Result<Vec<i64>, RootDatumError> {
        let img = self.sigma.apply(beta);
        if self.is_root(beta) && self.is_root(&img) {
            Ok(img)
        } else {
            Err(RootDatumError::NotARoot)
        }
    }

    pub fn sigma_inv_on_roots(&self, beta: &[i64]) -> Result<Vec<i64>, RootDatumError> {
        let img = self.sigma_inv.apply(beta);
        if self.is_root(beta) && self.is_root(&img) {
            Ok(img)
        } else {
            Err(RootDatumError::NotARoot)
        }
    }

    /// Positive roots in the span of the simple roots indexed by `k`.
    pub fn positive_roots_of(&self, k: &[usize]) -> BTreeSet<Vec<i64>> {
        let mut set: BTreeSet<Vec<i64>> = k.iter().map(|&i| self.simple_roots[i].clone()).collect();
        let mut queue: VecDeque<Vec<i64>> = set.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for &i in k {
                if beta == self.simple_roots[i] {
                    continue;
                }
                let img = self.reflections[i].apply(&beta);
                if set.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        set
    }

    /// Coroot of a root `β`: `w(α_i)^∨ = w^{-T} α_i^∨` for any `w` with `β = w α_i`.
    pub fn coroot(&self, beta: &[i64]) -> Result<Vec<i64>, RootDatumError> {
        for w in &self.weyl {
            for (i, a) in self.simple_roots.iter().enumerate() {
                if w.apply(a) == beta {
                    let inv = self.inverse(w);
                    return Ok(inv.matrix.transpose().apply(&self.simple_coroots[i]));
                }
            }
        }
        Err(RootDatumError::NotARoot)
    }

    pub fn reflection(&self, i: usize) -> &WeylElement {
        &self.weyl[self.index[&self.reflections[i]]]
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn identity(&self) -> &WeylElement {
        &self.weyl[self.index[&IntMatrix::identity(self.rank)]]
    }

    /// Looks up the canonical element with the given matrix.
    pub fn element(&self, m: &IntMatrix) -> Option<&WeylElement> {
        self.index.get(m).map(|&i| &self.weyl[i])
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        self.element(&a.matrix.mul(&b.matrix)).expect("W is closed")
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        // Weyl matrices have finite order dividing |W|
        let inv = w.matrix.finite_order_inverse(self.weyl.len() + 1).expect("finite order");
        self.element(&inv).expect("W is closed")
    }

    /// `#{β ∈ Φ⁺ : w β ∈ Φ⁻}`.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.positive.iter().filter(|b| !self.is_positive(&w.apply(b))).count()
    }

    /// Elements of `W_K`.
    pub fn parabolic_subgroup(&self, k: &[usize]) -> Vec<&WeylElement> {
        self.weyl.iter().filter(|w| w.word.iter().all(|i| k.contains(i))).collect()
    }

    /// `w_{0,K}`: the longest element of `W_K`.
    pub fn longest_element(&self, k: &[usize]) -> &WeylElement {
        self.parabolic_subgroup(k)
            .into_iter()
            .max_by_key(|w| w.length())
            .expect("W_K contains the identity")
    }

    /// `ᴷW`: minimal-length representatives of `W_K \ W`.
    pub fn min_coset_reps(&self, k: &[usize]) -> Vec<&WeylElement> {
        self.weyl
            .iter()
            .filter(|w| {
                let inv = self.inverse(w);
                k.iter().all(|&i| self.is_positive(&inv.apply(&self.simple_roots[i])))
            })
            .collect()
    }

    /// `σ w σ^{-1}`.
    pub fn sigma_on_weyl(&self, w: &WeylElement) -> &WeylElement {
        let m = self.sigma.mul(&w.matrix).mul(&self.sigma_inv);
        self.element(&m).expect("σ normalizes W")
    }

    /// Bruhat lower interval `{u : u ≤ w}` from subwords of the stored reduced word.
    pub fn bruhat_lower(&self, w: &WeylElement) -> BTreeSet<IntMatrix> {
        let mut set = BTreeSet::from([IntMatrix::identity(self.rank)]);
        for &i in &w.word {
            let extra: Vec<IntMatrix> = set.iter().map(|x| x.mul(&self.reflections[i])).collect();
            set.extend(extra);
        }
        set
    }

    pub fn bruhat_le(&self, u: &WeylElement, w: &WeylElement) -> bool {
        u.length() <= w.length() && self.bruhat_lower(w).contains(&u.matrix)
    }

    /// `℘_* = 1 − q σ_*` on cocharacters, with `σ_* = σᵀ` the adjoint of σ.
    pub fn wp_lower_star(&self) -> Vec<Vec<i64>> {
        let st = self.sigma.transpose();
        let q = self.q as i64;
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| i64::from(r == c) - q * st.get(r, c)).collect())
            .collect()
    }

    /// `℘_*^{-1}(v)` in exact rationals.
    pub fn wp_star_inverse(&self, v: &[i64]) -> Vec<Rational> {
        rational::solve(&self.wp_lower_star(), v).expect("℘_* is invertible because σ has finite order and q ≥ 2")
    }

    /// `℘^*(λ) = λ − q σ(λ)` on characters.
    pub fn wp_upper_star(&self, lambda: &[i64]) -> Vec<i64> {
        let s = self.sigma.apply(lambda);
        lambda.iter().zip(s).map(|(l, x)| l - self.q as i64 * x).collect()
    }

    /// `℘^*` as a matrix (rows act on column characters).
    pub fn wp_upper_star_matrix(&self) -> Vec<Vec<i64>> {
        let q = self.q as i64;
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| i64::from(r == c) - q * self.sigma.get(r, c)).collect())
            .collect()
    }

    /// `(℘^*)^{-1}(ν)` in exact rationals.
    pub fn wp_upper_star_inverse(&self, nu: &[i64]) -> Vec<Rational> {
        rational::solve(&self.wp_upper_star_matrix(), nu).expect("℘^* is invertible")
    }
}

/// `⟨χ, δ⟩` for a character and a rational cocharacter.
pub fn pairing(chi: &[i64], delta: &[Rational]) -> Result<Rational, RootDatumError> {
    rational::pairing(chi, delta).ok_or(RootDatumError::Shape { expected: delta.len(), got: chi.len() })
}

/// The character `χ ↦ Σ` as integer dot product with an integral cocharacter.
pub fn int_pairing(chi: &[i64], lambda: &[i64]) -> i64 {
    dot(chi, lambda)
}
