//! Zip data attached to a cocharacter: the parabolic type, the frame, the
//! per-root filtration constants and the E-orbit poset.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::rational::{int, Rational};
use crate::exactmath::{IntMatrix, IntegerLattice, LatticeError};
use crate::rootdata::{int_pairing, pairing, RootDatum, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZipDatumError {
    #[error("μ has length {got}, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("μ is not dominant: <α_{0}, μ> = {1} < 0; conjugate μ by the Weyl group into the dominant chamber first")]
    NotDominant(usize, i64),
    #[error("α_{0} is not in Δ^P")]
    NotInDeltaP(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Constants attached to one `α ∈ Δ^P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerAlpha {
    /// Index of α in Δ.
    pub index: usize,
    pub alpha: Vec<i64>,
    pub m: usize,
    /// `δ_α = ℘_*^{-1}(α^∨)`.
    pub delta: Vec<Rational>,
    /// `Ξ_α = (−α, σ^{-1}α, …, σ^{-(m-1)}α)`.
    pub xi: Vec<Vec<i64>>,
    pub r: Vec<Rational>,
    /// The scalars `a_α`, all `−1`.
    pub a: Vec<i64>,
    /// `(ℤ^m)_r = {n : Σ n_i r_i = 0}`.
    pub kernel_lattice: IntegerLattice,
    /// `Λ_{Ξ,r}`, the image of the kernel lattice under Ξ.
    pub lambda: IntegerLattice,
}

impl PerAlpha {
    /// `Σ j_i r_i`.
    pub fn weight_of(&self, j: &[usize]) -> Rational {
        j.iter().zip(&self.r).fold(Rational::zero(), |acc, (&k, r)| acc + *r * k as i64)
    }

    /// `Σ j_i Ξ_i`.
    pub fn shift(&self, j: &[usize]) -> Vec<i64> {
        let n = self.alpha.len();
        let mut out = vec![0; n];
        for (&k, x) in j.iter().zip(&self.xi) {
            for (o, &c) in out.iter_mut().zip(x) {
                *o += k as i64 * c;
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ZipDatum {
    rd: RootDatum,
    mu: Vec<i64>,
    i_set: Vec<usize>,
    delta_p: Vec<usize>,
    z: WeylElement,
    per_alpha: Vec<PerAlpha>,
}

/// One E-orbit, labelled by `w ∈ ᴵW`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub w: WeylElement,
    pub length: usize,
    pub dim: usize,
    pub codim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    /// Orbits sorted by length, then by Weyl matrix.
    pub orbits: Vec<Orbit>,
    /// `le[i][j]` iff orbit `i ≼` orbit `j`.
    pub le: Vec<Vec<bool>>,
    /// Covering relations `(lower, upper)` of `≼`.
    pub edges: Vec<(usize, usize)>,
    pub dim_p: usize,
    pub dim_g: usize,
}

impl OrbitPoset {
    /// Index of the open orbit if it is the unique maximum.
    pub fn open(&self) -> Option<usize> {
        let n = self.orbits.len();
        let maxima: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| !self.le[i][j] || i == j)).collect();
        (maxima.len() == 1 && (0..n).all(|j| self.le[j][maxima[0]])).then(|| maxima[0])
    }

    pub fn codim_one(&self) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&i| self.orbits[i].codim == 1).collect()
    }
}

fn lcm_den(v: &[Rational]) -> i64 {
    v.iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
}

impl ZipDatum {
    pub fn derive(rd: RootDatum, mu: Vec<i64>) -> Result<Self, ZipDatumError> {
        if mu.len() != rd.rank() {
            return Err(ZipDatumError::Shape { expected: rd.rank(), got: mu.len() });
        }
        let mut i_set = Vec::new();
        let mut delta_p = Vec::new();
        for (i, a) in rd.simple_roots().iter().enumerate() {
            let v = int_pairing(a, &mu);
            if v < 0 {
                return Err(ZipDatumError::NotDominant(i, v));
            }
            if v == 0 {
                i_set.push(i);
            } else {
                delta_p.push(i);
            }
        }
        let w0i = rd.longest_element(&i_set);
        let w0 = rd.longest_element(&(0..rd.semisimple_rank()).collect::<Vec<_>>());
        let z = rd.multiply(rd.sigma_on_weyl(w0i), w0).clone();
        let q = rd.q() as i64;
        let mut per_alpha = Vec::new();
        for &idx in &delta_p {
            let alpha = rd.simple_roots()[idx].clone();
            let mut xi = vec![alpha.iter().map(|x| -x).collect::<Vec<_>>()];
            let mut cur = idx;
            let mut m = 1;
            loop {
                cur = rd.sigma_inv_on_simple(cur);
                if !i_set.contains(&cur) {
                    break;
                }
                xi.push(rd.simple_roots()[cur].clone());
                m += 1;
            }
            let delta = rd.wp_star_inverse(&rd.simple_coroots()[idx]);
            let ad = pairing(&alpha, &delta).expect("lengths agree");
            let mut r = vec![Rational::one() - ad];
            let mut qp = 1i64;
            for _ in 1..m {
                qp *= q;
                r.push((ad - Rational::one()) / qp);
            }
            let scale = lcm_den(&r);
            let row: Vec<i64> = r.iter().map(|x| (*x * scale).to_integer()).collect();
            let kernel_lattice = IntegerLattice::integer_kernel(m, &[row])?;
            let lambda = kernel_lattice.image(rd.rank(), &xi)?;
            per_alpha.push(PerAlpha { index: idx, alpha, m, delta, xi, r, a: vec![-1; m], kernel_lattice, lambda });
        }
        Ok(ZipDatum { rd, mu, i_set, delta_p, z, per_alpha })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// Indices of the simple roots of L.
    pub fn i_set(&self) -> &[usize] {
        &self.i_set
    }

    pub fn delta_p(&self) -> &[usize] {
        &self.delta_p
    }

    /// The frame element `z = σ(w_{0,I}) w_0`.
    pub fn z(&self) -> &WeylElement {
        &self.z
    }

    pub fn per_alpha(&self) -> &[PerAlpha] {
        &self.per_alpha
    }

    pub fn alpha(&self, index: usize) -> Result<&PerAlpha, ZipDatumError> {
        self.per_alpha.iter().find(|p| p.index == index).ok_or(ZipDatumError::NotInDeltaP(index))
    }

    pub fn m_alpha(&self, index: usize) -> Result<usize, ZipDatumError> {
        Ok(self.alpha(index)?.m)
    }

    pub fn lambda_lattice(&self, index: usize) -> Result<&IntegerLattice, ZipDatumError> {
        Ok(&self.alpha(index)?.lambda)
    }

    pub fn kernel_lattice(&self, index: usize) -> Result<&IntegerLattice, ZipDatumError> {
        Ok(&self.alpha(index)?.kernel_lattice)
    }

    /// True when P is defined over F_q: σ(I) = I (hence σ(Δ^P) = Δ^P).
    pub fn parabolic_over_fq(&self) -> bool {
        self.i_set.iter().all(|&i| self.i_set.contains(&self.rd.sigma_on_simple(i)))
    }

    /// Whether a root lies in the unipotent radical of P, i.e. `⟨β, μ⟩ < 0`.
    pub fn in_unipotent_radical(&self, beta: &[i64]) -> bool {
        int_pairing(beta, &self.mu) < 0
    }

    /// Whether a root lies in L, i.e. `⟨β, μ⟩ = 0`.
    pub fn in_levi(&self, beta: &[i64]) -> bool {
        int_pairing(beta, &self.mu) == 0
    }

    pub fn dim_p(&self) -> usize {
        let nplus = self.rd.positive_roots().count();
        self.rd.rank() + nplus + self.rd.positive_roots_of(&self.i_set).len()
    }

    /// The E-orbits with dimensions and the closure order.
    pub fn orbit_poset(&self) -> OrbitPoset {
        let rd = &self.rd;
        let mut reps: Vec<&WeylElement> = rd.min_coset_reps(&self.i_set);
        reps.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.matrix().cmp(b.matrix())));
        let dim_p = self.dim_p();
        let top = reps.iter().map(|w| w.length()).max().unwrap_or(0);
        let orbits: Vec<Orbit> = reps
            .iter()
            .map(|w| Orbit { w: (*w).clone(), length: w.length(), dim: w.length() + dim_p, codim: top - w.length() })
            .collect();
        let wi = rd.parabolic_subgroup(&self.i_set);
        let n = orbits.len();
        let lowers: Vec<BTreeSet<IntMatrix>> = orbits.iter().map(|o| rd.bruhat_lower(&o.w)).collect();
        // w' ≼ w iff some twisted conjugate w1 w' σ(w1)^{-1} lies below w
        let le: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        wi.iter().any(|w1| {
                            let sw1 = rd.sigma_on_weyl(w1);
                            let conj = rd.multiply(rd.multiply(w1, &orbits[i].w), rd.inverse(sw1));
                            lowers[j].contains(conj.matrix())
                        })
                    })
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && !(0..n).any(|k| k != i && k != j && le[i][k] && le[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        let dim_g = rd.rank() + 2 * rd.positive_roots().count();
        OrbitPoset { orbits, le, edges, dim_p, dim_g }
    }

    /// The predicted codimension-one orbits `w_{0,I} s_α w_0` for `α ∈ Δ^P`.
    pub fn codim_one_prediction(&self) -> Vec<WeylElement> {
        let rd = &self.rd;
        let w0i = rd.longest_element(&self.i_set);
        let w0 = rd.longest_element(&(0..rd.semisimple_rank()).collect::<Vec<_>>());
        let mut out: Vec<WeylElement> = self
            .delta_p
            .iter()
            .map(|&i| rd.multiply(rd.multiply(w0i, rd.reflection(i)), w0).clone())
            .collect();
        out.sort();
        out
    }

    /// Checks `℘_*(δ_α) = α^∨` exactly.
    pub fn delta_is_exact(&self, pa: &PerAlpha) -> bool {
        let wp = self.rd.wp_lower_star();
        let coroot = &self.rd.simple_coroots()[pa.index];
        wp.iter().zip(coroot).all(|(row, &c)| {
            row.iter().zip(&pa.delta).fold(Rational::zero(), |acc, (&x, d)| acc + *d * x) == int(c)
        })
    }
}
