//! Worked examples: catalog data, representation builders and closed-form
//! oracles.
//!
//! The closed forms here evaluate the displayed predicates directly and do
//! not call into [`crate::sections`], so agreement with the general pipeline
//! is a real cross-check.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmath::rational::Rational;
use crate::exactmath::{Elem, FieldError, FiniteField, Matrix};
use crate::prep::{PRep, PrepError};
use crate::rootdata::{RootDatum, RootDatumError};
use crate::sections::{self, LphiDescription, SectionsError};
use crate::zipdatum::{ZipDatum, ZipDatumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("q = {0} is not a prime power")]
    BadQ(u64),
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
    #[error(transparent)]
    ZipDatum(#[from] ZipDatumError),
    #[error(transparent)]
    Prep(#[from] PrepError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Sections(#[from] SectionsError),
}

type Result<T> = core::result::Result<T, CorpusError>;

/// Names accepted by [`Catalog::load`].
pub const CATALOG_NAMES: [&str; 5] = ["sl2", "u21", "res_sl2", "sp4", "gl3"];

/// The prime field under `F_q`.
pub fn prime_field(q: u64) -> Result<FiniteField> {
    let (p, _) = crate::exactmath::field::prime_power(q).ok_or(CorpusError::BadQ(q))?;
    Ok(FiniteField::prime(p as u32)?)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn sl2_datum(q: u64) -> Result<RootDatum> {
    Ok(RootDatum::split(1, vec![vec![2]], vec![vec![1]], q)?)
}

pub fn sl2(q: u64) -> Result<ZipDatum> {
    Ok(ZipDatum::derive(sl2_datum(q)?, vec![1])?)
}

/// U(2,1) for an inert prime: `σ(A) = J σ(ᵗA)^{-1} J` on the diagonal torus.
pub fn u21_datum(q: u64) -> Result<RootDatum> {
    let roots = vec![vec![1, -1, 0], vec![0, 1, -1]];
    let sigma = vec![vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]];
    Ok(RootDatum::new(roots.clone(), roots, sigma, q)?)
}

pub fn u21(q: u64) -> Result<ZipDatum> {
    Ok(ZipDatum::derive(u21_datum(q)?, vec![1, 1, 0])?)
}

/// `Res_{F_{q²}/F_q} SL₂`, with σ swapping the two factors.
pub fn res_sl2_datum(q: u64) -> Result<RootDatum> {
    Ok(RootDatum::new(
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 0]],
        q,
    )?)
}

pub fn res_sl2(q: u64) -> Result<ZipDatum> {
    Ok(ZipDatum::derive(res_sl2_datum(q)?, vec![1, 0])?)
}

/// Split `Sp(2n)` on `ℤⁿ` with the Siegel cocharacter `(1, …, 1)`.
pub fn sp2n_datum(n: usize, q: u64) -> Result<RootDatum> {
    let mut roots: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut v = unit(n, i);
            v[i + 1] = -1;
            v
        })
        .collect();
    let mut coroots = roots.clone();
    let mut long = vec![0; n];
    long[n - 1] = 2;
    roots.push(long);
    coroots.push(unit(n, n - 1));
    Ok(RootDatum::new(roots, coroots, identity_rows(n), q)?)
}

pub fn sp2n(n: usize, q: u64) -> Result<ZipDatum> {
    Ok(ZipDatum::derive(sp2n_datum(n, q)?, vec![1; n])?)
}

pub fn gl3_datum(q: u64) -> Result<RootDatum> {
    Ok(RootDatum::split(3, vec![vec![1, -1, 0], vec![0, 1, -1]], vec![vec![1, -1, 0], vec![0, 1, -1]], q)?)
}

pub fn gl3(q: u64) -> Result<ZipDatum> {
    Ok(ZipDatum::derive(gl3_datum(q)?, vec![1, 1, 0])?)
}

fn same_datum(zd: &ZipDatum, reference: &RootDatum, mu: &[i64]) -> bool {
    let rd = zd.root_datum();
    rd.simple_roots() == reference.simple_roots()
        && rd.simple_coroots() == reference.simple_coroots()
        && rd.sigma() == reference.sigma()
        && zd.mu() == mu
}

pub fn is_u21(zd: &ZipDatum) -> bool {
    u21_datum(zd.root_datum().q()).is_ok_and(|rd| same_datum(zd, &rd, &[1, 1, 0]))
}

pub fn is_res_sl2(zd: &ZipDatum) -> bool {
    res_sl2_datum(zd.root_datum().q()).is_ok_and(|rd| same_datum(zd, &rd, &[1, 0]))
}

/// A named catalog entry with its zip datum and `L_φ`.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub name: String,
    pub q: u64,
    pub datum: ZipDatum,
    pub lphi: LphiDescription,
}

impl Catalog {
    pub fn load(name: &str, q: u64) -> Result<Self> {
        let datum = match name {
            "sl2" => sl2(q)?,
            "u21" => u21(q)?,
            "res_sl2" => res_sl2(q)?,
            "sp4" => sp2n(2, q)?,
            "gl3" => gl3(q)?,
            other => return Err(CorpusError::Unknown(other.to_string())),
        };
        let lphi = sections::lphi_catalog(&datum)?;
        Ok(Catalog { name: name.to_string(), q, datum, lphi })
    }

    pub fn field(&self) -> FiniteField {
        prime_field(self.q).expect("validated at load")
    }

    /// Named two-dimensional standard blocks `(name, wx, wy)` for `Symⁿ`.
    pub fn blocks(&self) -> Vec<(&'static str, Vec<i64>, Vec<i64>)> {
        match self.name.as_str() {
            "sl2" => vec![("std", vec![1], vec![-1])],
            "u21" | "gl3" => vec![("levi", vec![1, 0, 0], vec![0, 1, 0]), ("outer", vec![0, 1, 0], vec![0, 0, 1])],
            "res_sl2" => vec![("first", vec![1, 0], vec![-1, 0]), ("second", vec![0, 1], vec![0, -1])],
            "sp4" => vec![("siegel", vec![1, 0], vec![0, 1])],
            _ => Vec::new(),
        }
    }

    /// Named full representations.
    pub fn named(&self, name: &str) -> Option<PRep> {
        let f = self.field();
        match (self.name.as_str(), name) {
            ("sp4", "std") => Some(sp2n_std(f, 2)),
            ("res_sl2", "counterexample") => res_sl2_counterexample(self.q).ok(),
            _ => None,
        }
    }
}

/// `Symⁿ(Std)` for SL₂; basis vector `i` is `x^{n−i} y^i` of weight `n − 2i`.
pub fn sl2_sym(q: u64, n: usize) -> Result<PRep> {
    Ok(PRep::sym_std(prime_field(q)?, vec![1], vec![-1], n)?)
}

/// `V_I(λ)` for U(2,1): `det^{λ₂} ⊗ Sym^{λ₁−λ₂} ⊗ χ_{λ₃}` with weights
/// `ν_i = (λ₁ − i, λ₂ + i, λ₃)`; zero when λ is not L-dominant.
pub fn u21_vi(q: u64, lambda: [i64; 3]) -> Result<PRep> {
    let f = prime_field(q)?;
    if lambda[0] < lambda[1] {
        return Ok(PRep::zero(f, 3));
    }
    let n = (lambda[0] - lambda[1]) as usize;
    Ok(PRep::sym_std(f, vec![1, 0, 0], vec![0, 1, 0], n)?.char_twist(&[lambda[1], lambda[1], lambda[2]])?)
}

/// `(Sym^{q²−1}(Std) ⊗ χ_{q²−1}) ⊠ Sym^{q²−1}(Std^{(q)})` over `B₂ × SL₂`.
pub fn res_sl2_counterexample(q: u64) -> Result<PRep> {
    let f = prime_field(q)?;
    let n = (q * q - 1) as usize;
    let first = PRep::sym_std(f.clone(), vec![1], vec![-1], n)?.char_twist(&[n as i64])?;
    let second = PRep::sym_std(f, vec![1], vec![-1], n)?.frobenius_twist(q)?;
    Ok(first.boxtimes(&second)?)
}

/// The standard representation of `Sp(2n)` on `e_1, …, e_n, f_1, …, f_n`
/// for the form `ω(e_i, f_j) = δ_{ij}`. Every root vector squares to zero.
pub fn sp2n_std(field: FiniteField, n: usize) -> PRep {
    let dim = 2 * n;
    let e = |i: usize| i;
    let fv = |i: usize| n + i;
    let mut weights = Vec::new();
    for i in 0..n {
        weights.push(unit(n, i));
    }
    for i in 0..n {
        weights.push(unit(n, i).iter().map(|x| -x).collect());
    }
    let minus_one = field.neg(1);
    let mut ops: BTreeMap<Vec<i64>, Vec<Matrix>> = BTreeMap::new();
    let mut put = |root: Vec<i64>, entries: &[(usize, usize, Elem)]| {
        let mut m = Matrix::zeros(dim, dim);
        for &(to, from, c) in entries {
            m.set(to, from, c);
        }
        ops.insert(root, vec![m]);
    };
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut r = vec![0; n];
                r[i] = 1;
                r[j] = -1;
                put(r, &[(e(i), e(j), 1), (fv(j), fv(i), minus_one)]);
            }
        }
        for j in i + 1..n {
            let mut r = vec![0; n];
            r[i] = 1;
            r[j] = 1;
            put(r.clone(), &[(e(i), fv(j), 1), (e(j), fv(i), 1)]);
            put(r.iter().map(|x| -x).collect(), &[(fv(j), e(i), 1), (fv(i), e(j), 1)]);
        }
        let mut r = vec![0; n];
        r[i] = 2;
        put(r.clone(), &[(e(i), fv(i), 1)]);
        put(r.iter().map(|x| -x).collect(), &[(fv(i), e(i), 1)]);
    }
    PRep::explicit(field, n, weights, ops).expect("shapes are consistent")
}

/// `{j : 0 ≤ j ≤ n, (q−1) | n − 2j, (q+1) j ≤ n}`: the exponents of `x` in
/// the monomial basis `x^j y^{n−j}` of `H⁰(𝒱_Δ(χ_n))`.
pub fn sl2_h0_closed_form(n: usize, q: u64) -> BTreeSet<usize> {
    let (n, q) = (n as i64, q as i64);
    (0..=n).filter(|&j| (n - 2 * j).rem_euclid(q - 1) == 0 && (q + 1) * j <= n).map(|j| j as usize).collect()
}

/// Property (P) through criterion (iii): weights are multiplicity free and,
/// for every weight vector v, `ρ(u_{−α}(1)) v` has a nonzero component on
/// the lowest weight.
pub fn property_p(v: &PRep) -> Result<bool> {
    let distinct = v.distinct_weights();
    if distinct.len() != v.dim() {
        return Ok(false);
    }
    if v.dim() == 0 {
        return Ok(false);
    }
    let lowest = (0..v.dim()).min_by_key(|&i| v.weight(i)[0]).expect("nonempty");
    let u = v.root_element(&[-2], 1)?;
    Ok((0..v.dim()).all(|i| u.get(lowest, i) != 0))
}

/// Property (P) through criterion (i): `dim V^{R_u(B)} = 1`.
pub fn property_p_invariants(v: &PRep) -> Result<bool> {
    let f = v.field();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for j in 1..=v.max_level(&[-2])? {
        let m = v.op(&[-2], j)?;
        rows.extend((0..m.rows()).map(|r| m.row(r).to_vec()));
    }
    let ker = if rows.is_empty() { v.dim() } else { Matrix::from_row_vecs(v.dim(), &rows).kernel(f).dim() };
    Ok(ker == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RDeltaReport {
    pub q: u64,
    pub max_degree: usize,
    pub monomials: usize,
    /// `(n, j)` for monomials `x^j y^{n−j}` that do not factor.
    pub failures: Vec<(usize, usize)>,
    /// Non-monomial section spaces, by degree.
    pub non_monomial: Vec<usize>,
    pub hasse_generator: bool,
    pub second_generator: bool,
}

impl RDeltaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.non_monomial.is_empty() && self.hasse_generator && self.second_generator
    }
}

/// Exponents `(a, b)` with `x^j y^{n−j} = (x y^q)^a (y^{q−1})^b`.
fn rdelta_factor(n: usize, j: usize, q: u64) -> Option<(usize, usize)> {
    let q = q as usize;
    let rest = n.checked_sub(j)?.checked_sub(q * j)?;
    (rest % (q - 1) == 0).then(|| (j, rest / (q - 1)))
}

/// Computes `H⁰(𝒱_Δ(χ_n))` for `n ≤ max_degree` with the general pipeline
/// and factors every basis monomial over `y^{q−1}` and `x y^q`.
pub fn r_delta_generators_check(q: u64, max_degree: usize) -> Result<RDeltaReport> {
    let zd = sl2(q)?;
    let l = sections::lphi_catalog(&zd)?;
    let mut report = RDeltaReport {
        q,
        max_degree,
        monomials: 0,
        failures: Vec::new(),
        non_monomial: Vec::new(),
        hasse_generator: false,
        second_generator: false,
    };
    for n in 0..=max_degree {
        let v = sl2_sym(q, n)?;
        let h = sections::h0(&v, &zd, &l)?;
        let Some(indices) = monomial_indices(&h.space) else {
            report.non_monomial.push(n);
            continue;
        };
        for i in indices {
            let j = n - i;
            report.monomials += 1;
            match rdelta_factor(n, j, q) {
                Some((0, 1)) => report.hasse_generator = true,
                Some((1, 0)) => report.second_generator = true,
                Some(_) => {}
                None => report.failures.push((n, j)),
            }
        }
    }
    Ok(report)
}

/// Coordinates of a subspace spanned by standard basis vectors.
pub fn monomial_indices(space: &crate::exactmath::Subspace) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for v in space.vectors() {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        if nz.len() != 1 {
            return None;
        }
        out.push(nz[0]);
    }
    out.sort_unstable();
    Some(out)
}

/// `F(λ) = q(qλ₁ − (q−1)λ₂ − λ₃)/(q² − q + 1)`.
pub fn u21_f(lambda: [i64; 3], q: u64) -> Rational {
    let q = q as i64;
    Rational::new(q * (q * lambda[0] - (q - 1) * lambda[1] - lambda[2]), q * q - q + 1)
}

/// `{i : q | i, (q+1) | λ₂+i, (q²−1) | λ₁−i−qλ₃, i ≥ F(λ), 0 ≤ i ≤ λ₁−λ₂}`.
pub fn u21_h0_closed_form(lambda: [i64; 3], q: u64) -> BTreeSet<usize> {
    let qi = q as i64;
    let f = u21_f(lambda, q);
    (0..=(lambda[0] - lambda[1]).max(-1))
        .filter(|&i| {
            i % qi == 0
                && (lambda[1] + i).rem_euclid(qi + 1) == 0
                && (lambda[0] - i - qi * lambda[2]).rem_euclid(qi * qi - 1) == 0
                && Rational::from_integer(i) >= f
        })
        .map(|i| i as usize)
        .collect()
}

/// `λ₁ ≥ λ₂` and `(q−1)λ₁ + λ₂ − qλ₃ ≤ 0`.
pub fn u21_cone(lambda: [i64; 3], q: u64) -> bool {
    let q = q as i64;
    lambda[0] >= lambda[1] && (q - 1) * lambda[0] + lambda[1] - q * lambda[2] <= 0
}

/// The least `N ≤ bound` such that `Nλ` carries a nonzero section, by the closed form.
pub fn u21_cone_witness(lambda: [i64; 3], q: u64, bound: i64) -> Option<i64> {
    (1..=bound).find(|&n| !u21_h0_closed_form([n * lambda[0], n * lambda[1], n * lambda[2]], q).is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub samples: usize,
    pub failures: usize,
    /// Samples where the value was nonzero (expected: all of them).
    pub nonzero: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.nonzero == self.samples
    }
}

fn random_unit(f: &FiniteField, rng: &mut ChaCha8Rng) -> Elem {
    rng.gen_range(1..f.order())
}

fn random_elem(f: &FiniteField, rng: &mut ChaCha8Rng) -> Elem {
    rng.gen_range(0..f.order())
}

/// `H(x) = x₁₁^q Δ₁ − x₂₁^q Δ₂` with `Δ₁ = x₁₁x₂₂ − x₁₂x₂₁`, `Δ₂ = x₁₁x₂₃ − x₂₁x₁₃`.
pub fn u21_hasse(f: &FiniteField, q: u64, x: &Matrix) -> Elem {
    let g = |r, c| x.get(r, c);
    let d1 = f.sub(f.mul(g(0, 0), g(1, 1)), f.mul(g(0, 1), g(1, 0)));
    let d2 = f.sub(f.mul(g(0, 0), g(1, 2)), f.mul(g(1, 0), g(0, 2)));
    f.sub(f.mul(f.pow(g(0, 0), q), d1), f.mul(f.pow(g(1, 0), q), d2))
}

/// Samples `(x, y) ∈ E` for U(2,1) over `F_{q^d}` and checks
/// `H(x y^{-1}) = g^{q²+q}(ad − bc)^{q+1}`.
pub fn hasse_invariant_check(q: u64, d: u32, samples: usize, seed: u64) -> Result<IdentityReport> {
    let f = FiniteField::of_order(q.pow(d))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport { samples, failures: 0, nonzero: 0 };
    let fr = |a: Elem| f.pow(a, q);
    let mut done = 0;
    while done < samples {
        let [a, b, c, dd, e, ff, h, i] = core::array::from_fn(|_| random_elem(&f, &mut rng));
        let g = random_unit(&f, &mut rng);
        let det = f.sub(f.mul(a, dd), f.mul(b, c));
        if det == 0 {
            continue;
        }
        done += 1;
        let x = Matrix::from_rows(3, 3, vec![a, b, 0, c, dd, 0, e, ff, g]);
        // y^{-1}
        let yinv = Matrix::from_rows(3, 3, vec![fr(g), h, i, 0, fr(dd), fr(b), 0, fr(c), fr(a)]);
        let lhs = u21_hasse(&f, q, &x.mul(&f, &yinv).expect("3x3"));
        let rhs = f.mul(f.pow(g, q * q + q), f.pow(det, q + 1));
        if lhs != rhs {
            report.failures += 1;
        }
        if lhs != 0 {
            report.nonzero += 1;
        }
    }
    Ok(report)
}

fn block(m: &Matrix, r0: usize, c0: usize, n: usize) -> Matrix {
    let rows: Vec<usize> = (r0..r0 + n).collect();
    let cols: Vec<usize> = (c0..c0 + n).collect();
    m.select(&rows, &cols)
}

fn assemble(n: usize, a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for s in 0..n {
            m.set(r, s, a.get(r, s));
            m.set(r, n + s, b.get(r, s));
            m.set(n + r, s, c.get(r, s));
            m.set(n + r, n + s, d.get(r, s));
        }
    }
    m
}

/// `Θ(A, B; C, D) = (A, 0; 0, D − C A^{-1} B)`.
pub fn theta(f: &FiniteField, n: usize, g: &Matrix) -> Option<Matrix> {
    let a = block(g, 0, 0, n);
    let ainv = a.inverse(f).ok()?;
    let d = block(g, n, n, n);
    let c = block(g, n, 0, n);
    let b = block(g, 0, n, n);
    let corr = c.mul(f, &ainv).ok()?.mul(f, &b).ok()?;
    Some(assemble(n, &a, &Matrix::zeros(n, n), &Matrix::zeros(n, n), &d.sub(f, &corr).ok()?))
}

fn random_symmetric(f: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let x = random_elem(f, rng);
            m.set(r, c, x);
            m.set(c, r, x);
        }
    }
    m
}

fn is_symplectic(f: &FiniteField, n: usize, g: &Matrix) -> bool {
    let z = Matrix::zeros(n, n);
    let i = Matrix::identity(n);
    let j = assemble(n, &z, &i, &i.scale(f, f.neg(1)), &z);
    g.transpose().mul(f, &j).and_then(|m| m.mul(f, g)).is_ok_and(|m| m == j)
}

/// Samples `(a, b) ∈ E` for the Siegel datum of `Sp(2n)` over `F_{q^d}` and
/// checks `Θ(ab^{-1}) = θ^P_L(a) θ^Q_L(b)^{-1}` and `Θ(x) = x` for `x ∈ L`.
pub fn theta_sp2n_check(n: usize, q: u64, d: u32, samples: usize, seed: u64) -> Result<IdentityReport> {
    let f = FiniteField::of_order(q.pow(d))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport { samples, failures: 0, nonzero: 0 };
    let z = Matrix::zeros(n, n);
    let mut done = 0;
    while done < samples {
        let a_blk = Matrix::from_rows(n, n, (0..n * n).map(|_| random_elem(&f, &mut rng)).collect());
        let Ok(a_inv) = a_blk.inverse(&f) else { continue };
        done += 1;
        let a_it = a_inv.transpose();
        let s = random_symmetric(&f, n, &mut rng);
        let x = random_symmetric(&f, n, &mut rng);
        let aq = Matrix::from_rows(n, n, a_blk.data().iter().map(|&v| f.pow(v, q)).collect());
        let aq_it = aq.inverse(&f).expect("Frobenius keeps invertibility").transpose();
        let a = assemble(n, &a_blk, &z, &a_it.mul(&f, &s).expect("square"), &a_it);
        let b = assemble(n, &aq, &aq.mul(&f, &x).expect("square"), &z, &aq_it);
        let levi_a = assemble(n, &a_blk, &z, &z, &a_it);
        let levi_b = assemble(n, &aq, &z, &z, &aq_it);
        let ok = (|| {
            if !is_symplectic(&f, n, &a) || !is_symplectic(&f, n, &b) {
                return Some(false);
            }
            let g = a.mul(&f, &b.inverse(&f).ok()?).ok()?;
            let lhs = theta(&f, n, &g)?;
            let rhs = levi_a.mul(&f, &levi_b.inverse(&f).ok()?).ok()?;
            let fixed = theta(&f, n, &levi_a)? == levi_a;
            Some(lhs == rhs && fixed)
        })()
        .unwrap_or(false);
        if !ok {
            report.failures += 1;
        }
        // Θ lands in L, whose elements are invertible
        report.nonzero += 1;
    }
    Ok(report)
}

/// A random representation of the Borel of SL₂ of dimension at most `max_dim`,
/// built from symmetric powers, twists, tensor products, duals and direct
/// sums, then conjugated by a random weight-preserving matrix.
pub fn random_sl2_brep(q: u64, max_dim: usize, rng: &mut ChaCha8Rng) -> Result<PRep> {
    let f = prime_field(q)?;
    let target = rng.gen_range(1..=max_dim);
    let mut v = PRep::zero(f.clone(), 1);
    while v.dim() < target {
        let room = target - v.dim();
        let piece = match rng.gen_range(0..4) {
            0 if room >= 4 => {
                let a = PRep::sym_std(f.clone(), vec![1], vec![-1], rng.gen_range(0..2))?;
                let b = PRep::sym_std(f.clone(), vec![1], vec![-1], 1)?;
                a.tensor(&b)?
            }
            1 => PRep::sym_std(f.clone(), vec![1], vec![-1], rng.gen_range(0..room))?.dual(),
            2 => {
                // declare the root explicitly so later sums of characters stay well defined
                let ops = BTreeMap::from([(vec![-2], Vec::new()), (vec![2], Vec::new())]);
                PRep::explicit(f.clone(), 1, vec![vec![rng.gen_range(-6..7)]], ops)?
            }
            _ => PRep::sym_std(f.clone(), vec![1], vec![-1], rng.gen_range(0..room))?,
        };
        let shift = 2 * rng.gen_range(-3..4);
        let piece = piece.char_twist(&[shift])?;
        v = v.direct_sum(&piece)?;
    }
    // keep the Borel part only
    let mut ops = BTreeMap::new();
    ops.insert(vec![-2], v.levels(&[-2])?.to_vec());
    ops.insert(vec![2], Vec::new());
    let v = PRep::explicit(f.clone(), 1, v.weights().to_vec(), ops)?;
    let mut g = Matrix::identity(v.dim());
    loop {
        for r in 0..v.dim() {
            for c in 0..v.dim() {
                if v.weight(r) == v.weight(c) {
                    g.set(r, c, random_elem(&f, rng));
                }
            }
        }
        if g.inverse(&f).is_ok() {
            break;
        }
    }
    Ok(v.conjugate(&g)?)
}

/// The monomials `x^j y^{n−j}` for the exponents `js`.
pub fn sl2_monomials(n: usize, js: &BTreeSet<usize>) -> Vec<String> {
    js.iter().map(|&j| alloc::format!("x^{j} y^{}", n - j)).collect()
}
