//! Global sections over the zip stack, Hom spaces between automorphic
//! bundles and the comparison paths used to cross-check them.
//!
//! Every space here is cut out by linear constraints over the prime field
//! of the representation. The main computation stacks the constraints of
//! `V^{L_φ}` with the filtration constraints of every `α ∈ Δ^P` and takes
//! the joint kernel.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::rational::Rational;
use crate::exactmath::{Elem, FieldError, FiniteField, IntegerLattice, LatticeError, LinalgError, Matrix, Subspace};
use crate::prep::{PRep, PrepError};
use crate::rootdata::pairing;
use crate::zipdatum::{PerAlpha, ZipDatum, ZipDatumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionsError {
    #[error(transparent)]
    Prep(#[from] PrepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    ZipDatum(#[from] ZipDatumError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("no catalog description of L_φ for this datum; supply LphiDescription manually")]
    UnsupportedCatalog,
    #[error("group element {0} is not invertible")]
    NotInvertible(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("explicit matrix group elements act on a single space and cannot be used for Hom computations")]
    MatrixElementInHom,
    #[error("map has shape {got:?}, expected {expected:?}")]
    MapShape { expected: (usize, usize), got: (usize, usize) },
}

type Result<T> = core::result::Result<T, SectionsError>;

/// A generator of the finite part of `L_φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupElement {
    /// An explicit matrix on the representation space.
    Matrix(Matrix),
    /// The root group element `u_root(x) = Σ_j x^j E_root^{(j)}` with `x`
    /// in the scalar field of the description.
    Root { root: Vec<i64>, x: Elem },
}

/// Linear data cutting out `V^{L_φ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LphiDescription {
    /// Field containing the scalars of root group elements.
    pub scalars: FiniteField,
    /// Characters trivial on the torus part; `None` keeps every weight.
    pub weight_congruence: Option<IntegerLattice>,
    pub group_elements: Vec<GroupElement>,
    /// `(β, N)`: `E_β^{(j)} v = 0` for `1 ≤ j ≤ N − 1`.
    pub infinitesimal: Vec<(Vec<i64>, usize)>,
}

impl LphiDescription {
    /// The trivial group: every vector is invariant.
    pub fn empty(scalars: FiniteField) -> Self {
        LphiDescription { scalars, weight_congruence: None, group_elements: Vec::new(), infinitesimal: Vec::new() }
    }
}

/// A space of global sections inside a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSpace {
    pub space: Subspace,
    /// `(ν, dim(H⁰ ∩ V_ν))` for every distinct weight ν of V in basis order.
    pub per_weight: Vec<(Vec<i64>, usize)>,
}

impl SectionSpace {
    fn new(v: &PRep, space: Subspace) -> Result<Self> {
        let f = v.field();
        let per_weight = v
            .distinct_weights()
            .into_iter()
            .map(|nu| {
                let coord = Subspace::coordinate(v.dim(), &v.weight_indices(&nu));
                let d = space.intersect(f, &coord)?.dim();
                Ok((nu, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SectionSpace { space, per_weight })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

fn kernel_of_rows(dim: usize, f: &FiniteField, rows: &[Vec<Elem>]) -> Subspace {
    if rows.is_empty() {
        return Subspace::full(dim);
    }
    Matrix::from_row_vecs(dim, rows).kernel(f)
}

fn push_rows(out: &mut Vec<Vec<Elem>>, m: &Matrix) {
    for r in 0..m.rows() {
        let row = m.row(r);
        if row.iter().any(|&x| x != 0) {
            out.push(row.to_vec());
        }
    }
}

/// Coordinates over the prime field of `x^j` for `j = 1..=top`.
fn power_coordinates(scalars: &FiniteField, x: Elem, top: usize) -> Vec<Vec<u32>> {
    (1..=top).map(|j| scalars.coefficients(scalars.pow(x, j as u64))).collect()
}

/// `Σ_j c_{j,k} E^{(j)}` for each prime-field coordinate `k` of `x^j`:
/// together these vanish on `v` iff `u_root(x) v = v`.
fn root_element_components(v: &PRep, scalars: &FiniteField, root: &[i64], x: Elem) -> Result<Vec<Matrix>> {
    let f = v.field();
    let levels = v.levels(root)?;
    let coords = power_coordinates(scalars, x, levels.len());
    let e = scalars.degree() as usize;
    let mut out = vec![Matrix::zeros(v.dim(), v.dim()); e];
    for (lvl, c) in levels.iter().zip(&coords) {
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                out[k] = out[k].add(f, &lvl.scale(f, ck))?;
            }
        }
    }
    Ok(out)
}

fn check_characteristic(v: &PRep, l: &LphiDescription) -> Result<()> {
    if v.field().characteristic() != l.scalars.characteristic() || v.field().degree() != 1 {
        return Err(SectionsError::Precondition(String::from(
            "the representation must be over the prime field of the L_φ scalars",
        )));
    }
    Ok(())
}

/// Constraint rows whose joint kernel is `V^{L_φ}`.
pub fn invariant_rows(v: &PRep, l: &LphiDescription) -> Result<Vec<Vec<Elem>>> {
    check_characteristic(v, l)?;
    let f = v.field();
    let n = v.dim();
    let mut rows = Vec::new();
    if let Some(lat) = &l.weight_congruence {
        for (i, w) in v.weights().iter().enumerate() {
            if !lat.contains(w)? {
                let mut r = vec![0; n];
                r[i] = 1;
                rows.push(r);
            }
        }
    }
    for (idx, g) in l.group_elements.iter().enumerate() {
        match g {
            GroupElement::Matrix(m) => {
                if m.inverse(f).is_err() {
                    return Err(SectionsError::NotInvertible(idx));
                }
                push_rows(&mut rows, &m.sub(f, &Matrix::identity(n))?);
            }
            GroupElement::Root { root, x } => {
                for comp in root_element_components(v, &l.scalars, root, *x)? {
                    push_rows(&mut rows, &comp);
                }
            }
        }
    }
    for (root, bound) in &l.infinitesimal {
        for j in 1..*bound {
            push_rows(&mut rows, &v.op(root, j)?);
        }
    }
    Ok(rows)
}

/// `V^{L_φ}`.
pub fn invariants(v: &PRep, l: &LphiDescription) -> Result<Subspace> {
    Ok(kernel_of_rows(v.dim(), v.field(), &invariant_rows(v, l)?))
}

/// Iterates over the box `∏ [0, bounds_i]`.
fn box_points(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (0..=b).map(move |k| [p.as_slice(), &[k]].concat())).collect();
    }
    out
}

/// `Σ_{j·r = c} (−1)^{|j|} E_{Ξ_1}^{(j_1)} ⋯ E_{Ξ_m}^{(j_m)}` for every value `c`.
fn filtration_operators(v: &PRep, pa: &PerAlpha) -> Result<BTreeMap<Rational, Matrix>> {
    let f = v.field();
    let d = v.dim();
    let levels: Vec<Vec<Matrix>> = pa
        .xi
        .iter()
        .map(|root| {
            let top = v.max_level(root)?;
            (0..=top).map(|j| v.op(root, j)).collect::<core::result::Result<Vec<_>, _>>()
        })
        .collect::<core::result::Result<Vec<_>, _>>()?;
    let bounds: Vec<usize> = levels.iter().map(|l| l.len() - 1).collect();
    let mut acc: BTreeMap<Rational, Matrix> = BTreeMap::new();
    for j in box_points(&bounds) {
        let mut prod = Matrix::identity(d);
        for (i, &k) in j.iter().enumerate() {
            if k > 0 {
                prod = prod.mul(f, &levels[i][k])?;
                if prod.is_zero() {
                    break;
                }
            }
        }
        if prod.is_zero() {
            continue;
        }
        let total: usize = j.iter().sum();
        if total % 2 == 1 {
            prod = prod.scale(f, f.neg(1));
        }
        let c = pa.weight_of(&j);
        let slot = acc.entry(c).or_insert_with(|| Matrix::zeros(d, d));
        *slot = slot.add(f, &prod)?;
    }
    Ok(acc)
}

/// Rows whose joint kernel is `⊕_{[ν]} Fil_{δ_α}^{Ξ_α, a_α, r_α} V_{[ν]}`.
pub fn filtration_rows(v: &PRep, pa: &PerAlpha) -> Result<Vec<Vec<Elem>>> {
    let mut rows = Vec::new();
    for (c, m) in filtration_operators(v, pa)? {
        for r in 0..v.dim() {
            // pr_χ keeps the rows of weight χ; the coset value must beat δ_α(χ)
            if c > pairing(v.weight(r), &pa.delta).expect("rank agrees") {
                let row = m.row(r);
                if row.iter().any(|&x| x != 0) {
                    rows.push(row.to_vec());
                }
            }
        }
    }
    Ok(rows)
}

/// The filtration of `α` split by weight class modulo `Λ_{Ξ_α, r_α}`.
pub fn fil_general(v: &PRep, zd: &ZipDatum, alpha: usize) -> Result<BTreeMap<Vec<i64>, Subspace>> {
    let pa = zd.alpha(alpha)?;
    let f = v.field();
    let total = kernel_of_rows(v.dim(), f, &filtration_rows(v, pa)?);
    let mut out = BTreeMap::new();
    for (key, idx) in v.weight_classes(&pa.lambda)? {
        out.insert(key, total.intersect(f, &Subspace::coordinate(v.dim(), &idx))?);
    }
    Ok(out)
}

/// `⋂_α ⊕_{[ν]} Fil_α`, without any invariance condition.
pub fn filtered_space(v: &PRep, zd: &ZipDatum) -> Result<Subspace> {
    let mut rows = Vec::new();
    for pa in zd.per_alpha() {
        rows.extend(filtration_rows(v, pa)?);
    }
    Ok(kernel_of_rows(v.dim(), v.field(), &rows))
}

/// `Fil_c^{α'} V_ν = ⋂_{j > c} Ker(E_{α'}^{(j)} : V_ν → V_{ν + jα'})`.
pub fn fil_bk(v: &PRep, nu: &[i64], root: &[i64], c: Rational) -> Result<Subspace> {
    let f = v.field();
    let n = v.dim();
    let inside = v.weight_indices(nu);
    let mut rows = Vec::new();
    for i in (0..n).filter(|i| !inside.contains(i)) {
        let mut r = vec![0; n];
        r[i] = 1;
        rows.push(r);
    }
    for j in 0..=v.max_level(root)? {
        if Rational::from_integer(j as i64) > c {
            push_rows(&mut rows, &v.op(root, j)?);
        }
    }
    Ok(kernel_of_rows(n, f, &rows))
}

/// `H⁰(G-Zip^μ, V(ρ)) = V^{L_φ} ∩ ⋂_α ⊕_{[ν]} Fil_α`.
pub fn h0(v: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<SectionSpace> {
    let mut rows = invariant_rows(v, l)?;
    for pa in zd.per_alpha() {
        rows.extend(filtration_rows(v, pa)?);
    }
    SectionSpace::new(v, kernel_of_rows(v.dim(), v.field(), &rows))
}

fn require_fq(zd: &ZipDatum) -> Result<()> {
    if !zd.parabolic_over_fq() {
        return Err(SectionsError::Precondition(String::from("P is not defined over F_q")));
    }
    Ok(())
}

/// `V^{L(F_q)} ∩ ⊕_ν Fil^P_{℘*^{-1}(ν)} V_ν` with
/// `Fil^P_χ = ⋂_α Fil^{−α}_{⟨χ, α^∨⟩}`, for P defined over F_q.
pub fn h0_fq(v: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<SectionSpace> {
    require_fq(zd)?;
    let f = v.field();
    let rd = zd.root_datum();
    let mut space = invariants(v, l)?;
    let mut sum = Subspace::zero(v.dim());
    for nu in v.distinct_weights() {
        let chi = rd.wp_upper_star_inverse(&nu);
        let mut fil = Subspace::coordinate(v.dim(), &v.weight_indices(&nu));
        for &a in zd.delta_p() {
            let coroot: Vec<Rational> =
                rd.simple_coroots()[a].iter().map(|&x| Rational::from_integer(x)).collect();
            let c = chi.iter().zip(&coroot).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
            let neg: Vec<i64> = rd.simple_roots()[a].iter().map(|x| -x).collect();
            fil = fil.intersect(f, &fil_bk(v, &nu, &neg, c)?)?;
        }
        sum = sum.sum(f, &fil)?;
    }
    space = space.intersect(f, &sum)?;
    SectionSpace::new(v, space)
}

/// `V^{L(F_q)} ∩ V_{≥0}^{Δ^P}`, for P over F_q and V trivial on `R_u(P)`.
pub fn h0_levi(v: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<SectionSpace> {
    require_fq(zd)?;
    require_levi(v, zd)?;
    let f = v.field();
    let keep: Vec<usize> = (0..v.dim())
        .filter(|&i| {
            zd.per_alpha().iter().all(|pa| pairing(v.weight(i), &pa.delta).expect("rank agrees") >= Rational::zero())
        })
        .collect();
    let space = invariants(v, l)?.intersect(f, &Subspace::coordinate(v.dim(), &keep))?;
    SectionSpace::new(v, space)
}

fn require_levi(v: &PRep, zd: &ZipDatum) -> Result<()> {
    for root in zd.root_datum().roots() {
        if zd.in_unipotent_radical(&root) && v.max_level(&root)? > 0 {
            return Err(SectionsError::Precondition(String::from("representation is not trivial on R_u(P)")));
        }
    }
    Ok(())
}

/// Same filtration condition as [`h0`], with `L_0(F_q)`-invariants.
pub fn h0_perf(v: &PRep, zd: &ZipDatum, l0: &LphiDescription) -> Result<SectionSpace> {
    if !l0.infinitesimal.is_empty() {
        return Err(SectionsError::Precondition(String::from("L_0(F_q) has no infinitesimal part")));
    }
    h0(v, zd, l0)
}

fn prime_power_basis(scalars: &FiniteField) -> Vec<Elem> {
    let p = scalars.characteristic();
    (0..scalars.degree()).map(|k| p.pow(k)).collect()
}

/// `L(F_q)` for a P defined over F_q whose Levi roots are fixed by σ:
/// characters trivial on `T(F_q)` plus the root groups `U_{±β}(F_q)`.
fn lphi_rational_levi(zd: &ZipDatum) -> Result<LphiDescription> {
    let rd = zd.root_datum();
    let scalars = FiniteField::of_order(rd.q())?;
    let lattice = image_of_wp_upper(zd)?;
    let mut group_elements = Vec::new();
    for beta in rd.positive_roots_of(zd.i_set()) {
        for sign in [1i64, -1] {
            let root: Vec<i64> = beta.iter().map(|x| sign * x).collect();
            for &x in &prime_power_basis(&scalars) {
                group_elements.push(GroupElement::Root { root: root.clone(), x });
            }
        }
    }
    Ok(LphiDescription { scalars, weight_congruence: Some(lattice), group_elements, infinitesimal: Vec::new() })
}

/// `℘^* X^*(T)`: the characters trivial on `T(F_q)`.
pub fn image_of_wp_upper(zd: &ZipDatum) -> Result<IntegerLattice> {
    let rd = zd.root_datum();
    let m = rd.wp_upper_star_matrix();
    let cols: Vec<Vec<i64>> = (0..rd.rank()).map(|c| (0..rd.rank()).map(|r| m[r][c]).collect()).collect();
    Ok(IntegerLattice::full(rd.rank()).image(rd.rank(), &cols)?)
}

/// `L_φ` for the supported data: P over F_q with σ fixing the Levi roots,
/// the unitary group U(2,1) and the restriction of scalars of SL₂.
pub fn lphi_catalog(zd: &ZipDatum) -> Result<LphiDescription> {
    let rd = zd.root_datum();
    let q = rd.q();
    if zd.parabolic_over_fq() && zd.i_set().iter().all(|&i| rd.sigma_on_simple(i) == i) {
        return lphi_rational_levi(zd);
    }
    let scalars = FiniteField::of_order(q)?;
    let qi = q as i64;
    if crate::corpus::is_u21(zd) {
        // d^{q+1} = 1, a ∈ F_{q²}^×, and b^q = 0
        let lattice = IntegerLattice::from_generators(
            3,
            &[vec![qi * qi - 1, 0, 0], vec![0, qi + 1, 0], vec![qi, 0, 1]],
        )?;
        return Ok(LphiDescription {
            scalars,
            weight_congruence: Some(lattice),
            group_elements: Vec::new(),
            infinitesimal: vec![(vec![1, -1, 0], q as usize)],
        });
    }
    if crate::corpus::is_res_sl2(zd) {
        let lattice = IntegerLattice::from_generators(2, &[vec![qi * qi - 1, 0], vec![-qi, 1]])?;
        return Ok(LphiDescription {
            scalars,
            weight_congruence: Some(lattice),
            group_elements: Vec::new(),
            infinitesimal: vec![(vec![0, 2], q as usize)],
        });
    }
    Err(SectionsError::UnsupportedCatalog)
}

/// `L_0(F_q)`: characters trivial on `T(F_q)` plus `U_β(F_q)` for the roots
/// of `L_0`, i.e. roots of L whose whole σ-orbit stays in L.
pub fn lphi_perf(zd: &ZipDatum) -> Result<LphiDescription> {
    let rd = zd.root_datum();
    let scalars = FiniteField::of_order(rd.q())?;
    let lattice = image_of_wp_upper(zd)?;
    let levi = rd.positive_roots_of(zd.i_set());
    let mut group_elements = Vec::new();
    for beta in &levi {
        let mut orbit_in_l = true;
        let mut cur = beta.clone();
        loop {
            cur = rd.sigma_on_roots(&cur).map_err(|_| SectionsError::UnsupportedCatalog)?;
            let pos = if rd.is_positive(&cur) { cur.clone() } else { cur.iter().map(|x| -x).collect() };
            if !levi.contains(&pos) {
                orbit_in_l = false;
                break;
            }
            if cur == *beta {
                break;
            }
        }
        if !orbit_in_l {
            continue;
        }
        if rd.sigma_on_roots(beta).ok().as_ref() != Some(beta) {
            return Err(SectionsError::UnsupportedCatalog);
        }
        for sign in [1i64, -1] {
            let root: Vec<i64> = beta.iter().map(|x| sign * x).collect();
            for &x in &prime_power_basis(&scalars) {
                group_elements.push(GroupElement::Root { root: root.clone(), x });
            }
        }
    }
    Ok(LphiDescription { scalars, weight_congruence: Some(lattice), group_elements, infinitesimal: Vec::new() })
}

/// `Hom(V(ρ), V(ρ')) = H⁰(V^∨ ⊗ V')`; coordinate `a·dim V' + b` is `f[b][a]`.
pub fn hom_bundles(v: &PRep, w: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<Subspace> {
    Ok(h0(&v.dual().tensor(w)?, zd, l)?.space)
}

/// Unflattens a Hom-space vector to a `dim W × dim V` matrix.
pub fn vector_to_map(v: &PRep, w: &PRep, x: &[Elem]) -> Matrix {
    let (dv, dw) = (v.dim(), w.dim());
    let mut m = Matrix::zeros(dw, dv);
    for a in 0..dv {
        for b in 0..dw {
            m.set(b, a, x[a * dw + b]);
        }
    }
    m
}

pub fn map_to_vector(v: &PRep, w: &PRep, f: &Matrix) -> Vec<Elem> {
    let (dv, dw) = (v.dim(), w.dim());
    let mut x = vec![0; dv * dw];
    for a in 0..dv {
        for b in 0..dw {
            x[a * dw + b] = f.get(b, a);
        }
    }
    x
}

fn equivariance_pairs(v: &PRep, w: &PRep, l: &LphiDescription) -> Result<Vec<(Matrix, Matrix)>> {
    let mut pairs = Vec::new();
    for g in &l.group_elements {
        match g {
            GroupElement::Matrix(_) => return Err(SectionsError::MatrixElementInHom),
            GroupElement::Root { root, x } => {
                let a = root_element_components(v, &l.scalars, root, *x)?;
                let b = root_element_components(w, &l.scalars, root, *x)?;
                pairs.extend(a.into_iter().zip(b));
            }
        }
    }
    for (root, bound) in &l.infinitesimal {
        for j in 1..*bound {
            pairs.push((v.op(root, j)?, w.op(root, j)?));
        }
    }
    Ok(pairs)
}

fn torus_equivariant(v: &PRep, w: &PRep, l: &LphiDescription, f: &Matrix) -> Result<bool> {
    if let Some(lat) = &l.weight_congruence {
        for a in 0..v.dim() {
            for b in 0..w.dim() {
                if f.get(b, a) != 0 {
                    let diff: Vec<i64> = w.weight(b).iter().zip(v.weight(a)).map(|(x, y)| x - y).collect();
                    if !lat.contains(&diff)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Checks literally that `f : V → V'` is `L_φ`-equivariant and satisfies the
/// monodromy compatibility for every `α ∈ Δ^P`, coset `[j]` and Hom weight χ.
pub fn check_morphism(f: &Matrix, v: &PRep, w: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<bool> {
    check_characteristic(v, l)?;
    let field = v.field();
    if (f.rows(), f.cols()) != (w.dim(), v.dim()) {
        return Err(SectionsError::MapShape { expected: (w.dim(), v.dim()), got: (f.rows(), f.cols()) });
    }
    if !torus_equivariant(v, w, l, f)? {
        return Ok(false);
    }
    for (a, b) in equivariance_pairs(v, w, l)? {
        if f.mul(field, &a)? != b.mul(field, f)? {
            return Ok(false);
        }
    }
    for pa in zd.per_alpha() {
        let m = pa.m;
        let ops = |rep: &PRep| -> Result<Vec<Vec<Matrix>>> {
            pa.xi
                .iter()
                .map(|root| {
                    let top = rep.max_level(root)?;
                    (0..=top).map(|j| Ok(rep.op(root, j)?)).collect::<Result<Vec<_>>>()
                })
                .collect()
        };
        let (nv, nw) = (ops(v)?, ops(w)?);
        let bounds: Vec<usize> = (0..m).map(|i| nv[i].len() - 1 + nw[i].len() - 1).collect();
        let mut sums: BTreeMap<Rational, Matrix> = BTreeMap::new();
        for j in box_points(&bounds) {
            let c = pa.weight_of(&j);
            let lower: Vec<usize> = j.iter().enumerate().map(|(i, &k)| k.min(nw[i].len() - 1)).collect();
            for jp in box_points(&lower) {
                if (0..m).any(|i| j[i] - jp[i] >= nv[i].len()) {
                    continue;
                }
                // N'^{(j'_1)}_{Ξ_1} ⋯ N'^{(j'_m)}_{Ξ_m} f N^{(j_m − j'_m)}_{Ξ_m} ⋯ N^{(j_1 − j'_1)}_{Ξ_1}
                let mut term = f.clone();
                for i in (0..m).rev() {
                    term = nw[i][jp[i]].mul(field, &term)?;
                }
                for i in (0..m).rev() {
                    term = term.mul(field, &nv[i][j[i] - jp[i]])?;
                }
                if term.is_zero() {
                    continue;
                }
                if jp.iter().sum::<usize>() % 2 == 1 {
                    term = term.scale(field, field.neg(1));
                }
                let slot = sums.entry(c).or_insert_with(|| Matrix::zeros(w.dim(), v.dim()));
                *slot = slot.add(field, &term)?;
            }
        }
        for (c, s) in sums {
            for a in 0..v.dim() {
                for b in 0..w.dim() {
                    if s.get(b, a) == 0 {
                        continue;
                    }
                    let chi: Vec<i64> = w.weight(b).iter().zip(v.weight(a)).map(|(x, y)| x - y).collect();
                    if c > pairing(&chi, &pa.delta).expect("rank agrees") {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `V^α_{≥r} = ⊕_{⟨ν, δ_α⟩ ≥ r} V_ν`; `r = None` stands for `−∞`.
pub fn alpha_filtration(v: &PRep, zd: &ZipDatum, alpha: usize, r: Option<Rational>) -> Result<Subspace> {
    require_levi(v, zd)?;
    let pa = zd.alpha(alpha)?;
    let keep: Vec<usize> = (0..v.dim())
        .filter(|&i| r.is_none_or(|r| pairing(v.weight(i), &pa.delta).expect("rank agrees") >= r))
        .collect();
    Ok(Subspace::coordinate(v.dim(), &keep))
}

/// `L_φ`-equivariant maps preserving every α-filtration, for representations
/// of L over an F_q-rational parabolic.
pub fn hom_filtered(v: &PRep, w: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<Subspace> {
    require_fq(zd)?;
    require_levi(v, zd)?;
    require_levi(w, zd)?;
    check_characteristic(v, l)?;
    let field = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    let n = dv * dw;
    let coord = |a: usize, b: usize| a * dw + b;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let unit = |i: usize| {
        let mut r = vec![0; n];
        r[i] = 1;
        r
    };
    for a in 0..dv {
        for b in 0..dw {
            let preserves = zd.per_alpha().iter().all(|pa| {
                pairing(w.weight(b), &pa.delta).expect("rank agrees")
                    >= pairing(v.weight(a), &pa.delta).expect("rank agrees")
            });
            let diff: Vec<i64> = w.weight(b).iter().zip(v.weight(a)).map(|(x, y)| x - y).collect();
            let torus_ok = match &l.weight_congruence {
                Some(lat) => lat.contains(&diff)?,
                None => true,
            };
            if !preserves || !torus_ok {
                rows.push(unit(coord(a, b)));
            }
        }
    }
    // f·A − B·f = 0, entry (b, a): Σ_k f[b][k] A[k][a] − Σ_k B[b][k] f[k][a]
    for (am, bm) in equivariance_pairs(v, w, l)? {
        for a in 0..dv {
            for b in 0..dw {
                let mut r = vec![0; n];
                for k in 0..dv {
                    let x = am.get(k, a);
                    if x != 0 {
                        r[coord(k, b)] = field.add(r[coord(k, b)], x);
                    }
                }
                for k in 0..dw {
                    let x = bm.get(b, k);
                    if x != 0 {
                        r[coord(a, k)] = field.sub(r[coord(a, k)], x);
                    }
                }
                if r.iter().any(|&x| x != 0) {
                    rows.push(r);
                }
            }
        }
    }
    Ok(kernel_of_rows(n, field, &rows))
}

/// Outcome of comparing sections of V with those of its L-semisimplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LssReport {
    pub dim_h0: usize,
    pub dim_h0_lss: usize,
    pub contained: bool,
    pub filtered_contained: bool,
}

pub fn lss_inclusion_check(v: &PRep, zd: &ZipDatum, l: &LphiDescription) -> Result<LssReport> {
    let f = v.field();
    let lss = v.l_semisimplify(zd);
    let a = h0(v, zd, l)?;
    let b = h0(&lss, zd, l)?;
    let fa = filtered_space(v, zd)?;
    let fb = filtered_space(&lss, zd)?;
    Ok(LssReport {
        dim_h0: a.dim(),
        dim_h0_lss: b.dim(),
        contained: a.space.is_subspace_of(f, &b.space),
        filtered_contained: fa.is_subspace_of(f, &fb),
    })
}
