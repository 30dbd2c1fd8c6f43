//! The twelve acceptance criteria, one PASS/FAIL line each. Oracles are
//! written out here from the displayed predicates; the library supplies only
//! the general pipeline under test.
//!
//! Criteria listed in `KNOWN_DEVIATIONS` are expected to FAIL (see the README);
//! the target exits nonzero if any other criterion fails or if a known
//! deviation unexpectedly passes.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zipsections::corpus::{self, Catalog};
use zipsections::exactmath::{FiniteField, IntegerLattice, Matrix, Subspace};
use zipsections::prep::PRep;
use zipsections::sections::*;

const KNOWN_DEVIATIONS: [u32; 1] = [8];

type Check = Result<(bool, String), String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn monomials(space: &Subspace) -> Option<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for v in space.vectors() {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        if nz.len() != 1 {
            return None;
        }
        out.insert(nz[0]);
    }
    Some(out)
}

fn sym(q: u64, n: usize) -> PRep {
    PRep::sym_std(FiniteField::of_order(q).unwrap(), vec![1], vec![-1], n).unwrap()
}

/// Basis indices `i` (vector `x^{n−i} y^i`) with `j = n − i` satisfying
/// `(q−1) | n − 2j` and `(q+1) j ≤ n`.
fn sl2_oracle(n: usize, q: u64) -> BTreeSet<usize> {
    let (n, q) = (n as i64, q as i64);
    (0..=n).filter(|&j| (n - 2 * j) % (q - 1) == 0 && (q + 1) * j <= n).map(|j| (n - j) as usize).collect()
}

fn criterion_1() -> Check {
    let mut cases = 0;
    for q in [2u64, 3, 5] {
        let c = Catalog::load("sl2", q).map_err(e)?;
        for n in 0..=60 {
            let h = h0(&sym(q, n), &c.datum, &c.lphi).map_err(e)?;
            let want = sl2_oracle(n, q);
            if h.dim() != want.len() || monomials(&h.space) != Some(want) {
                return Ok((false, format!("q={q} n={n}")));
            }
            cases += 1;
        }
    }
    Ok((true, format!("{cases} (q, n) pairs, dims and index sets equal")))
}

fn criterion_2() -> Check {
    let mut count = 0;
    for q in [2u64, 3] {
        let c = Catalog::load("sl2", q).map_err(e)?;
        let qu = q as usize;
        for n in 0..=40usize {
            let h = h0(&sym(q, n), &c.datum, &c.lphi).map_err(e)?;
            let Some(idx) = monomials(&h.space) else { return Ok((false, format!("q={q} n={n}: not monomial"))) };
            for i in idx {
                // x^j y^{n−j} = (x y^q)^j (y^{q−1})^b
                let j = n - i;
                let factors = n >= j * (qu + 1) && (n - j * (qu + 1)).is_multiple_of(qu - 1);
                if !factors {
                    return Ok((false, format!("q={q}: x^{j} y^{} does not factor", n - j)));
                }
                count += 1;
            }
        }
        // y^{q−1} in degree q−1 and x y^q in degree q+1
        let a = h0(&sym(q, qu - 1), &c.datum, &c.lphi).map_err(e)?;
        let b = h0(&sym(q, qu + 1), &c.datum, &c.lphi).map_err(e)?;
        let has = |h: &SectionSpace, i: usize| monomials(&h.space).is_some_and(|s| s.contains(&i));
        if !has(&a, qu - 1) || !has(&b, qu) {
            return Ok((false, format!("q={q}: generator missing")));
        }
    }
    Ok((true, format!("{count} basis monomials factor; both generators present")))
}

fn criterion_3() -> Check {
    for q in [2u64, 3] {
        let c = Catalog::load("sl2", q).map_err(e)?;
        let s = sym(q, 1);
        let t = s.tensor(&s).map_err(e)?;
        let f = t.field().clone();
        let h = h0(&t, &c.datum, &c.lphi).map_err(e)?;
        // (a, b) ↦ 2a + b with e₁ first: e₁⊗e₋₁ is index 1, e₋₁⊗e₁ index 2
        let part = h.space.intersect(&f, &Subspace::coordinate(4, &[1, 2])).map_err(e)?;
        let want = Subspace::from_vectors(&f, 4, &[vec![0, 1, f.neg(1), 0]]);
        if part != want {
            return Ok((false, format!("q={q}: weight-0 part {:?}", part.vectors())));
        }
    }
    Ok((true, "spanned by e₁⊗e₋₁ − e₋₁⊗e₁ for q ∈ {2,3}".into()))
}

/// `{i : q | i, (q+1) | λ₂+i, (q²−1) | λ₁−i−qλ₃, i ≥ F(λ), 0 ≤ i ≤ λ₁−λ₂}`
/// with `F(λ) = q(qλ₁ − (q−1)λ₂ − λ₃)/(q²−q+1)`.
fn u21_oracle(l: [i64; 3], q: i64) -> BTreeSet<usize> {
    (0..=l[0] - l[1])
        .filter(|&i| {
            i % q == 0
                && (l[1] + i).rem_euclid(q + 1) == 0
                && (l[0] - i - q * l[2]).rem_euclid(q * q - 1) == 0
                && i * (q * q - q + 1) >= q * (q * l[0] - (q - 1) * l[1] - l[2])
        })
        .map(|i| i as usize)
        .collect()
}

fn grid() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in -12..=12 {
        for b in -12..=a {
            for c in -12..=12 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn criterion_4() -> Check {
    let mut cases = 0;
    for q in [2u64, 3] {
        let qi = q as i64;
        let c = Catalog::load("u21", q).map_err(e)?;
        for l in grid() {
            let h = h0(&corpus::u21_vi(q, l).map_err(e)?, &c.datum, &c.lphi).map_err(e)?;
            if monomials(&h.space) != Some(u21_oracle(l, qi)) {
                return Ok((false, format!("q={q} λ={l:?}")));
            }
            cases += 1;
        }
        for (l, i) in [([1 + qi, 1, qi], qi), ([1, 0, qi], 0), ([qi + 1, qi + 1, qi * qi + qi], 0)] {
            let h = h0(&corpus::u21_vi(q, l).map_err(e)?, &c.datum, &c.lphi).map_err(e)?;
            let nu = vec![l[0] - i, l[1] + i, l[2]];
            let nonzero: Vec<_> = h.per_weight.iter().filter(|w| w.1 > 0).cloned().collect();
            if h.dim() != 1 || nonzero != vec![(nu, 1)] {
                return Ok((false, format!("q={q} special weight {l:?}")));
            }
        }
    }
    Ok((true, format!("{cases} weights; three special weights have dim 1 at ν")))
}

fn criterion_5() -> Check {
    let mut inside = 0;
    let mut pipeline_confirmed = 0;
    for q in [2u64, 3] {
        let qi = q as i64;
        let c = Catalog::load("u21", q).map_err(e)?;
        for l in grid() {
            let witness = (1..=qi * (qi * qi - 1)).find(|&n| !u21_oracle([n * l[0], n * l[1], n * l[2]], qi).is_empty());
            let cone = l[0] >= l[1] && (qi - 1) * l[0] + l[1] - qi * l[2] <= 0;
            if witness.is_some() != cone {
                return Ok((false, format!("q={q} λ={l:?}")));
            }
            inside += usize::from(cone);
            // the pipeline itself confirms the witness where Nλ stays small
            if let Some(n) = witness.filter(|&n| n * l[0].abs().max(l[1].abs()).max(l[2].abs()) <= 24) {
                let nl = [n * l[0], n * l[1], n * l[2]];
                if h0(&corpus::u21_vi(q, nl).map_err(e)?, &c.datum, &c.lphi).map_err(e)?.dim() == 0 {
                    return Ok((false, format!("q={q} pipeline finds no section at {nl:?}")));
                }
                pipeline_confirmed += 1;
            }
        }
    }
    Ok((true, format!("{inside} cone weights; {pipeline_confirmed} witnesses recomputed by the pipeline")))
}

fn criterion_6() -> Check {
    for q in [2i64, 3, 4, 5, 7] {
        let d = q * q - 1;
        let u = corpus::u21(q as u64).map_err(e)?;
        let pa = &u.per_alpha()[0];
        let lam = IntegerLattice::from_generators(3, &[vec![q, -(q + 1), 1]]).map_err(e)?;
        if pa.delta != vec![Ratio::new(-q, d), Ratio::new(q - 1, d), Ratio::new(1, d)]
            || pa.r != vec![Ratio::new(q * q - q + 1, d), Ratio::new(-(q * q - q + 1), q * d)]
            || pa.kernel_lattice != IntegerLattice::from_generators(2, &[vec![1, q]]).map_err(e)?
            || pa.lambda != lam
        {
            return Ok((false, format!("u21 q={q}")));
        }
        let r = corpus::res_sl2(q as u64).map_err(e)?;
        let pa = &r.per_alpha()[0];
        if pa.delta != vec![Ratio::new(-1, d), Ratio::new(-q, d)]
            || pa.r != vec![Ratio::new(q * q + 1, d), Ratio::new(-(q * q + 1), q * d)]
            || pa.kernel_lattice != IntegerLattice::from_generators(2, &[vec![1, q]]).map_err(e)?
            || pa.lambda != IntegerLattice::from_generators(2, &[vec![-2, 2 * q]]).map_err(e)?
        {
            return Ok((false, format!("res_sl2 q={q}")));
        }
        let s = corpus::sl2(q as u64).map_err(e)?;
        let pa = &s.per_alpha()[0];
        if pa.delta != vec![Ratio::new(-1, q - 1)] || pa.r != vec![Ratio::new(q + 1, q - 1)] || pa.lambda != IntegerLattice::zero(1) {
            return Ok((false, format!("sl2 q={q}")));
        }
    }
    Ok((true, "δ, r, Λ for sl2, u21, res_sl2 at q ∈ {2,3,4,5,7}".into()))
}

fn catalog_reps(c: &Catalog) -> Vec<PRep> {
    let f = c.field();
    let mut out = vec![PRep::trivial(f.clone(), c.datum.root_datum().rank())];
    for (_, x, y) in c.blocks() {
        for n in 0..=5 {
            out.push(PRep::sym_std(f.clone(), x.clone(), y.clone(), n).unwrap());
        }
    }
    if let Some(v) = c.named("std") {
        out.push(v.tensor(&v.dual()).unwrap());
        out.push(v);
    }
    out
}

fn criterion_7() -> Check {
    let mut cases = 0;
    for name in corpus::CATALOG_NAMES {
        for q in [2u64, 3] {
            let c = Catalog::load(name, q).map_err(e)?;
            if !c.datum.parabolic_over_fq() {
                continue;
            }
            for v in catalog_reps(&c) {
                let h = h0(&v, &c.datum, &c.lphi).map_err(e)?;
                if h0_fq(&v, &c.datum, &c.lphi).map_err(e)?.space != h.space {
                    return Ok((false, format!("{name} q={q}: h0 ≠ h0_fq")));
                }
                let l = v.l_semisimplify(&c.datum);
                let hl = h0(&l, &c.datum, &c.lphi).map_err(e)?;
                if h0_levi(&l, &c.datum, &c.lphi).map_err(e)?.space != hl.space || h0_fq(&l, &c.datum, &c.lphi).map_err(e)?.space != hl.space {
                    return Ok((false, format!("{name} q={q}: h0_levi differs")));
                }
                cases += 1;
            }
        }
    }
    Ok((true, format!("{cases} representations on sl2, sp4, gl3")))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = Catalog::load("sl2", 2).map_err(e)?;
    for k in 0..50 {
        let v = corpus::random_sl2_brep(2 + (k % 2), 8, &mut rng).map_err(e)?;
        let c = if k % 2 == 0 { c.clone() } else { Catalog::load("sl2", 3).map_err(e)? };
        let a = h0(&v, &c.datum, &c.lphi).map_err(e)?;
        let b = h0(&v.l_semisimplify(&c.datum), &c.datum, &c.lphi).map_err(e)?;
        if !a.space.is_subspace_of(v.field(), &b.space) {
            return Ok((false, format!("inclusion fails on random representation {k}")));
        }
    }
    let inclusion = |q: u64| -> Result<(bool, bool, usize, usize), String> {
        let r = Catalog::load("res_sl2", q).map_err(e)?;
        let v = corpus::res_sl2_counterexample(q).map_err(e)?;
        let lss = v.l_semisimplify(&r.datum);
        let a = h0(&v, &r.datum, &r.lphi).map_err(e)?;
        let b = h0(&lss, &r.datum, &r.lphi).map_err(e)?;
        let fil = filtered_space(&v, &r.datum).map_err(e)?.is_subspace_of(v.field(), &filtered_space(&lss, &r.datum).map_err(e)?);
        Ok((a.space.is_subspace_of(v.field(), &b.space), fil, a.dim(), b.dim()))
    };
    let (h0_in, fil_in, da, db) = inclusion(2)?;
    let (h0_in3, fil_in3, ..) = inclusion(3)?;
    Ok((
        !h0_in,
        format!(
            "50/50 random inclusions hold; res_sl2 q=2: Fil inclusion {fil_in} (⊄ reproduced) but h0 inclusion {h0_in} (dims {da}, {db}): the L_φ weight congruence removes the separating weight; at q=3 h0 inclusion {h0_in3}, Fil inclusion {fil_in3}"
        ),
    ))
}

fn random_member(rng: &mut ChaCha8Rng, f: &FiniteField, s: &Subspace) -> Vec<u32> {
    let mut x = vec![0; s.ambient()];
    for b in s.vectors() {
        let c = rng.gen_range(0..f.order());
        for (xi, bi) in x.iter_mut().zip(&b) {
            *xi = f.add(*xi, f.mul(c, *bi));
        }
    }
    x
}

fn criterion_9() -> Check {
    let mut entries = 0;
    for name in corpus::CATALOG_NAMES {
        for q in [2u64, 3] {
            let c = Catalog::load(name, q).map_err(e)?;
            let triv = PRep::trivial(c.field(), c.datum.root_datum().rank());
            let mut reps = catalog_reps(&c);
            reps.extend(c.named("counterexample").filter(|_| q == 2));
            if name == "u21" {
                reps.push(corpus::u21_vi(q, [1 + q as i64, 1, q as i64]).map_err(e)?);
            }
            for v in &reps {
                if hom_bundles(&triv, v, &c.datum, &c.lphi).map_err(e)?.dim() != h0(v, &c.datum, &c.lphi).map_err(e)?.dim() {
                    return Ok((false, format!("{name} q={q}: Hom(1, V) ≠ H⁰")));
                }
            }
            entries += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut agree = 0;
    for k in 0..200 {
        let q = [2u64, 3][k % 2];
        let c = Catalog::load("sl2", q).map_err(e)?;
        let f = c.field();
        let v = sym(q, rng.gen_range(0..4));
        let w = sym(q, rng.gen_range(0..4));
        let space = hom_bundles(&v, &w, &c.datum, &c.lphi).map_err(e)?;
        let m = if k % 4 < 2 {
            vector_to_map(&v, &w, &random_member(&mut rng, &f, &space))
        } else {
            Matrix::from_rows(w.dim(), v.dim(), (0..w.dim() * v.dim()).map(|_| rng.gen_range(0..f.order())).collect())
        };
        if check_morphism(&m, &v, &w, &c.datum, &c.lphi).map_err(e)? != space.contains(&f, &map_to_vector(&v, &w, &m)) {
            return Ok((false, format!("map {k} disagrees")));
        }
        agree += 1;
    }
    let mut pairs = 0;
    for (name, q) in [("sl2", 2u64), ("sl2", 3), ("sl2", 5), ("gl3", 2), ("gl3", 3), ("sp4", 2)] {
        let c = Catalog::load(name, q).map_err(e)?;
        let reps: Vec<PRep> = catalog_reps(&c).into_iter().take(7).map(|v| v.l_semisimplify(&c.datum)).collect();
        for v in &reps {
            for w in &reps {
                if hom_filtered(v, w, &c.datum, &c.lphi).map_err(e)? != hom_bundles(v, w, &c.datum, &c.lphi).map_err(e)? {
                    return Ok((false, format!("{name} q={q}: filtered Hom differs")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("{entries} catalog (entry, q); {agree}/200 maps agree; {pairs} L-representation pairs equal")))
}

fn criterion_10() -> Check {
    // (datum, |W|, |W_I|, |Δ^P|) with group orders known independently
    let cases = [
        ("sl2", corpus::sl2(2).map_err(e)?, 2, 1, 1),
        ("u21", corpus::u21(2).map_err(e)?, 6, 2, 1),
        ("res_sl2", corpus::res_sl2(2).map_err(e)?, 4, 2, 1),
        ("sp4", corpus::sp2n(2, 2).map_err(e)?, 8, 2, 1),
    ];
    for (name, zd, w, wi, dp) in cases {
        let p = zd.orbit_poset();
        let maxima = (0..p.orbits.len()).filter(|&i| (0..p.orbits.len()).all(|j| p.le[j][i])).count();
        let codim1 = p.orbits.iter().filter(|o| o.codim == 1).count();
        let dims = p.orbits.iter().all(|o| o.dim == o.w.length() + zd.dim_p() && o.codim == p.dim_g - o.dim);
        if zd.root_datum().weyl_group().len() != w || p.orbits.len() != w / wi || maxima != 1 || codim1 != dp || !dims {
            return Ok((false, name.to_string()));
        }
    }
    Ok((true, "sl2, u21, res_sl2, sp4".into()))
}

fn criterion_11() -> Check {
    let h = corpus::hasse_invariant_check(2, 4, 100, 11).map_err(e)?;
    let t = corpus::theta_sp2n_check(2, 2, 4, 50, 11).map_err(e)?;
    Ok((h.passed() && t.passed(), format!("Hasse {}/100, Θ {}/50 over F_16", h.samples - h.failures, t.samples - t.failures)))
}

fn criterion_12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..200 {
        let q = [2u64, 3][k % 2];
        let c = Catalog::load("sl2", q).map_err(e)?;
        let v = corpus::random_sl2_brep(q, 8, &mut rng).map_err(e)?;
        if v.validate().is_err() || h0(&v, &c.datum, &c.lphi).map_err(e)?.dim() > v.dim() {
            return Ok((false, format!("random representation {k}")));
        }
    }
    let mut constructed = 0;
    for name in corpus::CATALOG_NAMES {
        let c = Catalog::load(name, 2).map_err(e)?;
        let mut reps = catalog_reps(&c);
        reps.extend(c.named("counterexample"));
        for v in reps {
            for w in [v.dual(), v.l_semisimplify(&c.datum), v.frobenius_twist(2).map_err(e)?, v.tensor(&v).map_err(e)?] {
                if w.validate().is_err() {
                    return Ok((false, format!("{name}: invariant violated")));
                }
                constructed += 1;
            }
        }
    }
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/examples/u21_describe.json");
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| Command::new(env!("CARGO_BIN_EXE_zipsections")).args(["describe", "--input", input]).output().map(|o| o.stdout))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    if runs[0].is_empty() || runs[0] != runs[1] {
        return Ok((false, "JSON output differs between runs".into()));
    }
    Ok((true, format!("200 random representations; {constructed} constructed representations valid; JSON byte-identical")))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Check); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (id, check) in criteria {
        let start = Instant::now();
        let (passed, detail) = check().unwrap_or_else(|err| (false, format!("error: {err}")));
        let tag = if passed { "PASS" } else { "FAIL" };
        let note = if KNOWN_DEVIATIONS.contains(&id) { " [known deviation]" } else { "" };
        println!("criterion {id:>2}: {tag}{note} ({:.2}s) {detail}", start.elapsed().as_secs_f64());
        if passed == KNOWN_DEVIATIONS.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria match expectations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
