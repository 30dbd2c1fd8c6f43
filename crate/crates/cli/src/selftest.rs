//! The acceptance suite behind the `selftest` subcommand.

use anyhow::Result;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use zipsections::corpus::{self, Catalog};
use zipsections::exactmath::{FiniteField, IntegerLattice, Matrix, Subspace};
use zipsections::prep::PRep;
use zipsections::sections::{self as s, SectionsError};
use zipsections::zipdatum::ZipDatum;

use crate::run::Settings;

/// Criteria whose stated outcome is not reproduced; see the README.
pub const KNOWN_DEVIATIONS: [u32; 1] = [8];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(id: u32, name: &'static str, r: Result<(bool, String)>) -> Outcome {
    match r {
        Ok((passed, detail)) => Outcome { id, name, passed, detail },
        Err(e) => Outcome { id, name, passed: false, detail: format!("error: {e:#}") },
    }
}

pub fn run_all(settings: Settings) -> Vec<Outcome> {
    let seed = settings.seed;
    let d = settings.field_degree;
    vec![
        outcome(1, "sl2 sections match the closed form", sl2_closed_form()),
        outcome(2, "R_Δ generated by y^{q-1} and x y^q", r_delta()),
        outcome(3, "weight-0 sections of Std⊗Std", weight_zero()),
        outcome(4, "U(2,1) closed form and special weights", u21_closed_form()),
        outcome(5, "U(2,1) saturated cone", u21_cone()),
        outcome(6, "derived constants", constants()),
        outcome(7, "h0 = h0_fq = h0_levi", corollary_paths()),
        outcome(8, "L-semisimplification inclusion", lss(seed)),
        outcome(9, "Hom layer", hom_layer(seed)),
        outcome(10, "orbit combinatorics", orbit_counts()),
        outcome(11, "Hasse and Θ identities", identities(seed, d)),
        outcome(12, "property suites", properties(seed)),
    ]
}

pub fn document(settings: Settings) -> Value {
    let results = run_all(settings);
    let passed = results.iter().all(|o| o.passed);
    json!({
        "task": "selftest",
        "seed": settings.seed,
        "passed": passed,
        "known_deviations": KNOWN_DEVIATIONS,
        "criteria": results.iter().map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail })).collect::<Vec<_>>(),
    })
}

fn indices(space: &Subspace) -> Option<Vec<usize>> {
    corpus::monomial_indices(space)
}

fn sl2_closed_form() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2u64, 3, 5] {
        let c = Catalog::load("sl2", q)?;
        for n in 0..=60usize {
            let v = corpus::sl2_sym(q, n)?;
            let h = s::h0(&v, &c.datum, &c.lphi)?;
            let want: Vec<usize> = corpus::sl2_h0_closed_form(n, q).iter().rev().map(|j| n - j).collect();
            checked += 1;
            if indices(&h.space) != Some(want) {
                bad.push((q, n));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} cases, mismatches {bad:?}")))
}

fn r_delta() -> Result<(bool, String)> {
    let mut ok = true;
    let mut monomials = 0;
    for q in [2u64, 3] {
        let r = corpus::r_delta_generators_check(q, 40)?;
        ok &= r.passed();
        monomials += r.monomials;
    }
    Ok((ok, format!("{monomials} monomials factored")))
}

fn weight_zero() -> Result<(bool, String)> {
    let mut ok = true;
    for q in [2u64, 3] {
        let c = Catalog::load("sl2", q)?;
        let std = corpus::sl2_sym(q, 1)?;
        let t = std.tensor(&std)?;
        let h = s::h0(&t, &c.datum, &c.lphi)?;
        let f = t.field();
        let part = h.space.intersect(f, &Subspace::coordinate(4, &t.weight_indices(&[0])))?;
        ok &= part == Subspace::from_vectors(f, 4, &[vec![0, 1, f.neg(1), 0]]);
    }
    Ok((ok, "q ∈ {2,3}".into()))
}

fn u21_grid() -> impl Iterator<Item = [i64; 3]> {
    (-12..=12i64).flat_map(|a| (-12..=a).flat_map(move |b| (-12..=12i64).map(move |c| [a, b, c])))
}

fn u21_closed_form() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2u64, 3] {
        let c = Catalog::load("u21", q)?;
        for lambda in u21_grid() {
            let v = corpus::u21_vi(q, lambda)?;
            let h = s::h0(&v, &c.datum, &c.lphi)?;
            checked += 1;
            if indices(&h.space) != Some(corpus::u21_h0_closed_form(lambda, q).into_iter().collect()) {
                bad.push((q, lambda));
            }
        }
        let qi = q as i64;
        for (lambda, i) in [([1 + qi, 1, qi], qi), ([1, 0, qi], 0), ([qi + 1, qi + 1, qi * qi + qi], 0)] {
            let v = corpus::u21_vi(q, lambda)?;
            let h = s::h0(&v, &c.datum, &c.lphi)?;
            let nu = vec![lambda[0] - i, lambda[1] + i, lambda[2]];
            if h.dim() != 1 || !h.per_weight.contains(&(nu, 1)) {
                bad.push((q, lambda));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} weights, mismatches {bad:?}")))
}

fn u21_cone() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut inside = 0;
    for q in [2u64, 3] {
        let qi = q as i64;
        for lambda in u21_grid() {
            let witnessed = corpus::u21_cone_witness(lambda, q, qi * (qi * qi - 1)).is_some();
            inside += usize::from(witnessed);
            if witnessed != corpus::u21_cone(lambda, q) {
                bad.push((q, lambda));
            }
        }
    }
    Ok((bad.is_empty(), format!("{inside} weights in the cone, mismatches {bad:?}")))
}

fn constants() -> Result<(bool, String)> {
    let mut ok = true;
    for q in [2i64, 3, 4, 5] {
        let d = q * q - 1;
        let u = corpus::u21(q as u64)?;
        let pa = &u.per_alpha()[0];
        ok &= pa.delta == vec![Ratio::new(-q, d), Ratio::new(q - 1, d), Ratio::new(1, d)];
        ok &= pa.r == vec![Ratio::new(q * q - q + 1, d), Ratio::new(-(q * q - q + 1), q * d)];
        ok &= pa.lambda == IntegerLattice::from_generators(3, &[vec![q, -(q + 1), 1]])?;
        let r = corpus::res_sl2(q as u64)?;
        let pa = &r.per_alpha()[0];
        ok &= pa.delta == vec![Ratio::new(-1, d), Ratio::new(-q, d)];
        ok &= pa.r == vec![Ratio::new(q * q + 1, d), Ratio::new(-(q * q + 1), q * d)];
        ok &= pa.kernel_lattice == IntegerLattice::from_generators(2, &[vec![1, q]])?;
        let sl = corpus::sl2(q as u64)?;
        let pa = &sl.per_alpha()[0];
        ok &= pa.delta == vec![Ratio::new(-1, q - 1)];
        ok &= pa.lambda == IntegerLattice::zero(1);
    }
    Ok((ok, "sl2, u21, res_sl2 for q ∈ {2,3,4,5}".into()))
}

/// Representations exercised on each catalog entry.
fn catalog_reps(c: &Catalog) -> Result<Vec<PRep>> {
    let f = c.field();
    let rank = c.datum.root_datum().rank();
    let mut out = vec![PRep::trivial(f.clone(), rank)];
    for (_, wx, wy) in c.blocks() {
        for n in 0..=4 {
            out.push(PRep::sym_std(f.clone(), wx.clone(), wy.clone(), n)?);
        }
    }
    if let Some(v) = c.named("std") {
        out.push(v.tensor(&v)?);
        out.push(v);
    }
    if c.name == "u21" {
        out.push(corpus::u21_vi(c.q, [3, 1, 2])?);
    }
    Ok(out)
}

fn corollary_paths() -> Result<(bool, String)> {
    let mut cases = 0;
    let mut ok = true;
    for name in corpus::CATALOG_NAMES {
        for q in [2u64, 3] {
            let c = Catalog::load(name, q)?;
            if !c.datum.parabolic_over_fq() {
                continue;
            }
            for v in catalog_reps(&c)? {
                let h = s::h0(&v, &c.datum, &c.lphi)?;
                ok &= s::h0_fq(&v, &c.datum, &c.lphi)? == h;
                let lss = v.l_semisimplify(&c.datum);
                let hl = s::h0(&lss, &c.datum, &c.lphi)?;
                ok &= s::h0_fq(&lss, &c.datum, &c.lphi)? == hl;
                ok &= s::h0_levi(&lss, &c.datum, &c.lphi)? == hl;
                cases += 1;
            }
        }
    }
    Ok((ok, format!("{cases} representations on entries with P over F_q")))
}

fn lss(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = Catalog::load("sl2", 2)?;
    let c3 = Catalog::load("sl2", 3)?;
    let mut included = 0;
    for k in 0..50 {
        let (q, cat) = if k % 2 == 0 { (2, &c) } else { (3, &c3) };
        let v = corpus::random_sl2_brep(q, 8, &mut rng)?;
        included += usize::from(s::lss_inclusion_check(&v, &cat.datum, &cat.lphi)?.contained);
    }
    let mut reports = Vec::new();
    for q in [2u64, 3] {
        let r = Catalog::load("res_sl2", q)?;
        let v = r.named("counterexample").expect("catalog entry");
        reports.push(s::lss_inclusion_check(&v, &r.datum, &r.lphi)?);
    }
    let passed = included == 50 && !reports[0].contained;
    let text: Vec<String> = [2, 3]
        .iter()
        .zip(&reports)
        .map(|(q, r)| {
            format!(
                "res_sl2 q={q}: dim h0(V)={}, dim h0(V^Lss)={}, h0 inclusion {}, Fil inclusion {}",
                r.dim_h0, r.dim_h0_lss, r.contained, r.filtered_contained
            )
        })
        .collect();
    Ok((passed, format!("inclusion on {included}/50 random B-representations; {}", text.join("; "))))
}

fn random_map(rng: &mut ChaCha8Rng, f: &FiniteField, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows(rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..f.order())).collect())
}

fn random_member(rng: &mut ChaCha8Rng, f: &FiniteField, space: &Subspace) -> Vec<u32> {
    let mut x = vec![0; space.ambient()];
    for b in space.vectors() {
        let c = rng.gen_range(0..f.order());
        for (xi, bi) in x.iter_mut().zip(&b) {
            *xi = f.add(*xi, f.mul(c, *bi));
        }
    }
    x
}

fn hom_layer(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9);
    let mut ok = true;
    let mut entries = 0;
    for name in corpus::CATALOG_NAMES {
        let c = Catalog::load(name, 2)?;
        let f = c.field();
        let triv = PRep::trivial(f.clone(), c.datum.root_datum().rank());
        let mut reps = catalog_reps(&c)?;
        if let Some(v) = c.named("counterexample") {
            reps.push(v);
        }
        for v in &reps {
            ok &= s::hom_bundles(&triv, v, &c.datum, &c.lphi)?.dim() == s::h0(v, &c.datum, &c.lphi)?.dim();
        }
        entries += 1;
    }
    let mut maps = 0;
    let mut agree = 0;
    let c = Catalog::load("sl2", 3)?;
    let f = c.field();
    let reps: Vec<PRep> = (0..4).map(|n| corpus::sl2_sym(3, n)).collect::<Result<_, _>>()?;
    while maps < 200 {
        let v = &reps[rng.gen_range(0..reps.len())];
        let w = &reps[rng.gen_range(0..reps.len())];
        let space = s::hom_bundles(v, w, &c.datum, &c.lphi)?;
        let m = if rng.gen_bool(0.5) {
            s::vector_to_map(v, w, &random_member(&mut rng, &f, &space))
        } else {
            random_map(&mut rng, &f, w.dim(), v.dim())
        };
        let member = space.contains(&f, &s::map_to_vector(v, w, &m));
        agree += usize::from(s::check_morphism(&m, v, w, &c.datum, &c.lphi)? == member);
        maps += 1;
    }
    ok &= agree == maps;
    let mut filtered = 0;
    for (name, q) in [("sl2", 2u64), ("sl2", 3), ("gl3", 2), ("sp4", 2)] {
        let c = Catalog::load(name, q)?;
        let reps: Vec<PRep> = catalog_reps(&c)?.into_iter().take(6).map(|v| v.l_semisimplify(&c.datum)).collect();
        for v in &reps {
            for w in &reps {
                match s::hom_filtered(v, w, &c.datum, &c.lphi) {
                    Ok(h) => {
                        ok &= h == s::hom_bundles(v, w, &c.datum, &c.lphi)?;
                        filtered += 1;
                    }
                    Err(SectionsError::Precondition(_)) => ok = false,
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok((ok, format!("{entries} catalog entries, {agree}/{maps} maps agree, {filtered} filtered Hom pairs")))
}

fn orbit_counts() -> Result<(bool, String)> {
    let data: Vec<ZipDatum> = vec![corpus::sl2(2)?, corpus::u21(2)?, corpus::res_sl2(2)?, corpus::sp2n(2, 2)?];
    let mut ok = true;
    for zd in &data {
        let rd = zd.root_datum();
        let poset = zd.orbit_poset();
        ok &= poset.orbits.len() * rd.parabolic_subgroup(zd.i_set()).len() == rd.weyl_group().len();
        ok &= poset.open().is_some();
        ok &= poset.codim_one().len() == zd.delta_p().len();
        ok &= poset.orbits.iter().all(|o| o.dim == o.length + zd.dim_p());
    }
    Ok((ok, "sl2, u21, res_sl2, sp4".into()))
}

fn identities(seed: u64, degree: Option<u32>) -> Result<(bool, String)> {
    let d = degree.unwrap_or(4);
    let h = corpus::hasse_invariant_check(2, d, 100, seed)?;
    let t = corpus::theta_sp2n_check(2, 2, d, 50, seed)?;
    Ok((
        h.passed() && t.passed(),
        format!("F_{{2^{d}}}: Hasse {}/{} , Θ {}/{}", h.samples - h.failures, h.samples, t.samples - t.failures, t.samples),
    ))
}

fn properties(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc);
    let c2 = Catalog::load("sl2", 2)?;
    let c3 = Catalog::load("sl2", 3)?;
    let mut ok = true;
    for k in 0..200 {
        let (q, c) = if k % 2 == 0 { (2, &c2) } else { (3, &c3) };
        let v = corpus::random_sl2_brep(q, 8, &mut rng)?;
        ok &= v.validate().is_ok();
        ok &= s::h0(&v, &c.datum, &c.lphi)?.dim() <= v.dim();
    }
    for name in corpus::CATALOG_NAMES {
        let c = Catalog::load(name, 2)?;
        for v in catalog_reps(&c)? {
            ok &= v.validate().is_ok() && v.l_semisimplify(&c.datum).validate().is_ok() && v.dual().validate().is_ok();
        }
    }
    let spec = crate::problem::ProblemSpec::from_json(
        r#"{"datum": {"catalog": "u21", "q": 2}, "representation": {"vi": [3, 1, 2]}}"#,
    )?;
    let a = crate::emit::json(&crate::run::run(&spec, crate::problem::Task::H0, Settings::default())?);
    let b = crate::emit::json(&crate::run::run(&spec, crate::problem::Task::H0, Settings::default())?);
    ok &= a == b;
    Ok((ok, "200 random representations, catalog representations, repeated JSON".into()))
}
