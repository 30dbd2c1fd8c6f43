//! Task execution: a validated spec in, a JSON document out.

use anyhow::{bail, Context as _};
use serde_json::{json, Value};
use zipsections::corpus;
use zipsections::exactmath::{FiniteField, Matrix, Subspace};
use zipsections::prep::PRep;
use zipsections::sections::{self, GroupElement, LphiDescription, SectionSpace};
use zipsections::zipdatum::ZipDatum;

use crate::emit::{rational, rationals};
use crate::problem::{Context, Path, ProblemSpec, SchemaError, Task};

/// Settings that come from the command line rather than the problem file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    pub seed: u64,
    pub field_degree: Option<u32>,
}

pub fn run(spec: &ProblemSpec, task: Task, settings: Settings) -> anyhow::Result<Value> {
    if let Some(t) = spec.task {
        if t != task {
            return Err(SchemaError {
                path: "$.task".into(),
                message: format!("file asks for {:?} but the subcommand is {:?}", t.name(), task.name()),
            }
            .into());
        }
    }
    if task == Task::Selftest {
        return Ok(crate::selftest::document(settings));
    }
    let ctx = Context::build(spec)?;
    let body = match task {
        Task::Describe => describe(spec, &ctx)?,
        Task::H0 => h0(spec, &ctx)?,
        Task::Hom => hom(spec, &ctx)?,
        Task::Orbits => orbits(&ctx.datum),
        Task::Cone => cone(spec, &ctx)?,
        Task::Selftest => unreachable!(),
    };
    let mut doc = json!({ "task": task.name(), "q": ctx.datum.root_datum().q(), "field": field(&ctx.field) });
    merge(&mut doc, body);
    Ok(doc)
}

fn merge(doc: &mut Value, body: Value) {
    if let (Value::Object(d), Value::Object(b)) = (doc, body) {
        d.extend(b);
    }
}

fn field(f: &FiniteField) -> Value {
    json!({ "p": f.characteristic(), "degree": f.degree(), "modulus": f.modulus() })
}

fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| json!(m.row(r))).collect())
}

fn subspace_basis(s: &Subspace) -> Value {
    json!(s.vectors())
}

fn rep_summary(v: &PRep) -> Value {
    json!({
        "dim": v.dim(),
        "weights": v.weights(),
        "roots": v.declared_roots().map(|r| json!({ "root": r, "levels": v.max_level(r).unwrap_or(0) })).collect::<Vec<_>>(),
    })
}

fn lphi_summary(l: &LphiDescription) -> Value {
    let elements: Vec<Value> = l
        .group_elements
        .iter()
        .map(|g| match g {
            GroupElement::Matrix(m) => json!({ "matrix": matrix(m) }),
            GroupElement::Root { root, x } => json!({ "root": root, "x": l.scalars.coefficients(*x) }),
        })
        .collect();
    json!({
        "scalars": field(&l.scalars),
        "weight_congruence": l.weight_congruence.as_ref().map(|lat| json!(lat.generators())),
        "group_elements": elements,
        "infinitesimal": l.infinitesimal.iter().map(|(r, n)| json!({ "root": r, "bound": n })).collect::<Vec<_>>(),
    })
}

/// The representation under study: the explicit tree, or `V_I(λ)` from `lambda`.
fn source(spec: &ProblemSpec, ctx: &Context) -> anyhow::Result<PRep> {
    if let Some(r) = &spec.representation {
        return ctx.representation(r, "$.representation");
    }
    if let Some(l) = &spec.lambda {
        let tree = json!({ "vi": l });
        return ctx.representation(&tree, "$.lambda");
    }
    Err(SchemaError { path: "$.representation".into(), message: "missing; give a representation or lambda".into() }.into())
}

fn describe(spec: &ProblemSpec, ctx: &Context) -> anyhow::Result<Value> {
    let zd = &ctx.datum;
    let rd = zd.root_datum();
    let per_alpha: Vec<Value> = zd
        .per_alpha()
        .iter()
        .map(|pa| {
            json!({
                "index": pa.index,
                "alpha": pa.alpha,
                "m": pa.m,
                "delta": rationals(&pa.delta),
                "delta_exact": zd.delta_is_exact(pa),
                "xi": pa.xi,
                "r": rationals(&pa.r),
                "a": pa.a,
                "kernel_lattice": pa.kernel_lattice.generators(),
                "lambda": pa.lambda.generators(),
            })
        })
        .collect();
    let mut doc = json!({
        "datum": {
            "rank": rd.rank(),
            "simple_roots": rd.simple_roots(),
            "simple_coroots": rd.simple_coroots(),
            "sigma": rd.sigma().rows(),
            "positive_roots": rd.positive_roots().collect::<Vec<_>>(),
            "weyl_order": rd.weyl_group().len(),
        },
        "mu": zd.mu(),
        "i_set": zd.i_set(),
        "delta_p": zd.delta_p(),
        "z": zd.z().word(),
        "dim_p": zd.dim_p(),
        "parabolic_over_fq": zd.parabolic_over_fq(),
        "per_alpha": per_alpha,
        "lphi": lphi_summary(&ctx.lphi),
        "catalog": ctx.catalog.as_ref().map(|c| c.name.clone()),
    });
    if spec.representation.is_some() || spec.lambda.is_some() {
        merge(&mut doc, json!({ "representation": rep_summary(&source(spec, ctx)?) }));
    }
    Ok(doc)
}

fn section_doc(h: &SectionSpace) -> Value {
    json!({
        "dim": h.dim(),
        "basis": subspace_basis(&h.space),
        "indices": corpus::monomial_indices(&h.space),
        "per_weight": h.per_weight.iter().map(|(w, d)| json!({ "weight": w, "dim": d })).collect::<Vec<_>>(),
    })
}

fn h0(spec: &ProblemSpec, ctx: &Context) -> anyhow::Result<Value> {
    let v = source(spec, ctx)?;
    let zd = &ctx.datum;
    let (name, h) = match spec.path {
        Path::Main => ("main", sections::h0(&v, zd, &ctx.lphi)?),
        Path::Fq => ("fq", sections::h0_fq(&v, zd, &ctx.lphi)?),
        Path::Levi => ("levi", sections::h0_levi(&v, zd, &ctx.lphi)?),
        Path::Perf => {
            let l0 = sections::lphi_perf(zd).context("building the perfection of L_φ")?;
            ("perf", sections::h0_perf(&v, zd, &l0)?)
        }
    };
    let mut doc = section_doc(&h);
    merge(&mut doc, json!({ "path": name, "representation": rep_summary(&v) }));
    Ok(doc)
}

fn hom(spec: &ProblemSpec, ctx: &Context) -> anyhow::Result<Value> {
    let v = source(spec, ctx)?;
    let target = spec
        .target
        .as_ref()
        .ok_or_else(|| SchemaError { path: "$.target".into(), message: "hom needs a target representation".into() })?;
    let w = ctx.representation(target, "$.target")?;
    let zd = &ctx.datum;
    let space = sections::hom_bundles(&v, &w, zd, &ctx.lphi)?;
    let maps: Vec<Value> = space.vectors().iter().map(|x| matrix(&sections::vector_to_map(&v, &w, x))).collect();
    let filtered = match sections::hom_filtered(&v, &w, zd, &ctx.lphi) {
        Ok(s) => json!({ "dim": s.dim(), "equal": s == space }),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    Ok(json!({
        "dim": space.dim(),
        "basis": maps,
        "source": rep_summary(&v),
        "target": rep_summary(&w),
        "filtered": filtered,
    }))
}

fn orbits(zd: &ZipDatum) -> Value {
    let poset = zd.orbit_poset();
    let list: Vec<Value> = poset
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| json!({ "index": i, "word": o.w.word(), "length": o.length, "dim": o.dim, "codim": o.codim }))
        .collect();
    json!({
        "orbits": list,
        "count": poset.orbits.len(),
        "edges": poset.edges,
        "open": poset.open(),
        "codim_one": poset.codim_one(),
        "dim_p": poset.dim_p,
        "dim_g": poset.dim_g,
    })
}

fn cone(spec: &ProblemSpec, ctx: &Context) -> anyhow::Result<Value> {
    if ctx.catalog.as_ref().map(|c| c.name.as_str()) != Some("u21") {
        return Err(SchemaError { path: "$.datum".into(), message: "cone is available for the u21 catalog entry only".into() }.into());
    }
    let l = spec
        .lambda
        .as_ref()
        .ok_or_else(|| SchemaError { path: "$.lambda".into(), message: "cone needs lambda".into() })?;
    if l.len() != 3 {
        bail!(SchemaError { path: "$.lambda".into(), message: "expected three entries".into() });
    }
    let lambda = [l[0], l[1], l[2]];
    let q = ctx.datum.root_datum().q();
    let qi = q as i64;
    let bound = qi * (qi * qi - 1);
    let v = corpus::u21_vi(q, lambda)?;
    let h = sections::h0(&v, &ctx.datum, &ctx.lphi)?;
    Ok(json!({
        "lambda": lambda,
        "in_cone": corpus::u21_cone(lambda, q),
        "witness": corpus::u21_cone_witness(lambda, q, bound),
        "witness_bound": bound,
        "f": rational(&corpus::u21_f(lambda, q)),
        "closed_form_indices": corpus::u21_h0_closed_form(lambda, q),
        "pipeline_indices": corpus::monomial_indices(&h.space),
    }))
}
