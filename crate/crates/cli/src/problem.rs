//! Problem files: parsing with JSON-path error messages and translation into
//! core objects.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};
use zipsections::corpus::{self, Catalog};
use zipsections::exactmath::{FiniteField, IntegerLattice, Matrix};
use zipsections::prep::PRep;
use zipsections::rootdata::RootDatum;
use zipsections::sections::{self, GroupElement, LphiDescription};
use zipsections::zipdatum::ZipDatum;

use crate::emit::Format;

pub const SCHEMA_VERSION: u64 = 1;

/// A schema violation at a JSON path such as `$.representation.tensor[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema violation at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError { path: path.to_string(), message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Describe,
    H0,
    Hom,
    Orbits,
    Cone,
    Selftest,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Describe => "describe",
            Task::H0 => "h0",
            Task::Hom => "hom",
            Task::Orbits => "orbits",
            Task::Cone => "cone",
            Task::Selftest => "selftest",
        }
    }

    pub fn parse(s: &str) -> Option<Task> {
        [Task::Describe, Task::H0, Task::Hom, Task::Orbits, Task::Cone, Task::Selftest].into_iter().find(|t| t.name() == s)
    }
}

/// Which formula computes `H⁰`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Main,
    Fq,
    Levi,
    Perf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatumSpec {
    Catalog { name: String, q: u64 },
    Explicit { simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>, sigma: Vec<Vec<i64>>, q: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LphiSpec {
    Catalog,
    Explicit(Value),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub task: Option<Task>,
    pub datum: DatumSpec,
    pub mu: Option<Vec<i64>>,
    pub representation: Option<Value>,
    pub target: Option<Value>,
    pub lphi: LphiSpec,
    pub lambda: Option<Vec<i64>>,
    pub path: Path,
    pub field_degree: Option<u32>,
    pub format: Option<Format>,
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object().map_or_else(|| err(path, "expected an object"), Ok)
}

fn check_keys(m: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), SchemaError> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return err(&format!("{path}.{k}"), format!("unknown field; expected one of {allowed:?}"));
        }
    }
    Ok(())
}

fn int(v: &Value, path: &str) -> Result<i64, SchemaError> {
    v.as_i64().map_or_else(|| err(path, "expected an integer"), Ok)
}

fn uint(v: &Value, path: &str) -> Result<u64, SchemaError> {
    v.as_u64().map_or_else(|| err(path, "expected a non-negative integer"), Ok)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

fn int_vec(v: &Value, path: &str) -> Result<Vec<i64>, SchemaError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| int(x, &format!("{path}[{i}]"))).collect()
}

fn int_rows(v: &Value, path: &str) -> Result<Vec<Vec<i64>>, SchemaError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| int_vec(x, &format!("{path}[{i}]"))).collect()
}

fn required<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, SchemaError> {
    m.get(key).map_or_else(|| err(&format!("{path}.{key}"), "missing required field"), Ok)
}

fn parse_q(v: &Value, path: &str) -> Result<u64, SchemaError> {
    let q = uint(v, path)?;
    if zipsections::exactmath::field::prime_power(q).is_none() {
        return err(path, format!("{q} is not a prime power"));
    }
    Ok(q)
}

impl ProblemSpec {
    /// The spec used by `selftest` when no file is given.
    pub fn selftest() -> Self {
        ProblemSpec {
            task: Some(Task::Selftest),
            datum: DatumSpec::Catalog { name: "sl2".into(), q: 2 },
            mu: None,
            representation: None,
            target: None,
            lphi: LphiSpec::Catalog,
            lambda: None,
            path: Path::Main,
            field_degree: None,
            format: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let v: Value = serde_json::from_str(text).map_err(|e| SchemaError { path: "$".into(), message: e.to_string() })?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, SchemaError> {
        let m = object(v, "$")?;
        check_keys(m, "$", &["schema", "task", "datum", "mu", "representation", "target", "lphi", "lambda", "options"])?;
        if let Some(s) = m.get("schema") {
            if uint(s, "$.schema")? != SCHEMA_VERSION {
                return err("$.schema", format!("unsupported schema version; this build reads version {SCHEMA_VERSION}"));
            }
        }
        let task = match m.get("task") {
            None => None,
            Some(t) => {
                let s = t.as_str().map_or_else(|| err("$.task", "expected a string"), Ok)?;
                Some(Task::parse(s).map_or_else(|| err("$.task", format!("unknown task {s:?}")), Ok)?)
            }
        };
        let datum = Self::parse_datum(required(m, "datum", "$")?)?;
        let mu = m.get("mu").map(|x| int_vec(x, "$.mu")).transpose()?;
        let lphi = match m.get("lphi") {
            None => LphiSpec::Catalog,
            Some(Value::String(s)) if s == "catalog" => LphiSpec::Catalog,
            Some(Value::String(s)) => return err("$.lphi", format!("expected \"catalog\" or an object, got {s:?}")),
            Some(x) => {
                let o = object(x, "$.lphi")?;
                check_keys(o, "$.lphi", &["weight_congruence", "group_elements", "infinitesimal", "scalar_degree"])?;
                LphiSpec::Explicit(x.clone())
            }
        };
        let lambda = m.get("lambda").map(|x| int_vec(x, "$.lambda")).transpose()?;
        let mut path = Path::Main;
        let mut field_degree = None;
        let mut format = None;
        if let Some(o) = m.get("options") {
            let o = object(o, "$.options")?;
            check_keys(o, "$.options", &["path", "field_degree", "format"])?;
            if let Some(p) = o.get("path") {
                path = match p.as_str() {
                    Some("main") => Path::Main,
                    Some("fq") => Path::Fq,
                    Some("levi") => Path::Levi,
                    Some("perf") => Path::Perf,
                    _ => return err("$.options.path", "expected one of \"main\", \"fq\", \"levi\", \"perf\""),
                };
            }
            if let Some(f) = o.get("format") {
                format = Some(match f.as_str() {
                    Some("json") => Format::Json,
                    Some("table") => Format::Table,
                    _ => return err("$.options.format", "expected \"json\" or \"table\""),
                });
            }
            if let Some(d) = o.get("field_degree") {
                field_degree = Some(uint(d, "$.options.field_degree")? as u32);
            }
        }
        Ok(ProblemSpec {
            task,
            datum,
            mu,
            representation: m.get("representation").cloned(),
            target: m.get("target").cloned(),
            lphi,
            lambda,
            path,
            field_degree,
            format,
        })
    }

    fn parse_datum(v: &Value) -> Result<DatumSpec, SchemaError> {
        let m = object(v, "$.datum")?;
        if let Some(name) = m.get("catalog") {
            check_keys(m, "$.datum", &["catalog", "q"])?;
            let name = name.as_str().map_or_else(|| err("$.datum.catalog", "expected a string"), Ok)?;
            if !corpus::CATALOG_NAMES.contains(&name) {
                return err("$.datum.catalog", format!("unknown catalog entry; known: {:?}", corpus::CATALOG_NAMES));
            }
            let q = parse_q(required(m, "q", "$.datum")?, "$.datum.q")?;
            return Ok(DatumSpec::Catalog { name: name.to_string(), q });
        }
        check_keys(m, "$.datum", &["rank", "simple_roots", "simple_coroots", "sigma", "q"])?;
        let simple_roots = int_rows(required(m, "simple_roots", "$.datum")?, "$.datum.simple_roots")?;
        let simple_coroots = int_rows(required(m, "simple_coroots", "$.datum")?, "$.datum.simple_coroots")?;
        let q = parse_q(required(m, "q", "$.datum")?, "$.datum.q")?;
        let rank = match m.get("rank") {
            Some(r) => uint(r, "$.datum.rank")? as usize,
            None => simple_roots.first().map_or(0, Vec::len),
        };
        let sigma = match m.get("sigma") {
            Some(s) => int_rows(s, "$.datum.sigma")?,
            None => (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect(),
        };
        if sigma.len() != rank {
            return err("$.datum.sigma", format!("expected {rank} rows"));
        }
        Ok(DatumSpec::Explicit { simple_roots, simple_coroots, sigma, q })
    }
}

/// Everything a task needs, built from a spec.
pub struct Context {
    pub catalog: Option<Catalog>,
    pub datum: ZipDatum,
    pub field: FiniteField,
    pub lphi: LphiDescription,
}

impl Context {
    pub fn build(spec: &ProblemSpec) -> anyhow::Result<Self> {
        let (catalog, datum) = match &spec.datum {
            DatumSpec::Catalog { name, q } => {
                let c = Catalog::load(name, *q)?;
                let datum = match &spec.mu {
                    Some(mu) if mu.as_slice() != c.datum.mu() => ZipDatum::derive(c.datum.root_datum().clone(), mu.clone())?,
                    _ => c.datum.clone(),
                };
                (Some(c), datum)
            }
            DatumSpec::Explicit { simple_roots, simple_coroots, sigma, q } => {
                let rd = RootDatum::new(simple_roots.clone(), simple_coroots.clone(), sigma.clone(), *q)?;
                let mu = spec.mu.clone().ok_or_else(|| SchemaError {
                    path: "$.mu".into(),
                    message: "required for an explicit datum".into(),
                })?;
                (None, ZipDatum::derive(rd, mu)?)
            }
        };
        let field = corpus::prime_field(datum.root_datum().q())?;
        let lphi = match &spec.lphi {
            LphiSpec::Catalog => sections::lphi_catalog(&datum).map_err(|e| {
                anyhow::anyhow!("{e}; add an \"lphi\" object to the problem file (see docs/schema.json)")
            })?,
            LphiSpec::Explicit(v) => parse_lphi(v, &datum, spec.field_degree)?,
        };
        Ok(Context { catalog, datum, field, lphi })
    }

    pub fn rank(&self) -> usize {
        self.datum.root_datum().rank()
    }

    pub fn representation(&self, v: &Value, path: &str) -> anyhow::Result<PRep> {
        let rep = build_rep(self, v, path, self.rank())?;
        if rep.rank() != self.rank() {
            return Err(SchemaError {
                path: path.into(),
                message: format!("representation has rank {}, datum has rank {}", rep.rank(), self.rank()),
            }
            .into());
        }
        if let Err(violation) = rep.validate() {
            anyhow::bail!("representation at {path} is invalid: {violation:?}");
        }
        Ok(rep)
    }
}

fn parse_lphi(v: &Value, zd: &ZipDatum, degree: Option<u32>) -> anyhow::Result<LphiDescription> {
    let m = object(v, "$.lphi")?;
    let q = zd.root_datum().q();
    let (p, e) = zipsections::exactmath::field::prime_power(q).expect("validated");
    let e = match m.get("scalar_degree") {
        Some(d) => uint(d, "$.lphi.scalar_degree")? as u32,
        None => degree.unwrap_or(e),
    };
    let scalars = FiniteField::new(p as u32, e)?;
    let rank = zd.root_datum().rank();
    let weight_congruence = match m.get("weight_congruence") {
        None | Some(Value::Null) => None,
        Some(x) => {
            let gens = int_rows(x, "$.lphi.weight_congruence")?;
            Some(IntegerLattice::from_generators(rank, &gens)?)
        }
    };
    let mut group_elements = Vec::new();
    if let Some(list) = m.get("group_elements") {
        for (i, g) in array(list, "$.lphi.group_elements")?.iter().enumerate() {
            let path = format!("$.lphi.group_elements[{i}]");
            let o = object(g, &path)?;
            if let Some(rows) = o.get("matrix") {
                check_keys(o, &path, &["matrix"])?;
                let rows = int_rows(rows, &format!("{path}.matrix"))?;
                group_elements.push(GroupElement::Matrix(field_matrix(&rows, p, &format!("{path}.matrix"))?));
            } else {
                check_keys(o, &path, &["root", "x"])?;
                let root = int_vec(required(o, "root", &path)?, &format!("{path}.root"))?;
                let coeffs = int_vec(required(o, "x", &path)?, &format!("{path}.x"))?;
                let c: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
                group_elements.push(GroupElement::Root { root, x: scalars.from_coefficients(&c) });
            }
        }
    }
    let mut infinitesimal = Vec::new();
    if let Some(list) = m.get("infinitesimal") {
        for (i, g) in array(list, "$.lphi.infinitesimal")?.iter().enumerate() {
            let path = format!("$.lphi.infinitesimal[{i}]");
            let o = object(g, &path)?;
            check_keys(o, &path, &["root", "bound"])?;
            let root = int_vec(required(o, "root", &path)?, &format!("{path}.root"))?;
            let bound = uint(required(o, "bound", &path)?, &format!("{path}.bound"))? as usize;
            infinitesimal.push((root, bound));
        }
    }
    Ok(LphiDescription { scalars, weight_congruence, group_elements, infinitesimal })
}

fn field_matrix(rows: &[Vec<i64>], p: u64, path: &str) -> Result<Matrix, SchemaError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return err(path, "expected a square matrix");
    }
    Ok(Matrix::from_rows(n, n, rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u32).collect()))
}

fn children(v: &Value, path: &str) -> Result<Vec<(Value, String)>, SchemaError> {
    let list = array(v, path)?;
    if list.is_empty() {
        return err(path, "expected at least one factor");
    }
    Ok(list.iter().enumerate().map(|(i, x)| (x.clone(), format!("{path}[{i}]"))).collect())
}

/// Builds a representation from an expression tree; `rank` is the torus rank
/// expected at this position (factors of `boxtimes` carry their own rank).
fn build_rep(ctx: &Context, v: &Value, path: &str, rank: usize) -> anyhow::Result<PRep> {
    let m = object(v, path)?;
    let f = ctx.field.clone();
    let q = ctx.datum.root_datum().q();
    let keys: Vec<&str> = m.keys().map(String::as_str).collect();
    let head = ["sym", "tensor", "boxtimes", "dual", "frobtwist", "char", "explicit", "vi", "named", "lss", "sum", "trivial"]
        .into_iter()
        .find(|k| keys.contains(k))
        .ok_or_else(|| SchemaError { path: path.into(), message: "unknown representation node".into() })?;
    let sub = |k: &str| format!("{path}.{k}");
    Ok(match head {
        "sym" => {
            check_keys(m, path, &["sym", "of"])?;
            let n = uint(&m["sym"], &sub("sym"))? as usize;
            let (wx, wy) = match m.get("of") {
                Some(Value::Object(o)) => {
                    check_keys(o, &sub("of"), &["x", "y"])?;
                    (int_vec(required(o, "x", &sub("of"))?, &sub("of.x"))?, int_vec(required(o, "y", &sub("of"))?, &sub("of.y"))?)
                }
                other => {
                    let blocks = ctx.catalog.as_ref().map(Catalog::blocks).unwrap_or_default();
                    let found = match other {
                        None => blocks.first(),
                        Some(Value::String(s)) => blocks.iter().find(|b| b.0 == s),
                        Some(_) => return Err(SchemaError { path: sub("of"), message: "expected a block name or {\"x\", \"y\"}".into() }.into()),
                    };
                    let b = found.ok_or_else(|| SchemaError {
                        path: sub("of"),
                        message: format!("no such standard block; available: {:?}", blocks.iter().map(|b| b.0).collect::<Vec<_>>()),
                    })?;
                    (b.1.clone(), b.2.clone())
                }
            };
            if wx.len() != rank {
                return Err(SchemaError { path: sub("of"), message: format!("block weights must have length {rank}") }.into());
            }
            PRep::sym_std(f, wx, wy, n)?
        }
        "tensor" | "sum" => {
            check_keys(m, path, &[head])?;
            let mut parts = children(&m[head], &sub(head))?.into_iter();
            let (first, p0) = parts.next().expect("nonempty");
            let mut acc = build_rep(ctx, &first, &p0, rank)?;
            for (x, p) in parts {
                let next = build_rep(ctx, &x, &p, rank)?;
                acc = if head == "tensor" { acc.tensor(&next)? } else { acc.direct_sum(&next)? };
            }
            acc
        }
        "boxtimes" => {
            check_keys(m, path, &["boxtimes", "ranks"])?;
            let parts = children(&m["boxtimes"], &sub("boxtimes"))?;
            let ranks = match m.get("ranks") {
                Some(r) => int_vec(r, &sub("ranks"))?.into_iter().map(|x| x as usize).collect(),
                None if rank.is_multiple_of(parts.len()) => vec![rank / parts.len(); parts.len()],
                None => return Err(SchemaError { path: sub("ranks"), message: "cannot split the rank evenly; give \"ranks\"".into() }.into()),
            };
            if ranks.len() != parts.len() || ranks.iter().sum::<usize>() != rank {
                return Err(SchemaError { path: sub("ranks"), message: format!("ranks must have one entry per factor and sum to {rank}") }.into());
            }
            let mut acc: Option<PRep> = None;
            for ((x, p), r) in parts.into_iter().zip(ranks) {
                let next = build_rep(ctx, &x, &p, r)?;
                acc = Some(match acc {
                    None => next,
                    Some(a) => a.boxtimes(&next)?,
                });
            }
            acc.expect("nonempty")
        }
        "dual" => {
            check_keys(m, path, &["dual"])?;
            build_rep(ctx, &m["dual"], &sub("dual"), rank)?.dual()
        }
        "lss" => {
            check_keys(m, path, &["lss"])?;
            build_rep(ctx, &m["lss"], &sub("lss"), rank)?.l_semisimplify(&ctx.datum)
        }
        "frobtwist" => {
            check_keys(m, path, &["frobtwist", "q"])?;
            let tq = match m.get("q") {
                Some(x) => uint(x, &sub("q"))?,
                None => q,
            };
            build_rep(ctx, &m["frobtwist"], &sub("frobtwist"), rank)?.frobenius_twist(tq)?
        }
        "char" => {
            check_keys(m, path, &["char"])?;
            let w = int_vec(&m["char"], &sub("char"))?;
            if w.len() != rank {
                return Err(SchemaError { path: sub("char"), message: format!("expected length {rank}") }.into());
            }
            PRep::character(f, w)
        }
        "trivial" => {
            check_keys(m, path, &["trivial"])?;
            PRep::trivial(f, rank)
        }
        "vi" => {
            check_keys(m, path, &["vi"])?;
            let l = int_vec(&m["vi"], &sub("vi"))?;
            let name = ctx.catalog.as_ref().map(|c| c.name.as_str());
            if l.len() != 3 || !matches!(name, Some("u21") | Some("gl3")) {
                return Err(SchemaError { path: sub("vi"), message: "V_I(λ) needs the u21 or gl3 catalog and λ of length 3".into() }.into());
            }
            corpus::u21_vi(q, [l[0], l[1], l[2]])?
        }
        "named" => {
            check_keys(m, path, &["named"])?;
            let name = m["named"].as_str().ok_or_else(|| SchemaError { path: sub("named"), message: "expected a string".into() })?;
            ctx.catalog.as_ref().and_then(|c| c.named(name)).ok_or_else(|| SchemaError {
                path: sub("named"),
                message: format!("no named representation {name:?} for this catalog entry"),
            })?
        }
        "explicit" => {
            check_keys(m, path, &["explicit"])?;
            explicit_rep(&m["explicit"], &sub("explicit"), f, rank)?
        }
        _ => unreachable!(),
    })
}

fn explicit_rep(v: &Value, path: &str, f: FiniteField, rank: usize) -> anyhow::Result<PRep> {
    let m = object(v, path)?;
    check_keys(m, path, &["weights", "operators"])?;
    let weights = int_rows(required(m, "weights", path)?, &format!("{path}.weights"))?;
    let dim = weights.len();
    let p = f.characteristic() as i64;
    let mut ops = BTreeMap::new();
    if let Some(list) = m.get("operators") {
        for (i, op) in array(list, &format!("{path}.operators"))?.iter().enumerate() {
            let opath = format!("{path}.operators[{i}]");
            let o = object(op, &opath)?;
            check_keys(o, &opath, &["root", "levels"])?;
            let root = int_vec(required(o, "root", &opath)?, &format!("{opath}.root"))?;
            let mut levels = Vec::new();
            for (j, lv) in array(required(o, "levels", &opath)?, &format!("{opath}.levels"))?.iter().enumerate() {
                let lpath = format!("{opath}.levels[{j}]");
                let rows = int_rows(lv, &lpath)?;
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(SchemaError { path: lpath, message: format!("expected a {dim}×{dim} matrix") }.into());
                }
                levels.push(Matrix::from_rows(dim, dim, rows.iter().flatten().map(|&x| x.rem_euclid(p) as u32).collect()));
            }
            ops.insert(root, levels);
        }
    }
    Ok(PRep::explicit(f, rank, weights, ops)?)
}
