//! JSON job descriptions for batch runs.
//!
//! ```json
//! {
//!   "group": {"permutations": ["(1 2)"], "label": "C2"},
//!   "ring": "Z",
//!   "modules": [
//!     {"name": "Z", "named": "trivial"},
//!     {"name": "M", "generators": 1, "relations": [[2]], "actions": [[[1]]]}
//!   ],
//!   "argument": "Z",
//!   "coefficients": ["Z", "M"],
//!   "degrees": [-2, 2],
//!   "constructions": ["satellite", "resolution", "naive", "vogel", "T_a:101(0)"],
//!   "bounds": {"colimit": 16, "vogel_window": 3},
//!   "tasks": ["compute", "compare", "les", "oracle", "sign-regression"],
//!   "ses": {"times": 2}
//! }
//! ```
//!
//! Groups are `{"named": "C4" | "V4" | "S3" | "trivial"}`, permutation
//! generators (cycle strings with points from 1, or 0-based image lists)
//! or `{"cayley": [[...]]}`. Explicit modules give `Z^generators` modulo the
//! columns of `relations` (one row per generator) and one action matrix per
//! group generator. An SES is `{"times": m}`, `{"named": "augmentation"}` or
//! `{"f": map, "g": map}` with `map = {"src", "dst", "matrix"}`.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::completion::Construction;
use crate::group::{parse_cycles, FiniteGroup};
use crate::module::{augmentation_sequence, standard_module, CoefficientRing, GModule, GModuleMap, ModuleRef, StandardModule};
use crate::IntegerMatrix;

/// A rejected job, naming the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for JobError {}

type JResult<T> = std::result::Result<T, JobError>;

fn err<T>(field: &str, message: impl fmt::Display) -> JResult<T> {
    Err(JobError { field: field.to_string(), message: message.to_string() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Task {
    Compute,
    Compare,
    Les,
    Oracle,
    SignRegression,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Compute => "compute",
            Task::Compare => "compare",
            Task::Les => "les",
            Task::Oracle => "oracle",
            Task::SignRegression => "sign-regression",
        }
    }

    fn parse(s: &str) -> Option<Task> {
        [Task::Compute, Task::Compare, Task::Les, Task::Oracle, Task::SignRegression].into_iter().find(|t| t.name() == s)
    }
}

/// `0 → A →f B →g C → 0`.
#[derive(Clone, Debug)]
pub struct SesSpec {
    pub label: String,
    pub f: GModuleMap,
    pub g: GModuleMap,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct Job {
    pub group: Arc<FiniteGroup>,
    pub ring: CoefficientRing,
    pub modules: Vec<(String, ModuleRef)>,
    pub argument: ModuleRef,
    pub coefficients: Vec<String>,
    pub degrees: (i64, i64),
    pub constructions: Vec<Construction>,
    pub bound: usize,
    pub vogel_width: usize,
    pub tasks: Vec<Task>,
    pub ses: Option<SesSpec>,
}

impl Job {
    pub fn module(&self, name: &str) -> Option<&ModuleRef> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn has(&self, t: Task) -> bool {
        self.tasks.contains(&t)
    }

    pub fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        self.degrees.0..=self.degrees.1
    }
}

pub fn parse_job(text: &str) -> JResult<Job> {
    let v: Value = serde_json::from_str(text).or_else(|e| err("<root>", format!("invalid JSON at line {} column {}: {e}", e.line(), e.column())))?;
    job_from_value(&v)
}

fn obj<'a>(v: &'a Value, field: &str) -> JResult<&'a serde_json::Map<String, Value>> {
    v.as_object().map_or_else(|| err(field, "expected an object"), Ok)
}

fn int(v: &Value, field: &str) -> JResult<i64> {
    v.as_i64().map_or_else(|| err(field, "expected an integer"), Ok)
}

fn count(v: &Value, field: &str) -> JResult<usize> {
    v.as_u64().map_or_else(|| err(field, "expected a non-negative integer"), |x| Ok(x as usize))
}

fn string<'a>(v: &'a Value, field: &str) -> JResult<&'a str> {
    v.as_str().map_or_else(|| err(field, "expected a string"), Ok)
}

fn array<'a>(v: &'a Value, field: &str) -> JResult<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(field, "expected an array"), Ok)
}

fn matrix(v: &Value, field: &str, rows: usize, cols: Option<usize>) -> JResult<IntegerMatrix> {
    let rs = array(v, field)?;
    if rs.len() != rows {
        return err(field, format!("expected {rows} rows, got {}", rs.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in rs.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let row = array(r, &f)?.iter().enumerate().map(|(j, x)| int(x, &format!("{f}[{j}]"))).collect::<JResult<Vec<_>>>()?;
        out.push(row);
    }
    let width = cols.unwrap_or_else(|| out.first().map_or(0, |r| r.len()));
    if let Some((i, _)) = out.iter().enumerate().find(|(_, r)| r.len() != width) {
        return err(&format!("{field}[{i}]"), format!("expected {width} entries"));
    }
    if rows == 0 {
        return Ok(IntegerMatrix::zeros(0, width));
    }
    if width == 0 {
        return Ok(IntegerMatrix::zeros(rows, 0));
    }
    Ok(IntegerMatrix::from_i64_rows(&out))
}

fn parse_ring(v: &Value) -> JResult<CoefficientRing> {
    let s = string(v, "ring")?;
    if s == "Z" {
        return Ok(CoefficientRing::Integers);
    }
    let p = s.strip_prefix("Fp:").and_then(|p| p.parse::<u64>().ok()).map_or_else(|| err("ring", format!("expected \"Z\" or \"Fp:<p>\", got {s:?}")), Ok)?;
    CoefficientRing::prime_field(p).or_else(|e| err("ring", e))
}

fn parse_group(v: &Value) -> JResult<FiniteGroup> {
    let o = obj(v, "group")?;
    let label = match o.get("label") {
        Some(l) => string(l, "group.label")?.to_string(),
        None => String::new(),
    };
    if let Some(n) = o.get("named") {
        let s = string(n, "group.named")?;
        let g = match s {
            "V4" => FiniteGroup::klein_four(),
            "S3" => FiniteGroup::symmetric3(),
            "trivial" | "C1" => FiniteGroup::trivial(),
            _ => match s.strip_prefix('C').and_then(|m| m.parse::<usize>().ok()) {
                Some(m) if m >= 1 => FiniteGroup::cyclic(m),
                _ => return err("group.named", format!("unknown group {s:?}")),
            },
        };
        return Ok(g);
    }
    if let Some(p) = o.get("permutations") {
        let gens = array(p, "group.permutations")?;
        let mut perms = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let f = format!("group.permutations[{i}]");
            let perm = match g {
                Value::String(s) => parse_cycles(s).or_else(|e| err(&f, e))?,
                Value::Array(xs) => xs.iter().enumerate().map(|(j, x)| count(x, &format!("{f}[{j}]"))).collect::<JResult<Vec<_>>>()?,
                _ => return err(&f, "expected a cycle string or an image list"),
            };
            perms.push(perm);
        }
        let label = if label.is_empty() { "G".to_string() } else { label };
        return FiniteGroup::from_permutations(&perms, &label).or_else(|e| err("group.permutations", e));
    }
    if let Some(t) = o.get("cayley") {
        let rows = array(t, "group.cayley")?;
        let mut table = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let f = format!("group.cayley[{i}]");
            table.push(array(r, &f)?.iter().enumerate().map(|(j, x)| count(x, &format!("{f}[{j}]"))).collect::<JResult<Vec<_>>>()?);
        }
        let label = if label.is_empty() { "G".to_string() } else { label };
        return FiniteGroup::from_cayley(table, &label).or_else(|e| err("group.cayley", e));
    }
    err("group", "expected one of \"named\", \"permutations\", \"cayley\"")
}

fn parse_module(v: &Value, field: &str, group: &Arc<FiniteGroup>, ring: CoefficientRing) -> JResult<(String, ModuleRef)> {
    let o = obj(v, field)?;
    let name = string(o.get("name").unwrap_or(&Value::Null), &format!("{field}.name"))?.to_string();
    if let Some(n) = o.get("named") {
        let f = format!("{field}.named");
        let kind = match string(n, &f)? {
            "trivial" => StandardModule::Trivial,
            "trivial_mod" => StandardModule::TrivialMod(count(o.get("m").unwrap_or(&Value::Null), &format!("{field}.m"))? as u64),
            "sign" => StandardModule::Sign,
            "augmentation_ideal" => StandardModule::AugmentationIdeal,
            "free" => StandardModule::Free(count(o.get("rank").unwrap_or(&Value::Null), &format!("{field}.rank"))?),
            other => return err(&f, format!("unknown module {other:?}")),
        };
        let m = standard_module(group, ring, &kind).or_else(|e| err(&f, e))?;
        return Ok((name, m));
    }
    let gens = count(o.get("generators").unwrap_or(&Value::Null), &format!("{field}.generators"))?;
    let rel = match o.get("relations") {
        Some(r) => matrix(r, &format!("{field}.relations"), gens, None)?,
        None => IntegerMatrix::zeros(gens, 0),
    };
    let af = format!("{field}.actions");
    let acts = array(o.get("actions").unwrap_or(&Value::Null), &af)?;
    if acts.len() != group.generators().len() {
        return err(&af, format!("expected {} action matrices, one per group generator", group.generators().len()));
    }
    let acts = acts.iter().enumerate().map(|(i, a)| matrix(a, &format!("{af}[{i}]"), gens, Some(gens))).collect::<JResult<Vec<_>>>()?;
    let m = GModule::from_presentation(group.clone(), ring, &rel, &acts, &name).or_else(|e| err(&af, e))?;
    Ok((name, Arc::new(m)))
}

fn lookup<'a>(modules: &'a [(String, ModuleRef)], name: &str, field: &str) -> JResult<&'a ModuleRef> {
    modules.iter().find(|(n, _)| n == name).map(|(_, m)| m).map_or_else(|| err(field, format!("unknown module {name:?}")), Ok)
}

fn parse_map(v: &Value, field: &str, modules: &[(String, ModuleRef)]) -> JResult<GModuleMap> {
    let o = obj(v, field)?;
    let src = lookup(modules, string(o.get("src").unwrap_or(&Value::Null), &format!("{field}.src"))?, &format!("{field}.src"))?;
    let dst = lookup(modules, string(o.get("dst").unwrap_or(&Value::Null), &format!("{field}.dst"))?, &format!("{field}.dst"))?;
    let mf = format!("{field}.matrix");
    let m = matrix(o.get("matrix").unwrap_or(&Value::Null), &mf, dst.ngens(), Some(src.ngens()))?;
    GModuleMap::new(src.clone(), dst.clone(), m).or_else(|e| err(&mf, e))
}

fn parse_ses(v: &Value, group: &Arc<FiniteGroup>, ring: CoefficientRing, modules: &[(String, ModuleRef)]) -> JResult<SesSpec> {
    let o = obj(v, "ses")?;
    if let Some(m) = o.get("times") {
        let m = count(m, "ses.times")?;
        if m < 2 {
            return err("ses.times", "expected m >= 2");
        }
        let z = standard_module(group, ring, &StandardModule::Trivial).or_else(|e| err("ses.times", e))?;
        let zm = standard_module(group, ring, &StandardModule::TrivialMod(m as u64)).or_else(|e| err("ses.times", e))?;
        let f = GModuleMap::scalar(&z, m as i64);
        let g = GModuleMap::new(z, zm, IntegerMatrix::from_i64_rows(&[vec![1]])).or_else(|e| err("ses.times", e))?;
        return Ok(SesSpec { label: format!("0 → Z → Z → Z/{m} → 0"), f, g });
    }
    if let Some(n) = o.get("named") {
        return match string(n, "ses.named")? {
            "augmentation" => {
                let (f, g) = augmentation_sequence(group, ring).or_else(|e| err("ses.named", e))?;
                Ok(SesSpec { label: "0 → I → R[G] → R → 0".into(), f, g })
            }
            other => err("ses.named", format!("unknown sequence {other:?}")),
        };
    }
    let f = parse_map(o.get("f").unwrap_or(&Value::Null), "ses.f", modules)?;
    let g = parse_map(o.get("g").unwrap_or(&Value::Null), "ses.g", modules)?;
    if !f.dst.same_as(&g.src) {
        return err("ses.g.src", "must equal ses.f.dst");
    }
    match crate::module::check_ses(&f, &g) {
        Ok(true) => {}
        Ok(false) => return err("ses", "sequence is not short exact"),
        Err(e) => return err("ses", e),
    }
    Ok(SesSpec { label: format!("0 → {} → {} → {} → 0", f.src.label(), f.dst.label(), g.dst.label()), f, g })
}

pub fn job_from_value(v: &Value) -> JResult<Job> {
    let root = obj(v, "<root>")?;
    for key in root.keys() {
        if !["group", "ring", "modules", "argument", "coefficients", "degrees", "constructions", "bounds", "tasks", "ses"].contains(&key.as_str()) {
            return err(key, "unknown field");
        }
    }
    let group = Arc::new(parse_group(root.get("group").unwrap_or(&Value::Null))?);
    let ring = match root.get("ring") {
        Some(r) => parse_ring(r)?,
        None => CoefficientRing::Integers,
    };
    let mut modules = Vec::new();
    if let Some(ms) = root.get("modules") {
        for (i, m) in array(ms, "modules")?.iter().enumerate() {
            let (name, module) = parse_module(m, &format!("modules[{i}]"), &group, ring)?;
            if modules.iter().any(|(n, _)| n == &name) {
                return err(&format!("modules[{i}].name"), format!("duplicate module {name:?}"));
            }
            modules.push((name, module));
        }
    }
    let argument = match root.get("argument") {
        Some(a) => lookup(&modules, string(a, "argument")?, "argument")?.clone(),
        None => standard_module(&group, ring, &StandardModule::Trivial).or_else(|e| err("argument", e))?,
    };
    let coefficients = match root.get("coefficients") {
        Some(c) => {
            let mut out = Vec::new();
            for (i, x) in array(c, "coefficients")?.iter().enumerate() {
                let f = format!("coefficients[{i}]");
                let name = string(x, &f)?;
                lookup(&modules, name, &f)?;
                out.push(name.to_string());
            }
            out
        }
        None => modules.iter().map(|(n, _)| n.clone()).collect(),
    };
    let d = array(root.get("degrees").unwrap_or(&Value::Null), "degrees")?;
    if d.len() != 2 {
        return err("degrees", "expected [n_min, n_max]");
    }
    let degrees = (int(&d[0], "degrees[0]")?, int(&d[1], "degrees[1]")?);
    if degrees.0 > degrees.1 {
        return err("degrees", "degree range is empty");
    }
    let constructions = match root.get("constructions") {
        Some(c) => array(c, "constructions")?
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let f = format!("constructions[{i}]");
                Construction::parse(string(x, &f)?).or_else(|e| err(&f, e))
            })
            .collect::<JResult<Vec<_>>>()?,
        None => Construction::basic(),
    };
    let (mut bound, mut vogel_width) = (16, 3);
    if let Some(b) = root.get("bounds") {
        let o = obj(b, "bounds")?;
        if let Some(x) = o.get("colimit") {
            bound = count(x, "bounds.colimit")?;
        }
        if let Some(x) = o.get("vogel_window") {
            vogel_width = count(x, "bounds.vogel_window")?;
        }
        if bound == 0 {
            return err("bounds.colimit", "must be positive");
        }
        if vogel_width == 0 {
            return err("bounds.vogel_window", "must be positive");
        }
    }
    let mut tasks = Vec::new();
    for (i, t) in array(root.get("tasks").unwrap_or(&Value::Array(vec![Value::from("compute")])), "tasks")?.iter().enumerate() {
        let f = format!("tasks[{i}]");
        let s = string(t, &f)?;
        let task = Task::parse(s).map_or_else(|| err(&f, format!("unknown task {s:?}")), Ok)?;
        if !tasks.contains(&task) {
            tasks.push(task);
        }
    }
    tasks.sort();
    let ses = match root.get("ses") {
        Some(s) => Some(parse_ses(s, &group, ring, &modules)?),
        None => None,
    };
    if ses.is_none() && (tasks.contains(&Task::Les) || tasks.contains(&Task::SignRegression)) {
        return err("ses", "required by the les and sign-regression tasks");
    }
    if coefficients.is_empty() && (tasks.contains(&Task::Compute) || tasks.contains(&Task::Compare) || tasks.contains(&Task::Oracle)) {
        return err("coefficients", "no coefficient modules given");
    }
    Ok(Job { group, ring, modules, argument, coefficients, degrees, constructions, bound, vogel_width, tasks, ses })
}
