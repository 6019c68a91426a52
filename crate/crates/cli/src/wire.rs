//! JSON documents: configuration files, classes, bundles and certificates.
//!
//! Classes are written as `{"h": n, "c": {name: coefficient, ...}}` with
//! every point of the configuration listed in chain order. Rationals are
//! `"p/q"` strings.

use std::collections::BTreeMap;

use anef_core::bundles::{BundleBase, ConicBundle, Fiber, FiberComponent};
use anef_core::certifier::{Branch, Certificate, CriterionReport};
use anef_core::configuration::{validate, ConfigDraft, ConfigError, LineDecl, SurfaceConfig};
use anef_core::curves::{CurveKind, CurveRecord, EffectivityWitness};
use anef_core::lattice::{DivisorClass, PointRef};
use anef_core::Rational;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {msg}")]
pub struct WireError {
    pub path: String,
    pub msg: String,
}

fn err(path: impl Into<String>, msg: impl Into<String>) -> WireError {
    WireError { path: path.into(), msg: msg.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    chains: Vec<Vec<String>>,
    lines: Vec<Vec<String>>,
}

/// Parses and validates a configuration document. Every problem found is
/// reported with its position.
pub fn parse_config(text: &str) -> Result<SurfaceConfig, Vec<String>> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| {
        vec![format!("syntax error at line {} column {}: {e}", e.line(), e.column())]
    })?;

    let mut index: BTreeMap<&str, PointRef> = BTreeMap::new();
    for (i, chain) in file.chains.iter().enumerate() {
        for (j, name) in chain.iter().enumerate() {
            index.entry(name.as_str()).or_insert(PointRef::new(i + 1, j + 1));
        }
    }
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for (k, names) in file.lines.iter().enumerate() {
        if names.len() != 3 {
            problems.push(format!("lines[{k}]: expected 3 points, found {}", names.len()));
            continue;
        }
        let mut triple = [PointRef::new(1, 1); 3];
        let mut ok = true;
        for (m, name) in names.iter().enumerate() {
            match index.get(name.as_str()) {
                Some(&p) => triple[m] = p,
                None => {
                    problems.push(format!("lines[{k}][{m}]: unknown point {name:?}"));
                    ok = false;
                }
            }
        }
        if ok {
            lines.push((k, triple));
        }
    }
    if !problems.is_empty() {
        return Err(problems);
    }

    let draft = ConfigDraft {
        chains: file.chains.clone(),
        lines: lines.iter().map(|(_, t)| *t).collect(),
    };
    validate(&draft).map_err(|errors| {
        let line_pos = |decl: &LineDecl| {
            lines
                .iter()
                .find(|(_, t)| LineDecl::new(*t) == *decl)
                .map(|(k, _)| format!("lines[{k}]"))
                .unwrap_or_else(|| "lines".into())
        };
        let show = |decl: &LineDecl| {
            let names: Vec<&str> = decl.points().iter().map(|p| file.chains[p.chain - 1][p.slot - 1].as_str()).collect();
            format!("{{{}}}", names.join(", "))
        };
        errors
            .0
            .iter()
            .map(|e| match e {
                ConfigError::PointCount(n) => format!("chains: point count must be 4 or 5, found {n}"),
                ConfigError::EmptyChain(i) => format!("chains[{}]: empty chain", i - 1),
                ConfigError::DuplicateName(name) => {
                    let pos = file
                        .chains
                        .iter()
                        .enumerate()
                        .flat_map(|(i, c)| c.iter().enumerate().map(move |(j, n)| (i, j, n)))
                        .filter(|(_, _, n)| *n == name)
                        .nth(1)
                        .map(|(i, j, _)| format!("chains[{i}][{j}]"))
                        .unwrap_or_else(|| "chains".into());
                    format!("{pos}: point name {name:?} is used more than once")
                }
                ConfigError::RepeatedPoint(d) => format!("{}: line {} repeats a point", line_pos(d), show(d)),
                ConfigError::NonMinimalLine(d) => format!(
                    "{}: non-minimal declaration {}: each chain's points must start at its first point",
                    line_pos(d),
                    show(d)
                ),
                ConfigError::LinesSharePair(a, b) => {
                    format!("{}, {}: lines share a pair of points", line_pos(a), line_pos(b))
                }
                ConfigError::DuplicateLine(d) => format!("{}: line {} is declared twice", line_pos(d), show(d)),
                other => other.to_string(),
            })
            .collect()
    })
}

fn name(cfg: &SurfaceConfig, p: PointRef) -> String {
    cfg.name(p).map(str::to_owned).unwrap_or_else(|| p.to_string())
}

/// The configuration with chains in file order and lines normalized.
pub fn config_doc(cfg: &SurfaceConfig) -> Value {
    let chains: Vec<Value> = cfg.chains().iter().map(|c| json!(c)).collect();
    let lines: Vec<Value> = cfg
        .lines()
        .iter()
        .map(|l| json!(l.points().iter().map(|&p| name(cfg, p)).collect::<Vec<_>>()))
        .collect();
    json!({ "chains": chains, "lines": lines })
}

pub fn class_json(cfg: &SurfaceConfig, cls: &DivisorClass) -> Value {
    let mut c = Map::new();
    for p in cfg.points() {
        c.insert(name(cfg, p), json!(cls.coeff(p)));
    }
    json!({ "h": cls.h(), "c": c })
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn points_json(cfg: &SurfaceConfig, pts: impl IntoIterator<Item = PointRef>) -> Value {
    Value::Array(pts.into_iter().map(|p| Value::String(name(cfg, p))).collect())
}

pub fn curve_json(cfg: &SurfaceConfig, g: &CurveRecord) -> Value {
    let (kind, pts): (&str, Vec<PointRef>) = match &g.kind {
        CurveKind::Chain(p) => ("exceptional", vec![*p]),
        CurveKind::Line(through) => ("line", through.iter().copied().collect()),
        CurveKind::Conic => ("conic", cfg.points()),
    };
    json!({
        "kind": kind,
        "points": points_json(cfg, pts),
        "class": class_json(cfg, &g.cls),
        "self_intersection": g.self_int,
    })
}

fn part_json(cfg: &SurfaceConfig, g: &CurveRecord, multiplicity: u32) -> Value {
    let mut v = curve_json(cfg, g);
    let obj = v.as_object_mut().expect("object");
    obj.remove("self_intersection");
    obj.insert("multiplicity".into(), json!(multiplicity));
    v
}

pub fn fiber_json(cfg: &SurfaceConfig, f: &Fiber) -> Value {
    json!({
        "components": f.components.iter().map(|c| part_json(cfg, &c.curve, c.multiplicity)).collect::<Vec<_>>(),
        "m": f.m,
        "nodes": f.nodes.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        "reduced": f.reduced,
    })
}

pub fn bundle_json(cfg: &SurfaceConfig, b: &ConicBundle) -> Value {
    json!({
        "degree": b.degree,
        "base": points_json(cfg, b.base_points()),
        "fiber_class": class_json(cfg, &b.fiber_class),
        "singular_fibers": b.singular_fibers.iter().map(|f| fiber_json(cfg, f)).collect::<Vec<_>>(),
    })
}

pub fn report_json(r: &CriterionReport) -> Value {
    json!({
        "terms": r.terms.iter().map(rational_json).collect::<Vec<_>>(),
        "total": rational_json(&r.total),
        "pass": r.pass,
    })
}

pub fn witness_json(cfg: &SurfaceConfig, w: &EffectivityWitness) -> Value {
    json!({
        "parts": w.parts.iter().map(|(g, m)| part_json(cfg, g, *m)).collect::<Vec<_>>(),
        "remainder": class_json(cfg, &w.remainder),
    })
}

pub fn certificate_json(cfg: &SurfaceConfig, cert: &Certificate) -> Value {
    json!({
        "branch": cert.branch.name(),
        "k": cert.k,
        "bundles": cert.branch.bundles().iter().map(|b| bundle_json(cfg, b)).collect::<Vec<_>>(),
        "e": class_json(cfg, &cert.e),
        "e_witness": witness_json(cfg, &cert.e_witness),
        "reports": cert.reports.iter().map(report_json).collect::<Vec<_>>(),
    })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, WireError> {
    v.as_object()
        .ok_or_else(|| err(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn int(v: &Value, path: &str) -> Result<i64, WireError> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

fn uint(v: &Value, path: &str) -> Result<u32, WireError> {
    v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn boolean(v: &Value, path: &str) -> Result<bool, WireError> {
    v.as_bool().ok_or_else(|| err(path, "expected a boolean"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, WireError> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational, WireError> {
    let s = v.as_str().ok_or_else(|| err(path, "expected a \"p/q\" string"))?;
    let (p, q) = s.split_once('/').ok_or_else(|| err(path, format!("{s:?} is not of the form p/q")))?;
    let p: i64 = p.trim().parse().map_err(|_| err(path, format!("bad numerator in {s:?}")))?;
    let q: i64 = q.trim().parse().map_err(|_| err(path, format!("bad denominator in {s:?}")))?;
    if q == 0 {
        return Err(err(path, "zero denominator"));
    }
    Ok(Rational::new(p, q))
}

pub fn parse_class(cfg: &SurfaceConfig, v: &Value, path: &str) -> Result<DivisorClass, WireError> {
    let h = int(field(v, "h", path)?, &format!("{path}.h"))?;
    let c = field(v, "c", path)?.as_object().ok_or_else(|| err(format!("{path}.c"), "expected an object"))?;
    let mut terms = Vec::new();
    for (key, val) in c {
        let sub = format!("{path}.c.{key}");
        let p = cfg.point_named(key).ok_or_else(|| err(&sub, format!("unknown point {key:?}")))?;
        terms.push((p, int(val, &sub)?));
    }
    Ok(DivisorClass::new(h, terms))
}

fn parse_points(cfg: &SurfaceConfig, v: &Value, path: &str) -> Result<Vec<PointRef>, WireError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let sub = format!("{path}[{k}]");
            let s = x.as_str().ok_or_else(|| err(&sub, "expected a point name"))?;
            cfg.point_named(s).ok_or_else(|| err(&sub, format!("unknown point {s:?}")))
        })
        .collect()
}

/// A curve given by its class; the kind is re-derived from the class.
fn parse_part(cfg: &SurfaceConfig, v: &Value, path: &str) -> Result<(CurveRecord, u32), WireError> {
    let cls = parse_class(cfg, field(v, "class", path)?, &format!("{path}.class"))?;
    let m = uint(field(v, "multiplicity", path)?, &format!("{path}.multiplicity"))?;
    Ok((CurveRecord::from_class(cls), m))
}

fn parse_fiber(cfg: &SurfaceConfig, v: &Value, path: &str) -> Result<Fiber, WireError> {
    let comps_path = format!("{path}.components");
    let components = array(field(v, "components", path)?, &comps_path)?
        .iter()
        .enumerate()
        .map(|(k, c)| {
            parse_part(cfg, c, &format!("{comps_path}[{k}]"))
                .map(|(curve, multiplicity)| FiberComponent { curve, multiplicity })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let nodes_path = format!("{path}.nodes");
    let nodes = array(field(v, "nodes", path)?, &nodes_path)?
        .iter()
        .enumerate()
        .map(|(k, n)| {
            let sub = format!("{nodes_path}[{k}]");
            let pair = array(n, &sub)?;
            if pair.len() != 2 {
                return Err(err(&sub, "expected a pair of component indices"));
            }
            let x = uint(&pair[0], &sub)? as usize;
            let y = uint(&pair[1], &sub)? as usize;
            if x >= components.len() || y >= components.len() {
                return Err(err(&sub, "component index out of range"));
            }
            Ok((x, y))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Fiber {
        components,
        m: uint(field(v, "m", path)?, &format!("{path}.m"))?,
        nodes,
        reduced: boolean(field(v, "reduced", path)?, &format!("{path}.reduced"))?,
    })
}

fn parse_bundle(cfg: &SurfaceConfig, v: &Value, path: &str) -> Result<ConicBundle, WireError> {
    let degree = int(field(v, "degree", path)?, &format!("{path}.degree"))?;
    let base_path = format!("{path}.base");
    let base_pts = parse_points(cfg, field(v, "base", path)?, &base_path)?;
    let base = match (degree, base_pts.as_slice()) {
        (1, [p]) => BundleBase::Chain(p.chain),
        (2, [a, b, c, d]) => {
            let mut four = [*a, *b, *c, *d];
            four.sort();
            BundleBase::Points(four)
        }
        _ => return Err(err(base_path, format!("a degree-{degree} bundle cannot have {} base points", base_pts.len()))),
    };
    let fibers_path = format!("{path}.singular_fibers");
    let singular_fibers = array(field(v, "singular_fibers", path)?, &fibers_path)?
        .iter()
        .enumerate()
        .map(|(k, f)| parse_fiber(cfg, f, &format!("{fibers_path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConicBundle {
        degree,
        base,
        fiber_class: parse_class(cfg, field(v, "fiber_class", path)?, &format!("{path}.fiber_class"))?,
        singular_fibers,
    })
}

fn parse_report(v: &Value, path: &str) -> Result<CriterionReport, WireError> {
    let terms_path = format!("{path}.terms");
    Ok(CriterionReport {
        terms: array(field(v, "terms", path)?, &terms_path)?
            .iter()
            .enumerate()
            .map(|(k, t)| parse_rational(t, &format!("{terms_path}[{k}]")))
            .collect::<Result<Vec<_>, _>>()?,
        total: parse_rational(field(v, "total", path)?, &format!("{path}.total"))?,
        pass: boolean(field(v, "pass", path)?, &format!("{path}.pass"))?,
    })
}

/// Accepts a bare certificate or a certify report carrying one.
pub fn parse_certificate(cfg: &SurfaceConfig, doc: &Value) -> Result<Certificate, WireError> {
    let (v, path) = match doc.get("payload").and_then(|p| p.get("certificate")) {
        Some(inner) => (inner, "payload.certificate"),
        None => (doc, "certificate"),
    };
    let bundles_path = format!("{path}.bundles");
    let mut bundles = array(field(v, "bundles", path)?, &bundles_path)?
        .iter()
        .enumerate()
        .map(|(k, b)| parse_bundle(cfg, b, &format!("{bundles_path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let branch_name = field(v, "branch", path)?.as_str().ok_or_else(|| err(format!("{path}.branch"), "expected a string"))?;
    let branch = match (branch_name, bundles.len()) {
        ("good_position", 2) => {
            let g = bundles.pop().expect("two bundles");
            let f = bundles.pop().expect("two bundles");
            Branch::GoodPosition { f, g }
        }
        ("degenerate", 1) => Branch::Degenerate { f: bundles.pop().expect("one bundle") },
        (other, n) => return Err(err(format!("{path}.branch"), format!("branch {other:?} with {n} bundles"))),
    };
    let witness_path = format!("{path}.e_witness");
    let w = field(v, "e_witness", path)?;
    let parts_path = format!("{witness_path}.parts");
    let parts = array(field(w, "parts", &witness_path)?, &parts_path)?
        .iter()
        .enumerate()
        .map(|(k, x)| parse_part(cfg, x, &format!("{parts_path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let remainder = parse_class(cfg, field(w, "remainder", &witness_path)?, &format!("{witness_path}.remainder"))?;
    let reports_path = format!("{path}.reports");
    let reports = array(field(v, "reports", path)?, &reports_path)?
        .iter()
        .enumerate()
        .map(|(k, r)| parse_report(r, &format!("{reports_path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate {
        branch,
        k: uint(field(v, "k", path)?, &format!("{path}.k"))?,
        e: parse_class(cfg, field(v, "e", path)?, &format!("{path}.e"))?,
        e_witness: EffectivityWitness { parts, remainder },
        reports,
    })
}
