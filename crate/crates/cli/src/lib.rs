//! Command-line front end: configuration files in, deterministic reports out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anef_core::bundles::{all_bundles, ConicBundle};
use anef_core::certifier::{certify, criterion, verify, CertifyError, CriterionReport};
use anef_core::configuration::{enumerate_configs, SurfaceConfig};
use anef_core::curves::{catalog, CurveKind, CurveRecord, EffectivityWitness};
use anef_core::lattice::{DivisorClass, PointRef};
use anef_core::Rational;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub mod wire;

use wire::{
    bundle_json, certificate_json, class_json, config_doc, curve_json, parse_certificate, parse_config,
    rational_json, report_json,
};

#[derive(Debug, Parser)]
#[command(name = "anef", version, about = "Almost-nef certificates for weak Del Pezzo surfaces of degree 4")]
pub struct Cli {
    /// Emit the report as a single JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a configuration file.
    Validate { file: PathBuf },
    /// List the negative curves.
    Curves { file: PathBuf },
    /// List conic bundles with their singular fibres.
    Bundles { file: PathBuf },
    /// Build a certificate for a five-point configuration.
    Certify { file: PathBuf },
    /// Re-check a certificate against a configuration.
    Verify { config: PathBuf, certificate: PathBuf },
    /// Enumerate every configuration with the given number of points.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        points: u8,
        /// Certify and verify each configuration.
        #[arg(long)]
        certify: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Curves { .. } => "curves",
            Command::Bundles { .. } => "bundles",
            Command::Certify { .. } => "certify",
            Command::Verify { .. } => "verify",
            Command::Enumerate { .. } => "enumerate",
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Option<Value>,
    pub payload: Option<Value>,
    pub violations: Vec<String>,
    /// Human-readable rendering of the payload.
    pub text: String,
}

impl Report {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            config: None,
            payload: None,
            violations: Vec::new(),
            text: String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "payload": self.payload,
            "violations": self.violations,
        })
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            return s;
        }
        let mut s = self.text.clone();
        for v in &self.violations {
            let _ = writeln!(s, "violation: {v}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Report,
}

enum Failure {
    Negative(Vec<String>),
    Internal(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SurfaceConfig, Failure> {
    parse_config(&read(path)?).map_err(Failure::Negative)
}

fn certify_failure(e: CertifyError) -> Failure {
    match e {
        CertifyError::PointCount(_) | CertifyError::TheoremViolation(_) => Failure::Negative(vec![e.to_string()]),
        other => Failure::Internal(other.to_string()),
    }
}

/// Stable content hash of a configuration document.
pub fn content_hash(doc: &Value) -> String {
    let bytes = serde_json::to_vec(doc).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

fn show_class(cfg: &SurfaceConfig, cls: &DivisorClass) -> String {
    let mut out = String::new();
    let mut term = |v: i64, sym: String| {
        if v == 0 {
            return;
        }
        let sign = match (out.is_empty(), v < 0) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let mag = v.unsigned_abs();
        if mag == 1 {
            let _ = write!(out, "{sign}{sym}");
        } else {
            let _ = write!(out, "{sign}{mag}{sym}");
        }
    };
    term(cls.h(), "H".into());
    for p in cfg.points() {
        term(cls.coeff(p), format!("C[{}]", cfg.name(p).unwrap_or("?")));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn show_curve(cfg: &SurfaceConfig, g: &CurveRecord) -> String {
    let names = |pts: &mut dyn Iterator<Item = PointRef>| -> String {
        pts.map(|p| cfg.name(p).unwrap_or("?").to_owned()).collect::<Vec<_>>().join(",")
    };
    match &g.kind {
        CurveKind::Chain(p) => format!("E[{}]", names(&mut std::iter::once(*p))),
        CurveKind::Line(through) => format!("L[{}]", names(&mut through.iter().copied())),
        CurveKind::Conic => "Q".into(),
    }
}

fn show_sum<'a>(cfg: &SurfaceConfig, parts: impl Iterator<Item = (&'a CurveRecord, u32)>) -> String {
    let shown: Vec<String> = parts
        .map(|(g, m)| if m == 1 { show_curve(cfg, g) } else { format!("{m}{}", show_curve(cfg, g)) })
        .collect();
    shown.join(" + ")
}

fn show_bundle(cfg: &SurfaceConfig, b: &ConicBundle) -> String {
    format!("degree {} bundle, F = {}", b.degree, show_class(cfg, &b.fiber_class))
}

fn show_witness(cfg: &SurfaceConfig, w: &EffectivityWitness) -> String {
    let mut s = show_sum(cfg, w.parts.iter().map(|(g, m)| (g, *m)));
    if !w.remainder.is_zero() || s.is_empty() {
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let _ = write!(s, "({})", show_class(cfg, &w.remainder));
    }
    s
}

fn show_report(r: &CriterionReport) -> String {
    let terms: Vec<String> = r.terms.iter().map(|t| t.to_string()).collect();
    format!("criterion [{}] total {} {}", terms.join(", "), r.total, if r.pass { "pass" } else { "fail" })
}

pub fn run(cli: &Cli) -> Outcome {
    let mut report = Report::new(cli.command.name());
    let result = match &cli.command {
        Command::Validate { file } => load(file).map(|cfg| validate_cmd(&cfg, &mut report)),
        Command::Curves { file } => load(file).map(|cfg| curves_cmd(&cfg, &mut report)),
        Command::Bundles { file } => load(file).and_then(|cfg| bundles_cmd(&cfg, &mut report)),
        Command::Certify { file } => load(file).and_then(|cfg| certify_cmd(&cfg, &mut report)),
        Command::Verify { config, certificate } => {
            load(config).and_then(|cfg| verify_cmd(&cfg, certificate, &mut report))
        }
        Command::Enumerate { points, certify } => enumerate_cmd(usize::from(*points), *certify, &mut report),
    };
    let code = match result {
        Ok(()) if report.violations.is_empty() => EXIT_OK,
        Ok(()) => EXIT_NEGATIVE,
        Err(Failure::Negative(v)) => {
            report.violations.extend(v);
            EXIT_NEGATIVE
        }
        Err(Failure::Internal(msg)) => {
            report.violations.push(format!("internal error: {msg}"));
            EXIT_INTERNAL
        }
    };
    Outcome { code, report }
}

fn validate_cmd(cfg: &SurfaceConfig, report: &mut Report) {
    report.config = Some(config_doc(cfg));
    report.payload = Some(json!({
        "valid": true,
        "points": cfg.point_count(),
        "degree": cfg.degree(),
        "anticanonical": class_json(cfg, &cfg.anticanonical()),
    }));
    let _ = writeln!(
        report.text,
        "valid: {} points in {} chains, degree {}",
        cfg.point_count(),
        cfg.chain_count(),
        cfg.degree()
    );
}

fn curves_cmd(cfg: &SurfaceConfig, report: &mut Report) {
    report.config = Some(config_doc(cfg));
    let cat = catalog(cfg);
    report.payload = Some(json!({
        "curves": cat.curves().iter().map(|g| curve_json(cfg, g)).collect::<Vec<_>>(),
    }));
    let _ = writeln!(report.text, "{} negative curves", cat.len());
    for g in cat.curves() {
        let _ = writeln!(report.text, "  {}: {} ({})", show_curve(cfg, g), show_class(cfg, &g.cls), g.self_int);
    }
}

fn bundles_cmd(cfg: &SurfaceConfig, report: &mut Report) -> Result<(), Failure> {
    report.config = Some(config_doc(cfg));
    let cat = catalog(cfg);
    let bundles = all_bundles(&cat).map_err(|e| Failure::Internal(e.to_string()))?;
    let k = cfg.anticanonical();
    let mut out = Vec::new();
    for b in &bundles {
        let crit = criterion(b);
        let mut v = bundle_json(cfg, b);
        let obj = v.as_object_mut().expect("object");
        obj.insert("ramification".into(), class_json(cfg, &b.ramification_class()));
        obj.insert("relative_tangent".into(), class_json(cfg, &b.relative_tangent_class(&k)));
        obj.insert("criterion".into(), report_json(&crit));
        out.push(v);

        let _ = writeln!(report.text, "{}", show_bundle(cfg, b));
        for f in &b.singular_fibers {
            let comps = show_sum(cfg, f.components.iter().map(|c| (&c.curve, c.multiplicity)));
            let _ = writeln!(report.text, "  fibre {comps} (M = {})", f.m);
        }
        let _ = writeln!(report.text, "  T = {}", show_class(cfg, &b.relative_tangent_class(&k)));
        let _ = writeln!(report.text, "  {}", show_report(&crit));
    }
    report.payload = Some(json!({ "bundles": out }));
    Ok(())
}

fn certify_cmd(cfg: &SurfaceConfig, report: &mut Report) -> Result<(), Failure> {
    report.config = Some(config_doc(cfg));
    let cert = certify(cfg).map_err(certify_failure)?;
    report.payload = Some(json!({ "certificate": certificate_json(cfg, &cert) }));
    let _ = writeln!(report.text, "branch {}, k = {}", cert.branch.name(), cert.k);
    for (b, r) in cert.branch.bundles().iter().zip(&cert.reports) {
        let _ = writeln!(report.text, "{}: {}", show_bundle(cfg, b), show_report(r));
    }
    let _ = writeln!(report.text, "E = {}", show_class(cfg, &cert.e));
    let _ = writeln!(report.text, "  = {}", show_witness(cfg, &cert.e_witness));
    Ok(())
}

fn verify_cmd(cfg: &SurfaceConfig, path: &Path, report: &mut Report) -> Result<(), Failure> {
    report.config = Some(config_doc(cfg));
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| {
        Failure::Negative(vec![format!("syntax error at line {} column {}: {e}", e.line(), e.column())])
    })?;
    let cert = parse_certificate(cfg, &doc).map_err(|e| Failure::Negative(vec![e.to_string()]))?;
    let violations: Vec<String> = verify(cfg, &cert).iter().map(|v| v.to_string()).collect();
    let valid = violations.is_empty();
    report.payload = Some(json!({ "valid": valid }));
    let _ = writeln!(report.text, "{}", if valid { "certificate verified" } else { "certificate rejected" });
    report.violations.extend(violations);
    Ok(())
}

fn enumerate_cmd(points: usize, with_certificates: bool, report: &mut Report) -> Result<(), Failure> {
    let configs = enumerate_configs(points);
    let mut entries = Vec::with_capacity(configs.len());
    let mut certified = 0usize;
    for (index, cfg) in configs.iter().enumerate() {
        let doc = config_doc(cfg);
        let hash = content_hash(&doc);
        let mut entry = json!({ "index": index, "config": doc, "hash": hash });
        let _ = write!(report.text, "{index:>3} {} {:?}", &hash[..12], cfg.chain_lengths());
        if with_certificates {
            let obj = entry.as_object_mut().expect("object");
            match certify(cfg) {
                Ok(cert) => {
                    let problems = verify(cfg, &cert);
                    if problems.is_empty() {
                        certified += 1;
                    } else {
                        for p in &problems {
                            report.violations.push(format!("configuration {index}: {p}"));
                        }
                    }
                    obj.insert("branch".into(), json!(cert.branch.name()));
                    obj.insert("verified".into(), json!(problems.is_empty()));
                    let _ = write!(report.text, " {} {}", cert.branch.name(), if problems.is_empty() { "verified" } else { "REJECTED" });
                }
                Err(e) => {
                    let failure = certify_failure(e);
                    match failure {
                        Failure::Negative(v) => {
                            report.violations.extend(v.into_iter().map(|m| format!("configuration {index}: {m}")))
                        }
                        Failure::Internal(_) => return Err(failure),
                    }
                    obj.insert("branch".into(), Value::Null);
                    obj.insert("verified".into(), json!(false));
                    let _ = write!(report.text, " FAILED");
                }
            }
        }
        let _ = writeln!(report.text);
        entries.push(entry);
    }
    let mut summary = json!({ "points": points, "total": configs.len() });
    let _ = write!(report.text, "{} configurations with {points} points", configs.len());
    if with_certificates {
        let percent = if configs.is_empty() {
            Rational::from_integer(0)
        } else {
            Rational::new(100 * certified as i64, configs.len() as i64)
        };
        let obj = summary.as_object_mut().expect("object");
        obj.insert("certified".into(), json!(certified));
        obj.insert("certified_percent".into(), rational_json(&percent));
        let _ = write!(report.text, ", {certified} certified ({percent}%)");
    }
    let _ = writeln!(report.text);
    report.payload = Some(json!({ "configurations": entries, "summary": summary }));
    Ok(())
}
