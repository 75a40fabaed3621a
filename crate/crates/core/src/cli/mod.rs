//! Command implementations behind the `opecalc` binary.

pub mod spec;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

pub use spec::{AlgebraSpec, Atom, GeneratorSpec, LinearExpr, SpecKind};

use crate::error::{Error, Result};
use crate::fieldcalc::{ope_singular, Field, GradedVector, IndexBox};
use crate::numcore::{factorial, Scalar};
use crate::ope2d::{self, reduced_ope, Field2, Sweep2Options, TensorOpeAlgebra, Weight2};
use crate::report::{CheckReport, Failure, Outcome, Report};
use crate::vertexalg::{self, catalog, graded_character, ConformalAlgebra, SweepOptions, VertexAlgebra};

/// Exit status and text of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub text: String,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { code: 0, text }
    }

    /// Exit 2 with the error message.
    pub fn error(e: &Error) -> Self {
        CommandOutput { code: 2, text: format!("error: {e}\n") }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other}"))),
        }
    }
}

/// Options shared by the commands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub cutoff: Option<String>,
    pub indices: Option<String>,
    pub format: Format,
    pub seed: u64,
    pub sample: Option<usize>,
}

pub const DEFAULT_CUTOFF: i64 = 4;
pub const DEFAULT_INDICES: IndexBox = IndexBox { lo: -3, hi: 3 };
pub const DEFAULT_CUTOFF2: i64 = 3;
pub const DEFAULT_INDICES2: IndexBox = IndexBox { lo: -2, hi: 2 };

/// `a..b`, `[a,b]` or `a,b`.
pub fn parse_indices(text: &str) -> Result<IndexBox> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = t
        .split_once("..")
        .or_else(|| t.split_once(','))
        .ok_or_else(|| Error::Parse(format!("index box {text:?}, expected a..b")))?;
    let lo: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("index box {text:?}")))?;
    let hi: i64 = b.trim().parse().map_err(|_| Error::Parse(format!("index box {text:?}")))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty index box {text:?}")));
    }
    Ok(IndexBox::new(lo, hi))
}

/// `catalog:name(params)` or the path of a spec file.
pub fn load_spec(arg: &str) -> Result<AlgebraSpec> {
    if let Some(reference) = arg.strip_prefix("catalog:") {
        let spec = AlgebraSpec::catalog(reference);
        let (name, _) = catalog::parse_reference(reference)?;
        let known = catalog::ENTRIES.iter().any(|e| e.0 == name) || ope2d::ENTRIES2.iter().any(|e| e.0 == name);
        if !known {
            return Err(Error::UnknownName(format!("catalog algebra {name}")));
        }
        return Ok(spec);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    text.parse()
}

/// A spec built at a cutoff.
pub enum Built {
    Vertex { algebra: Arc<dyn VertexAlgebra>, cutoff: Scalar, presented: Option<ConformalAlgebra> },
    Tensor { algebra: Arc<TensorOpeAlgebra>, cutoff: Weight2 },
}

fn cutoff_text(spec: &AlgebraSpec, opts: &Options) -> Option<String> {
    opts.cutoff.clone().or_else(|| spec.cutoff.clone())
}

pub fn build(spec: &AlgebraSpec, opts: &Options) -> Result<Built> {
    let text = cutoff_text(spec, opts);
    match spec.kind {
        SpecKind::Ope2dTensor => {
            let cutoff: Weight2 = match text {
                Some(t) => t.parse()?,
                None => Weight2::new(DEFAULT_CUTOFF2, DEFAULT_CUTOFF2),
            };
            let algebra = match &spec.catalog {
                Some(r) => ope2d::build2(r, &cutoff)?,
                None => {
                    let r = spec.conformal_algebra()?;
                    let level_bar = spec.level_bar.clone().unwrap_or_else(|| spec.level.clone());
                    let hol = vertexalg::enveloping_vertex_algebra(&spec.name, r.clone(), spec.level.clone(), cutoff.h.clone());
                    let anti = vertexalg::enveloping_vertex_algebra(&format!("{}bar", spec.name), r, level_bar, cutoff.hbar.clone());
                    TensorOpeAlgebra::new(spec.name.clone(), Arc::new(hol), Arc::new(anti))
                }
            };
            Ok(Built::Tensor { algebra: Arc::new(algebra), cutoff })
        }
        SpecKind::Vertex | SpecKind::Commutative => {
            let cutoff: Scalar = match text {
                Some(t) => t.parse()?,
                None => Scalar::from(DEFAULT_CUTOFF),
            };
            match &spec.catalog {
                Some(r) => Ok(Built::Vertex { algebra: catalog::build(r, &cutoff)?, cutoff, presented: None }),
                None => {
                    let r = spec.conformal_algebra()?;
                    let v = vertexalg::enveloping_vertex_algebra(&spec.name, r.clone(), spec.level.clone(), cutoff.clone());
                    Ok(Built::Vertex { algebra: Arc::new(v), cutoff, presented: Some(r) })
                }
            }
        }
    }
}

fn presentation_check(r: &ConformalAlgebra, cutoff: &Scalar) -> CheckReport {
    let mut rep = CheckReport::new("linear_opes", "linear-ope-presentation", cutoff, "-");
    rep.record(match r.validate() {
        Ok(()) => Outcome::Pass,
        Err(Error::IdentityViolation { identity, witness }) => {
            let (who, at) = witness.split_once(" at ").unwrap_or((witness.as_str(), "-"));
            Outcome::Fail(Failure {
                indices: at.to_string(),
                witness: format!("{identity} for {who}"),
                lhs: "nonzero".into(),
                rhs: "0".into(),
            })
        }
        Err(e) => Outcome::Fail(Failure { indices: "-".into(), witness: e.to_string(), lhs: "-".into(), rhs: "-".into() }),
    });
    rep
}

/// Runs the axiom suite for the spec's kind.
pub fn verify_report(spec: &AlgebraSpec, opts: &Options) -> Result<Report> {
    Ok(match build(spec, opts)? {
        Built::Vertex { algebra, cutoff, presented } => {
            let indices = opts.indices.as_deref().map(parse_indices).transpose()?.unwrap_or(DEFAULT_INDICES);
            let sweep = SweepOptions { cutoff: cutoff.clone(), indices, sample: opts.sample, seed: opts.seed };
            let mut report = vertexalg::verify_axioms_with(algebra, &sweep);
            if let Some(r) = presented {
                let mut checks = vec![presentation_check(&r, &cutoff)];
                checks.append(&mut report.checks);
                report = Report::new(report.header, checks);
            }
            report.header.kind = spec.kind.name().into();
            report
        }
        Built::Tensor { algebra, cutoff } => {
            let indices = opts.indices.as_deref().map(parse_indices).transpose()?.unwrap_or(DEFAULT_INDICES2);
            let sweep = Sweep2Options { cutoff, indices, sample: opts.sample, seed: opts.seed };
            ope2d::verify_ope2d(algebra, &sweep)
        }
    })
}

pub fn cmd_verify(spec_arg: &str, opts: &Options) -> CommandOutput {
    let report = match load_spec(spec_arg).and_then(|s| verify_report(&s, opts)) {
        Ok(r) => r,
        Err(e) => return CommandOutput::error(&e),
    };
    let text = match opts.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    CommandOutput { code: if report.failed > 0 { 1 } else { 0 }, text }
}

fn coefficient_prefix(c: &Scalar, bare: bool) -> String {
    if c.is_one() && !bare {
        String::new()
    } else if c.is_integer() {
        if bare {
            c.to_string()
        } else {
            format!("{c}*")
        }
    } else if bare {
        format!("({c})")
    } else {
        format!("({c})*")
    }
}

/// `g1(n1) g2(n2) ... |0>` as `[(g1, n1), ...]`.
fn parse_monomial(name: &str) -> Option<Vec<(String, i64)>> {
    let mut rest = name.strip_suffix("|0>")?;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let open = rest.find('(')?;
        let close = rest.find(')')?;
        out.push((rest[..open].to_string(), rest[open + 1..close].parse().ok()?));
        rest = &rest[close + 1..];
    }
    Some(out)
}

/// The field of a basis state, e.g. `:a(w) ∂L(w):`, with the factor from divided powers.
fn field_of_basis(name: &str) -> (String, Scalar) {
    let Some(mono) = parse_monomial(name) else {
        return (format!("Y({name},w)"), Scalar::one());
    };
    if mono.is_empty() {
        return ("1".into(), Scalar::one());
    }
    if mono.iter().any(|(_, n)| *n >= 0) {
        return (format!("Y({name},w)"), Scalar::one());
    }
    let mut factor = Scalar::one();
    let parts: Vec<String> = mono
        .iter()
        .map(|(g, n)| {
            let k = (-1 - n) as u32;
            factor = &factor / factorial(k);
            match k {
                0 => format!("{g}(w)"),
                1 => format!("∂{g}(w)"),
                _ => format!("∂^{k}{g}(w)"),
            }
        })
        .collect();
    if parts.len() == 1 {
        (parts[0].clone(), factor)
    } else {
        (format!(":{}:", parts.join(" ")), factor)
    }
}

fn pole(p: i64) -> String {
    if p == 1 {
        "(z-w)".into()
    } else {
        format!("(z-w)^{p}")
    }
}

/// `a(z) b(w) ~ sum_n (a_(n) b)(w) / (z-w)^(n+1)`, or `regular`.
pub fn render_singular_ope(a: &str, b: &str, terms: &[(i64, GradedVector)], name: impl Fn(u32) -> String) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (n, v) in terms {
        for (id, c) in v.iter() {
            let (field, factor) = field_of_basis(&name(id));
            let c = c * &factor;
            let negative = c.is_negative();
            let c = c.abs();
            let body = if field == "1" {
                format!("{}/{}", coefficient_prefix(&c, true), pole(n + 1))
            } else {
                format!("{}{field}/{}", coefficient_prefix(&c, false), pole(n + 1))
            };
            pieces.push((negative, body));
        }
    }
    let mut out = format!("{a}(z) {b}(w) ~ ");
    if pieces.is_empty() {
        out.push_str("regular");
    }
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out.push('\n');
    out
}

pub fn cmd_ope(spec_arg: &str, a: &str, b: &str, opts: &Options) -> CommandOutput {
    match ope_text(spec_arg, a, b, opts) {
        Ok(t) => CommandOutput::ok(t),
        Err(e) => CommandOutput::error(&e),
    }
}

fn ope_text(spec_arg: &str, a: &str, b: &str, opts: &Options) -> Result<String> {
    let spec = load_spec(spec_arg)?;
    match build(&spec, opts)? {
        Built::Vertex { algebra, cutoff, .. } => {
            let sa = vertexalg::find_state(algebra.as_ref(), a, &cutoff)?;
            let sb = vertexalg::find_state(algebra.as_ref(), b, &cutoff)?;
            let fa = Field::of_state(algebra.clone(), &sa)?;
            let fb = Field::of_state(algebra.clone(), &sb)?;
            let terms: Vec<(i64, GradedVector)> = ope_singular(&fa, &fb, &cutoff).into_iter().map(|(n, f)| (n, f.state())).collect();
            Ok(render_singular_ope(a, b, &terms, |id| algebra.basis_name(id)))
        }
        Built::Tensor { algebra, cutoff } => {
            let indices = opts.indices.as_deref().map(parse_indices).transpose()?.unwrap_or(DEFAULT_INDICES2);
            let fa = Field2::of_state(algebra.clone(), &algebra.find_state(a, &cutoff)?)?;
            let fb = Field2::of_state(algebra.clone(), &algebra.find_state(b, &cutoff)?)?;
            let terms = reduced_ope(&fa, &fb, &algebra.candidate_cosets(), &cutoff, indices)?;
            let mut out = String::new();
            if terms.is_empty() {
                writeln!(out, "{a}(z,zbar) {b}(w,wbar) = 0").expect("string write");
            }
            for t in &terms {
                let lead = t.leading_term().state();
                writeln!(
                    out,
                    "{a}(z,zbar) {b}(w,wbar) = N(z,zbar,w,wbar) / ((z-w)^{} (zbar-wbar)^{})",
                    t.pole.h, t.pole.hbar
                )
                .expect("string write");
                writeln!(out, "reduced: {}", if t.reduced { "yes" } else { "no" }).expect("string write");
                writeln!(out, "leading term: {}", algebra.render(&lead)).expect("string write");
            }
            Ok(out)
        }
    }
}

/// Denominator of the weight lattice spanned by the generators.
fn weight_step(v: &dyn VertexAlgebra) -> i64 {
    let mut d = 1i64;
    for (_, s) in v.generators() {
        if let Some(w) = v.homogeneous_weight(&s) {
            let q = w.denom().to_string().parse::<i64>().unwrap_or(1);
            d = num_integer::lcm(d, q);
        }
    }
    d
}

pub fn cmd_character(spec_arg: &str, opts: &Options) -> CommandOutput {
    match character_text(spec_arg, opts) {
        Ok(t) => CommandOutput::ok(t),
        Err(e) => CommandOutput::error(&e),
    }
}

fn character_text(spec_arg: &str, opts: &Options) -> Result<String> {
    let spec = load_spec(spec_arg)?;
    let mut out = String::new();
    match build(&spec, opts)? {
        Built::Vertex { algebra, cutoff, .. } => {
            let ch = graded_character(algebra.as_ref(), &cutoff);
            let step = Scalar::ratio(1, weight_step(algebra.as_ref()));
            let (lo, hi) = algebra.weight_range(&cutoff);
            let mut full: BTreeMap<Scalar, usize> = BTreeMap::new();
            let mut w = lo;
            while w <= hi {
                full.insert(w.clone(), 0);
                w = w + &step;
            }
            for (w, d) in ch {
                full.insert(w, d);
            }
            writeln!(out, "algebra: {}", algebra.label()).expect("string write");
            writeln!(out, "cutoff: {cutoff}").expect("string write");
            writeln!(out, "weight dim").expect("string write");
            for (w, d) in &full {
                writeln!(out, "{w} {d}").expect("string write");
            }
            let dims: Vec<String> = full.values().map(|d| d.to_string()).collect();
            writeln!(out, "dims: {}", dims.join(",")).expect("string write");
        }
        Built::Tensor { algebra, cutoff } => {
            writeln!(out, "algebra: {}", algebra.label()).expect("string write");
            writeln!(out, "cutoff: {cutoff}").expect("string write");
            writeln!(out, "weight dim").expect("string write");
            for (w, d) in algebra.character2(&cutoff) {
                writeln!(out, "{w} {d}").expect("string write");
            }
        }
    }
    Ok(out)
}

/// Names in listing order with kind and default parameters.
pub fn catalog_entries() -> Vec<(String, &'static str, String)> {
    let one = |name: &str| {
        let e = catalog::ENTRIES.iter().find(|e| e.0 == name).expect("catalog entry");
        (e.0.to_string(), if name == "poly_comm" { "commutative" } else { "vertex" }, format!("{}={}", e.1, e.2))
    };
    let two = |name: &str| {
        let e = ope2d::ENTRIES2.iter().find(|e| e.0 == name).expect("catalog entry");
        (e.0.to_string(), "ope2d-tensor", format!("{}={}", e.1, e.2))
    };
    vec![
        one("heisenberg"),
        one("virasoro"),
        one("clifford1"),
        one("affine_sl2"),
        two("toroidal_tensor"),
        two("fermion_tensor"),
        one("poly_comm"),
    ]
}

pub fn cmd_catalog() -> CommandOutput {
    let mut out = String::new();
    writeln!(out, "{:<18}{:<14}defaults", "name", "kind").expect("string write");
    for (name, kind, params) in catalog_entries() {
        writeln!(out, "{name:<18}{kind:<14}{params}").expect("string write");
    }
    CommandOutput::ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_forms() {
        assert_eq!(parse_indices("-3..3").unwrap(), IndexBox::new(-3, 3));
        assert_eq!(parse_indices("[-2,2]").unwrap(), IndexBox::new(-2, 2));
        assert!(parse_indices("3..-3").is_err());
        assert!(parse_indices("x").is_err());
    }

    #[test]
    fn monomial_fields() {
        assert_eq!(field_of_basis("|0>"), ("1".to_string(), Scalar::one()));
        assert_eq!(field_of_basis("L(-2)|0>"), ("∂L(w)".to_string(), Scalar::one()));
        assert_eq!(field_of_basis("a(-3)|0>"), ("∂^2a(w)".to_string(), Scalar::ratio(1, 2)));
        assert_eq!(field_of_basis("a(-1)b(-1)|0>").0, ":a(w) b(w):");
    }

    #[test]
    fn unknown_catalog_is_error() {
        assert_eq!(cmd_character("catalog:nosuch", &Options::default()).code, 2);
    }

    #[test]
    fn catalog_lists_seven() {
        let names: Vec<String> = catalog_entries().into_iter().map(|e| e.0).collect();
        assert_eq!(
            names,
            ["heisenberg", "virasoro", "clifford1", "affine_sl2", "toroidal_tensor", "fermion_tensor", "poly_comm"]
        );
    }
}
