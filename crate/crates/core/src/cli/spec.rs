//! Line-oriented algebra specs with `[generator.X]` and `[ope.X.Y]` sections.
//!
//! ```text
//! name = heis
//! kind = vertex
//! level = 1
//!
//! [generator.a]
//! parity = even
//! weight = 1
//!
//! [ope.a.a]
//! 1 = 1*k
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numcore::{Parity, Scalar};
use crate::vertexalg::{ConformalAlgebra, ConformalElement, Generator};

/// Which checker suite a spec is verified with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecKind {
    Vertex,
    Ope2dTensor,
    Commutative,
}

impl SpecKind {
    pub fn name(self) -> &'static str {
        match self {
            SpecKind::Vertex => "vertex",
            SpecKind::Ope2dTensor => "ope2d-tensor",
            SpecKind::Commutative => "commutative",
        }
    }
}

impl FromStr for SpecKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "vertex" => Ok(SpecKind::Vertex),
            "ope2d-tensor" => Ok(SpecKind::Ope2dTensor),
            "commutative" => Ok(SpecKind::Commutative),
            other => Err(Error::Parse(format!("unknown kind {other}"))),
        }
    }
}

/// A summand of a linear OPE: the central element or `T^power g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Central,
    Derivative { power: u32, generator: String },
}

/// A linear combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearExpr(pub BTreeMap<Atom, Scalar>);

impl LinearExpr {
    fn add(&mut self, atom: Atom, c: Scalar) {
        let e = self.0.entry(atom.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&atom);
        }
    }
}

fn parse_atom(text: &str) -> Result<Atom> {
    let t = text.trim();
    if t == "k" {
        return Ok(Atom::Central);
    }
    if let Some(rest) = t.strip_prefix("T^") {
        let open = rest.find('(').ok_or_else(|| Error::Parse(format!("expected T^n(gen) in {t}")))?;
        let power: u32 = rest[..open].trim().parse().map_err(|_| Error::Parse(format!("bad power in {t}")))?;
        let inner = rest[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {t}")))?;
        return Ok(Atom::Derivative { power, generator: ident(inner)? });
    }
    Ok(Atom::Derivative { power: 0, generator: ident(t)? })
}

fn ident(t: &str) -> Result<String> {
    let t = t.trim();
    let ok = t.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && t.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(t.to_string())
    } else {
        Err(Error::Parse(format!("bad generator name {t:?}")))
    }
}

fn parse_term(text: &str) -> Result<(Atom, Scalar)> {
    let t = text.trim();
    if let Some((c, atom)) = t.split_once('*') {
        return Ok((parse_atom(atom)?, c.trim().parse()?));
    }
    // `rational atom` with optional whitespace, or a bare atom
    let split = t
        .char_indices()
        .find(|(_, ch)| !(ch.is_ascii_digit() || *ch == '/' || *ch == '-' || *ch == '+'))
        .map(|(i, _)| i)
        .unwrap_or(t.len());
    if split == 0 {
        return Ok((parse_atom(t)?, Scalar::one()));
    }
    let (c, atom) = t.split_at(split);
    let c = match c.trim() {
        "-" => Scalar::from(-1),
        "+" => Scalar::one(),
        x => x.parse()?,
    };
    Ok((parse_atom(atom)?, c))
}

impl FromStr for LinearExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = LinearExpr::default();
        if s.trim() == "0" {
            return Ok(out);
        }
        for term in s.split('+') {
            if term.trim().is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (atom, c) = parse_term(term)?;
            out.add(atom, c);
        }
        Ok(out)
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(atom, c)| match atom {
                Atom::Central => format!("{c}*k"),
                Atom::Derivative { power: 0, generator } => format!("{c}*{generator}"),
                Atom::Derivative { power, generator } => format!("{c}*T^{power}({generator})"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    pub weight: Scalar,
}

/// A parsed algebra spec: either a catalog reference or generators with linear OPEs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub kind: SpecKind,
    pub level: Scalar,
    /// Level of the antiholomorphic factor of an `ope2d-tensor` spec.
    pub level_bar: Option<Scalar>,
    pub cutoff: Option<String>,
    pub catalog: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    /// `(s, t, n) -> s_(n) t`
    pub opes: BTreeMap<(String, String, u32), LinearExpr>,
}

impl AlgebraSpec {
    /// The spec of `catalog:name(params)`.
    pub fn catalog(reference: &str) -> Self {
        let kind = if crate::ope2d::is_two_variable(reference) {
            SpecKind::Ope2dTensor
        } else if reference.trim_start().starts_with("poly_comm") {
            SpecKind::Commutative
        } else {
            SpecKind::Vertex
        };
        AlgebraSpec {
            name: reference.trim().to_string(),
            kind,
            level: Scalar::one(),
            level_bar: None,
            cutoff: None,
            catalog: Some(reference.trim().to_string()),
            generators: Vec::new(),
            opes: BTreeMap::new(),
        }
    }

    /// Builds the conformal algebra without checking skew-symmetry or Jacobi.
    pub fn conformal_algebra(&self) -> Result<ConformalAlgebra> {
        let gens: Vec<Generator> = self.generators.iter().map(|g| Generator::new(&g.name, g.parity, g.weight.clone())).collect();
        let index = |n: &str| {
            gens.iter()
                .position(|g| g.name == n)
                .ok_or_else(|| Error::UnknownName(format!("generator {n}")))
        };
        let mut table = Vec::new();
        for ((s, t, n), expr) in &self.opes {
            let mut e = ConformalElement::zero();
            for (atom, c) in &expr.0 {
                match atom {
                    Atom::Central => e.add_scaled(&ConformalElement::central(Scalar::one()), c),
                    Atom::Derivative { power, generator } => e.add_term(index(generator)?, *power, c),
                }
            }
            table.push(((index(s)?, index(t)?, *n), e));
        }
        ConformalAlgebra::unchecked(gens, table)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name = {}\n", self.name));
        out.push_str(&format!("kind = {}\n", self.kind.name()));
        if let Some(c) = &self.catalog {
            out.push_str(&format!("catalog = {c}\n"));
        } else {
            out.push_str(&format!("level = {}\n", self.level));
        }
        if let Some(l) = &self.level_bar {
            out.push_str(&format!("level_bar = {l}\n"));
        }
        if let Some(c) = &self.cutoff {
            out.push_str(&format!("cutoff = {c}\n"));
        }
        for g in &self.generators {
            out.push_str(&format!("\n[generator.{}]\nparity = {}\nweight = {}\n", g.name, g.parity, g.weight));
        }
        let mut last: Option<(&String, &String)> = None;
        for ((s, t, n), e) in &self.opes {
            if last != Some((s, t)) {
                out.push_str(&format!("\n[ope.{s}.{t}]\n"));
                last = Some((s, t));
            }
            out.push_str(&format!("{n} = {e}\n"));
        }
        out
    }
}

enum Section {
    Header,
    Generator(usize),
    Ope(String, String),
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: BTreeMap<String, String> = BTreeMap::new();
        let mut generators: Vec<(String, BTreeMap<String, String>)> = Vec::new();
        let mut opes = BTreeMap::new();
        let mut section = Section::Header;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(inner) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let parts: Vec<&str> = inner.split('.').map(str::trim).collect();
                section = match parts.as_slice() {
                    ["generator", g] => {
                        let g = ident(g).map_err(|e| at(e.to_string()))?;
                        if generators.iter().any(|(n, _)| *n == g) {
                            return Err(at(format!("generator {g} declared twice")));
                        }
                        generators.push((g, BTreeMap::new()));
                        Section::Generator(generators.len() - 1)
                    }
                    ["ope", s, t] => Section::Ope(ident(s).map_err(|e| at(e.to_string()))?, ident(t).map_err(|e| at(e.to_string()))?),
                    _ => return Err(at(format!("unknown section [{inner}]"))),
                };
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| at(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            match &section {
                Section::Header => {
                    if header.insert(key.clone(), value).is_some() {
                        return Err(at(format!("duplicate key {key}")));
                    }
                }
                Section::Generator(i) => {
                    if generators[*i].1.insert(key.clone(), value).is_some() {
                        return Err(at(format!("duplicate key {key}")));
                    }
                }
                Section::Ope(s, t) => {
                    let n: u32 = key.parse().map_err(|_| at(format!("pole order {key:?} is not a natural number")))?;
                    let e: LinearExpr = value.parse().map_err(|e: Error| at(e.to_string()))?;
                    if opes.insert((s.clone(), t.clone(), n), e).is_some() {
                        return Err(at(format!("duplicate pole order {n} in [ope.{s}.{t}]")));
                    }
                }
            }
        }
        let take = |h: &mut BTreeMap<String, String>, k: &str| h.remove(k);
        let name = take(&mut header, "name").unwrap_or_else(|| "unnamed".into());
        let catalog = take(&mut header, "catalog");
        let kind = match take(&mut header, "kind") {
            Some(k) => k.parse()?,
            None => match &catalog {
                Some(c) => AlgebraSpec::catalog(c).kind,
                None => SpecKind::Vertex,
            },
        };
        let level: Scalar = take(&mut header, "level").map(|l| l.parse()).transpose()?.unwrap_or_else(Scalar::one);
        let level_bar: Option<Scalar> = take(&mut header, "level_bar").map(|l| l.parse()).transpose()?;
        let cutoff = take(&mut header, "cutoff");
        if let Some(k) = header.keys().next() {
            return Err(Error::Parse(format!("unknown key {k}")));
        }
        let mut gens = Vec::new();
        for (g, mut fields) in generators {
            let parity: Parity = fields.remove("parity").unwrap_or_else(|| "even".into()).parse()?;
            let weight: Scalar = fields
                .remove("weight")
                .ok_or_else(|| Error::Parse(format!("generator {g} has no weight")))?
                .parse()?;
            if let Some(k) = fields.keys().next() {
                return Err(Error::Parse(format!("unknown key {k} in [generator.{g}]")));
            }
            gens.push(GeneratorSpec { name: g, parity, weight });
        }
        let spec = AlgebraSpec { name, kind, level, level_bar, cutoff, catalog, generators: gens, opes };
        spec.validate()?;
        Ok(spec)
    }
}

impl AlgebraSpec {
    fn validate(&self) -> Result<()> {
        match &self.catalog {
            Some(_) if !self.generators.is_empty() || !self.opes.is_empty() => {
                Err(Error::Parse("a catalog spec takes no generators or OPEs".into()))
            }
            Some(_) => Ok(()),
            None => {
                if self.kind == SpecKind::Commutative {
                    return Err(Error::Parse("commutative specs are catalog references".into()));
                }
                if self.generators.is_empty() {
                    return Err(Error::Parse("spec declares no generators".into()));
                }
                for ((s, t, _), e) in &self.opes {
                    for name in [s, t].into_iter().chain(e.0.keys().filter_map(|a| match a {
                        Atom::Derivative { generator, .. } => Some(generator),
                        Atom::Central => None,
                    })) {
                        if !self.generators.iter().any(|g| &g.name == name) {
                            return Err(Error::UnknownName(format!("generator {name}")));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VIR: &str = "name = vir\nkind = vertex\nlevel = 1/2\n\n[generator.L]\nweight = 2\n\n[ope.L.L]\n0 = T^1(L)\n1 = 2 L\n3 = 1/2*k\n";

    #[test]
    fn parses_virasoro() {
        let s: AlgebraSpec = VIR.parse().unwrap();
        assert_eq!(s.generators.len(), 1);
        assert_eq!(s.opes.len(), 3);
        let e = &s.opes[&("L".into(), "L".into(), 3)];
        assert_eq!(e.0[&Atom::Central], Scalar::ratio(1, 2));
        assert!(s.conformal_algebra().unwrap().validate().is_ok());
    }

    #[test]
    fn round_trip() {
        let s: AlgebraSpec = VIR.parse().unwrap();
        let again: AlgebraSpec = s.render().parse().unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn rejects_unknown_generator() {
        let bad = "[generator.a]\nweight = 1\n[ope.a.b]\n1 = k\n";
        assert!(matches!(bad.parse::<AlgebraSpec>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn rejects_garbage() {
        assert!("[generator.a]\nweight = one\n".parse::<AlgebraSpec>().is_err());
        assert!("[wat]\n".parse::<AlgebraSpec>().is_err());
        assert!("[generator.a]\nweight = 1\n[ope.a.a]\nx = k\n".parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn negative_coefficients() {
        let e: LinearExpr = "-1/2*k + -3 T^2(a) + a".parse().unwrap();
        assert_eq!(e.0[&Atom::Central], Scalar::ratio(-1, 2));
        assert_eq!(e.0[&Atom::Derivative { power: 2, generator: "a".into() }], Scalar::from(-3));
        assert_eq!(e.to_string().parse::<LinearExpr>().unwrap(), e);
    }
}
