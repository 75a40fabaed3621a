//! Named vertex algebras addressable as `name(params)`.

use std::sync::Arc;

use super::{poly_comm, EnvelopingVertexAlgebra, VertexAlgebra};
use crate::error::{Error, Result};
use crate::liealg::{affinize, clifford_affinize, virasoro as virasoro_lie, LiePresentation};
use crate::numcore::Scalar;

/// Catalog entries with their parameter and its default.
pub const ENTRIES: [(&str, &str, &str); 5] = [
    ("heisenberg", "level", "1"),
    ("virasoro", "c", "1/2"),
    ("clifford1", "level", "1"),
    ("affine_sl2", "level", "1"),
    ("poly_comm", "degree", "4"),
];

/// Rank-one Heisenberg `V^k` with `a_(1) a = k`.
pub fn heisenberg(level: Scalar, cutoff: Scalar) -> EnvelopingVertexAlgebra {
    let g = LiePresentation::abelian(&["a"], vec![vec![Scalar::one()]]).expect("rank one pairing");
    let label = format!("heisenberg({level})");
    EnvelopingVertexAlgebra::new(label, affinize(g).conformal_algebra(), level, cutoff)
}

/// Universal Virasoro vertex algebra of central charge `c`.
pub fn virasoro(c: Scalar, cutoff: Scalar) -> EnvelopingVertexAlgebra {
    let label = format!("virasoro({c})");
    EnvelopingVertexAlgebra::new(label, virasoro_lie().conformal_algebra(), c, cutoff)
}

/// One free fermion `psi` of weight 1/2 with `psi_(0) psi = k`.
pub fn clifford1(level: Scalar, cutoff: Scalar) -> EnvelopingVertexAlgebra {
    let alg = clifford_affinize(&["psi"], vec![vec![Scalar::one()]]).expect("rank one pairing");
    let label = format!("clifford1({level})");
    EnvelopingVertexAlgebra::new(label, alg.conformal_algebra(), level, cutoff)
}

/// Affine `sl2` currents `e, h, f` at level `k`.
pub fn affine_sl2(level: Scalar, cutoff: Scalar) -> EnvelopingVertexAlgebra {
    let label = format!("affine_sl2({level})");
    EnvelopingVertexAlgebra::new(label, affinize(LiePresentation::sl2()).conformal_algebra(), level, cutoff)
}

/// Splits `name(p)` or `name` into its name and optional parameter text.
pub fn parse_reference(text: &str) -> Result<(String, Option<String>)> {
    let text = text.trim();
    match text.find('(') {
        None => Ok((text.to_string(), None)),
        Some(i) => {
            let inner = text[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {text}")))?;
            let inner = inner.trim();
            Ok((text[..i].trim().to_string(), (!inner.is_empty()).then(|| inner.to_string())))
        }
    }
}

/// Builds a catalog algebra from `name(param)` at a cutoff.
pub fn build(reference: &str, cutoff: &Scalar) -> Result<Arc<dyn VertexAlgebra>> {
    let (name, param) = parse_reference(reference)?;
    let default = ENTRIES
        .iter()
        .find(|e| e.0 == name)
        .map(|e| e.2)
        .ok_or_else(|| Error::UnknownName(format!("catalog algebra {name}")))?;
    let p: Scalar = param.as_deref().unwrap_or(default).parse()?;
    let c = cutoff.clone();
    Ok(match name.as_str() {
        "heisenberg" => Arc::new(heisenberg(p, c)),
        "virasoro" => Arc::new(virasoro(p, c)),
        "clifford1" => Arc::new(clifford1(p, c)),
        "affine_sl2" => Arc::new(affine_sl2(p, c)),
        "poly_comm" => {
            let d = p.to_i64().filter(|d| *d >= 0).ok_or_else(|| Error::Parse(format!("degree {p}")))?;
            Arc::new(poly_comm(d as u32))
        }
        _ => unreachable!("name checked against the entry table"),
    })
}
