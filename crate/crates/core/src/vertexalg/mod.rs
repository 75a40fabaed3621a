//! Conformal algebras, enveloping vertex algebras and the vertex-algebra axiom suite.

pub mod catalog;
mod commutative;
pub mod conformal;
mod envelope;
mod tensor;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use commutative::{poly_comm, CommutativeVertexAlgebra, DifferentialAlgebra, PolynomialAlgebra};
pub use conformal::{ConformalAlgebra, ConformalElement, Generator, OpeKey};
pub use envelope::EnvelopingVertexAlgebra;
pub use tensor::TensorVertexAlgebra;
pub use verify::{conformal_vector_check, verify_axioms, verify_axioms_with, ConformalVerdict, SweepOptions};

use crate::error::{Error, Result};
use crate::fieldcalc::{BasisId, Field, GradedSpace, GradedVector, VertexStructure};
use crate::numcore::Scalar;

/// A vertex structure with named strong generators and a construction cutoff.
pub trait VertexAlgebra: VertexStructure {
    /// Generator states by name.
    fn generators(&self) -> Vec<(String, GradedVector)>;
    fn cutoff(&self) -> Scalar;
}

impl VertexAlgebra for EnvelopingVertexAlgebra {
    fn generators(&self) -> Vec<(String, GradedVector)> {
        self.conformal()
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), GradedVector::basis(self.generator_state(i))))
            .collect()
    }

    fn cutoff(&self) -> Scalar {
        EnvelopingVertexAlgebra::cutoff(self).clone()
    }
}

/// `V^k(R)` truncated at `cutoff`.
pub fn enveloping_vertex_algebra(label: &str, r: ConformalAlgebra, level: Scalar, cutoff: Scalar) -> EnvelopingVertexAlgebra {
    EnvelopingVertexAlgebra::new(label, r, level, cutoff)
}

/// Holomorphic tensor product of two vertex algebras.
pub fn tensor_product(left: Arc<dyn VertexAlgebra>, right: Arc<dyn VertexAlgebra>) -> TensorVertexAlgebra {
    TensorVertexAlgebra::new(left, right)
}

/// The field `Y(a, z)` of a homogeneous state.
pub fn state_field(v: Arc<dyn VertexAlgebra>, a: &GradedVector) -> Result<Field> {
    Field::of_state(v, a)
}

/// `a_(n) b`, refused when the result lies beyond the cutoff.
pub fn product_capped<V: VertexStructure + ?Sized>(v: &V, a: BasisId, n: i64, b: BasisId, cutoff: &Scalar) -> Result<GradedVector> {
    let w = v.weight(a) + v.weight(b) - n - 1;
    if v.scope(&w, cutoff) == crate::fieldcalc::Scope::Beyond {
        return Err(Error::AboveCutoff { cutoff: cutoff.to_string(), what: format!("product of weight {w}") });
    }
    Ok(v.product(a, n, b))
}

/// Dimension of each weight space up to the cutoff.
pub fn graded_character<V: GradedSpace + ?Sized>(v: &V, cutoff: &Scalar) -> BTreeMap<Scalar, usize> {
    let mut out = BTreeMap::new();
    for id in v.basis_up_to(cutoff) {
        *out.entry(v.weight(id)).or_insert(0) += 1;
    }
    out
}

/// A state given by a generator name or a basis name such as `a(-1)a(-1)|0>`.
pub fn find_state<V: VertexAlgebra + ?Sized>(v: &V, name: &str, cutoff: &Scalar) -> Result<GradedVector> {
    let name = name.trim();
    if name == "|0>" || name == "1" {
        return Ok(GradedVector::basis(v.vacuum()));
    }
    if let Some((_, s)) = v.generators().into_iter().find(|(n, _)| n == name) {
        return Ok(s);
    }
    v.basis_up_to(cutoff)
        .into_iter()
        .find(|&id| v.basis_name(id) == name)
        .map(GradedVector::basis)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}
