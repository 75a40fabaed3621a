//! Graded spaces, fields, n-th products and holomorphic identity checkers.

mod checks;
mod field;
mod locality;
mod space;

pub use checks::{IdentityKind, IndexBox, StateChecker};
pub use field::Field;
pub use locality::{dong_bound, locality_order, ope_singular, LocalityOrder, MAX_LOCALITY_ORDER};
pub use space::{
    exact_mode_bound, mode_bound_vec, product_vec, translate_divided, translate_vec, BasisId, GradedMap,
    GradedSpace, GradedVector, Scope, VertexStructure,
};

/// `a(z)_(n) b(z)`.
pub fn nth_product(a: &Field, b: &Field, n: i64) -> Field {
    a.nth_product(b, n)
}

/// `:a(z) b(z):`.
pub fn normal_ordered(a: &Field, b: &Field) -> Field {
    a.nth_product(b, -1)
}
