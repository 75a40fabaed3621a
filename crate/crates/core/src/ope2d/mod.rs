//! Two-variable fields on tensor products of a holomorphic and an antiholomorphic vertex algebra.

mod algebra;
mod checks;
mod field2;
mod sweep;

pub use algebra::{build2, fermion_tensor, is_two_variable, toroidal_tensor, Index2, TensorOpeAlgebra, Weight2, ENTRIES2};
pub use checks::{
    bracket_cross_check, check_skew_symmetry2, check_triple2, duality2, duality_order, jacobi2, jacobi_sides, left_bracket,
    pair_order, right_bracket, skew_symmetry2, JacobiSides,
};
pub use field2::{
    additive_locality_order, commutator_witness, multiple_locality_check, nth_product2, reduced_ope, AdditiveOrder, Field2,
    OpeTerm,
};
pub use sweep::{direct_sweep, factorized_sweep, verify_ope2d, Sweep2Options};
