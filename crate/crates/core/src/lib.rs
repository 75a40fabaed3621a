//! Exact calculus of formal distributions, fields and vertex algebras.

pub mod cli;
pub mod distribution;
pub mod error;
pub mod fieldcalc;
pub mod liealg;
pub mod numcore;
pub mod ope2d;
pub mod report;
pub mod vertexalg;

pub use error::{Error, Result};
pub use numcore::{Parity, Scalar};
