use super::VertexAlgebra;
use crate::fieldcalc::{BasisId, GradedSpace, GradedVector, VertexStructure};
use crate::numcore::{binom_int, Parity, Scalar};

/// A unital commutative algebra with an even derivation, filtered by degree.
pub trait DifferentialAlgebra: Send + Sync {
    fn unit(&self) -> BasisId;
    /// Degree of a basis element; its vertex weight is the negated degree.
    fn degree(&self, v: BasisId) -> u32;
    fn name(&self, v: BasisId) -> String;
    /// Basis elements of degree at most `d`.
    fn basis_up_to_degree(&self, d: u32) -> Vec<BasisId>;
    fn multiply(&self, a: BasisId, b: BasisId) -> GradedVector;
    fn derive(&self, a: BasisId) -> GradedVector;
    /// `D^(k) a = D^k a / k!`.
    fn derive_divided(&self, a: BasisId, k: u32) -> GradedVector {
        let mut v = GradedVector::basis(a);
        for i in 1..=k {
            let mut next = GradedVector::zero();
            for (id, c) in v.iter() {
                next.add_vector(&self.derive(id), c);
            }
            v = next.scaled(&Scalar::ratio(1, i as i64));
        }
        v
    }
}

/// `K[x]` with `d/dx`; basis id `k` is `x^k`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolynomialAlgebra;

impl DifferentialAlgebra for PolynomialAlgebra {
    fn unit(&self) -> BasisId {
        0
    }

    fn degree(&self, v: BasisId) -> u32 {
        v
    }

    fn name(&self, v: BasisId) -> String {
        match v {
            0 => "1".into(),
            1 => "x".into(),
            k => format!("x^{k}"),
        }
    }

    fn basis_up_to_degree(&self, d: u32) -> Vec<BasisId> {
        (0..=d).collect()
    }

    fn multiply(&self, a: BasisId, b: BasisId) -> GradedVector {
        GradedVector::basis(a + b)
    }

    fn derive(&self, a: BasisId) -> GradedVector {
        if a == 0 {
            GradedVector::zero()
        } else {
            GradedVector::single(a - 1, Scalar::from(a as i64))
        }
    }

    fn derive_divided(&self, a: BasisId, k: u32) -> GradedVector {
        if k > a {
            return GradedVector::zero();
        }
        GradedVector::single(a - k, Scalar::from(binom_int(a as i64, k as i64)))
    }
}

/// The vertex algebra `a(z) b = (e^{zT} a) b` of a differential algebra.
pub struct CommutativeVertexAlgebra<A: DifferentialAlgebra> {
    label: String,
    algebra: A,
    cutoff: Scalar,
}

impl<A: DifferentialAlgebra> CommutativeVertexAlgebra<A> {
    pub fn new(label: impl Into<String>, algebra: A, degree: u32) -> Self {
        CommutativeVertexAlgebra { label: label.into(), algebra, cutoff: Scalar::from(degree as i64) }
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }
}

/// `K[x]` truncated at a degree.
pub fn poly_comm(degree: u32) -> CommutativeVertexAlgebra<PolynomialAlgebra> {
    CommutativeVertexAlgebra::new(format!("poly_comm({degree})"), PolynomialAlgebra, degree)
}

impl<A: DifferentialAlgebra> GradedSpace for CommutativeVertexAlgebra<A> {
    fn weight(&self, v: BasisId) -> Scalar {
        Scalar::from(-(self.algebra.degree(v) as i64))
    }

    fn parity(&self, _v: BasisId) -> Parity {
        Parity::Even
    }

    fn basis_name(&self, v: BasisId) -> String {
        self.algebra.name(v)
    }

    /// The cutoff bounds the degree.
    fn basis_up_to(&self, cutoff: &Scalar) -> Vec<BasisId> {
        let d = cutoff.floor_i64().max(0) as u32;
        self.algebra.basis_up_to_degree(d)
    }

    fn weight_range(&self, cutoff: &Scalar) -> (Scalar, Scalar) {
        (-cutoff.floor(), Scalar::zero())
    }

    fn min_weight(&self) -> Option<Scalar> {
        None
    }

    fn max_weight(&self) -> Option<Scalar> {
        Some(Scalar::zero())
    }
}

impl<A: DifferentialAlgebra> VertexStructure for CommutativeVertexAlgebra<A> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn vacuum(&self) -> BasisId {
        self.algebra.unit()
    }

    fn mode_bound(&self, _a: BasisId, _v: BasisId) -> i64 {
        0
    }

    fn product(&self, a: BasisId, n: i64, b: BasisId) -> GradedVector {
        if n >= 0 {
            return GradedVector::zero();
        }
        let k = (-1 - n) as u32;
        let mut out = GradedVector::zero();
        for (id, c) in self.algebra.derive_divided(a, k).iter() {
            out.add_vector(&self.algebra.multiply(id, b), c);
        }
        out
    }

    fn translation(&self, v: BasisId) -> GradedVector {
        self.algebra.derive(v)
    }
}

impl<A: DifferentialAlgebra> VertexAlgebra for CommutativeVertexAlgebra<A> {
    fn generators(&self) -> Vec<(String, GradedVector)> {
        let d = self.cutoff.floor_i64().max(0) as u32;
        self.algebra
            .basis_up_to_degree(d)
            .into_iter()
            .filter(|&v| self.algebra.degree(v) == 1)
            .map(|v| (self.algebra.name(v), GradedVector::basis(v)))
            .collect()
    }

    fn cutoff(&self) -> Scalar {
        self.cutoff.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_products() {
        let v = poly_comm(4);
        assert_eq!(v.product(1, -1, 1), GradedVector::basis(2));
        assert_eq!(v.product(1, -2, 1), GradedVector::basis(1));
        for n in 0..4 {
            assert!(v.product(2, n, 3).is_zero());
        }
        assert_eq!(v.product(0, -1, 3), GradedVector::basis(3));
    }

    #[test]
    fn translation_is_derivative() {
        let v = poly_comm(4);
        assert_eq!(v.translation(3), GradedVector::single(2, Scalar::from(3)));
        assert!(v.translation(0).is_zero());
    }
}
