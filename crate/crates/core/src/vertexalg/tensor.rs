use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use dashmap::DashMap;

use super::VertexAlgebra;
use crate::fieldcalc::{BasisId, GradedSpace, GradedVector, VertexStructure};
use crate::numcore::{supersign, Parity, Scalar};

#[derive(Default)]
struct Pairs {
    pairs: Vec<(BasisId, BasisId)>,
    index: HashMap<(BasisId, BasisId), BasisId>,
}

/// `V (x) V'` with `Y(a (x) a', z) = Y(a, z) (x) Y(a', z)`.
pub struct TensorVertexAlgebra {
    left: Arc<dyn VertexAlgebra>,
    right: Arc<dyn VertexAlgebra>,
    registry: RwLock<Pairs>,
    products: DashMap<(BasisId, i64, BasisId), GradedVector>,
}

impl TensorVertexAlgebra {
    pub fn new(left: Arc<dyn VertexAlgebra>, right: Arc<dyn VertexAlgebra>) -> Self {
        let t = TensorVertexAlgebra { left, right, registry: RwLock::new(Pairs::default()), products: DashMap::new() };
        t.intern(t.left.vacuum(), t.right.vacuum());
        t
    }

    pub fn left(&self) -> &Arc<dyn VertexAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<dyn VertexAlgebra> {
        &self.right
    }

    /// Id of `a (x) b`.
    pub fn intern(&self, a: BasisId, b: BasisId) -> BasisId {
        if let Some(id) = self.registry.read().expect("pair lock").index.get(&(a, b)) {
            return *id;
        }
        let mut reg = self.registry.write().expect("pair lock");
        if let Some(id) = reg.index.get(&(a, b)) {
            return *id;
        }
        let id = reg.pairs.len() as BasisId;
        reg.pairs.push((a, b));
        reg.index.insert((a, b), id);
        id
    }

    pub fn factors(&self, v: BasisId) -> (BasisId, BasisId) {
        self.registry.read().expect("pair lock").pairs[v as usize]
    }

    /// `x (x) y` for vectors.
    pub fn tensor(&self, x: &GradedVector, y: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_term(self.intern(i, j), &(a * b));
            }
        }
        out
    }

    fn compute_product(&self, a: BasisId, n: i64, b: BasisId) -> GradedVector {
        let (a1, a2) = self.factors(a);
        let (b1, b2) = self.factors(b);
        let zeta = supersign(self.right.parity(a2), self.left.parity(b1));
        let hi = self.left.mode_bound(a1, b1);
        let lo = n - self.right.mode_bound(a2, b2);
        let mut out = GradedVector::zero();
        for m in lo..hi {
            let x = self.left.product(a1, m, b1);
            if x.is_zero() {
                continue;
            }
            let y = self.right.product(a2, n - 1 - m, b2);
            out.add_vector(&self.tensor(&x, &y), &zeta);
        }
        out
    }
}

impl GradedSpace for TensorVertexAlgebra {
    fn weight(&self, v: BasisId) -> Scalar {
        let (a, b) = self.factors(v);
        self.left.weight(a) + self.right.weight(b)
    }

    fn parity(&self, v: BasisId) -> Parity {
        let (a, b) = self.factors(v);
        self.left.parity(a) + self.right.parity(b)
    }

    fn basis_name(&self, v: BasisId) -> String {
        let (a, b) = self.factors(v);
        format!("{} (x) {}", self.left.basis_name(a), self.right.basis_name(b))
    }

    fn basis_up_to(&self, cutoff: &Scalar) -> Vec<BasisId> {
        let (llo, _) = self.left.weight_range(cutoff);
        let (rlo, _) = self.right.weight_range(cutoff);
        let lb = self.left.basis_up_to(&(cutoff - &rlo));
        let rb = self.right.basis_up_to(&(cutoff - &llo));
        let mut out: Vec<(Scalar, BasisId)> = Vec::new();
        for &a in &lb {
            for &b in &rb {
                let w = self.left.weight(a) + self.right.weight(b);
                if &w <= cutoff {
                    out.push((w, self.intern(a, b)));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out.into_iter().map(|(_, id)| id).collect()
    }

    fn weight_range(&self, cutoff: &Scalar) -> (Scalar, Scalar) {
        let (l, _) = self.left.weight_range(cutoff);
        let (r, _) = self.right.weight_range(cutoff);
        (l + r, cutoff.clone())
    }

    fn min_weight(&self) -> Option<Scalar> {
        Some(self.left.min_weight()? + self.right.min_weight()?)
    }

    fn max_weight(&self) -> Option<Scalar> {
        Some(self.left.max_weight()? + self.right.max_weight()?)
    }
}

impl VertexStructure for TensorVertexAlgebra {
    fn label(&self) -> String {
        format!("{} (x) {}", self.left.label(), self.right.label())
    }

    fn vacuum(&self) -> BasisId {
        0
    }

    fn mode_bound(&self, a: BasisId, v: BasisId) -> i64 {
        let (a1, a2) = self.factors(a);
        let (v1, v2) = self.factors(v);
        self.left.mode_bound(a1, v1) + self.right.mode_bound(a2, v2)
    }

    fn product(&self, a: BasisId, n: i64, b: BasisId) -> GradedVector {
        if n >= self.mode_bound(a, b) {
            return GradedVector::zero();
        }
        if let Some(x) = self.products.get(&(a, n, b)) {
            return x.clone();
        }
        let out = self.compute_product(a, n, b);
        self.products.insert((a, n, b), out.clone());
        out
    }

    fn translation(&self, v: BasisId) -> GradedVector {
        let (a, b) = self.factors(v);
        let mut out = self.tensor(&self.left.translation(a), &GradedVector::basis(b));
        out.add_vector(&self.tensor(&GradedVector::basis(a), &self.right.translation(b)), &Scalar::one());
        out
    }
}

impl VertexAlgebra for TensorVertexAlgebra {
    fn generators(&self) -> Vec<(String, GradedVector)> {
        let mut out = Vec::new();
        let (lv, rv) = (self.left.vacuum(), self.right.vacuum());
        for (name, s) in self.left.generators() {
            out.push((format!("{name}1"), self.tensor(&s, &GradedVector::basis(rv))));
        }
        for (name, s) in self.right.generators() {
            out.push((format!("{name}2"), self.tensor(&GradedVector::basis(lv), &s)));
        }
        out
    }

    fn cutoff(&self) -> Scalar {
        self.left.cutoff().min(self.right.cutoff())
    }
}
