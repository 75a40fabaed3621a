use std::collections::BTreeMap;
use std::fmt;

use crate::distribution::Coefficient;
use crate::numcore::{Parity, Scalar};

/// Index of a basis vector inside its space.
pub type BasisId = u32;

/// A finite linear combination of basis vectors.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct GradedVector {
    terms: BTreeMap<BasisId, Scalar>,
}

impl GradedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(id: BasisId) -> Self {
        Self::single(id, Scalar::one())
    }

    pub fn single(id: BasisId, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(id, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, id: BasisId) -> Scalar {
        self.terms.get(&id).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisId, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = BasisId> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, id: BasisId, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&id) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&id);
                }
            }
            None => {
                self.terms.insert(id, c.clone());
            }
        }
    }

    pub fn add_vector(&mut self, other: &GradedVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (id, x) in &other.terms {
            self.add_term(*id, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_vector(self, c);
        out
    }

    pub fn plus(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_vector(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_vector(other, &Scalar::from(-1));
        out
    }

    /// Renders with the given basis names, e.g. `2*a(-1)|0> + -1/2*|0>`.
    pub fn render_with(&self, name: impl Fn(BasisId) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(id, c)| {
                if c.is_one() {
                    name(*id)
                } else {
                    format!("{c}*{}", name(*id))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|i| format!("#{i}")))
    }
}

impl Coefficient for GradedVector {
    fn zero() -> Self {
        GradedVector::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        self.add_vector(other, c);
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// A weight-homogeneous operator given on finitely many basis vectors.
#[derive(Clone, PartialEq, Default)]
pub struct GradedMap {
    pub shift: Scalar,
    pub parity: Option<Parity>,
    action: BTreeMap<BasisId, GradedVector>,
}

impl GradedMap {
    pub fn new(shift: Scalar, parity: Parity) -> Self {
        GradedMap { shift, parity: Some(parity), action: BTreeMap::new() }
    }

    pub fn set(&mut self, v: BasisId, image: GradedVector) {
        if image.is_zero() {
            self.action.remove(&v);
        } else {
            self.action.insert(v, image);
        }
    }

    pub fn apply(&self, v: BasisId) -> GradedVector {
        self.action.get(&v).cloned().unwrap_or_default()
    }

    pub fn apply_vector(&self, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            if let Some(img) = self.action.get(&id) {
                out.add_vector(img, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.action.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (BasisId, &GradedVector)> {
        self.action.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.action.iter().map(|(k, v)| format!("#{k}->{v:?}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Coefficient for GradedMap {
    fn zero() -> Self {
        GradedMap::default()
    }
    fn is_zero(&self) -> bool {
        self.action.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if self.action.is_empty() {
            self.shift = other.shift.clone();
            self.parity = other.parity;
        }
        for (k, v) in &other.action {
            let mut cur = self.action.remove(k).unwrap_or_default();
            cur.add_vector(v, c);
            self.set(*k, cur);
        }
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// Where a vector of a given weight sits relative to a cutoff.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    /// No nonzero vector has this weight.
    Vanishing,
    /// Inside the truncation.
    Inside,
    /// Nonzero vectors exist, but beyond the truncation.
    Beyond,
}

/// A state space graded by weight, with finitely many basis vectors per weight.
pub trait GradedSpace: Send + Sync {
    fn weight(&self, v: BasisId) -> Scalar;
    fn parity(&self, v: BasisId) -> Parity;
    fn basis_name(&self, v: BasisId) -> String;
    /// Basis vectors inside the truncation at `cutoff`, by weight then construction order.
    fn basis_up_to(&self, cutoff: &Scalar) -> Vec<BasisId>;
    /// Closed weight interval kept at `cutoff`.
    fn weight_range(&self, cutoff: &Scalar) -> (Scalar, Scalar);
    /// Lowest weight carried by any nonzero vector, if bounded.
    fn min_weight(&self) -> Option<Scalar>;
    /// Highest weight carried by any nonzero vector, if bounded.
    fn max_weight(&self) -> Option<Scalar> {
        None
    }

    fn scope(&self, weight: &Scalar, cutoff: &Scalar) -> Scope {
        if self.min_weight().is_some_and(|m| weight < &m) || self.max_weight().is_some_and(|m| weight > &m) {
            return Scope::Vanishing;
        }
        let (lo, hi) = self.weight_range(cutoff);
        if weight >= &lo && weight <= &hi {
            Scope::Inside
        } else {
            Scope::Beyond
        }
    }

    fn render(&self, v: &GradedVector) -> String {
        v.render_with(|i| self.basis_name(i))
    }

    /// Weight shared by every component, if any.
    fn homogeneous_weight(&self, v: &GradedVector) -> Option<Scalar> {
        let mut it = v.support().map(|i| self.weight(i));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    fn vector_parity(&self, v: &GradedVector) -> Option<Parity> {
        let mut it = v.support().map(|i| self.parity(i));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

/// A graded space with vacuum, translation and an n-th product for every integer n.
pub trait VertexStructure: GradedSpace {
    fn label(&self) -> String;
    fn vacuum(&self) -> BasisId;
    /// An integer `N` with `a_(n) v = 0` for all `n >= N`.
    fn mode_bound(&self, a: BasisId, v: BasisId) -> i64;
    /// `a_(n) b`, exact at any weight.
    fn product(&self, a: BasisId, n: i64, b: BasisId) -> GradedVector;
    /// `T v`.
    fn translation(&self, v: BasisId) -> GradedVector;
}

/// Bilinear extension of the n-th product.
pub fn product_vec<S: VertexStructure + ?Sized>(s: &S, a: &GradedVector, n: i64, b: &GradedVector) -> GradedVector {
    let mut out = GradedVector::zero();
    for (ia, ca) in a.iter() {
        for (ib, cb) in b.iter() {
            let p = s.product(ia, n, ib);
            out.add_vector(&p, &(ca * cb));
        }
    }
    out
}

/// Linear extension of the translation operator.
pub fn translate_vec<S: VertexStructure + ?Sized>(s: &S, v: &GradedVector) -> GradedVector {
    let mut out = GradedVector::zero();
    for (id, c) in v.iter() {
        out.add_vector(&s.translation(id), c);
    }
    out
}

/// Divided power `T^(i) v = T^i v / i!`.
pub fn translate_divided<S: VertexStructure + ?Sized>(s: &S, v: &GradedVector, i: u32) -> GradedVector {
    let mut out = v.clone();
    for k in 1..=i {
        out = translate_vec(s, &out).scaled(&Scalar::ratio(1, k as i64));
    }
    out
}

/// Mode bound of a vector on a vector: max over components.
pub fn mode_bound_vec<S: VertexStructure + ?Sized>(s: &S, a: &GradedVector, v: &GradedVector) -> i64 {
    let mut best = i64::MIN;
    for ia in a.support() {
        for iv in v.support() {
            best = best.max(s.mode_bound(ia, iv));
        }
    }
    if best == i64::MIN {
        0
    } else {
        best
    }
}

/// Least `N` with `a_(n) b = 0` for all `n >= N`, computed exactly.
pub fn exact_mode_bound<S: VertexStructure + ?Sized>(s: &S, a: &GradedVector, b: &GradedVector) -> i64 {
    let mut n = mode_bound_vec(s, a, b);
    if a.is_zero() || b.is_zero() {
        return i64::MIN / 4;
    }
    while product_vec(s, a, n - 1, b).is_zero() {
        n -= 1;
    }
    n
}
