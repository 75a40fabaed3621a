use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use super::space::{BasisId, GradedMap, GradedVector, Scope, VertexStructure};
use crate::error::{Error, Result};
use crate::numcore::{binom_int, sign_of_int, supersign, Parity, Scalar};

/// Sentinel bound for fields that vanish on a vector.
const NEVER: i64 = i64::MIN / 4;

enum Source {
    State(GradedVector),
    Product { a: Field, b: Field, n: i64 },
    Derivative(Field),
    Combination(Vec<(Scalar, Field)>),
}

struct Inner {
    space: Arc<dyn VertexStructure>,
    weight: Scalar,
    parity: Parity,
    label: String,
    source: Source,
    modes: DashMap<(i64, BasisId), GradedVector>,
    bounds: DashMap<BasisId, i64>,
}

/// A weight-homogeneous field on a state space, with lazily cached modes.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({}, weight {})", self.0.label, self.0.weight)
    }
}

impl Field {
    fn build(space: Arc<dyn VertexStructure>, weight: Scalar, parity: Parity, label: String, source: Source) -> Field {
        Field(Arc::new(Inner {
            space,
            weight,
            parity,
            label,
            source,
            modes: DashMap::new(),
            bounds: DashMap::new(),
        }))
    }

    /// The field `Y(a, z)` of a homogeneous state.
    pub fn of_state(space: Arc<dyn VertexStructure>, state: &GradedVector) -> Result<Field> {
        let weight = space
            .homogeneous_weight(state)
            .ok_or_else(|| Error::NotHomogeneous(space.render(state)))?;
        let parity = space.vector_parity(state).ok_or_else(|| Error::NotHomogeneous(space.render(state)))?;
        let label = format!("Y({})", space.render(state));
        Ok(Self::build(space, weight, parity, label, Source::State(state.clone())))
    }

    /// The field of a basis vector.
    pub fn of_basis(space: Arc<dyn VertexStructure>, id: BasisId) -> Field {
        let weight = space.weight(id);
        let parity = space.parity(id);
        let label = space.basis_name(id);
        Self::build(space, weight, parity, label, Source::State(GradedVector::basis(id)))
    }

    /// The identity field `1(z)`.
    pub fn identity(space: Arc<dyn VertexStructure>) -> Field {
        let vac = space.vacuum();
        Self::of_basis(space, vac)
    }

    pub fn space(&self) -> &Arc<dyn VertexStructure> {
        &self.0.space
    }

    pub fn weight(&self) -> &Scalar {
        &self.0.weight
    }

    pub fn parity(&self) -> Parity {
        self.0.parity
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> Field {
        let src = Source::Combination(vec![(Scalar::one(), self.clone())]);
        Self::build(self.0.space.clone(), self.0.weight.clone(), self.0.parity, label.into(), src)
    }

    /// `a_(n) v`, exact.
    pub fn mode(&self, n: i64, v: BasisId) -> GradedVector {
        if n >= self.bound(v) {
            return GradedVector::zero();
        }
        if let Some(x) = self.0.modes.get(&(n, v)) {
            return x.clone();
        }
        let out = self.compute_mode(n, v);
        self.0.modes.insert((n, v), out.clone());
        out
    }

    /// `a_(n)` applied to a vector.
    pub fn mode_vec(&self, n: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            out.add_vector(&self.mode(n, id), c);
        }
        out
    }

    /// `a_(n) v`, refusing vectors or results beyond the truncation.
    pub fn mode_capped(&self, n: i64, v: BasisId, cutoff: &Scalar) -> Result<GradedVector> {
        let sp = &self.0.space;
        let out_weight = self.output_weight(n, &sp.weight(v));
        if sp.scope(&sp.weight(v), cutoff) == Scope::Beyond || sp.scope(&out_weight, cutoff) == Scope::Beyond {
            return Err(Error::AboveCutoff {
                cutoff: cutoff.to_string(),
                what: format!("{}_({n}) {}", self.0.label, sp.basis_name(v)),
            });
        }
        Ok(self.mode(n, v))
    }

    /// Weight of `a_(n) v` for `v` of weight `w`.
    pub fn output_weight(&self, n: i64, w: &Scalar) -> Scalar {
        &self.0.weight + w - n - 1
    }

    /// The mode `a_(n)` as an operator on all basis vectors inside the cutoff.
    pub fn mode_map(&self, n: i64, cutoff: &Scalar) -> GradedMap {
        let sp = &self.0.space;
        let mut map = GradedMap::new(&self.0.weight - n - 1, self.0.parity);
        for v in sp.basis_up_to(cutoff) {
            map.set(v, self.mode(n, v));
        }
        map
    }

    /// The state `a_(-1) 1`.
    pub fn state(&self) -> GradedVector {
        self.mode(-1, self.0.space.vacuum())
    }

    /// An integer `N` with `a_(n) v = 0` for all `n >= N`.
    pub fn bound(&self, v: BasisId) -> i64 {
        if let Some(b) = self.0.bounds.get(&v) {
            return *b;
        }
        let mut b = self.compute_bound(v);
        if let Some(m) = self.0.space.min_weight() {
            let by_weight = (&self.0.weight + self.0.space.weight(v) - 1 - m).floor_i64() + 1;
            b = b.min(by_weight);
        }
        self.0.bounds.insert(v, b);
        b
    }

    /// Bound on a vector: max over its components.
    pub fn bound_vec(&self, v: &GradedVector) -> i64 {
        v.support().map(|id| self.bound(id)).max().unwrap_or(NEVER)
    }

    /// Integer modes `n` with `a_(n) v` possibly nonzero and inside the cutoff.
    pub fn mode_range(&self, v: BasisId, cutoff: &Scalar) -> Option<(i64, i64)> {
        let sp = &self.0.space;
        let (lo_w, hi_w) = sp.weight_range(cutoff);
        let base = &self.0.weight + sp.weight(v) - 1;
        let lo = (&base - &hi_w).ceil_i64();
        let hi = (&base - &lo_w).floor_i64().min(self.bound(v) - 1);
        (lo <= hi).then_some((lo, hi))
    }

    fn compute_mode(&self, n: i64, v: BasisId) -> GradedVector {
        let sp = &self.0.space;
        match &self.0.source {
            Source::State(s) => {
                let mut out = GradedVector::zero();
                for (id, c) in s.iter() {
                    out.add_vector(&sp.product(id, n, v), c);
                }
                out
            }
            Source::Derivative(a) => a.mode(n - 1, v).scaled(&Scalar::from(-n)),
            Source::Combination(parts) => {
                let mut out = GradedVector::zero();
                for (c, f) in parts {
                    out.add_vector(&f.mode(n, v), c);
                }
                out
            }
            Source::Product { a, b, n: k } => product_mode(a, b, *k, n, v),
        }
    }

    fn compute_bound(&self, v: BasisId) -> i64 {
        let sp = &self.0.space;
        match &self.0.source {
            Source::State(s) => s.support().map(|id| sp.mode_bound(id, v)).max().unwrap_or(NEVER),
            Source::Derivative(a) => {
                let b = a.bound(v);
                if b == 0 {
                    0
                } else {
                    b.saturating_add(1)
                }
            }
            Source::Combination(parts) => parts.iter().map(|(_, f)| f.bound(v)).max().unwrap_or(NEVER),
            Source::Product { a, b, n: k } => {
                let mut m = b.bound(v);
                let top = second_sum_top(a, *k, v);
                for i in 0..top {
                    let av = a.mode(i, v);
                    if let Some(bb) = av.support().map(|u| b.bound(u)).max() {
                        m = m.max(bb - k + i);
                    }
                }
                m
            }
        }
    }

    /// `d/dz a(z)`.
    pub fn derivative(&self) -> Field {
        Self::build(
            self.0.space.clone(),
            &self.0.weight + 1,
            self.0.parity,
            format!("d({})", self.0.label),
            Source::Derivative(self.clone()),
        )
    }

    /// Divided power `d^(k)/dz^(k) a(z)`.
    pub fn derivative_divided(&self, k: u32) -> Field {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative();
        }
        if k > 1 {
            f.scale(&crate::numcore::factorial(k).recip())
        } else {
            f
        }
    }

    /// `a(z)_(n) b(z)`.
    pub fn nth_product(&self, b: &Field, n: i64) -> Field {
        Self::build(
            self.0.space.clone(),
            &self.0.weight + &b.0.weight - n - 1,
            self.0.parity + b.0.parity,
            format!("({})_({n})({})", self.0.label, b.0.label),
            Source::Product { a: self.clone(), b: b.clone(), n },
        )
    }

    pub fn scale(&self, c: &Scalar) -> Field {
        Self::build(
            self.0.space.clone(),
            self.0.weight.clone(),
            self.0.parity,
            format!("{c}*{}", self.0.label),
            Source::Combination(vec![(c.clone(), self.clone())]),
        )
    }

    /// `sum c_i f_i`; all terms must share weight and parity.
    pub fn combination(parts: Vec<(Scalar, Field)>) -> Result<Field> {
        let first = parts.first().ok_or_else(|| Error::InvalidStructure("empty combination".into()))?;
        let (w, p, space) = (first.1 .0.weight.clone(), first.1 .0.parity, first.1 .0.space.clone());
        if parts.iter().any(|(_, f)| f.0.weight != w || f.0.parity != p) {
            return Err(Error::NotHomogeneous("combination of fields of different weight".into()));
        }
        let label = parts.iter().map(|(c, f)| format!("{c}*{}", f.0.label)).collect::<Vec<_>>().join(" + ");
        Ok(Self::build(space, w, p, label, Source::Combination(parts)))
    }

    pub fn minus(&self, other: &Field) -> Result<Field> {
        Field::combination(vec![(Scalar::one(), self.clone()), (Scalar::from(-1), other.clone())])
    }

    /// First `(n, v)` inside the cutoff where the two fields differ.
    pub fn difference_up_to(&self, other: &Field, cutoff: &Scalar) -> Option<(i64, BasisId)> {
        let sp = self.0.space.clone();
        for v in sp.basis_up_to(cutoff) {
            let r1 = self.mode_range(v, cutoff);
            let r2 = other.mode_range(v, cutoff);
            let lo = [r1, r2].iter().flatten().map(|r| r.0).min();
            let hi = [r1, r2].iter().flatten().map(|r| r.1).max();
            if let (Some(lo), Some(hi)) = (lo, hi) {
                for n in lo..=hi {
                    if self.mode(n, v) != other.mode(n, v) {
                        return Some((n, v));
                    }
                }
            }
        }
        None
    }

    pub fn agrees_up_to(&self, other: &Field, cutoff: &Scalar) -> bool {
        self.difference_up_to(other, cutoff).is_none()
    }

    /// Whether every mode vanishes on every basis vector inside the cutoff.
    pub fn is_zero_up_to(&self, cutoff: &Scalar) -> bool {
        let sp = self.0.space.clone();
        sp.basis_up_to(cutoff).into_iter().all(|v| match self.mode_range(v, cutoff) {
            Some((lo, hi)) => (lo..=hi).all(|n| self.mode(n, v).is_zero()),
            None => true,
        })
    }
}

fn second_sum_top(a: &Field, k: i64, v: BasisId) -> i64 {
    let top = a.bound(v).max(0);
    if k >= 0 {
        top.min(k + 1)
    } else {
        top
    }
}

/// `(a_(k) b)_(m) v = sum_i (-1)^i C(k,i) [a_(k-i) b_(m+i) v - z (-1)^k b_(k+m-i) a_(i) v]`.
fn product_mode(a: &Field, b: &Field, k: i64, m: i64, v: BasisId) -> GradedVector {
    let mut out = GradedVector::zero();
    let zeta = supersign(a.parity(), b.parity());
    let first_top = {
        let t = b.bound(v) - m;
        if k >= 0 {
            t.min(k + 1)
        } else {
            t
        }
    };
    for i in 0..first_top.max(0) {
        let c = Scalar::from(binom_int(k, i) * sign_of_int(i));
        if c.is_zero() {
            continue;
        }
        let bv = b.mode(m + i, v);
        if bv.is_zero() {
            continue;
        }
        out.add_vector(&a.mode_vec(k - i, &bv), &c);
    }
    let sign = &zeta * Scalar::from(sign_of_int(k));
    for i in 0..second_sum_top(a, k, v) {
        let c = Scalar::from(binom_int(k, i) * sign_of_int(i));
        if c.is_zero() {
            continue;
        }
        let av = a.mode(i, v);
        if av.is_zero() {
            continue;
        }
        out.add_vector(&b.mode_vec(k + m - i, &av), &(-(&c * &sign)));
    }
    out
}
