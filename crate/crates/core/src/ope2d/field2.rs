use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use super::algebra::{Index2, TensorOpeAlgebra, Weight2};
use crate::distribution::{Distribution, Var, Window};
use crate::error::{Error, Result};
use crate::fieldcalc::{BasisId, GradedMap, GradedVector, IndexBox, Scope, MAX_LOCALITY_ORDER};
use crate::numcore::{binom, sign_of_int, supersign, Parity, Scalar};
use crate::report::{CheckReport, Failure, Outcome};

const NEVER: i64 = i64::MIN / 4;

enum Source2 {
    State(GradedVector),
    /// `a(w)_(n) b(w)` extracted from the numerator of order `order`.
    Taylor { a: Field2, b: Field2, n: Index2, order: Index2 },
    Zero,
}

struct Inner2 {
    alg: Arc<TensorOpeAlgebra>,
    weight: Weight2,
    parity: Parity,
    label: String,
    source: Source2,
    modes: DashMap<(Index2, BasisId), GradedVector>,
}

/// A field `a(z, zbar) = sum a_(n, nbar) z^(-n-1) zbar^(-nbar-1)` on a two-variable tensor algebra.
#[derive(Clone)]
pub struct Field2(Arc<Inner2>);

impl fmt::Debug for Field2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field2({}, weight {})", self.0.label, self.0.weight)
    }
}

/// `C(h, i) (-1)^i`, the coefficient of `z^(h-i) w^i` in `(z-w)^h` for `|z| > |w|`.
fn expansion_coeff(h: i64, i: i64) -> Scalar {
    binom(&Scalar::from(h), i) * sign_of_int(i)
}

/// Indices `i >= 0` of a binomial sum in `(z-w)^h`, cut at `limit` (exclusive).
fn binomial_range(h: i64, limit: i64) -> std::ops::Range<i64> {
    let top = if h >= 0 { (h + 1).min(limit) } else { limit };
    0..top.max(0)
}

impl Field2 {
    fn build(alg: Arc<TensorOpeAlgebra>, weight: Weight2, parity: Parity, label: String, source: Source2) -> Field2 {
        Field2(Arc::new(Inner2 { alg, weight, parity, label, source, modes: DashMap::new() }))
    }

    /// The field of a homogeneous state.
    pub fn of_state(alg: Arc<TensorOpeAlgebra>, state: &GradedVector) -> Result<Field2> {
        let weight = alg.homogeneous_weight2(state).ok_or_else(|| Error::NotHomogeneous(alg.render(state)))?;
        let parity = alg.vector_parity(state).ok_or_else(|| Error::NotHomogeneous(alg.render(state)))?;
        let label = alg.render(state);
        Ok(Self::build(alg, weight, parity, label, Source2::State(state.clone())))
    }

    pub fn of_basis(alg: Arc<TensorOpeAlgebra>, id: BasisId) -> Field2 {
        let weight = alg.weight2(id);
        let parity = alg.parity(id);
        let label = alg.basis_name(id);
        Self::build(alg, weight, parity, label, Source2::State(GradedVector::basis(id)))
    }

    /// The identity field `1(z, zbar)`.
    pub fn identity(alg: Arc<TensorOpeAlgebra>) -> Field2 {
        let vac = alg.vacuum();
        Self::of_basis(alg, vac)
    }

    pub fn algebra(&self) -> &Arc<TensorOpeAlgebra> {
        &self.0.alg
    }

    pub fn weight(&self) -> &Weight2 {
        &self.0.weight
    }

    pub fn parity(&self) -> Parity {
        self.0.parity
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// `a_(n, nbar) v`, exact.
    pub fn mode(&self, n: Index2, v: BasisId) -> GradedVector {
        let bound = self.bound(v);
        if n.0 >= bound.0 || n.1 >= bound.1 {
            return GradedVector::zero();
        }
        if let Some(x) = self.0.modes.get(&(n, v)) {
            return x.clone();
        }
        let out = self.compute_mode(n, v);
        self.0.modes.insert((n, v), out.clone());
        out
    }

    pub fn mode_vec(&self, n: Index2, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            out.add_vector(&self.mode(n, id), c);
        }
        out
    }

    /// `(N, Nbar)` with `a_(n, nbar) v = 0` once `n >= N` or `nbar >= Nbar`.
    pub fn bound(&self, v: BasisId) -> Index2 {
        let alg = &self.0.alg;
        match &self.0.source {
            Source2::State(s) => {
                let mut b = (NEVER, NEVER);
                for id in s.support() {
                    let x = alg.mode_bound2(id, v);
                    b = (b.0.max(x.0), b.1.max(x.1));
                }
                b
            }
            Source2::Taylor { .. } => match alg.min_weight2() {
                Some(m) => {
                    let wv = alg.weight2(v);
                    let h = (&self.0.weight.h + &wv.h - 1 - &m.h).floor_i64() + 1;
                    let hb = (&self.0.weight.hbar + &wv.hbar - 1 - &m.hbar).floor_i64() + 1;
                    (h, hb)
                }
                None => (i64::MAX / 4, i64::MAX / 4),
            },
            Source2::Zero => (NEVER, NEVER),
        }
    }

    pub fn bound_vec(&self, v: &GradedVector) -> Index2 {
        let mut b = (NEVER, NEVER);
        for id in v.support() {
            let x = self.bound(id);
            b = (b.0.max(x.0), b.1.max(x.1));
        }
        b
    }

    /// The state `a_(-1,-1) |0>`.
    pub fn state(&self) -> GradedVector {
        self.mode((-1, -1), self.0.alg.vacuum())
    }

    fn compute_mode(&self, n: Index2, v: BasisId) -> GradedVector {
        let alg = &self.0.alg;
        match &self.0.source {
            Source2::State(s) => {
                let mut out = GradedVector::zero();
                for (id, c) in s.iter() {
                    out.add_vector(&alg.product2(id, n, v), c);
                }
                out
            }
            Source2::Taylor { a, b, n: k, order } => taylor_mode(a, b, *k, *order, n, v),
            Source2::Zero => GradedVector::zero(),
        }
    }

    /// First `(n, v)` in the window where the modes of two fields differ.
    pub fn difference_on(&self, other: &Field2, cutoff: &Weight2, window: IndexBox) -> Option<(Index2, BasisId)> {
        for v in self.0.alg.basis_up_to(cutoff) {
            for n in window.values() {
                for nb in window.values() {
                    if self.mode((n, nb), v) != other.mode((n, nb), v) {
                        return Some(((n, nb), v));
                    }
                }
            }
        }
        None
    }
}

/// `N_(x, y) v` for the numerator `(z-w)^h a(z) b(w)` with `h` in `N^2`.
fn numerator_coefficient(a: &Field2, b: &Field2, h: Index2, x: Index2, y: Index2, v: BasisId) -> GradedVector {
    let yb = b.bound(v);
    let mut out = GradedVector::zero();
    for i in binomial_range(h.0, yb.0 - y.0) {
        let ci = expansion_coeff(h.0, i);
        for ib in binomial_range(h.1, yb.1 - y.1) {
            let inner = b.mode((y.0 + i, y.1 + ib), v);
            if inner.is_zero() {
                continue;
            }
            let c = &ci * expansion_coeff(h.1, ib);
            out.add_vector(&a.mode_vec((x.0 + h.0 - i, x.1 + h.1 - ib), &inner), &c);
        }
    }
    out
}

/// Mode `m` of `d_z^(h-1-n) ((z-w)^h a(z) b(w)) |_(z=w)` on `v`.
fn taylor_mode(a: &Field2, b: &Field2, n: Index2, h: Index2, m: Index2, v: BasisId) -> GradedVector {
    let k = (h.0 - 1 - n.0, h.1 - 1 - n.1);
    if k.0 < 0 || k.1 < 0 {
        return GradedVector::zero();
    }
    let xb = a.bound(v);
    let yb = b.bound(v);
    let mut out = GradedVector::zero();
    // x + y = m - 1 - k with x < X and y < Y
    for x in (m.0 - k.0 - yb.0)..xb.0 {
        let cx = binom(&Scalar::from(-x - 1), k.0);
        for xbar in (m.1 - k.1 - yb.1)..xb.1 {
            let c = &cx * binom(&Scalar::from(-xbar - 1), k.1);
            if c.is_zero() {
                continue;
            }
            let y = (m.0 - 1 - k.0 - x, m.1 - 1 - k.1 - xbar);
            out.add_vector(&numerator_coefficient(a, b, h, (x, xbar), y, v), &c);
        }
    }
    out
}

/// `(z-w)^h a(z) b(w) v - zeta (z-w)^h b(w) a(z) v` at the mode `(r, s)`, each product expanded
/// in the region of its operator order.
fn commutator_coefficient(a: &Field2, b: &Field2, h: Index2, r: Index2, s: Index2, v: BasisId) -> GradedVector {
    let first = numerator_coefficient(a, b, h, r, s, v);
    let xa = a.bound(v);
    let mut second = GradedVector::zero();
    // (z-w)^h = sum_i C(h,i) (-1)^(h+i) z^i w^(h-i) for |w| > |z|
    for i in binomial_range(h.0, xa.0 - r.0) {
        let ci = binom(&Scalar::from(h.0), i) * sign_of_int(h.0 + i);
        for ib in binomial_range(h.1, xa.1 - r.1) {
            let inner = a.mode((r.0 + i, r.1 + ib), v);
            if inner.is_zero() {
                continue;
            }
            let c = &ci * binom(&Scalar::from(h.1), ib) * sign_of_int(h.1 + ib);
            second.add_vector(&b.mode_vec((s.0 + h.0 - i, s.1 + h.1 - ib), &inner), &c);
        }
    }
    first.minus(&second.scaled(&supersign(a.parity(), b.parity())))
}

fn output_weight(a: &Field2, b: &Field2, r: Index2, s: Index2, v: BasisId) -> Weight2 {
    let wv = a.algebra().weight2(v);
    Weight2 {
        h: &a.weight().h + &b.weight().h + &wv.h - r.0 - s.0 - 2,
        hbar: &a.weight().hbar + &b.weight().hbar + &wv.hbar - r.1 - s.1 - 2,
    }
}

/// First witness where `(z-w)^h [a(z), b(w)]` fails to vanish, or `None` when it vanishes on the window.
pub fn commutator_witness(a: &Field2, b: &Field2, h: Index2, cutoff: &Weight2, window: IndexBox) -> Option<String> {
    let alg = a.algebra();
    for v in alg.basis_up_to(cutoff) {
        for r in window.values() {
            for rb in window.values() {
                for s in window.values() {
                    for sb in window.values() {
                        let (r2, s2) = ((r, rb), (s, sb));
                        if alg.scope2(&output_weight(a, b, r2, s2, v), cutoff) != Scope::Inside {
                            continue;
                        }
                        let c = commutator_coefficient(a, b, h, r2, s2, v);
                        if !c.is_zero() {
                            return Some(format!(
                                "modes {:?}, {:?} on {}: {}",
                                r2,
                                s2,
                                alg.basis_name(v),
                                alg.render(&c)
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Result of an additive-locality search in a coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdditiveOrder {
    /// The least order in the searched coset.
    Order(Weight2),
    /// Orders exist but none is least; the minimal ones are listed.
    NoMinimum(Vec<Weight2>),
    /// No searched order annihilates the commutator.
    NotLocal,
}

impl AdditiveOrder {
    pub fn order(&self) -> Option<&Weight2> {
        match self {
            AdditiveOrder::Order(h) => Some(h),
            _ => None,
        }
    }
}

impl fmt::Display for AdditiveOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdditiveOrder::Order(h) => write!(f, "{h}"),
            AdditiveOrder::NoMinimum(hs) => {
                let parts: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
                write!(f, "no least order; minimal {}", parts.join(", "))
            }
            AdditiveOrder::NotLocal => f.write_str("not additively local up to cutoff"),
        }
    }
}

fn integral(h: &Weight2) -> Result<Index2> {
    h.to_ints()
        .ok_or_else(|| Error::NonStatistical(format!("{h}: the modes of a tensor algebra are integral")))
}

/// Least `h` in `h0 + N^2` with `(z-w)^h [a(z), b(w)] = 0` on basis vectors up to the cutoff and modes in the window.
pub fn additive_locality_order(a: &Field2, b: &Field2, candidate: &Weight2, cutoff: &Weight2, window: IndexBox) -> Result<AdditiveOrder> {
    let h0 = integral(candidate)?;
    let alg = a.algebra();
    let m = alg.min_weight2().unwrap_or_else(Weight2::zero);
    let cap = MAX_LOCALITY_ORDER as i64;
    let top = (
        h0.0.max((&a.weight().h + &b.weight().h - &m.h).floor_i64() + 1).min(h0.0 + cap),
        h0.1.max((&a.weight().hbar + &b.weight().hbar - &m.hbar).floor_i64() + 1).min(h0.1 + cap),
    );
    let ok = |h: Index2| commutator_witness(a, b, h, cutoff, window).is_none();
    // staircase walk over the monotone set of annihilating orders
    let mut minimal = Vec::new();
    let mut best = top.1 + 1;
    for h in h0.0..=top.0 {
        let mut improved = false;
        while best > h0.1 && ok((h, best - 1)) {
            best -= 1;
            improved = true;
        }
        if improved {
            minimal.push(Weight2::new(h, best));
        }
        if best == h0.1 {
            break;
        }
    }
    Ok(match minimal.len() {
        0 => AdditiveOrder::NotLocal,
        1 => AdditiveOrder::Order(minimal.pop().expect("one element")),
        _ => AdditiveOrder::NoMinimum(minimal),
    })
}

/// One term `N(z, w) / (z-w)^h` of a reduced OPE.
#[derive(Clone, Debug)]
pub struct OpeTerm {
    pub pole: Weight2,
    /// Whether no `(z-w)^n`, `n` in `N^2 \ 0`, divides the numerator on the window.
    pub reduced: bool,
    a: Field2,
    b: Field2,
}

impl OpeTerm {
    fn order(&self) -> Index2 {
        self.pole.to_ints().expect("integral pole order")
    }

    /// `N_(x, y) v`, the coefficient of `z^(-x-1) zbar^(-xbar-1) w^(-y-1) wbar^(-ybar-1)`.
    pub fn coefficient(&self, x: Index2, y: Index2, v: BasisId) -> GradedVector {
        numerator_coefficient(&self.a, &self.b, self.order(), x, y, v)
    }

    /// The numerator over `(z, zbar, w, wbar)` with modes in the window, acting on basis vectors up to the cutoff.
    pub fn numerator(&self, cutoff: &Weight2, window: IndexBox) -> Distribution<GradedMap> {
        let vars = vec![Var::Z, Var::Zbar, Var::W, Var::Wbar];
        let mut out = Distribution::new(vars, Window::full(4));
        let alg = self.a.algebra();
        let basis = alg.basis_up_to(cutoff);
        let parity = self.a.parity() + self.b.parity();
        let vals: Vec<i64> = window.values().collect();
        for &x in &vals {
            for &xb in &vals {
                for &y in &vals {
                    for &yb in &vals {
                        let shift = &self.a.weight().h + &self.a.weight().hbar + &self.b.weight().h + &self.b.weight().hbar
                            - (x + xb + y + yb + 4);
                        let mut map = GradedMap::new(shift, parity);
                        for &v in &basis {
                            map.set(v, self.coefficient((x, xb), (y, yb), v));
                        }
                        let exps = [-x - 1, -xb - 1, -y - 1, -yb - 1].map(Scalar::from).to_vec();
                        out.add_term(exps, &map);
                    }
                }
            }
        }
        out
    }

    /// The leading term `N(w, w) = a_(h-1) b`.
    pub fn leading_term(&self) -> Field2 {
        let h = self.order();
        taylor_field(&self.a, &self.b, (h.0 - 1, h.1 - 1), h)
    }
}

fn reconstruction_witness(term: &OpeTerm, cutoff: &Weight2, window: IndexBox) -> Option<String> {
    let (a, b) = (&term.a, &term.b);
    let h = term.order();
    let alg = a.algebra();
    for v in alg.basis_up_to(cutoff) {
        let yb = b.bound(v);
        for r in window.values() {
            for rb in window.values() {
                for s in window.values() {
                    for sb in window.values() {
                        if alg.scope2(&output_weight(a, b, (r, rb), (s, sb), v), cutoff) != Scope::Inside {
                            continue;
                        }
                        // (z-w)^(-h) for |z| > |w| times the numerator
                        let mut rebuilt = GradedVector::zero();
                        for i in 0..(yb.0 - s).max(0) {
                            let ci = expansion_coeff(-h.0, i);
                            for ib in 0..(yb.1 - sb).max(0) {
                                let c = &ci * expansion_coeff(-h.1, ib);
                                let n = term.coefficient((r - h.0 - i, rb - h.1 - ib), (s + i, sb + ib), v);
                                rebuilt.add_vector(&n, &c);
                            }
                        }
                        let direct = a.mode_vec((r, rb), &b.mode((s, sb), v));
                        if rebuilt != direct {
                            return Some(format!("modes ({r},{rb}), ({s},{sb}) on {}", alg.basis_name(v)));
                        }
                    }
                }
            }
        }
    }
    None
}

/// The reduced OPE of `a(z) b(w)`, one term per coset that carries a nonzero product.
pub fn reduced_ope(a: &Field2, b: &Field2, candidates: &[Weight2], cutoff: &Weight2, window: IndexBox) -> Result<Vec<OpeTerm>> {
    let alg = a.algebra();
    let mut cosets: Vec<Index2> = Vec::new();
    for c in candidates {
        let h = integral(c)?;
        if !cosets.is_empty() {
            // all integral pairs lie in the single coset Z^2
            cosets[0] = (cosets[0].0.min(h.0), cosets[0].1.min(h.1));
        } else {
            cosets.push(h);
        }
    }
    let vanishing = alg.basis_up_to(cutoff).into_iter().all(|v| {
        let yb = b.bound(v);
        (window.lo..yb.0.min(window.hi + 1)).all(|s| {
            (window.lo..yb.1.min(window.hi + 1)).all(|sb| {
                let bv = b.mode((s, sb), v);
                window.values().all(|r| window.values().all(|rb| a.mode_vec((r, rb), &bv).is_zero()))
            })
        })
    });
    if vanishing {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    for base in cosets {
        let order = additive_locality_order(a, b, &Weight2::from(base), cutoff, window)?;
        let h = match order {
            AdditiveOrder::Order(h) => integral(&h)?,
            other => return Err(Error::NotAdditivelyLocal(format!("{}, {}: {other}", a.label(), b.label()))),
        };
        let reduced = commutator_witness(a, b, (h.0 - 1, h.1), cutoff, window).is_some()
            && commutator_witness(a, b, (h.0, h.1 - 1), cutoff, window).is_some();
        let term = OpeTerm { pole: Weight2::from(h), reduced, a: a.clone(), b: b.clone() };
        if let Some(w) = reconstruction_witness(&term, cutoff, window) {
            return Err(Error::IdentityViolation { identity: "reconstruction".into(), witness: w });
        }
        terms.push(term);
    }
    Ok(terms)
}

fn taylor_field(a: &Field2, b: &Field2, n: Index2, order: Index2) -> Field2 {
    let w = a.weight().plus(b.weight()).after_mode(n);
    let label = format!("{}_({},{}){}", a.label(), n.0, n.1, b.label());
    let source = Source2::Taylor { a: a.clone(), b: b.clone(), n, order };
    Field2::build(a.algebra().clone(), w, a.parity() + b.parity(), label, source)
}

/// `a(w)_(n) b(w)`, the Taylor coefficient of the reduced-OPE numerator.
pub fn nth_product2(a: &Field2, b: &Field2, n: Index2, cutoff: &Weight2, window: IndexBox) -> Result<Field2> {
    let alg = a.algebra();
    if alg.min_weight2().is_none() {
        return Err(Error::InvalidStructure("n-th products need weights bounded below".into()));
    }
    let terms = reduced_ope(a, b, &alg.candidate_cosets(), cutoff, window)?;
    Ok(match terms.first() {
        Some(t) => taylor_field(a, b, n, t.order()),
        None => {
            let w = a.weight().plus(b.weight()).after_mode(n);
            Field2::build(alg.clone(), w, a.parity() + b.parity(), "0".into(), Source2::Zero)
        }
    })
}

/// Koszul sign of reordering `parities` by `perm`.
fn koszul_sign(parities: &[Parity], perm: &[usize]) -> Scalar {
    let mut sign = Scalar::one();
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = sign * supersign(parities[perm[i]], parities[perm[j]]);
            }
        }
    }
    sign
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Monomials of `prod_{i<j} (z_i - z_j)^h_ij (zbar_i - zbar_j)^hbar_ij`, exponents `[z_0, zbar_0, z_1, ...]`.
fn common_numerator(k: usize, orders: &HashMap<(usize, usize), Index2>) -> HashMap<Vec<i64>, Scalar> {
    let mut poly: HashMap<Vec<i64>, Scalar> = HashMap::from([(vec![0; 2 * k], Scalar::one())]);
    for i in 0..k {
        for j in i + 1..k {
            let h = orders[&(i, j)];
            for (comp, hh) in [(0, h.0), (1, h.1)] {
                let mut next: HashMap<Vec<i64>, Scalar> = HashMap::new();
                for (e, c) in &poly {
                    for p in 0..=hh {
                        let mut e2 = e.clone();
                        e2[2 * i + comp] += hh - p;
                        e2[2 * j + comp] += p;
                        let x = next.entry(e2).or_insert_with(Scalar::zero);
                        *x += c * expansion_coeff(hh, p);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                poly = next;
            }
        }
    }
    poly
}

/// Checks that every reordering of the fields agrees with the common-numerator form once multiplied by
/// the pairwise additive-locality factors; undetermined when some pair is not additively local.
pub fn multiple_locality_check(fields: &[Field2], candidates: &[Weight2], cutoff: &Weight2, window: IndexBox) -> Result<CheckReport> {
    let mut rep = CheckReport::new("multiple_locality", "multiple-locality", cutoff, window);
    let k = fields.len();
    if k == 0 || k > 3 {
        return Ok(rep);
    }
    let base = candidates.first().cloned().unwrap_or_else(Weight2::zero);
    let mut orders = HashMap::new();
    for i in 0..k {
        for j in i + 1..k {
            match additive_locality_order(&fields[i], &fields[j], &base, cutoff, window)? {
                AdditiveOrder::Order(h) => {
                    orders.insert((i, j), integral(&h)?);
                }
                _ => return Ok(rep),
            }
        }
    }
    let poly = common_numerator(k, &orders);
    let parities: Vec<Parity> = fields.iter().map(|f| f.parity()).collect();
    let perms = permutations(k);
    let alg = fields[0].algebra();
    let vals: Vec<i64> = window.values().collect();
    let mut idx = vec![0usize; 2 * k];
    for v in alg.basis_up_to(cutoff) {
        loop {
            let modes: Vec<i64> = idx.iter().map(|&i| vals[i]).collect();
            let mut w = alg.weight2(v);
            for (f, pair) in fields.iter().zip(modes.chunks(2)) {
                w = w.plus(f.weight()).after_mode((pair[0], pair[1]));
            }
            if alg.scope2(&w, cutoff) == Scope::Beyond {
                rep.record(Outcome::Skipped);
            } else {
                let values: Vec<GradedVector> = perms
                    .iter()
                    .map(|perm| {
                        let mut total = GradedVector::zero();
                        for (e, c) in &poly {
                            let mut x = GradedVector::basis(v);
                            // rightmost operator acts first
                            for &f in perm.iter().rev() {
                                let n = (modes[2 * f] + e[2 * f], modes[2 * f + 1] + e[2 * f + 1]);
                                x = fields[f].mode_vec(n, &x);
                                if x.is_zero() {
                                    break;
                                }
                            }
                            total.add_vector(&x, c);
                        }
                        total.scaled(&koszul_sign(&parities, perm))
                    })
                    .collect();
                let first = &values[0];
                rep.record(match values.iter().position(|x| x != first) {
                    None => Outcome::Pass,
                    Some(p) => Outcome::Fail(Failure {
                        indices: format!("{modes:?}"),
                        witness: format!("order {:?} on {}", perms[p], alg.basis_name(v)),
                        lhs: alg.render(first),
                        rhs: alg.render(&values[p]),
                    }),
                });
            }
            // advance the odometer
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < vals.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(rep)
}

