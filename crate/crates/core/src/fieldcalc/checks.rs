use std::collections::HashMap;
use std::fmt;

use dashmap::DashMap;

use super::space::{exact_mode_bound, product_vec, translate_divided, GradedVector, Scope, VertexStructure};
use crate::numcore::{binom_int, sign_of_int, supersign, Scalar};
use crate::report::{CheckReport, Failure, Outcome};

/// A box of integer indices, the same range in every coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexBox {
    pub lo: i64,
    pub hi: i64,
}

impl IndexBox {
    pub fn new(lo: i64, hi: i64) -> Self {
        IndexBox { lo, hi }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    /// Values at least `min`, or `min` alone when none qualify.
    pub fn values_from(&self, min: i64) -> Vec<i64> {
        let v: Vec<i64> = self.values().filter(|&x| x >= min).collect();
        if v.is_empty() {
            vec![min]
        } else {
            v
        }
    }
}

impl Default for IndexBox {
    fn default() -> Self {
        IndexBox { lo: -3, hi: 3 }
    }
}

impl fmt::Display for IndexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Identities checked on triples of states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Jacobi,
    Duality,
    Locality,
    AssociativityFormula,
    CommutatorFormula,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::Jacobi,
        IdentityKind::Duality,
        IdentityKind::Locality,
        IdentityKind::AssociativityFormula,
        IdentityKind::CommutatorFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Jacobi => "jacobi",
            IdentityKind::Duality => "duality",
            IdentityKind::Locality => "locality",
            IdentityKind::AssociativityFormula => "associativity_formula",
            IdentityKind::CommutatorFormula => "commutator_formula",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            IdentityKind::Jacobi => "holomorphic-jacobi",
            IdentityKind::Duality => "holomorphic-duality",
            IdentityKind::Locality => "holomorphic-locality",
            IdentityKind::AssociativityFormula => "associativity-formula",
            IdentityKind::CommutatorFormula => "commutator-formula",
        }
    }
}

/// Evaluates identities among states of a vertex structure up to a cutoff.
pub struct StateChecker<'a, S: VertexStructure + ?Sized> {
    space: &'a S,
    cutoff: Scalar,
    bounds: DashMap<(GradedVector, GradedVector), i64>,
}

fn term_coeff(top: i64, i: i64) -> Scalar {
    Scalar::from(binom_int(top, i))
}

impl<'a, S: VertexStructure + ?Sized> StateChecker<'a, S> {
    pub fn new(space: &'a S, cutoff: Scalar) -> Self {
        StateChecker { space, cutoff, bounds: DashMap::new() }
    }

    pub fn cutoff(&self) -> &Scalar {
        &self.cutoff
    }

    /// Least `N` with `a_(n) b = 0` for `n >= N`; the bound label is relative to the cutoff.
    pub fn o_prime(&self, a: &GradedVector, b: &GradedVector) -> i64 {
        let key = (a.clone(), b.clone());
        if let Some(x) = self.bounds.get(&key) {
            return *x;
        }
        let n = exact_mode_bound(self.space, a, b);
        self.bounds.insert(key, n);
        n
    }

    fn weight(&self, v: &GradedVector) -> Option<Scalar> {
        self.space.homogeneous_weight(v)
    }

    fn scope(&self, w: &Scalar) -> Scope {
        self.space.scope(w, &self.cutoff)
    }

    fn name(&self, v: &GradedVector) -> String {
        self.space.render(v)
    }

    fn compare(&self, lhs: Option<GradedVector>, rhs: Option<GradedVector>, witness: impl FnOnce() -> (String, String)) -> Outcome {
        match (lhs, rhs) {
            (Some(l), Some(r)) if l == r => Outcome::Pass,
            (Some(l), Some(r)) => {
                let (indices, witness) = witness();
                Outcome::Fail(Failure { indices, witness, lhs: self.name(&l), rhs: self.name(&r) })
            }
            _ => Outcome::Skipped,
        }
    }

    fn triple_witness(&self, a: &GradedVector, b: &GradedVector, c: &GradedVector) -> String {
        format!("a={}, b={}, c={}", self.name(a), self.name(b), self.name(c))
    }

    /// One evaluation of the named identity at `(r, s, t)`.
    pub fn evaluate(&self, kind: IdentityKind, a: &GradedVector, b: &GradedVector, c: &GradedVector, r: i64, s: i64, t: i64) -> Outcome {
        match Triple::new(self, a, b, c) {
            Some(mut tr) => tr.evaluate(kind, r, s, t),
            None => Outcome::Skipped,
        }
    }

    /// Index tuples `(r, s, t)` swept for an identity kind.
    pub fn index_tuples(&self, kind: IdentityKind, a: &GradedVector, b: &GradedVector, c: &GradedVector, bx: IndexBox) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        match kind {
            IdentityKind::Jacobi => {
                for r in bx.values() {
                    for s in bx.values() {
                        for t in bx.values() {
                            out.push((r, s, t));
                        }
                    }
                }
            }
            IdentityKind::Duality => {
                let ts = bx.values_from(self.o_prime(a, c));
                for r in bx.values() {
                    for s in bx.values() {
                        for &t in &ts {
                            out.push((r, s, t));
                        }
                    }
                }
            }
            IdentityKind::Locality => {
                let rs = bx.values_from(self.o_prime(a, b));
                for &r in &rs {
                    for s in bx.values() {
                        for t in bx.values() {
                            out.push((r, s, t));
                        }
                    }
                }
            }
            IdentityKind::AssociativityFormula => {
                for r in bx.values() {
                    for s in bx.values() {
                        out.push((r, s, 0));
                    }
                }
            }
            IdentityKind::CommutatorFormula => {
                for t in bx.values() {
                    for s in bx.values() {
                        out.push((0, s, t));
                    }
                }
            }
        }
        out
    }

    /// Sweeps one identity over an index box for a triple of states.
    pub fn check_identity(&self, kind: IdentityKind, a: &GradedVector, b: &GradedVector, c: &GradedVector, bx: IndexBox) -> CheckReport {
        self.check_identities(&[kind], a, b, c, bx).pop().expect("one report per kind")
    }

    /// Sweeps several identities over an index box, sharing intermediate products.
    pub fn check_identities(&self, kinds: &[IdentityKind], a: &GradedVector, b: &GradedVector, c: &GradedVector, bx: IndexBox) -> Vec<CheckReport> {
        let mut triple = Triple::new(self, a, b, c);
        kinds
            .iter()
            .map(|&kind| {
                let mut rep = CheckReport::new(kind.name(), kind.anchor(), &self.cutoff, bx);
                for (r, s, t) in self.index_tuples(kind, a, b, c, bx) {
                    rep.record(match triple.as_mut() {
                        Some(tr) => tr.evaluate(kind, r, s, t),
                        None => Outcome::Skipped,
                    });
                }
                rep
            })
            .collect()
    }

    /// `zeta b_(n) a = sum_i (-1)^(n+1+i) T^(i)(a_(n+i) b)` at one index.
    pub fn skew_symmetry(&self, a: &GradedVector, b: &GradedVector, n: i64) -> Outcome {
        let (Some(wa), Some(wb)) = (self.weight(a), self.weight(b)) else {
            return Outcome::Skipped;
        };
        let (Some(pa), Some(pb)) = (self.space.vector_parity(a), self.space.vector_parity(b)) else {
            return Outcome::Skipped;
        };
        match self.scope(&(&wa + &wb - n - 1)) {
            Scope::Beyond => return Outcome::Skipped,
            Scope::Vanishing => return Outcome::Pass,
            Scope::Inside => {}
        }
        let lhs = product_vec(self.space, b, n, a).scaled(&supersign(pa, pb));
        let mut rhs = GradedVector::zero();
        let top = self.o_prime(a, b) - n - 1;
        for i in 0..=top {
            if self.scope(&(&wa + &wb - n - i - 1)) == Scope::Beyond {
                return Outcome::Skipped;
            }
            let u = product_vec(self.space, a, n + i, b);
            if u.is_zero() {
                continue;
            }
            rhs.add_vector(&translate_divided(self.space, &u, i as u32), &Scalar::from(sign_of_int(n + 1 + i)));
        }
        self.compare(Some(lhs), Some(rhs), || {
            (format!("n={n}"), format!("a={}, b={}", self.name(a), self.name(b)))
        })
    }

    pub fn check_skew_symmetry(&self, a: &GradedVector, b: &GradedVector, bx: IndexBox) -> CheckReport {
        let mut rep = CheckReport::new("skew_symmetry", "holomorphic-skew-symmetry", &self.cutoff, bx);
        for n in bx.values() {
            rep.record(self.skew_symmetry(a, b, n));
        }
        rep
    }
}

/// Which pair of a triple a product involves.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Pair {
    AB,
    BC,
    AC,
}

/// Per-triple caches of the products entering the identities.
struct Triple<'c, 'a, S: VertexStructure + ?Sized> {
    chk: &'c StateChecker<'a, S>,
    a: &'c GradedVector,
    b: &'c GradedVector,
    c: &'c GradedVector,
    wa: Scalar,
    wb: Scalar,
    wc: Scalar,
    zeta: Scalar,
    scopes: HashMap<(Pair, i64), Scope>,
    totals: HashMap<i64, Scope>,
    bounds: HashMap<Pair, i64>,
    singles: HashMap<(Pair, i64), GradedVector>,
    iterated: HashMap<(i64, i64), GradedVector>,
    ordered: HashMap<(i64, i64), GradedVector>,
    reversed: HashMap<(i64, i64), GradedVector>,
}

impl<'c, 'a, S: VertexStructure + ?Sized> Triple<'c, 'a, S> {
    fn new(chk: &'c StateChecker<'a, S>, a: &'c GradedVector, b: &'c GradedVector, c: &'c GradedVector) -> Option<Self> {
        let sp = chk.space;
        let zeta = supersign(sp.vector_parity(a)?, sp.vector_parity(b)?);
        Some(Triple {
            chk,
            a,
            b,
            c,
            wa: chk.weight(a)?,
            wb: chk.weight(b)?,
            wc: chk.weight(c)?,
            zeta,
            scopes: HashMap::new(),
            totals: HashMap::new(),
            bounds: HashMap::new(),
            singles: HashMap::new(),
            iterated: HashMap::new(),
            ordered: HashMap::new(),
            reversed: HashMap::new(),
        })
    }

    fn operands(&self, pair: Pair) -> (&'c GradedVector, &'c GradedVector) {
        match pair {
            Pair::AB => (self.a, self.b),
            Pair::BC => (self.b, self.c),
            Pair::AC => (self.a, self.c),
        }
    }

    fn o_prime(&mut self, pair: Pair) -> i64 {
        if let Some(n) = self.bounds.get(&pair) {
            return *n;
        }
        let (x, y) = self.operands(pair);
        let n = self.chk.o_prime(x, y);
        self.bounds.insert(pair, n);
        n
    }

    /// Scope of `x_(n) y` for the given pair.
    fn scope(&mut self, pair: Pair, n: i64) -> Scope {
        if let Some(s) = self.scopes.get(&(pair, n)) {
            return *s;
        }
        let w = match pair {
            Pair::AB => &self.wa + &self.wb,
            Pair::BC => &self.wb + &self.wc,
            Pair::AC => &self.wa + &self.wc,
        } - n
            - 1;
        let s = self.chk.scope(&w);
        self.scopes.insert((pair, n), s);
        s
    }

    fn total_scope(&mut self, sum: i64) -> Scope {
        if let Some(s) = self.totals.get(&sum) {
            return *s;
        }
        let w = &self.wa + &self.wb + &self.wc - sum - 2;
        let s = self.chk.scope(&w);
        self.totals.insert(sum, s);
        s
    }

    fn single(&mut self, pair: Pair, n: i64) -> GradedVector {
        if let Some(v) = self.singles.get(&(pair, n)) {
            return v.clone();
        }
        let (x, y) = self.operands(pair);
        let v = product_vec(self.chk.space, x, n, y);
        self.singles.insert((pair, n), v.clone());
        v
    }

    /// Indices `0..=top` of a sum over `x_(base+i) y`, or `None` when some term is beyond the cutoff.
    fn admissible(&mut self, pair: Pair, base: i64, top: i64) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..=top {
            match self.scope(pair, base + i) {
                Scope::Beyond => return None,
                Scope::Vanishing => {}
                Scope::Inside => out.push(i),
            }
        }
        Some(out)
    }

    /// `sum_i C(t,i) (a_(r+i) b)_(s+t-i) c`
    fn iterate_sum(&mut self, r: i64, s: i64, t: i64) -> Option<GradedVector> {
        let mut top = self.o_prime(Pair::AB) - r - 1;
        if t >= 0 {
            top = top.min(t);
        }
        let mut out = GradedVector::zero();
        for i in self.admissible(Pair::AB, r, top)? {
            let key = (r + i, s + t - i);
            let term = match self.iterated.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let u = self.single(Pair::AB, key.0);
                    let v = product_vec(self.chk.space, &u, key.1, self.c);
                    self.iterated.insert(key, v.clone());
                    v
                }
            };
            out.add_vector(&term, &term_coeff(t, i));
        }
        Some(out)
    }

    /// `sum_i (-1)^i C(r,i) a_(t+r-i) b_(s+i) c`
    fn ordered_sum(&mut self, r: i64, s: i64, t: i64) -> Option<GradedVector> {
        let mut top = self.o_prime(Pair::BC) - s - 1;
        if r >= 0 {
            top = top.min(r);
        }
        let mut out = GradedVector::zero();
        for i in self.admissible(Pair::BC, s, top)? {
            let key = (t + r - i, s + i);
            let term = match self.ordered.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let x = self.single(Pair::BC, key.1);
                    let v = product_vec(self.chk.space, self.a, key.0, &x);
                    self.ordered.insert(key, v.clone());
                    v
                }
            };
            out.add_vector(&term, &(term_coeff(r, i) * sign_of_int(i)));
        }
        Some(out)
    }

    /// `zeta (-1)^r sum_i (-1)^i C(r,i) b_(s+r-i) a_(t+i) c`
    fn reversed_sum(&mut self, r: i64, s: i64, t: i64) -> Option<GradedVector> {
        let mut top = self.o_prime(Pair::AC) - t - 1;
        if r >= 0 {
            top = top.min(r);
        }
        let mut out = GradedVector::zero();
        for i in self.admissible(Pair::AC, t, top)? {
            let key = (s + r - i, t + i);
            let term = match self.reversed.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let y = self.single(Pair::AC, key.1);
                    let v = product_vec(self.chk.space, self.b, key.0, &y);
                    self.reversed.insert(key, v.clone());
                    v
                }
            };
            out.add_vector(&term, &(term_coeff(r, i) * sign_of_int(i + r) * &self.zeta));
        }
        Some(out)
    }

    fn commutator(&mut self, r: i64, s: i64, t: i64) -> Option<GradedVector> {
        let x = self.ordered_sum(r, s, t)?;
        let y = self.reversed_sum(r, s, t)?;
        Some(x.minus(&y))
    }

    fn evaluate(&mut self, kind: IdentityKind, r: i64, s: i64, t: i64) -> Outcome {
        match self.total_scope(r + s + t) {
            Scope::Beyond => return Outcome::Skipped,
            Scope::Vanishing => return Outcome::Pass,
            Scope::Inside => {}
        }
        let (lhs, rhs) = match kind {
            IdentityKind::Jacobi | IdentityKind::AssociativityFormula | IdentityKind::CommutatorFormula => {
                let Some(l) = self.iterate_sum(r, s, t) else {
                    return Outcome::Skipped;
                };
                (Some(l), self.commutator(r, s, t))
            }
            IdentityKind::Duality => {
                let Some(l) = self.iterate_sum(r, s, t) else {
                    return Outcome::Skipped;
                };
                (Some(l), self.ordered_sum(r, s, t))
            }
            IdentityKind::Locality => (self.commutator(r, s, t), Some(GradedVector::zero())),
        };
        let chk = self.chk;
        let (a, b, c) = (self.a, self.b, self.c);
        chk.compare(lhs, rhs, || (format!("(r,s,t)=({r},{s},{t})"), chk.triple_witness(a, b, c)))
    }
}
