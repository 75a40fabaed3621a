//! Exhaustive identity sweeps on tensor algebras, one factor at a time.
//!
//! Every two-variable side is a signed sum of tensors `x (x) xbar` of one-variable vectors,
//! so each factor is tabulated once and the pairs are combined densely.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use super::algebra::{TensorOpeAlgebra, Weight2};
use super::checks::{bracket_cross_check, check_skew_symmetry2, check_triple2, coeff, duality2, jacobi2, sum_range};
use super::field2::{additive_locality_order, AdditiveOrder, Field2};
use crate::fieldcalc::{exact_mode_bound, product_vec, BasisId, GradedVector, IndexBox, Scope};
use crate::numcore::{sign_of_int, Scalar};
use crate::report::{CheckReport, Failure, Outcome, Report, ReportHeader, MAX_WITNESSES};
use crate::vertexalg::VertexAlgebra;

/// Parameters of a two-variable sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep2Options {
    pub cutoff: Weight2,
    pub indices: IndexBox,
    /// Number of state triples drawn; all triples when `None`.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Sweep2Options {
    pub fn exhaustive(cutoff: Weight2, indices: IndexBox) -> Self {
        Sweep2Options { cutoff, indices, sample: None, seed: 0 }
    }
}

/// A vector of one weight space, with an `i64` copy when every coefficient is a small integer.
#[derive(Clone, Debug)]
struct Dense {
    exact: Vec<Scalar>,
    small: Option<Vec<i64>>,
}

const SMALL: i64 = 1 << 30;

impl Dense {
    fn new(exact: Vec<Scalar>) -> Self {
        let small = exact
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() < SMALL))
            .collect::<Option<Vec<i64>>>();
        Dense { exact, small }
    }
}

#[derive(Clone, Debug)]
enum Slot {
    Vanishing,
    Beyond,
    Inside { dim: usize, vecs: Vec<Dense> },
}

impl Slot {
    fn scope(&self) -> Scope {
        match self {
            Slot::Vanishing => Scope::Vanishing,
            Slot::Beyond => Scope::Beyond,
            Slot::Inside { .. } => Scope::Inside,
        }
    }
}

/// `sum_k sign_k x_k (x) y_k == 0` for equal-length term lists over fixed dimensions.
fn rank_sum_vanishes(d1: usize, d2: usize, terms: &[(i64, &Dense, &Dense)]) -> bool {
    if terms.iter().all(|(_, x, y)| x.small.is_some() && y.small.is_some()) {
        for i in 0..d1 {
            for j in 0..d2 {
                let mut acc: i128 = 0;
                for (s, x, y) in terms {
                    let (x, y) = (x.small.as_ref().expect("small"), y.small.as_ref().expect("small"));
                    acc += (*s as i128) * (x[i] as i128) * (y[j] as i128);
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        return true;
    }
    for i in 0..d1 {
        for j in 0..d2 {
            let acc: Scalar = terms.iter().map(|(s, x, y)| &x.exact[i] * &y.exact[j] * *s).sum();
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// One factor's basis with weight-space coordinates.
struct Coordinates {
    basis: Vec<BasisId>,
    weights: Vec<Scalar>,
    odd: Vec<bool>,
    position: HashMap<BasisId, usize>,
    dims: BTreeMap<Scalar, usize>,
}

impl Coordinates {
    fn new(v: &dyn VertexAlgebra, cutoff: &Scalar) -> Self {
        let basis = v.basis_up_to(cutoff);
        let mut dims: BTreeMap<Scalar, usize> = BTreeMap::new();
        let mut position = HashMap::new();
        for &id in &basis {
            let d = dims.entry(v.weight(id)).or_insert(0);
            position.insert(id, *d);
            *d += 1;
        }
        Coordinates {
            weights: basis.iter().map(|&id| v.weight(id)).collect(),
            odd: basis.iter().map(|&id| v.parity(id).is_odd()).collect(),
            basis,
            position,
            dims,
        }
    }

    fn dense(&self, x: &GradedVector, dim: usize) -> Dense {
        let mut out = vec![Scalar::zero(); dim];
        for (id, c) in x.iter() {
            out[self.position[&id]] = c.clone();
        }
        Dense::new(out)
    }
}

/// Products of one factor for a single triple `(a, b, c)`.
struct FactorTriple<'v> {
    v: &'v dyn VertexAlgebra,
    a: BasisId,
    b: BasisId,
    c: BasisId,
    ab: i64,
    bc: i64,
    ac: i64,
    ordered: HashMap<(i64, i64), GradedVector>,
    reversed: HashMap<(i64, i64), GradedVector>,
}

impl<'v> FactorTriple<'v> {
    fn ab_c(&self, p: i64, q: i64) -> GradedVector {
        let u = self.v.product(self.a, p, self.b);
        if u.is_zero() {
            return u;
        }
        product_vec(self.v, &u, q, &GradedVector::basis(self.c))
    }

    /// `a_(p) b_(q) c`
    fn a_b_c(&mut self, p: i64, q: i64) -> GradedVector {
        if let Some(x) = self.ordered.get(&(p, q)) {
            return x.clone();
        }
        let u = self.v.product(self.b, q, self.c);
        let x = if u.is_zero() { u } else { product_vec(self.v, &GradedVector::basis(self.a), p, &u) };
        self.ordered.insert((p, q), x.clone());
        x
    }

    /// `b_(q) a_(p) c`
    fn b_a_c(&mut self, q: i64, p: i64) -> GradedVector {
        if let Some(x) = self.reversed.get(&(q, p)) {
            return x.clone();
        }
        let u = self.v.product(self.a, p, self.c);
        let x = if u.is_zero() { u } else { product_vec(self.v, &GradedVector::basis(self.b), q, &u) };
        self.reversed.insert((q, p), x.clone());
        x
    }

    /// `a_[n b_m] c`, equal to `zeta b_(m) a_(n) c`, rebuilt from ordered products.
    fn bracket(&mut self, n: i64, m: i64) -> GradedVector {
        let h = self.ab.max(0);
        let mut out = GradedVector::zero();
        for j in 0..(self.ac - n).max(0) {
            let cj = coeff(-h, j);
            for i in 0..=h {
                let x = self.a_b_c(n + h - i + j, m + i - h - j);
                out.add_vector(&x, &(&cj * coeff(h, i) * sign_of_int(h + i + j)));
            }
        }
        out
    }

    fn iterate(&self, r: i64, s: i64, t: i64) -> GradedVector {
        let mut out = GradedVector::zero();
        for i in sum_range(t, self.ab - r) {
            out.add_vector(&self.ab_c(r + i, s + t - i), &coeff(t, i));
        }
        out
    }

    fn ordered_sum(&mut self, r: i64, s: i64, t: i64) -> GradedVector {
        let mut out = GradedVector::zero();
        for i in sum_range(r, self.bc - s) {
            let x = self.a_b_c(t + r - i, s + i);
            out.add_vector(&x, &(coeff(r, i) * sign_of_int(i)));
        }
        out
    }

    /// `(-1)^r` times the reversed and bracket sums.
    fn reversed_sums(&mut self, r: i64, s: i64, t: i64) -> (GradedVector, GradedVector) {
        let mut rev = GradedVector::zero();
        let mut brk = GradedVector::zero();
        for i in sum_range(r, self.ac - t) {
            let k = coeff(r, i) * sign_of_int(i + r);
            let x = self.b_a_c(s + r - i, t + i);
            rev.add_vector(&x, &k);
            brk.add_vector(&self.bracket(t + i, s + r - i), &k);
        }
        (rev, brk)
    }
}

/// Slots of one factor for every triple: Jacobi over box^3, duality and bracket checks over box^2.
struct FactorTable {
    coords: Coordinates,
    jacobi: Vec<Vec<Slot>>,
    duality: Vec<Vec<Slot>>,
    /// Holomorphic factor: `[a_[n b_m] c, b_m a_n c]`; antiholomorphic: `[a_n b_m c, b_[m a_n] c]`.
    cross: Vec<Vec<Slot>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Hol,
    Anti,
}

impl FactorTable {
    fn build(v: &dyn VertexAlgebra, cutoff: &Scalar, bx: IndexBox, side: Side) -> Self {
        let coords = Coordinates::new(v, cutoff);
        let n = coords.basis.len();
        let basis = &coords.basis;
        let bounds: Vec<i64> = (0..n * n)
            .into_par_iter()
            .map(|k| exact_mode_bound(v, &GradedVector::basis(basis[k / n]), &GradedVector::basis(basis[k % n])))
            .collect();
        let vals: Vec<i64> = bx.values().collect();
        let rows: Vec<(Vec<Slot>, Vec<Slot>, Vec<Slot>)> = (0..n * n * n)
            .into_par_iter()
            .map(|tau| {
                let (ia, ib, ic) = (tau / (n * n), (tau / n) % n, tau % n);
                let mut tr = FactorTriple {
                    v,
                    a: basis[ia],
                    b: basis[ib],
                    c: basis[ic],
                    ab: bounds[ia * n + ib],
                    bc: bounds[ib * n + ic],
                    ac: bounds[ia * n + ic],
                    ordered: HashMap::new(),
                    reversed: HashMap::new(),
                };
                let total = &coords.weights[ia] + &coords.weights[ib] + &coords.weights[ic];
                let slot = |w: Scalar, make: &mut dyn FnMut(usize) -> Vec<Dense>| match v.scope(&w, cutoff) {
                    Scope::Vanishing => Slot::Vanishing,
                    Scope::Beyond => Slot::Beyond,
                    Scope::Inside => {
                        let dim = coords.dims.get(&w).copied().unwrap_or(0);
                        Slot::Inside { dim, vecs: make(dim) }
                    }
                };
                let mut jac = Vec::with_capacity(vals.len().pow(3));
                for &r in &vals {
                    for &s in &vals {
                        for &t in &vals {
                            jac.push(slot(&total - r - s - t - 2, &mut |dim| {
                                let l = tr.iterate(r, s, t);
                                let o = tr.ordered_sum(r, s, t);
                                let (rev, brk) = tr.reversed_sums(r, s, t);
                                [l, o, brk, rev].iter().map(|x| coords.dense(x, dim)).collect()
                            }));
                        }
                    }
                }
                let t_dual = tr.ac.max(bx.lo);
                let mut dual = Vec::with_capacity(vals.len().pow(2));
                let mut cross = Vec::with_capacity(vals.len().pow(2));
                for &r in &vals {
                    for &s in &vals {
                        dual.push(slot(&total - r - s - t_dual - 2, &mut |dim| {
                            let l = tr.iterate(r, s, t_dual);
                            let o = tr.ordered_sum(r, s, t_dual);
                            vec![coords.dense(&l, dim), coords.dense(&o, dim)]
                        }));
                        // bracket pair at (n, m) = (r, s)
                        cross.push(slot(&total - r - s - 2, &mut |dim| {
                            let pair = match side {
                                Side::Hol => [tr.bracket(r, s), tr.b_a_c(s, r)],
                                Side::Anti => {
                                    let swapped = swapped_bracket(&tr, r, s);
                                    [tr.a_b_c(r, s), swapped]
                                }
                            };
                            pair.iter().map(|x| coords.dense(x, dim)).collect()
                        }));
                    }
                }
                (jac, dual, cross)
            })
            .collect();
        let mut table = FactorTable { coords, jacobi: Vec::new(), duality: Vec::new(), cross: Vec::new() };
        for (j, d, c) in rows {
            table.jacobi.push(j);
            table.duality.push(d);
            table.cross.push(c);
        }
        table
    }

    fn triple(&self, tau: usize) -> [usize; 3] {
        let n = self.coords.basis.len();
        [tau / (n * n), (tau / n) % n, tau % n]
    }

    fn parities(&self, tau: usize) -> [bool; 3] {
        self.triple(tau).map(|i| self.coords.odd[i])
    }
}

/// `b_[s a_t] c`: the bracket of the swapped pair, rebuilt from `b_(.) a_(.) c`.
fn swapped_bracket(tr: &FactorTriple<'_>, n: i64, m: i64) -> GradedVector {
    let v = tr.v;
    let ba = exact_mode_bound(v, &GradedVector::basis(tr.b), &GradedVector::basis(tr.a));
    let h = ba.max(0);
    let bc = tr.bc;
    let mut out = GradedVector::zero();
    for j in 0..(bc - m).max(0) {
        let cj = coeff(-h, j);
        for i in 0..=h {
            let u = v.product(tr.a, n + i - h - j, tr.c);
            if u.is_zero() {
                continue;
            }
            let x = product_vec(v, &GradedVector::basis(tr.b), m + h - i + j, &u);
            out.add_vector(&x, &(&cj * coeff(h, i) * sign_of_int(h + i + j)));
        }
    }
    out
}

fn zs(p: bool, q: bool) -> i64 {
    if p && q {
        -1
    } else {
        1
    }
}

/// Signs of one pair of factor triples, from the parities `(a, b, c)` and `(a', b', c')`.
struct PairSigns {
    /// `(a_(.) b)_(.) c`
    iterate: i64,
    /// `a_(.) b_(.) c`
    ordered: i64,
    /// `b_(.) a_(.) c`
    reversed: i64,
    /// `zeta(a (x) a', b (x) b')`
    zeta: i64,
}

impl PairSigns {
    fn new(p: [bool; 3], q: [bool; 3]) -> Self {
        let [a, b, c] = p;
        let [a2, b2, _] = q;
        PairSigns {
            iterate: zs(a2, b) * zs(a2 ^ b2, c),
            ordered: zs(b2, c) * zs(a2, b ^ c),
            reversed: zs(a2, c) * zs(b2, a ^ c),
            zeta: zs(a ^ a2, b ^ b2),
        }
    }
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    /// `(hol triple, hol slot, anti triple, anti slot)`
    witnesses: Vec<(usize, usize, usize, usize)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.passed += other.passed;
        self.failed += other.failed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self
    }
}

/// Counts the pairs of slots by combined scope: `(vanishing, inside, beyond)`.
fn scope_counts(hol: &[Vec<Slot>], anti: &[Vec<Slot>]) -> (usize, usize, usize) {
    let count = |t: &[Vec<Slot>]| {
        let mut c = [0usize; 3];
        for row in t {
            for s in row {
                c[match s.scope() {
                    Scope::Vanishing => 0,
                    Scope::Inside => 1,
                    Scope::Beyond => 2,
                }] += 1;
            }
        }
        c
    };
    let [hv, hi, hb] = count(hol);
    let [av, ai, ab] = count(anti);
    let (ht, at) = (hv + hi + hb, av + ai + ab);
    (hv * at + (ht - hv) * av, hi * ai, hb * (ai + ab) + hi * ab)
}

fn sweep_pairs(
    hol: &FactorTable,
    anti: &FactorTable,
    pick: impl Fn(&FactorTable) -> &Vec<Vec<Slot>> + Sync,
    holds: impl Fn(&PairSigns, usize, usize, &[Dense], &[Dense], usize, usize) -> bool + Sync,
) -> Tally {
    let (ht, at) = (pick(hol), pick(anti));
    let anti_inside: Vec<Vec<(usize, usize, &[Dense])>> = at
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter_map(|(k, s)| match s {
                    Slot::Inside { dim, vecs } => Some((k, *dim, vecs.as_slice())),
                    _ => None,
                })
                .collect()
        })
        .collect();
    (0..ht.len())
        .into_par_iter()
        .map(|tau| {
            let mut tally = Tally::default();
            let p = hol.parities(tau);
            for (tau2, inside2) in anti_inside.iter().enumerate() {
                if inside2.is_empty() {
                    continue;
                }
                let signs = PairSigns::new(p, anti.parities(tau2));
                for (k, s) in ht[tau].iter().enumerate() {
                    let Slot::Inside { dim, vecs } = s else { continue };
                    for &(k2, dim2, vecs2) in inside2 {
                        if holds(&signs, *dim, dim2, vecs, vecs2, k, k2) {
                            tally.passed += 1;
                        } else {
                            tally.failed += 1;
                            if tally.witnesses.len() < MAX_WITNESSES {
                                tally.witnesses.push((tau, k, tau2, k2));
                            }
                        }
                    }
                }
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

fn finish(
    mut rep: CheckReport,
    counts: (usize, usize, usize),
    tally: Tally,
    witness: impl Fn((usize, usize, usize, usize)) -> Outcome,
) -> CheckReport {
    rep.add_counts(counts.0 + tally.passed, 0, counts.2);
    for w in tally.witnesses.iter().copied() {
        match witness(w) {
            Outcome::Fail(f) => rep.record(Outcome::Fail(f)),
            _ => rep.record(Outcome::Fail(Failure {
                indices: format!("slots {w:?}"),
                witness: "factorized sweep disagrees with direct evaluation".into(),
                lhs: "-".into(),
                rhs: "-".into(),
            })),
        }
    }
    rep.add_counts(0, tally.failed - tally.witnesses.len(), 0);
    rep
}

/// Jacobi, duality and bracket checks over all basis triples, evaluated factor by factor.
pub fn factorized_sweep(alg: &TensorOpeAlgebra, cutoff: &Weight2, bx: IndexBox) -> [CheckReport; 3] {
    let hol = FactorTable::build(alg.hol().as_ref(), &cutoff.h, bx, Side::Hol);
    let anti = FactorTable::build(alg.anti().as_ref(), &cutoff.hbar, bx, Side::Anti);
    let vals: Vec<i64> = bx.values().collect();
    let w = vals.len();
    let ids = |tau: usize, tau2: usize| {
        let (x, y) = (hol.triple(tau), anti.triple(tau2));
        let id = |k: usize| alg.intern(hol.coords.basis[x[k]], anti.coords.basis[y[k]]);
        (id(0), id(1), id(2))
    };
    let decode3 = |k: usize| (vals[k / (w * w)], vals[(k / w) % w], vals[k % w]);
    let decode2 = |k: usize| (vals[k / w], vals[k % w]);

    let jac_tally = sweep_pairs(&hol, &anti, |t| &t.jacobi, |sg, d1, d2, x, y, _, _| {
        // x, y = [iterate, ordered, (-1)^r brackets, (-1)^r reversed]
        let kappa = sg.zeta * sg.reversed;
        rank_sum_vanishes(
            d1,
            d2,
            &[
                (sg.iterate, &x[0], &y[0]),
                (-sg.ordered, &x[1], &y[1]),
                (sg.ordered, &x[2], &y[1]),
                (sg.ordered, &x[1], &y[2]),
                (-kappa, &x[3], &y[3]),
            ],
        )
    });
    let jac = finish(
        CheckReport::new("jacobi2", "statistical-jacobi", cutoff, bx),
        scope_counts(&hol.jacobi, &anti.jacobi),
        jac_tally,
        |(tau, k, tau2, k2)| {
            let (a, b, c) = ids(tau, tau2);
            let (r, s, t) = decode3(k);
            let (rb, sb, tb) = decode3(k2);
            jacobi2(alg, a, b, c, (r, rb), (s, sb), (t, tb), cutoff)
        },
    );

    let dual_tally = sweep_pairs(&hol, &anti, |t| &t.duality, |sg, d1, d2, x, y, _, _| {
        rank_sum_vanishes(d1, d2, &[(sg.iterate, &x[0], &y[0]), (-sg.ordered, &x[1], &y[1])])
    });
    let dual = finish(
        CheckReport::new("duality2", "additive-duality", cutoff, bx),
        scope_counts(&hol.duality, &anti.duality),
        dual_tally,
        |(tau, k, tau2, k2)| {
            let (a, b, c) = ids(tau, tau2);
            let (r, s) = decode2(k);
            let (rb, sb) = decode2(k2);
            let t = super::checks::duality_order(alg, a, c, bx);
            duality2(alg, a, b, c, (r, rb), (s, sb), t, cutoff)
        },
    );

    let cross_tally = sweep_pairs(&hol, &anti, |t| &t.cross, |sg, d1, d2, x, y, _, _| {
        // left bracket: ordered sign; right bracket of (b, a): sign of b_(.) a_(.) c
        rank_sum_vanishes(d1, d2, &[(sg.ordered, &x[0], &y[0]), (-sg.zeta * sg.reversed, &x[1], &y[1])])
    });
    let cross = finish(
        CheckReport::new("bracket_cross_check", "bracket-symmetry", cutoff, bx),
        scope_counts(&hol.cross, &anti.cross),
        cross_tally,
        |(tau, k, tau2, k2)| {
            let (a, b, c) = ids(tau, tau2);
            let (n, m) = decode2(k);
            let (nb, mb) = decode2(k2);
            bracket_cross_check(alg, a, b, c, (n, nb), (m, mb), cutoff)
        },
    );
    [jac, dual, cross]
}

/// The same checks evaluated triple by triple through tensor products.
pub fn direct_sweep(alg: &TensorOpeAlgebra, triples: &[(BasisId, BasisId, BasisId)], cutoff: &Weight2, bx: IndexBox) -> [CheckReport; 3] {
    let parts: Vec<[CheckReport; 3]> = triples.par_iter().map(|&(a, b, c)| check_triple2(alg, a, b, c, bx, cutoff)).collect();
    let mut out = [
        CheckReport::new("jacobi2", "statistical-jacobi", cutoff, bx),
        CheckReport::new("duality2", "additive-duality", cutoff, bx),
        CheckReport::new("bracket_cross_check", "bracket-symmetry", cutoff, bx),
    ];
    for p in &parts {
        for (acc, x) in out.iter_mut().zip(p.iter()) {
            acc.absorb(x);
        }
    }
    out
}

fn generator_orders(alg: &std::sync::Arc<TensorOpeAlgebra>, opts: &Sweep2Options) -> CheckReport {
    let mut rep = CheckReport::new("additive_locality", "additive-locality", &opts.cutoff, opts.indices);
    let gens = alg.generators();
    let base = alg.candidate_cosets().into_iter().next().unwrap_or_else(Weight2::zero);
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let (Ok(fa), Ok(fb)) = (Field2::of_state(alg.clone(), a), Field2::of_state(alg.clone(), b)) else {
                rep.record(Outcome::Skipped);
                continue;
            };
            rep.record(match additive_locality_order(&fa, &fb, &base, &opts.cutoff, opts.indices) {
                Ok(AdditiveOrder::Order(_)) => Outcome::Pass,
                Ok(other) => Outcome::Fail(Failure {
                    indices: String::new(),
                    witness: format!("{na}, {nb}"),
                    lhs: other.to_string(),
                    rhs: "least order".into(),
                }),
                Err(e) => Outcome::Fail(Failure {
                    indices: String::new(),
                    witness: format!("{na}, {nb}"),
                    lhs: e.to_string(),
                    rhs: "least order".into(),
                }),
            });
        }
    }
    rep
}

/// Full two-variable report: generator orders, skew-symmetry, Jacobi, duality and bracket symmetry.
pub fn verify_ope2d(alg: std::sync::Arc<TensorOpeAlgebra>, opts: &Sweep2Options) -> Report {
    let basis = alg.basis_up_to(&opts.cutoff);
    let mut checks = vec![generator_orders(&alg, opts)];
    let skews: Vec<CheckReport> = basis
        .par_iter()
        .flat_map_iter(|&a| basis.iter().map(move |&b| (a, b)))
        .map(|(a, b)| check_skew_symmetry2(&alg, a, b, opts.indices, &opts.cutoff))
        .collect();
    let mut skew = CheckReport::new("skew_symmetry2", "statistical-skew-symmetry", &opts.cutoff, opts.indices);
    for s in &skews {
        skew.absorb(s);
    }
    checks.push(skew);
    let identities = match opts.sample {
        None => factorized_sweep(&alg, &opts.cutoff, opts.indices),
        Some(m) => {
            let mut triples = Vec::with_capacity(basis.len().pow(3));
            for &a in &basis {
                for &b in &basis {
                    for &c in &basis {
                        triples.push((a, b, c));
                    }
                }
            }
            let mut rng = StdRng::seed_from_u64(opts.seed);
            triples.shuffle(&mut rng);
            triples.truncate(m);
            direct_sweep(&alg, &triples, &opts.cutoff, opts.indices)
        }
    };
    checks.extend(identities);
    let header = ReportHeader {
        algebra: alg.label().to_string(),
        kind: "ope2d-tensor".into(),
        cutoff: opts.cutoff.to_string(),
        indices: opts.indices.to_string(),
        seed: opts.sample.map(|_| opts.seed),
    };
    Report::new(header, checks)
}
