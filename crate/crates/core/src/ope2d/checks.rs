use super::algebra::{Index2, TensorOpeAlgebra, Weight2};
use crate::fieldcalc::{BasisId, GradedVector, IndexBox, Scope};
use crate::numcore::{binom_int, sign_of_int, supersign, Scalar};
use crate::report::{CheckReport, Failure, Outcome};

pub(crate) fn coeff(top: i64, i: i64) -> Scalar {
    Scalar::from(binom_int(top, i))
}

/// Indices `0..=top` of a sum whose terms vanish from `limit` on, cut at `r` when `r >= 0`.
pub(crate) fn sum_range(r: i64, limit: i64) -> std::ops::RangeInclusive<i64> {
    let mut top = limit - 1;
    if r >= 0 {
        top = top.min(r);
    }
    0..=top
}

/// The additive order `(max(N, 0), max(Nbar, 0))` of two tensor basis states.
pub fn pair_order(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId) -> Index2 {
    let n = alg.exact_bound2(a, b);
    (n.0.max(0), n.1.max(0))
}

fn weight_of(alg: &TensorOpeAlgebra, ids: &[BasisId]) -> Weight2 {
    ids.iter().fold(Weight2::zero(), |w, &v| w.plus(&alg.weight2(v)))
}

fn ordered(alg: &TensorOpeAlgebra, a: BasisId, p: Index2, b: BasisId, q: Index2, c: BasisId) -> GradedVector {
    let x = alg.product2(b, q, c);
    if x.is_zero() {
        return x;
    }
    alg.product2_vec(&GradedVector::basis(a), p, &x)
}

fn zeta(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId) -> Scalar {
    supersign(alg.parity(a), alg.parity(b))
}

/// `a_([n, nbar) b_(m], mbar) c`: the reversed product `zeta b_(m, mbar) a_(n, nbar) c` rebuilt
/// from ordered products through the holomorphic order.
pub fn left_bracket(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, n: Index2, m: Index2) -> GradedVector {
    let h = pair_order(alg, a, b).0;
    let x = alg.exact_bound2(a, c).0;
    let mut out = GradedVector::zero();
    for j in 0..(x - n.0).max(0) {
        let cj = coeff(-h, j);
        for i in 0..=h {
            let k = &cj * coeff(h, i) * sign_of_int(h + i + j);
            out.add_vector(&ordered(alg, a, (n.0 + h - i + j, n.1), b, (m.0 + i - h - j, m.1), c), &k);
        }
    }
    out
}

/// `a_(n, [nbar) b_(m, mbar]) c`, the same through the antiholomorphic order.
pub fn right_bracket(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, n: Index2, m: Index2) -> GradedVector {
    let h = pair_order(alg, a, b).1;
    let x = alg.exact_bound2(a, c).1;
    let mut out = GradedVector::zero();
    for j in 0..(x - n.1).max(0) {
        let cj = coeff(-h, j);
        for i in 0..=h {
            let k = &cj * coeff(h, i) * sign_of_int(h + i + j);
            out.add_vector(&ordered(alg, a, (n.0, n.1 + h - i + j), b, (m.0, m.1 + i - h - j), c), &k);
        }
    }
    out
}

fn fail(indices: String, witness: String, lhs: String, rhs: String) -> Outcome {
    Outcome::Fail(Failure { indices, witness, lhs, rhs })
}

fn triple_name(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId) -> String {
    format!("a={}, b={}, c={}", alg.basis_name(a), alg.basis_name(b), alg.basis_name(c))
}

/// `a_[b] = zeta b_[a]`: the left bracket against the right bracket of the swapped pair.
pub fn bracket_cross_check(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, n: Index2, m: Index2, cutoff: &Weight2) -> Outcome {
    let w = weight_of(alg, &[a, b, c]).after_mode(n).after_mode(m).after_mode((-1, -1));
    match alg.scope2(&w, cutoff) {
        Scope::Beyond => return Outcome::Skipped,
        Scope::Vanishing => return Outcome::Pass,
        Scope::Inside => {}
    }
    let lhs = left_bracket(alg, a, b, c, n, m);
    let rhs = right_bracket(alg, b, a, c, m, n).scaled(&zeta(alg, a, b));
    if lhs == rhs {
        Outcome::Pass
    } else {
        fail(format!("n={n:?}, m={m:?}"), triple_name(alg, a, b, c), alg.render(&lhs), alg.render(&rhs))
    }
}

/// `zeta b_(n) a = sum_i (-1)^(n - nbar + i + ibar) T^(i) (a_(n+i) b)` at one index pair.
pub fn skew_symmetry2(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, n: Index2, cutoff: &Weight2) -> Outcome {
    let w = weight_of(alg, &[a, b]).after_mode(n);
    match alg.scope2(&w, cutoff) {
        Scope::Beyond => return Outcome::Skipped,
        Scope::Vanishing => return Outcome::Pass,
        Scope::Inside => {}
    }
    let lhs = alg.product2(b, n, a).scaled(&zeta(alg, a, b));
    let bound = alg.exact_bound2(a, b);
    let mut rhs = GradedVector::zero();
    for i in 0..(bound.0 - n.0).max(0) {
        for ib in 0..(bound.1 - n.1).max(0) {
            let u = alg.product2(a, (n.0 + i, n.1 + ib), b);
            if u.is_zero() {
                continue;
            }
            rhs.add_vector(&alg.translate2(&u, (i, ib)), &Scalar::from(sign_of_int(n.0 - n.1 + i + ib)));
        }
    }
    if lhs == rhs {
        Outcome::Pass
    } else {
        fail(
            format!("n={n:?}"),
            format!("a={}, b={}", alg.basis_name(a), alg.basis_name(b)),
            alg.render(&lhs),
            alg.render(&rhs),
        )
    }
}

pub fn check_skew_symmetry2(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, bx: IndexBox, cutoff: &Weight2) -> CheckReport {
    let mut rep = CheckReport::new("skew_symmetry2", "statistical-skew-symmetry", cutoff, bx);
    for n in bx.values() {
        for nb in bx.values() {
            rep.record(skew_symmetry2(alg, a, b, (n, nb), cutoff));
        }
    }
    rep
}

/// The five sides of the two-variable Jacobi identity for one triple and index triple.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiSides {
    /// `sum C(t,i) C(tbar,ibar) (a_(r+i) b)_(s+t-i) c`
    pub iterate: GradedVector,
    /// `sum (-1)^(i+ibar) C(r,i) C(rbar,ibar) a_(t+r-i) b_(s+i) c`
    pub ordered: GradedVector,
    /// `sum (-1)^(i+ibar) C(r,i) C(rbar,ibar) b_(s+r-i) a_(t+i) c`
    pub reversed: GradedVector,
    pub left_brackets: GradedVector,
    pub right_brackets: GradedVector,
}

impl JacobiSides {
    /// `ordered - (-1)^r left - (-1)^rbar right + zeta (-1)^(r - rbar) reversed`
    pub fn right_side(&self, r: Index2, zeta: &Scalar) -> GradedVector {
        let mut out = self.ordered.clone();
        out.add_vector(&self.left_brackets, &Scalar::from(-sign_of_int(r.0)));
        out.add_vector(&self.right_brackets, &Scalar::from(-sign_of_int(r.1)));
        out.add_vector(&self.reversed, &(zeta * sign_of_int(r.0 - r.1)));
        out
    }
}

/// Evaluates every side of the Jacobi identity directly through tensor products.
pub fn jacobi_sides(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, r: Index2, s: Index2, t: Index2) -> JacobiSides {
    let ab = alg.exact_bound2(a, b);
    let bc = alg.exact_bound2(b, c);
    let ac = alg.exact_bound2(a, c);
    let sign2 = |r: Index2, i: i64, ib: i64| coeff(r.0, i) * coeff(r.1, ib) * sign_of_int(i + ib);
    let mut iterate = GradedVector::zero();
    for i in sum_range(t.0, ab.0 - r.0) {
        for ib in sum_range(t.1, ab.1 - r.1) {
            let u = alg.product2(a, (r.0 + i, r.1 + ib), b);
            if u.is_zero() {
                continue;
            }
            let v = alg.product2_vec(&u, (s.0 + t.0 - i, s.1 + t.1 - ib), &GradedVector::basis(c));
            iterate.add_vector(&v, &(coeff(t.0, i) * coeff(t.1, ib)));
        }
    }
    let mut ord = GradedVector::zero();
    for i in sum_range(r.0, bc.0 - s.0) {
        for ib in sum_range(r.1, bc.1 - s.1) {
            let v = ordered(alg, a, (t.0 + r.0 - i, t.1 + r.1 - ib), b, (s.0 + i, s.1 + ib), c);
            ord.add_vector(&v, &sign2(r, i, ib));
        }
    }
    let mut rev = GradedVector::zero();
    for i in sum_range(r.0, ac.0 - t.0) {
        for ib in sum_range(r.1, ac.1 - t.1) {
            let v = ordered(alg, b, (s.0 + r.0 - i, s.1 + r.1 - ib), a, (t.0 + i, t.1 + ib), c);
            rev.add_vector(&v, &sign2(r, i, ib));
        }
    }
    let mut left = GradedVector::zero();
    for i in sum_range(r.0, ac.0 - t.0) {
        for ib in sum_range(r.1, bc.1 - s.1) {
            let v = left_bracket(alg, a, b, c, (t.0 + i, t.1 + r.1 - ib), (s.0 + r.0 - i, s.1 + ib));
            left.add_vector(&v, &sign2(r, i, ib));
        }
    }
    let mut right = GradedVector::zero();
    for i in sum_range(r.0, bc.0 - s.0) {
        for ib in sum_range(r.1, ac.1 - t.1) {
            let v = right_bracket(alg, a, b, c, (t.0 + r.0 - i, t.1 + ib), (s.0 + i, s.1 + r.1 - ib));
            right.add_vector(&v, &sign2(r, i, ib));
        }
    }
    JacobiSides { iterate, ordered: ord, reversed: rev, left_brackets: left, right_brackets: right }
}

fn final_scope(alg: &TensorOpeAlgebra, ids: [BasisId; 3], r: Index2, s: Index2, t: Index2, cutoff: &Weight2) -> Scope {
    let w = weight_of(alg, &ids).after_mode(r).after_mode(s).after_mode(t).after_mode((-2, -2));
    alg.scope2(&w, cutoff)
}

fn index_text(r: Index2, s: Index2, t: Index2) -> String {
    format!("r=({},{}), s=({},{}), t=({},{})", r.0, r.1, s.0, s.1, t.0, t.1)
}

/// The four-term Jacobi identity at one index triple.
pub fn jacobi2(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, r: Index2, s: Index2, t: Index2, cutoff: &Weight2) -> Outcome {
    match final_scope(alg, [a, b, c], r, s, t, cutoff) {
        Scope::Beyond => return Outcome::Skipped,
        Scope::Vanishing => return Outcome::Pass,
        Scope::Inside => {}
    }
    let sides = jacobi_sides(alg, a, b, c, r, s, t);
    let rhs = sides.right_side(r, &zeta(alg, a, b));
    if sides.iterate == rhs {
        Outcome::Pass
    } else {
        fail(index_text(r, s, t), triple_name(alg, a, b, c), alg.render(&sides.iterate), alg.render(&rhs))
    }
}

/// `(t, tbar)` for the duality check: the bound of `a` on `c`, or the box floor when `a_(n) c` never occurs.
pub fn duality_order(alg: &TensorOpeAlgebra, a: BasisId, c: BasisId, bx: IndexBox) -> Index2 {
    let x = alg.exact_bound2(a, c);
    (x.0.max(bx.lo), x.1.max(bx.lo))
}

/// Duality: the iterate equals the ordered side once `t` reaches the bound of `a` on `c`.
pub fn duality2(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, r: Index2, s: Index2, t: Index2, cutoff: &Weight2) -> Outcome {
    match final_scope(alg, [a, b, c], r, s, t, cutoff) {
        Scope::Beyond => return Outcome::Skipped,
        Scope::Vanishing => return Outcome::Pass,
        Scope::Inside => {}
    }
    let sides = jacobi_sides(alg, a, b, c, r, s, t);
    if sides.iterate == sides.ordered {
        Outcome::Pass
    } else {
        fail(index_text(r, s, t), triple_name(alg, a, b, c), alg.render(&sides.iterate), alg.render(&sides.ordered))
    }
}

/// All two-variable identities for one triple of basis states over the index box.
pub fn check_triple2(alg: &TensorOpeAlgebra, a: BasisId, b: BasisId, c: BasisId, bx: IndexBox, cutoff: &Weight2) -> [CheckReport; 3] {
    let mut jac = CheckReport::new("jacobi2", "statistical-jacobi", cutoff, bx);
    let mut dual = CheckReport::new("duality2", "additive-duality", cutoff, bx);
    let mut cross = CheckReport::new("bracket_cross_check", "bracket-symmetry", cutoff, bx);
    let vals: Vec<i64> = bx.values().collect();
    for &r0 in &vals {
        for &r1 in &vals {
            for &s0 in &vals {
                for &s1 in &vals {
                    let (r, s) = ((r0, r1), (s0, s1));
                    for &t0 in &vals {
                        for &t1 in &vals {
                            let t = (t0, t1);
                            jac.record(jacobi2(alg, a, b, c, r, s, t, cutoff));
                        }
                    }
                    dual.record(duality2(alg, a, b, c, r, s, duality_order(alg, a, c, bx), cutoff));
                    cross.record(bracket_cross_check(alg, a, b, c, r, s, cutoff));
                }
            }
        }
    }
    [jac, dual, cross]
}
