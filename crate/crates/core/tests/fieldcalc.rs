use std::sync::Arc;

use opecalc::fieldcalc::{
    dong_bound, locality_order, normal_ordered, nth_product, ope_singular, product_vec, translate_vec, Field,
    GradedVector, IdentityKind, IndexBox, LocalityOrder, StateChecker,
};
use opecalc::numcore::{binom, Scalar};
use opecalc::report::Outcome;
use opecalc::vertexalg::{catalog, poly_comm, VertexAlgebra};
use proptest::prelude::*;

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn algebra(v: impl VertexAlgebra + 'static) -> Arc<dyn VertexAlgebra> {
    Arc::new(v)
}

fn generator(v: &Arc<dyn VertexAlgebra>, i: usize) -> Field {
    Field::of_state(v.clone(), &v.generators()[i].1).unwrap()
}

#[test]
fn locality_orders_of_catalog_fields() {
    let cutoff = s(4);
    let heis = algebra(catalog::heisenberg(s(1), cutoff.clone()));
    let a = generator(&heis, 0);
    let id = Field::identity(heis.clone());
    assert_eq!(locality_order(&id, &a, &cutoff), LocalityOrder::Vanishing);
    assert_eq!(locality_order(&id, &a, &cutoff).order(), Some(0));
    assert_eq!(locality_order(&a, &a, &cutoff), LocalityOrder::Order(2));

    let cliff = algebra(catalog::clifford1(s(1), cutoff.clone()));
    let psi = generator(&cliff, 0);
    assert_eq!(locality_order(&psi, &psi, &cutoff), LocalityOrder::Order(1));

    let vir = algebra(catalog::virasoro(Scalar::ratio(1, 2), cutoff.clone()));
    let l = generator(&vir, 0);
    assert_eq!(locality_order(&l, &l, &cutoff), LocalityOrder::Order(4));

    let comm = algebra(poly_comm(4));
    let x = generator(&comm, 0);
    assert_eq!(locality_order(&x, &x, &cutoff), LocalityOrder::Vanishing);
    assert!(ope_singular(&x, &x, &cutoff).is_empty());
}

#[test]
fn nth_products_of_generators() {
    let cutoff = s(4);
    let k = Scalar::ratio(3, 2);
    let heis = algebra(catalog::heisenberg(k.clone(), cutoff.clone()));
    let a = generator(&heis, 0);
    let vac = GradedVector::basis(heis.vacuum());
    assert_eq!(nth_product(&a, &a, 1).state(), vac.scaled(&k));
    assert!(nth_product(&a, &a, 0).state().is_zero());
    assert!(nth_product(&a, &a, 2).state().is_zero());

    let id = Field::identity(heis.clone());
    for n in -3..=3 {
        let want = if n == -1 { a.state() } else { GradedVector::zero() };
        assert_eq!(nth_product(&id, &a, n).state(), want, "1_({n})a");
    }

    let c = Scalar::ratio(1, 2);
    let vir = algebra(catalog::virasoro(c.clone(), cutoff.clone()));
    let l = generator(&vir, 0);
    let vvac = GradedVector::basis(vir.vacuum());
    assert_eq!(nth_product(&l, &l, 3).state(), vvac.scaled(&(&c / s(2))));
    assert!(nth_product(&l, &l, 2).state().is_zero());
    assert_eq!(nth_product(&l, &l, 1).state(), l.state().scaled(&s(2)));
    assert_eq!(nth_product(&l, &l, 0).state(), translate_vec(vir.as_ref(), &l.state()));
}

#[test]
fn normal_ordered_products() {
    let cutoff = s(4);
    let heis = algebra(catalog::heisenberg(s(1), cutoff.clone()));
    let a = generator(&heis, 0);
    let id = Field::identity(heis.clone());
    assert!(normal_ordered(&id, &a).agrees_up_to(&a, &cutoff));
    let aa = normal_ordered(&a, &a);
    assert_eq!(aa.state(), a.mode_vec(-1, &a.state()));
    let da_a = normal_ordered(&a.derivative(), &a);
    assert_eq!(da_a.state(), a.mode_vec(-2, &a.state()));
    assert!(aa.agrees_up_to(&Field::of_state(heis.clone(), &aa.state()).unwrap(), &cutoff));

    let comm = algebra(poly_comm(4));
    let x = generator(&comm, 0);
    let x2 = normal_ordered(&x, &x).state();
    assert_eq!(comm.render(&x2), "x^2");
    let tx = translate_vec(comm.as_ref(), &x.state());
    assert_eq!(product_vec(comm.as_ref(), &x.state(), -2, &x.state()), product_vec(comm.as_ref(), &tx, -1, &x.state()));
}

#[test]
fn dong_bound_examples() {
    assert_eq!(dong_bound(2, 2, 2, 1), 4);
    assert_eq!(dong_bound(1, 1, 1, 2), 0);
    assert_eq!(dong_bound(4, 2, 4, 0), 9);
}

#[test]
fn skew_symmetry_examples() {
    let cutoff = s(4);
    let bx = IndexBox::new(-3, 3);
    for v in [
        algebra(catalog::heisenberg(s(1), cutoff.clone())),
        algebra(catalog::virasoro(Scalar::ratio(1, 2), cutoff.clone())),
        algebra(catalog::clifford1(s(1), cutoff.clone())),
        algebra(poly_comm(4)),
    ] {
        let chk = StateChecker::new(v.as_ref(), cutoff.clone());
        let a = v.generators()[0].1.clone();
        let rep = chk.check_skew_symmetry(&a, &a, bx);
        assert_eq!(rep.failed, 0, "{}", v.label());
        assert!(rep.passed > 0);
    }
}

#[test]
fn translation_is_derivative_of_fields() {
    let cutoff = s(4);
    let vir = algebra(catalog::virasoro(s(1), cutoff.clone()));
    let l = generator(&vir, 0);
    let tl = Field::of_state(vir.clone(), &translate_vec(vir.as_ref(), &l.state())).unwrap();
    assert!(l.derivative().agrees_up_to(&tl, &cutoff));
    // (da)_(n) b = -n a_(n-1) b
    for v in vir.basis_up_to(&s(3)) {
        for n in -3..=4 {
            assert_eq!(l.derivative().mode(n, v), l.mode(n - 1, v).scaled(&s(-n)));
        }
    }
}

fn sl2_states() -> (Arc<dyn VertexAlgebra>, Vec<GradedVector>) {
    let cutoff = s(3);
    let v = algebra(catalog::affine_sl2(s(1), cutoff.clone()));
    let mut states: Vec<GradedVector> = v.generators().iter().map(|g| g.1.clone()).collect();
    states.push(GradedVector::basis(v.vacuum()));
    let e = states[0].clone();
    let f = states[2].clone();
    states.push(product_vec(v.as_ref(), &e, -1, &f));
    (v, states)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_identity_holds(i in 0usize..5, j in 0usize..5, k in 0usize..4, r in -2i64..=2, sidx in -2i64..=2, t in -2i64..=2) {
        let (v, states) = sl2_states();
        let chk = StateChecker::new(v.as_ref(), s(3));
        for kind in IdentityKind::ALL {
            if !chk.index_tuples(kind, &states[i], &states[j], &states[k], IndexBox::new(-2, 2)).contains(&(r, sidx, t)) {
                continue;
            }
            let out = chk.evaluate(kind, &states[i], &states[j], &states[k], r, sidx, t);
            prop_assert!(!matches!(out, Outcome::Fail(_)), "{:?} failed at {r},{sidx},{t}", kind.name());
        }
    }

    #[test]
    fn translation_is_a_derivation(i in 0usize..5, j in 0usize..5, n in -3i64..=3) {
        let (v, states) = sl2_states();
        let (a, b) = (&states[i], &states[j]);
        let w = v.homogeneous_weight(a).unwrap() + v.homogeneous_weight(b).unwrap() - n;
        prop_assume!(w < s(3));
        let lhs = translate_vec(v.as_ref(), &product_vec(v.as_ref(), a, n, b));
        let rhs = product_vec(v.as_ref(), &translate_vec(v.as_ref(), a), n, b)
            .plus(&product_vec(v.as_ref(), a, n, &translate_vec(v.as_ref(), b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_formula(i in 0usize..3, j in 0usize..3, m in -2i64..=2, k in -2i64..=2) {
        let (v, states) = sl2_states();
        let (fa, fb) = (Field::of_state(v.clone(), &states[i]).unwrap(), Field::of_state(v.clone(), &states[j]).unwrap());
        for x in v.basis_up_to(&s(1)) {
            let w = v.weight(x);
            prop_assume!([&w - m, &w - k, &w - m - k].iter().all(|u| *u <= s(3)));
            let xv = GradedVector::basis(x);
            let lhs = fa.mode_vec(m, &fb.mode_vec(k, &xv)).minus(&fb.mode_vec(k, &fa.mode_vec(m, &xv)));
            let mut rhs = GradedVector::zero();
            for p in 0..=2i64 {
                let c = fa.nth_product(&fb, p);
                rhs.add_vector(&c.mode_vec(m + k - p, &xv), &binom(&s(m), p));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
