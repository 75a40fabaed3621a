use std::sync::Arc;

use opecalc::fieldcalc::{locality_order, GradedSpace, VertexStructure, product_vec, translate_vec, Field, GradedVector, IndexBox, LocalityOrder};
use opecalc::numcore::{Parity, Scalar};
use opecalc::report::Status;
use opecalc::vertexalg::{
    catalog, conformal_vector_check, enveloping_vertex_algebra, find_state, graded_character, poly_comm,
    tensor_product, verify_axioms, ConformalAlgebra, ConformalElement, Generator, VertexAlgebra,
};

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn dims(v: &dyn VertexAlgebra, cutoff: i64) -> Vec<usize> {
    let ch = graded_character(v, &s(cutoff));
    (0..=cutoff).map(|w| ch.get(&s(w)).copied().unwrap_or(0)).collect()
}

fn virasoro_table() -> (Vec<Generator>, Vec<((usize, usize, u32), ConformalElement)>) {
    let gens = vec![Generator::new("L", Parity::Even, s(2))];
    let table = vec![
        ((0, 0, 0), ConformalElement::generator_derivative(0, 1, s(1))),
        ((0, 0, 1), ConformalElement::generator(0, s(2))),
        ((0, 0, 3), ConformalElement::central(Scalar::ratio(1, 2))),
    ];
    (gens, table)
}

#[test]
fn linear_ope_presentations_are_validated() {
    let (gens, table) = virasoro_table();
    let vir = ConformalAlgebra::from_linear_opes(gens.clone(), table).unwrap();
    assert_eq!(vir.pole_order(0, 0), 4);

    let mut wrong = virasoro_table().1;
    wrong[1].1 = ConformalElement::generator(0, s(3));
    assert!(ConformalAlgebra::from_linear_opes(gens.clone(), wrong.clone()).is_err());
    assert!(ConformalAlgebra::unchecked(gens, wrong).is_ok());

    let a = vec![Generator::new("a", Parity::Even, s(1))];
    assert!(ConformalAlgebra::from_linear_opes(a.clone(), vec![((0, 0, 0), ConformalElement::generator(0, s(1)))]).is_err());
    assert!(ConformalAlgebra::from_linear_opes(a.clone(), vec![((0, 0, 1), ConformalElement::central(s(1)))]).is_ok());
    // a weight-2 term in a weight-1 product
    assert!(ConformalAlgebra::unchecked(a, vec![((0, 0, 0), ConformalElement::generator_derivative(0, 1, s(1)))]).is_err());
}

#[test]
fn characters() {
    assert_eq!(dims(&catalog::heisenberg(s(1), s(6)), 6), [1, 1, 2, 3, 5, 7, 11]);
    assert_eq!(dims(&catalog::virasoro(s(0), s(6)), 6), [1, 0, 1, 1, 2, 2, 4]);
    assert_eq!(dims(&catalog::affine_sl2(s(1), s(3)), 3), [1, 3, 9, 22]);
    let cliff = graded_character(&catalog::clifford1(s(1), s(3)), &s(3));
    let got: Vec<usize> = (0..=6).map(|k| cliff.get(&Scalar::ratio(k, 2)).copied().unwrap_or(0)).collect();
    assert_eq!(got, [1, 1, 0, 1, 1, 1, 1]);
}

#[test]
fn commutative_products() {
    let v = poly_comm(4);
    let x = find_state(&v, "x", &s(2)).unwrap();
    assert_eq!(v.render(&product_vec(&v, &x, -1, &x)), "x^2");
    let tx = translate_vec(&v, &x);
    assert_eq!(product_vec(&v, &x, -2, &x), product_vec(&v, &tx, -1, &x));
    for n in 0..4 {
        assert!(product_vec(&v, &x, n, &x).is_zero());
        assert!(product_vec(&v, &tx, n, &x).is_zero());
    }
    assert_eq!(dims(&v, 0), [1]);
}

#[test]
fn vacuum_field_is_identity() {
    let cutoff = s(4);
    let v: Arc<dyn VertexAlgebra> = Arc::new(catalog::affine_sl2(s(2), cutoff.clone()));
    let vac = GradedVector::basis(v.vacuum());
    let y1 = Field::of_state(v.clone(), &vac).unwrap();
    assert!(y1.agrees_up_to(&Field::identity(v.clone()), &cutoff));
    for b in v.basis_up_to(&s(3)) {
        assert_eq!(y1.mode(-1, b), GradedVector::basis(b));
        assert!(y1.mode(0, b).is_zero());
        assert!(y1.mode(-2, b).is_zero());
    }
    // creation: a_(-1) 1 = a and a_(n) 1 = 0 for n >= 0
    for (_, g) in v.generators() {
        let f = Field::of_state(v.clone(), &g).unwrap();
        assert_eq!(f.state(), g);
        assert!(f.mode(0, v.vacuum()).is_zero());
    }
}

#[test]
fn tensor_products() {
    let cutoff = s(3);
    let left: Arc<dyn VertexAlgebra> = Arc::new(catalog::heisenberg(s(1), cutoff.clone()));
    let right: Arc<dyn VertexAlgebra> = Arc::new(catalog::heisenberg(s(2), cutoff.clone()));
    let t = tensor_product(left.clone(), right.clone());
    assert_eq!(dims(&t, 3), [1, 2, 5, 10]);
    let a = left.generators()[0].1.clone();
    let b = right.generators()[0].1.clone();
    let one_l = GradedVector::basis(left.vacuum());
    let one_r = GradedVector::basis(right.vacuum());
    let a1 = t.tensor(&a, &one_r);
    let b1 = t.tensor(&one_l, &b);
    for n in 0..4 {
        assert!(product_vec(&t, &a1, n, &b1).is_zero());
    }
    assert_eq!(product_vec(&t, &a1, -1, &b1), t.tensor(&a, &b));
    assert_eq!(product_vec(&t, &b1, 1, &b1), GradedVector::basis(t.vacuum()).scaled(&s(2)));
    let t: Arc<dyn VertexAlgebra> = Arc::new(t);
    let fa = Field::of_state(t.clone(), &a1).unwrap();
    let fb = Field::of_state(t.clone(), &b1).unwrap();
    assert_eq!(locality_order(&fa, &fb, &cutoff), LocalityOrder::Vanishing);
    assert_eq!(locality_order(&fa, &fa, &cutoff), LocalityOrder::Order(2));
}

#[test]
fn conformal_vectors() {
    let cutoff = s(4);
    let c = Scalar::ratio(7, 10);
    let vir = catalog::virasoro(c.clone(), cutoff.clone());
    let l = vir.generators()[0].1.clone();
    let verdict = conformal_vector_check(&vir, &l, &cutoff);
    assert!(verdict.is_virasoro && verdict.is_conformal);
    assert_eq!(verdict.central_charge, Some(c));
    let double = conformal_vector_check(&vir, &l.scaled(&s(2)), &cutoff);
    assert!(!double.is_virasoro);

    let heis = catalog::heisenberg(s(3), cutoff.clone());
    let a = heis.generators()[0].1.clone();
    let omega = product_vec(&heis, &a, -1, &a).scaled(&Scalar::ratio(1, 6));
    let verdict = conformal_vector_check(&heis, &omega, &cutoff);
    assert!(verdict.is_virasoro && verdict.is_conformal);
    assert_eq!(verdict.central_charge, Some(s(1)));
}

#[test]
fn verify_small_algebras() {
    let cutoff = s(3);
    for v in [
        Arc::new(catalog::heisenberg(s(1), cutoff.clone())) as Arc<dyn VertexAlgebra>,
        Arc::new(catalog::virasoro(Scalar::ratio(1, 2), cutoff.clone())),
        Arc::new(catalog::clifford1(s(1), cutoff.clone())),
    ] {
        let rep = verify_axioms(v.clone(), cutoff.clone(), IndexBox::new(-2, 2));
        assert_eq!(rep.status, Status::Pass, "{}", v.label());
        assert_eq!(rep.failed, 0);
        assert!(rep.passed > 0);
    }
}

#[test]
fn corrupted_presentation_fails_verification() {
    let (gens, mut table) = virasoro_table();
    table[1].1 = ConformalElement::generator(0, s(3));
    let r = ConformalAlgebra::unchecked(gens, table).unwrap();
    let v: Arc<dyn VertexAlgebra> = Arc::new(enveloping_vertex_algebra("bad", r, s(1), s(3)));
    let rep = verify_axioms(v, s(3), IndexBox::new(-2, 2));
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.failed > 0);
}
