use std::sync::Arc;

use opecalc::fieldcalc::{BasisId, GradedVector, IndexBox};
use opecalc::numcore::{Parity, Scalar};
use opecalc::ope2d::{
    additive_locality_order, check_skew_symmetry2, direct_sweep, factorized_sweep, fermion_tensor, multiple_locality_check,
    nth_product2, reduced_ope, toroidal_tensor, verify_ope2d, AdditiveOrder, Field2, Sweep2Options, TensorOpeAlgebra,
    Weight2,
};
use opecalc::report::Status;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn toroidal(cutoff: &Weight2) -> Arc<TensorOpeAlgebra> {
    Arc::new(toroidal_tensor(s(2), s(3), cutoff))
}

fn field(alg: &Arc<TensorOpeAlgebra>, name: &str, cutoff: &Weight2) -> Field2 {
    Field2::of_state(alg.clone(), &alg.find_state(name, cutoff).unwrap()).unwrap()
}

#[test]
fn additive_orders() {
    let cutoff = Weight2::new(3, 3);
    let bx = IndexBox::new(-2, 2);
    let alg = toroidal(&cutoff);
    let a = field(&alg, "a", &cutoff);
    let abar = field(&alg, "abar", &cutoff);
    let mixed = field(&alg, "a (x) abar", &cutoff);
    let order = |x: &Field2, y: &Field2| additive_locality_order(x, y, &Weight2::zero(), &cutoff, bx).unwrap();
    assert_eq!(order(&a, &abar), AdditiveOrder::Order(Weight2::zero()));
    assert_eq!(order(&a, &a), AdditiveOrder::Order(Weight2::new(2, 0)));
    assert_eq!(order(&abar, &abar), AdditiveOrder::Order(Weight2::new(0, 2)));
    assert_eq!(order(&mixed, &mixed), AdditiveOrder::Order(Weight2::new(2, 2)));
    assert!(additive_locality_order(&a, &a, &Weight2::new(Scalar::ratio(1, 2), 0), &cutoff, bx).is_err());
}

#[test]
fn reduced_opes_and_products() {
    let cutoff = Weight2::new(3, 3);
    let bx = IndexBox::new(-2, 2);
    let alg = toroidal(&cutoff);
    let a = field(&alg, "a", &cutoff);
    let abar = field(&alg, "abar", &cutoff);
    let mixed = field(&alg, "a (x) abar", &cutoff);
    let z = [Weight2::zero()];

    let free = reduced_ope(&a, &abar, &z, &cutoff, bx).unwrap();
    assert_eq!(free.len(), 1);
    assert_eq!(free[0].pole, Weight2::zero());
    let terms = reduced_ope(&mixed, &mixed, &z, &cutoff, bx).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].pole, Weight2::new(2, 2));
    assert!(terms[0].reduced);

    let vac = GradedVector::basis(alg.vacuum());
    let p = nth_product2(&mixed, &mixed, (1, 1), &cutoff, bx).unwrap();
    assert_eq!(p.state(), vac.scaled(&s(6)));
    assert_eq!(p.state(), alg.product2_vec(&mixed.state(), (1, 1), &mixed.state()));
    let p = nth_product2(&a, &a, (1, -1), &cutoff, bx).unwrap();
    assert_eq!(p.state(), vac.scaled(&s(2)));
    let zero = nth_product2(&a, &abar, (0, 0), &cutoff, bx).unwrap();
    assert!(zero.state().is_zero());
    assert!(reduced_ope(&zero, &a, &z, &cutoff, bx).unwrap().is_empty());
    let normal = nth_product2(&a, &abar, (-1, -1), &cutoff, bx).unwrap();
    assert_eq!(normal.state(), mixed.state());
}

#[test]
fn skew_symmetry_on_generators() {
    let cutoff = Weight2::new(2, 2);
    let bx = IndexBox::new(-2, 2);
    let alg = toroidal(&cutoff);
    for (_, x) in alg.generators() {
        for (_, y) in alg.generators() {
            let (x, y) = (x.support().next().unwrap(), y.support().next().unwrap());
            let rep = check_skew_symmetry2(&alg, x, y, bx, &cutoff);
            assert_eq!(rep.failed, 0);
            assert!(rep.passed > 0);
        }
    }
}

fn all_triples(alg: &TensorOpeAlgebra, cutoff: &Weight2) -> Vec<(BasisId, BasisId, BasisId)> {
    let basis = alg.basis_up_to(cutoff);
    let mut all = Vec::new();
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                all.push((a, b, c));
            }
        }
    }
    all
}

#[test]
fn factorized_sweep_matches_direct_sweep() {
    let cutoff = Weight2::new(1, 1);
    let bx = IndexBox::new(-2, 2);
    let alg = toroidal(&cutoff);
    let fact = factorized_sweep(&alg, &cutoff, bx);
    let direct = direct_sweep(&alg, &all_triples(&alg, &cutoff), &cutoff, bx);
    for (f, d) in fact.iter().zip(direct.iter()) {
        assert_eq!(f.failed, 0, "{}", f.summary_line());
        assert!(f.passed > 0);
        assert_eq!((f.passed, f.failed, f.skipped), (d.passed, d.failed, d.skipped), "{} vs {}", f.summary_line(), d.summary_line());
    }
}

#[test]
fn direct_sweep_on_sampled_triples() {
    let cutoff = Weight2::new(2, 2);
    let bx = IndexBox::new(-2, 2);
    let alg = toroidal(&cutoff);
    let mut rng = StdRng::seed_from_u64(11);
    let sample: Vec<_> = all_triples(&alg, &cutoff).choose_multiple(&mut rng, 12).copied().collect();
    for r in direct_sweep(&alg, &sample, &cutoff, bx) {
        assert_eq!(r.failed, 0, "{}", r.summary_line());
        assert!(r.passed > 0);
    }
}

#[test]
fn multiple_locality() {
    let cutoff = Weight2::new(2, 2);
    let bx = IndexBox::new(-1, 1);
    let alg = toroidal(&cutoff);
    let fields = [field(&alg, "a", &cutoff), field(&alg, "abar", &cutoff), field(&alg, "a (x) abar", &cutoff)];
    let rep = multiple_locality_check(&fields, &[Weight2::zero()], &cutoff, bx).unwrap();
    assert_eq!(rep.failed, 0);
    assert!(rep.passed > 0);
    let pair = multiple_locality_check(&fields[..2], &[Weight2::zero()], &cutoff, bx).unwrap();
    assert_eq!(pair.failed, 0);
    assert!(pair.passed > 0);
}

#[test]
fn fermion_tensor_algebra() {
    let cutoff = Weight2::new(Scalar::ratio(5, 2), Scalar::ratio(5, 2));
    let bx = IndexBox::new(-2, 2);
    let alg = Arc::new(fermion_tensor(s(1), s(1), &cutoff));
    let psi = field(&alg, "psi", &cutoff);
    assert_eq!(psi.parity(), Parity::Odd);
    let both = field(&alg, "psi (x) psibar", &cutoff);
    assert_eq!(both.parity(), Parity::Even);
    assert_eq!(both.weight(), &Weight2::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2)));
    let order = additive_locality_order(&both, &both, &Weight2::zero(), &cutoff, bx).unwrap();
    assert_eq!(order, AdditiveOrder::Order(Weight2::new(1, 1)));
    let small = Weight2::new(Scalar::ratio(3, 2), Scalar::ratio(3, 2));
    let alg = Arc::new(fermion_tensor(s(1), s(1), &small));
    let rep = verify_ope2d(alg, &Sweep2Options::exhaustive(small, bx));
    assert_eq!(rep.status, Status::Pass);
}
