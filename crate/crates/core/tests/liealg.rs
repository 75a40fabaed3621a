use opecalc::liealg::{
    affinize, check_cocycle, check_lie_jacobi, clifford_affinize, superaffinize, virasoro, virasoro_cocycle,
    LiePresentation, LocalLieAlgebra, LocalLieElement, Symbol,
};
use opecalc::numcore::{Parity, Scalar};
use proptest::prelude::*;

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn half(n: i64) -> Scalar {
    Scalar::ratio(2 * n + 1, 2)
}

fn central(c: i64) -> LocalLieElement {
    LocalLieElement::term(Symbol::Central, s(c))
}

fn sl2_super() -> LocalLieAlgebra {
    superaffinize(LiePresentation::sl2())
}

#[test]
fn current_and_fermion_brackets() {
    let heis = affinize(LiePresentation::abelian(&["a"], vec![vec![s(1)]]).unwrap());
    let b = heis.bracket(&LocalLieElement::current(0, 2), &LocalLieElement::current(0, -2)).unwrap();
    assert_eq!(b, central(2));
    assert!(heis.bracket(&LocalLieElement::current(0, 2), &LocalLieElement::current(0, -1)).unwrap().is_zero());

    let cliff = clifford_affinize(&["psi"], vec![vec![s(1)]]).unwrap();
    let p = LocalLieElement::fermion(0, Scalar::ratio(1, 2)).unwrap();
    let q = LocalLieElement::fermion(0, Scalar::ratio(-1, 2)).unwrap();
    assert_eq!(cliff.bracket(&p, &q).unwrap(), central(1));
    assert_eq!(cliff.bracket(&p, &p).unwrap(), LocalLieElement::zero());
    assert_eq!(cliff.parity(&p), Some(Parity::Odd));
    assert!(LocalLieElement::fermion(0, s(1)).is_err());
    assert!(cliff.bracket(&LocalLieElement::current(0, 1), &p).is_err());

    let sl2 = affinize(LiePresentation::sl2());
    let ef = sl2.bracket(&LocalLieElement::current(0, 1), &LocalLieElement::current(2, -1)).unwrap();
    let mut want = LocalLieElement::current(1, 0);
    want.add(Symbol::Central, s(1));
    assert_eq!(ef, want);
    let he = sl2.bracket(&LocalLieElement::current(1, 3), &LocalLieElement::current(0, 0)).unwrap();
    assert_eq!(he, LocalLieElement::term(Symbol::Current(0, 3), s(2)));
}

#[test]
fn superaffine_mixed_brackets() {
    let alg = sl2_super();
    let h = LocalLieElement::current(1, 2);
    let ebar = LocalLieElement::fermion(0, half(-1)).unwrap();
    assert_eq!(alg.bracket(&h, &ebar).unwrap(), LocalLieElement::term(Symbol::Fermion(0, half(1)), s(2)));
    assert_eq!(alg.bracket(&ebar, &h).unwrap(), LocalLieElement::term(Symbol::Fermion(0, half(1)), s(-2)));
    let fbar = LocalLieElement::fermion(2, half(0)).unwrap();
    assert_eq!(alg.bracket(&ebar, &fbar).unwrap(), central(1));
    assert_eq!(alg.bracket(&fbar, &ebar).unwrap(), central(1));
}

#[test]
fn virasoro_brackets() {
    let vir = virasoro();
    for m in -5..=5 {
        let b = vir.bracket(&LocalLieElement::virasoro(0), &LocalLieElement::virasoro(m)).unwrap();
        assert_eq!(b, LocalLieElement::virasoro(m).scaled(&s(-m)));
    }
    let b = vir.bracket(&LocalLieElement::virasoro(2), &LocalLieElement::virasoro(-2)).unwrap();
    let mut want = LocalLieElement::virasoro(0).scaled(&s(4));
    want.add(Symbol::Central, Scalar::ratio(1, 2));
    assert_eq!(b, want);
}

#[test]
fn cocycle_identity() {
    assert_eq!(virasoro_cocycle(3, -3), s(2));
    assert_eq!(virasoro_cocycle(1, -1), s(0));
    assert_eq!(virasoro_cocycle(2, 3), s(0));
    assert_eq!(virasoro_cocycle(-3, 3), -virasoro_cocycle(3, -3));
    let (n, m, k) = (2i64, 3i64, -5i64);
    let lhs = s(n - m) * virasoro_cocycle(n + m, k) + s(m - k) * virasoro_cocycle(m + k, n) + s(k - n) * virasoro_cocycle(k + n, m);
    assert!(lhs.is_zero());
    let rep = check_cocycle(6);
    assert_eq!(rep.failed, 0);
    assert_eq!(rep.passed, 13 * 13 * 13);
}

#[test]
fn central_element_is_central() {
    let algs = [sl2_super(), virasoro(), clifford_affinize(&["psi"], vec![vec![s(1)]]).unwrap()];
    let samples = [
        LocalLieElement::current(0, 2),
        LocalLieElement::virasoro(-3),
        LocalLieElement::fermion(0, half(2)).unwrap(),
    ];
    for (alg, x) in algs.iter().zip(&samples) {
        assert!(alg.bracket(&LocalLieElement::central(), x).unwrap().is_zero());
        assert!(alg.bracket(x, &LocalLieElement::central()).unwrap().is_zero());
        assert!(alg.translation(&LocalLieElement::central()).is_zero());
    }
}

fn sl2_symbol(odd: bool) -> impl Strategy<Value = Symbol> {
    (0usize..3, -4i64..=4).prop_map(move |(g, n)| if odd { Symbol::Fermion(g, half(n)) } else { Symbol::Current(g, n) })
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn sl2_element() -> impl Strategy<Value = LocalLieElement> {
    any::<bool>().prop_flat_map(|odd| {
        prop::collection::vec((sl2_symbol(odd), coeff()), 1..4).prop_map(move |terms| {
            let mut x = LocalLieElement::zero();
            for (sym, c) in terms {
                x.add(sym, c);
            }
            if x.is_zero() {
                x = LocalLieElement::symbol(if odd { Symbol::Fermion(1, half(0)) } else { Symbol::Current(1, 0) });
            }
            x
        })
    })
}

fn virasoro_element() -> impl Strategy<Value = LocalLieElement> {
    (prop::collection::vec((-6i64..=6, coeff()), 1..4), -2i64..=2).prop_map(|(terms, k)| {
        let mut x = LocalLieElement::zero();
        for (n, c) in terms {
            x.add(Symbol::Virasoro(n), c);
        }
        if x.is_zero() {
            x = LocalLieElement::virasoro(1);
        }
        x.add(Symbol::Central, s(k));
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn super_jacobi_superaffine_sl2(x in sl2_element(), y in sl2_element(), z in sl2_element()) {
        let rep = check_lie_jacobi(&sl2_super(), &[(x, y, z)]).unwrap();
        prop_assert_eq!((rep.passed, rep.failed), (1, 0));
    }

    #[test]
    fn jacobi_virasoro(x in virasoro_element(), y in virasoro_element(), z in virasoro_element()) {
        let rep = check_lie_jacobi(&virasoro(), &[(x, y, z)]).unwrap();
        prop_assert_eq!((rep.passed, rep.failed), (1, 0));
    }

    #[test]
    fn super_skew_symmetry(x in sl2_element(), y in sl2_element()) {
        let alg = sl2_super();
        let z = opecalc::numcore::supersign(alg.parity(&x).unwrap(), alg.parity(&y).unwrap());
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        prop_assert_eq!(xy, yx.scaled(&-z));
    }

    #[test]
    fn translation_is_a_derivation(x in sl2_element(), y in sl2_element(), u in virasoro_element(), v in virasoro_element()) {
        for (alg, a, b) in [(sl2_super(), &x, &y), (virasoro(), &u, &v)] {
            let lhs = alg.translation(&alg.bracket(a, b).unwrap());
            let mut rhs = alg.bracket(&alg.translation(a), b).unwrap();
            rhs.add_element(&alg.bracket(a, &alg.translation(b)).unwrap(), &s(1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
