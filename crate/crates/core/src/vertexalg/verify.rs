use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use super::VertexAlgebra;
use crate::fieldcalc::{
    locality_order, translate_vec, Field, GradedVector, IdentityKind, IndexBox, LocalityOrder, Scope,
    StateChecker, VertexStructure,
};
use crate::numcore::{Parity, Scalar};
use crate::report::{CheckReport, Failure, Outcome, Report, ReportHeader};

/// Parameters of an axiom sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepOptions {
    pub cutoff: Scalar,
    pub indices: IndexBox,
    /// Number of state triples drawn; all triples when `None`.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl SweepOptions {
    pub fn exhaustive(cutoff: Scalar, indices: IndexBox) -> Self {
        SweepOptions { cutoff, indices, sample: None, seed: 0 }
    }
}

/// Verdict of a conformal vector test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalVerdict {
    pub is_virasoro: bool,
    pub central_charge: Option<Scalar>,
    pub is_conformal: bool,
}

/// Tests whether `omega` is a Virasoro field and whether it also gives translation and weight.
pub fn conformal_vector_check<V: VertexStructure + ?Sized>(v: &V, omega: &GradedVector, cutoff: &Scalar) -> ConformalVerdict {
    let not = ConformalVerdict { is_virasoro: false, central_charge: None, is_conformal: false };
    if v.vector_parity(omega) != Some(Parity::Even) || v.homogeneous_weight(omega) != Some(Scalar::from(2)) {
        return not;
    }
    let prod = |n: i64| crate::fieldcalc::product_vec(v, omega, n, omega);
    let vac = v.vacuum();
    let three = prod(3);
    let c2 = three.coeff(vac);
    let virasoro = prod(0) == translate_vec(v, omega)
        && prod(1) == omega.scaled(&Scalar::from(2))
        && prod(2).is_zero()
        && three == GradedVector::single(vac, c2.clone())
        && (4..8).all(|n| prod(n).is_zero());
    if !virasoro {
        return not;
    }
    let conformal = v.basis_up_to(cutoff).into_iter().all(|b| {
        let x = GradedVector::basis(b);
        crate::fieldcalc::product_vec(v, omega, 0, &x) == v.translation(b)
            && crate::fieldcalc::product_vec(v, omega, 1, &x) == x.scaled(&v.weight(b))
    });
    ConformalVerdict { is_virasoro: true, central_charge: Some(c2 * 2), is_conformal: conformal }
}

fn fail(indices: String, witness: String, lhs: String, rhs: String) -> Outcome {
    Outcome::Fail(Failure { indices, witness, lhs, rhs })
}

fn vacuum_axioms<V: VertexAlgebra + ?Sized>(v: &V, basis: &[GradedVector], opts: &SweepOptions) -> CheckReport {
    let mut rep = CheckReport::new("identity_axioms", "invariant-right-identity", &opts.cutoff, opts.indices);
    let vac = GradedVector::basis(v.vacuum());
    let t_vac = translate_vec(v, &vac);
    rep.record(if t_vac.is_zero() {
        Outcome::Pass
    } else {
        fail(String::new(), "T|0>".into(), v.render(&t_vac), "0".into())
    });
    for a in basis {
        for n in opts.indices.values() {
            let left = crate::fieldcalc::product_vec(v, &vac, n, a);
            let want = if n == -1 { a.clone() } else { GradedVector::zero() };
            rep.record(if left == want {
                Outcome::Pass
            } else {
                fail(format!("n={n}"), format!("|0>_(n) {}", v.render(a)), v.render(&left), v.render(&want))
            });
            if n >= -1 {
                let right = crate::fieldcalc::product_vec(v, a, n, &vac);
                rep.record(if right == want {
                    Outcome::Pass
                } else {
                    fail(format!("n={n}"), format!("{}_(n)|0>", v.render(a)), v.render(&right), v.render(&want))
                });
            }
        }
    }
    rep
}

fn translation_axioms<V: VertexAlgebra + ?Sized>(v: &V, basis: &[GradedVector], opts: &SweepOptions) -> CheckReport {
    let mut rep = CheckReport::new("translation_axioms", "translation-generator", &opts.cutoff, opts.indices);
    let vac = GradedVector::basis(v.vacuum());
    for a in basis {
        let ta = translate_vec(v, a);
        let want = crate::fieldcalc::product_vec(v, a, -2, &vac);
        rep.record(if ta == want {
            Outcome::Pass
        } else {
            fail("n=-2".into(), format!("T {}", v.render(a)), v.render(&ta), v.render(&want))
        });
    }
    for a in basis {
        let wa = v.homogeneous_weight(a).expect("basis vectors are homogeneous");
        for b in basis {
            let wb = v.homogeneous_weight(b).expect("basis vectors are homogeneous");
            for n in opts.indices.values() {
                // T(a_(n) b) - a_(n) T b = -n a_(n-1) b
                if v.scope(&(&wa + &wb - n), &opts.cutoff) == Scope::Beyond {
                    rep.record(Outcome::Skipped);
                    continue;
                }
                let lhs = translate_vec(v, &crate::fieldcalc::product_vec(v, a, n, b))
                    .minus(&crate::fieldcalc::product_vec(v, a, n, &translate_vec(v, b)));
                let rhs = crate::fieldcalc::product_vec(v, a, n - 1, b).scaled(&Scalar::from(-n));
                rep.record(if lhs == rhs {
                    Outcome::Pass
                } else {
                    fail(
                        format!("n={n}"),
                        format!("a={}, b={}", v.render(a), v.render(b)),
                        v.render(&lhs),
                        v.render(&rhs),
                    )
                });
            }
        }
    }
    rep
}

fn generator_locality(v: std::sync::Arc<dyn VertexAlgebra>, opts: &SweepOptions) -> CheckReport {
    let mut rep = CheckReport::new("locality_orders", "generator-locality", &opts.cutoff, "-");
    let gens = v.generators();
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let (Ok(fa), Ok(fb)) = (Field::of_state(v.clone(), a), Field::of_state(v.clone(), b)) else {
                rep.record(Outcome::Skipped);
                continue;
            };
            rep.record(match locality_order(&fa, &fb, &opts.cutoff) {
                LocalityOrder::NotLocal => fail(String::new(), format!("{na}, {nb}"), "not local".into(), "finite order".into()),
                _ => Outcome::Pass,
            });
        }
    }
    rep
}

fn merge(into: &mut Vec<CheckReport>, parts: Vec<CheckReport>) {
    if into.is_empty() {
        *into = parts;
        return;
    }
    for (acc, p) in into.iter_mut().zip(parts.iter()) {
        acc.absorb(p);
    }
}

/// Full axiom sweep over all basis states up to the cutoff.
pub fn verify_axioms(v: std::sync::Arc<dyn VertexAlgebra>, cutoff: Scalar, indices: IndexBox) -> Report {
    verify_axioms_with(v, &SweepOptions::exhaustive(cutoff, indices))
}

/// Axiom sweep; identity triples are exhaustive or sampled per the options.
pub fn verify_axioms_with(v: std::sync::Arc<dyn VertexAlgebra>, opts: &SweepOptions) -> Report {
    let basis: Vec<GradedVector> = v.basis_up_to(&opts.cutoff).into_iter().map(GradedVector::basis).collect();
    let mut checks = vec![
        vacuum_axioms(v.as_ref(), &basis, opts),
        translation_axioms(v.as_ref(), &basis, opts),
        generator_locality(v.clone(), opts),
    ];
    let n = basis.len();
    let mut triples: Vec<(usize, usize, usize)> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                triples.push((i, j, k));
            }
        }
    }
    if let Some(m) = opts.sample {
        let mut rng = StdRng::seed_from_u64(opts.seed);
        triples.shuffle(&mut rng);
        triples.truncate(m);
    }
    let checker = StateChecker::new(v.as_ref(), opts.cutoff.clone());
    let per_triple: Vec<Vec<CheckReport>> = triples
        .par_iter()
        .map(|&(i, j, k)| checker.check_identities(&IdentityKind::ALL, &basis[i], &basis[j], &basis[k], opts.indices))
        .collect();
    let mut identities = Vec::new();
    for p in per_triple {
        merge(&mut identities, p);
    }
    if identities.is_empty() {
        identities = IdentityKind::ALL
            .iter()
            .map(|k| CheckReport::new(k.name(), k.anchor(), &opts.cutoff, opts.indices))
            .collect();
    }
    checks.extend(identities);
    let mut skew = CheckReport::new("skew_symmetry", "holomorphic-skew-symmetry", &opts.cutoff, opts.indices);
    for a in &basis {
        for b in &basis {
            skew.absorb(&checker.check_skew_symmetry(a, b, opts.indices));
        }
    }
    checks.push(skew);
    let header = ReportHeader {
        algebra: v.label(),
        kind: "vertex_algebra".into(),
        cutoff: opts.cutoff.to_string(),
        indices: opts.indices.to_string(),
        seed: opts.sample.map(|_| opts.seed),
    };
    Report::new(header, checks)
}
