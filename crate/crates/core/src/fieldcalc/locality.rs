use std::fmt;

use super::field::Field;
use super::space::{BasisId, GradedVector, Scope};
use crate::numcore::{binom_int, sign_of_int, supersign, Scalar};

/// Largest locality order searched for.
pub const MAX_LOCALITY_ORDER: u32 = 32;

/// Measured order of locality of two fields up to a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalityOrder {
    /// The commutator vanishes on every determinable mode.
    Vanishing,
    /// Least `N >= 1` with `(z-w)^N [a(z), b(w)] = 0` on every determinable mode.
    Order(u32),
    /// No order up to the search limit annihilates the commutator.
    NotLocal,
}

impl LocalityOrder {
    /// The least nonnegative order, `0` when the commutator vanishes.
    pub fn order(self) -> Option<u32> {
        match self {
            LocalityOrder::Vanishing => Some(0),
            LocalityOrder::Order(n) => Some(n),
            LocalityOrder::NotLocal => None,
        }
    }
}

impl fmt::Display for LocalityOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalityOrder::Vanishing => f.write_str("-inf"),
            LocalityOrder::Order(n) => write!(f, "{n}"),
            LocalityOrder::NotLocal => f.write_str("not local"),
        }
    }
}

/// Radially ordered commutator coefficients `[a_(p), b_(q)] v` on a finite grid.
struct CommutatorGrid<'a> {
    a: &'a Field,
    b: &'a Field,
    cutoff: &'a Scalar,
    zeta: Scalar,
}

impl CommutatorGrid<'_> {
    /// `a_(p) b_(q) v - zeta b_(q) a_(p) v`, or `None` when beyond the cutoff.
    fn entry(&self, p: i64, q: i64, v: BasisId) -> Option<GradedVector> {
        let sp = self.a.space();
        let wv = sp.weight(v);
        let bq = self.b.output_weight(q, &wv);
        let ap = self.a.output_weight(p, &wv);
        let out = self.a.output_weight(p, &bq);
        for w in [&bq, &ap, &out] {
            if sp.scope(w, self.cutoff) == Scope::Beyond {
                return None;
            }
        }
        let first = self.a.mode_vec(p, &self.b.mode(q, v));
        let second = self.b.mode_vec(q, &self.a.mode(p, v));
        Some(first.minus(&second.scaled(&self.zeta)))
    }
}

/// Least `N` with `(z-w)^N [a(z), b(w)] v = 0` for basis `v` up to the cutoff.
pub fn locality_order(a: &Field, b: &Field, cutoff: &Scalar) -> LocalityOrder {
    let grid = CommutatorGrid { a, b, cutoff, zeta: supersign(a.parity(), b.parity()) };
    let sp = a.space().clone();
    let basis = sp.basis_up_to(cutoff);
    let b_top = basis
        .iter()
        .map(|&u| b.bound(u))
        .max()
        .unwrap_or(0);
    let (lo_w, hi_w) = sp.weight_range(cutoff);
    let mut samples: Vec<(i64, i64, BasisId)> = Vec::new();
    for &v in &basis {
        let wv = sp.weight(v);
        // q ranges over modes with b_(q) v inside the cutoff and possibly nonzero
        let q_lo = (b.weight() + &wv - 1 - &hi_w).ceil_i64();
        let q_hi = b_top.max(b.bound(v));
        for q in q_lo..q_hi {
            // p ranges over modes keeping the result weight inside the truncation
            let base = a.weight() + b.weight() + &wv - 2 - q;
            let p_lo = (&base - &hi_w).ceil_i64();
            let p_hi = (&base - &lo_w).floor_i64();
            for p in p_lo..=p_hi {
                samples.push((p, q, v));
            }
        }
    }
    let vanishes = |n: i64| {
        samples.iter().all(|&(p, q, v)| {
            // coefficient of z^{-p+n-1} w^{-q-1} in (z-w)^n [a(z), b(w)] v, result weight fixed by p
            let mut acc = GradedVector::zero();
            for i in 0..=n {
                let Some(e) = grid.entry(p - i, q + i, v) else {
                    return true;
                };
                acc.add_vector(&e, &Scalar::from(binom_int(n, i) * sign_of_int(i)));
            }
            acc.is_zero()
        })
    };
    if vanishes(0) {
        return LocalityOrder::Vanishing;
    }
    for n in 1..=MAX_LOCALITY_ORDER {
        if vanishes(n as i64) {
            return LocalityOrder::Order(n);
        }
    }
    LocalityOrder::NotLocal
}

/// Nonzero OPE coefficients `a(z)_(n) b(z)` for `n >= 0` up to the cutoff.
pub fn ope_singular(a: &Field, b: &Field, cutoff: &Scalar) -> Vec<(i64, Field)> {
    let sp = a.space().clone();
    let top = match locality_order(a, b, cutoff) {
        LocalityOrder::Vanishing => 0,
        LocalityOrder::Order(n) => n as i64,
        LocalityOrder::NotLocal => sp.basis_up_to(cutoff).iter().map(|&v| a.bound(v)).max().unwrap_or(0),
    };
    let mut out = Vec::new();
    for n in (0..top).rev() {
        let c = a.nth_product(b, n);
        if !c.is_zero_up_to(cutoff) {
            out.push((n, c));
        }
    }
    out
}

/// `(N_ab + N_bc + N_ac - n - 1)_+`.
pub fn dong_bound(n_ab: u32, n_bc: u32, n_ac: u32, n: i64) -> u32 {
    let v = n_ab as i64 + n_bc as i64 + n_ac as i64 - n - 1;
    v.max(0) as u32
}
