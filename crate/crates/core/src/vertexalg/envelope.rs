use std::collections::HashMap;
use std::sync::{Mutex, RwLock};

use dashmap::DashMap;

use super::conformal::ConformalAlgebra;
use crate::fieldcalc::{BasisId, GradedSpace, GradedVector, VertexStructure};
use crate::numcore::{binom, factorial, sign_of_int, supersign, Parity, Scalar};

/// A creation or annihilation mode `s_(n)`.
type Mode = (u16, i64);

/// Modes in PBW order: increasing mode index, ties by generator order.
fn precedes(x: Mode, y: Mode) -> bool {
    (x.1, x.0) < (y.1, y.0)
}

#[derive(Default)]
struct Registry {
    monomials: Vec<Vec<Mode>>,
    index: HashMap<Vec<Mode>, BasisId>,
    weights: Vec<Scalar>,
    parities: Vec<Parity>,
    tails: Vec<BasisId>,
}

/// `[s_(m), t_(n)] = sum c u_(q) + central * id`.
#[derive(Clone, Default)]
struct Bracket {
    modes: Vec<(u16, i64, Scalar)>,
    central: Scalar,
}

/// The level-`k` vacuum Verma module over the mode algebra of a conformal algebra.
pub struct EnvelopingVertexAlgebra {
    label: String,
    conformal: ConformalAlgebra,
    level: Scalar,
    cutoff: Scalar,
    registry: RwLock<Registry>,
    gen_weights: Vec<Scalar>,
    gen_parities: Vec<Parity>,
    brackets: DashMap<(u16, i64, u16, i64), Bracket>,
    actions: DashMap<(u16, i64, BasisId), GradedVector>,
    products: DashMap<(BasisId, i64, BasisId), GradedVector>,
    translations: DashMap<BasisId, GradedVector>,
    bases: Mutex<HashMap<Scalar, Vec<BasisId>>>,
}

impl EnvelopingVertexAlgebra {
    pub fn new(label: impl Into<String>, conformal: ConformalAlgebra, level: Scalar, cutoff: Scalar) -> Self {
        let gen_weights = conformal.generators().iter().map(|g| g.weight.clone()).collect();
        let gen_parities = conformal.generators().iter().map(|g| g.parity).collect();
        let alg = EnvelopingVertexAlgebra {
            label: label.into(),
            conformal,
            level,
            cutoff,
            registry: RwLock::new(Registry::default()),
            gen_weights,
            gen_parities,
            brackets: DashMap::new(),
            actions: DashMap::new(),
            products: DashMap::new(),
            translations: DashMap::new(),
            bases: Mutex::new(HashMap::new()),
        };
        let vac = alg.intern(&[]);
        debug_assert_eq!(vac, 0);
        alg
    }

    pub fn conformal(&self) -> &ConformalAlgebra {
        &self.conformal
    }

    pub fn level(&self) -> &Scalar {
        &self.level
    }

    pub fn cutoff(&self) -> &Scalar {
        &self.cutoff
    }

    /// The state `s_(-1)|0>` of a generator.
    pub fn generator_state(&self, g: usize) -> BasisId {
        self.intern(&[(g as u16, -1)])
    }

    /// `s_(n)` applied to a state.
    pub fn generator_mode(&self, g: usize, n: i64, v: &GradedVector) -> GradedVector {
        self.apply_gen_vec(g as u16, n, v)
    }

    fn mode_weight(&self, m: Mode) -> Scalar {
        &self.gen_weights[m.0 as usize] - m.1 - 1
    }

    fn intern(&self, mono: &[Mode]) -> BasisId {
        if let Some(id) = self.registry.read().expect("registry lock").index.get(mono) {
            return *id;
        }
        let tail = if mono.is_empty() { 0 } else { self.intern(&mono[1..]) };
        let mut reg = self.registry.write().expect("registry lock");
        if let Some(id) = reg.index.get(mono) {
            return *id;
        }
        let id = reg.monomials.len() as BasisId;
        let weight = mono.iter().map(|m| self.mode_weight(*m)).sum();
        let parity = mono.iter().fold(Parity::Even, |p, m| p + self.gen_parities[m.0 as usize]);
        reg.monomials.push(mono.to_vec());
        reg.index.insert(mono.to_vec(), id);
        reg.weights.push(weight);
        reg.parities.push(parity);
        reg.tails.push(tail);
        id
    }

    fn head(&self, id: BasisId) -> Option<(Mode, BasisId)> {
        let reg = self.registry.read().expect("registry lock");
        let mono = &reg.monomials[id as usize];
        mono.first().map(|m| (*m, reg.tails[id as usize]))
    }

    fn bracket(&self, s: u16, m: i64, t: u16, n: i64) -> Bracket {
        if let Some(b) = self.brackets.get(&(s, m, t, n)) {
            return b.clone();
        }
        // [s_(m), t_(n)] = sum_j C(m,j) (s_(j) t)_(m+n-j)
        let mut acc: HashMap<(u16, i64), Scalar> = HashMap::new();
        let mut central = Scalar::zero();
        let top = self.conformal.pole_order(s as usize, t as usize);
        for j in 0..top {
            let cj = binom(&Scalar::from(m), j as i64);
            if cj.is_zero() {
                continue;
            }
            let e = self.conformal.generator_product(s as usize, j, t as usize);
            let q = m + n - j as i64;
            for ((u, p), c) in e.terms() {
                // (T^p u)_(q) = (-1)^p p! C(q,p) u_(q-p)
                let f = Scalar::from(sign_of_int(p as i64)) * factorial(p) * binom(&Scalar::from(q), p as i64);
                if f.is_zero() {
                    continue;
                }
                *acc.entry((u as u16, q - p as i64)).or_insert_with(Scalar::zero) += &cj * c * f;
            }
            if q == -1 {
                central += &cj * e.central_part() * &self.level;
            }
        }
        let mut modes: Vec<(u16, i64, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, q), c)| (u, q, c)).collect();
        modes.sort_by_key(|(u, q, _)| (*u, *q));
        let b = Bracket { modes, central };
        self.brackets.insert((s, m, t, n), b.clone());
        b
    }

    fn apply_bracket(&self, br: &Bracket, v: BasisId) -> GradedVector {
        let mut out = GradedVector::zero();
        for (u, q, c) in &br.modes {
            out.add_vector(&self.apply_gen(*u, *q, v), c);
        }
        out.add_term(v, &br.central);
        out
    }

    fn apply_gen_vec(&self, s: u16, m: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            out.add_vector(&self.apply_gen(s, m, id), c);
        }
        out
    }

    /// `s_(m) v` for a PBW monomial `v`, straightened into PBW order.
    fn apply_gen(&self, s: u16, m: i64, v: BasisId) -> GradedVector {
        if (self.weight(v) + self.mode_weight((s, m))).is_negative() {
            return GradedVector::zero();
        }
        if let Some(x) = self.actions.get(&(s, m, v)) {
            return x.clone();
        }
        let out = self.straighten(s, m, v);
        self.actions.insert((s, m, v), out.clone());
        out
    }

    fn straighten(&self, s: u16, m: i64, v: BasisId) -> GradedVector {
        let Some((first, rest)) = self.head(v) else {
            return if m < 0 { GradedVector::basis(self.intern(&[(s, m)])) } else { GradedVector::zero() };
        };
        let odd = self.gen_parities[s as usize].is_odd();
        if m < 0 && (precedes((s, m), first) || ((s, m) == first && !odd)) {
            let mut mono = self.registry.read().expect("registry lock").monomials[v as usize].clone();
            mono.insert(0, (s, m));
            return GradedVector::basis(self.intern(&mono));
        }
        let (t, n) = first;
        if (s, m) == first {
            let br = self.bracket(s, m, s, m);
            return self.apply_bracket(&br, rest).scaled(&Scalar::ratio(1, 2));
        }
        // s_(m) t_(n) R = [s_(m), t_(n)] R + zeta t_(n) s_(m) R
        let br = self.bracket(s, m, t, n);
        let mut out = self.apply_bracket(&br, rest);
        let zeta = supersign(self.gen_parities[s as usize], self.gen_parities[t as usize]);
        let inner = self.apply_gen(s, m, rest);
        out.add_vector(&self.apply_gen_vec(t, n, &inner), &zeta);
        out
    }

    fn product_vec_left(&self, a: BasisId, n: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            out.add_vector(&self.product(a, n, id), c);
        }
        out
    }

    fn compute_product(&self, a: BasisId, n: i64, c: BasisId) -> GradedVector {
        let Some(((s, p), rest)) = self.head(a) else {
            return if n == -1 { GradedVector::basis(c) } else { GradedVector::zero() };
        };
        if rest == 0 {
            // s_(p)|0> = T^(k) s with k = -p-1, and (T^(k) s)_(n) = (-1)^k C(n,k) s_(n-k)
            let k = -p - 1;
            let coeff = binom(&Scalar::from(n), k) * sign_of_int(k);
            if coeff.is_zero() {
                return GradedVector::zero();
            }
            return self.apply_gen(s, n - k, c).scaled(&coeff);
        }
        // (s_(p) a')_(n) c = sum_j (-1)^j C(p,j) [ s_(p-j) a'_(n+j) c - (-1)^p zeta a'_(p+n-j) s_(j) c ]
        let wc = self.weight(c);
        let first_top = self.mode_bound(rest, c) - n - 1;
        let second_top = (&self.gen_weights[s as usize] + &wc - 1).floor_i64();
        let zeta = supersign(self.gen_parities[s as usize], self.parity(rest)) * sign_of_int(p);
        let mut out = GradedVector::zero();
        for j in 0..=first_top {
            let inner = self.product(rest, n + j, c);
            if inner.is_zero() {
                continue;
            }
            let coeff = binom(&Scalar::from(p), j) * sign_of_int(j);
            out.add_vector(&self.apply_gen_vec(s, p - j, &inner), &coeff);
        }
        for j in 0..=second_top {
            let inner = self.apply_gen(s, j, c);
            if inner.is_zero() {
                continue;
            }
            let coeff = binom(&Scalar::from(p), j) * sign_of_int(j + 1) * &zeta;
            out.add_vector(&self.product_vec_left(rest, p + n - j, &inner), &coeff);
        }
        out
    }

    fn compute_translation(&self, v: BasisId) -> GradedVector {
        let Some(((s, m), rest)) = self.head(v) else {
            return GradedVector::zero();
        };
        // T s_(m) R = -m s_(m-1) R + s_(m) T R
        let mut out = self.apply_gen(s, m - 1, rest).scaled(&Scalar::from(-m));
        out.add_vector(&self.apply_gen_vec(s, m, &self.translation(rest)), &Scalar::one());
        out
    }

    fn enumerate(&self, cutoff: &Scalar) -> Vec<BasisId> {
        let mut modes: Vec<Mode> = Vec::new();
        for (g, w) in self.gen_weights.iter().enumerate() {
            let mut n = -1;
            while &(w - n - 1) <= cutoff {
                modes.push((g as u16, n));
                n -= 1;
            }
        }
        modes.sort_by_key(|m| (m.1, m.0));
        let mut found: Vec<(Scalar, Vec<Mode>)> = Vec::new();
        let mut stack = Vec::new();
        self.extend(&modes, 0, Scalar::zero(), cutoff, &mut stack, &mut found);
        found.sort_by(|x, y| x.0.cmp(&y.0));
        found.into_iter().map(|(_, m)| self.intern(&m)).collect()
    }

    fn extend(
        &self,
        modes: &[Mode],
        from: usize,
        weight: Scalar,
        cutoff: &Scalar,
        stack: &mut Vec<Mode>,
        out: &mut Vec<(Scalar, Vec<Mode>)>,
    ) {
        out.push((weight.clone(), stack.clone()));
        for i in from..modes.len() {
            let w = &weight + self.mode_weight(modes[i]);
            if &w > cutoff {
                continue;
            }
            let next = if self.gen_parities[modes[i].0 as usize].is_odd() { i + 1 } else { i };
            stack.push(modes[i]);
            self.extend(modes, next, w, cutoff, stack, out);
            stack.pop();
        }
    }
}

impl GradedSpace for EnvelopingVertexAlgebra {
    fn weight(&self, v: BasisId) -> Scalar {
        self.registry.read().expect("registry lock").weights[v as usize].clone()
    }

    fn parity(&self, v: BasisId) -> Parity {
        self.registry.read().expect("registry lock").parities[v as usize]
    }

    fn basis_name(&self, v: BasisId) -> String {
        let reg = self.registry.read().expect("registry lock");
        let mut s = String::new();
        for (g, n) in &reg.monomials[v as usize] {
            s.push_str(&format!("{}({n})", self.conformal.generators()[*g as usize].name));
        }
        s.push_str("|0>");
        s
    }

    fn basis_up_to(&self, cutoff: &Scalar) -> Vec<BasisId> {
        if let Some(b) = self.bases.lock().expect("basis lock").get(cutoff) {
            return b.clone();
        }
        let b = self.enumerate(cutoff);
        self.bases.lock().expect("basis lock").insert(cutoff.clone(), b.clone());
        b
    }

    fn weight_range(&self, cutoff: &Scalar) -> (Scalar, Scalar) {
        (Scalar::zero(), cutoff.clone())
    }

    fn min_weight(&self) -> Option<Scalar> {
        Some(Scalar::zero())
    }
}

impl VertexStructure for EnvelopingVertexAlgebra {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn vacuum(&self) -> BasisId {
        0
    }

    fn mode_bound(&self, a: BasisId, v: BasisId) -> i64 {
        if a == 0 {
            return 0;
        }
        (self.weight(a) + self.weight(v) - 1).floor_i64() + 1
    }

    fn product(&self, a: BasisId, n: i64, b: BasisId) -> GradedVector {
        if a != 0 && n >= self.mode_bound(a, b) {
            return GradedVector::zero();
        }
        if let Some(x) = self.products.get(&(a, n, b)) {
            return x.clone();
        }
        let out = self.compute_product(a, n, b);
        self.products.insert((a, n, b), out.clone());
        out
    }

    fn translation(&self, v: BasisId) -> GradedVector {
        if let Some(x) = self.translations.get(&v) {
            return x.clone();
        }
        let out = self.compute_translation(v);
        self.translations.insert(v, out.clone());
        out
    }
}
