use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::fieldcalc::{exact_mode_bound, translate_divided, BasisId, GradedVector, Scope};
use crate::numcore::{supersign, Parity, Scalar};
use crate::vertexalg::{catalog, find_state, VertexAlgebra};

/// A pair of modes `(n, nbar)`.
pub type Index2 = (i64, i64);

/// A pair of weights or exponents `(h, hbar)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight2 {
    pub h: Scalar,
    pub hbar: Scalar,
}

impl Weight2 {
    pub fn new(h: impl Into<Scalar>, hbar: impl Into<Scalar>) -> Self {
        Weight2 { h: h.into(), hbar: hbar.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    /// `h - hbar`.
    pub fn spin(&self) -> Scalar {
        &self.h - &self.hbar
    }

    /// Whether `h - hbar` is an integer.
    pub fn is_statistical(&self) -> bool {
        self.spin().is_integer()
    }

    pub fn to_ints(&self) -> Option<Index2> {
        Some((self.h.to_i64()?, self.hbar.to_i64()?))
    }

    /// Componentwise `<=`.
    pub fn below(&self, other: &Weight2) -> bool {
        self.h <= other.h && self.hbar <= other.hbar
    }

    pub fn plus(&self, other: &Weight2) -> Weight2 {
        Weight2 { h: &self.h + &other.h, hbar: &self.hbar + &other.hbar }
    }

    /// `self - n - 1` for a mode pair.
    pub fn after_mode(&self, n: Index2) -> Weight2 {
        Weight2 { h: &self.h - n.0 - 1, hbar: &self.hbar - n.1 - 1 }
    }
}

impl From<Index2> for Weight2 {
    fn from(n: Index2) -> Self {
        Weight2::new(n.0, n.1)
    }
}

impl fmt::Display for Weight2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.hbar)
    }
}

impl FromStr for Weight2 {
    type Err = Error;

    /// Accepts `(h,hbar)`, `h,hbar` or a single value used for both.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        match t.split_once(',') {
            Some((a, b)) => Ok(Weight2 { h: a.trim().parse()?, hbar: b.trim().parse()? }),
            None => {
                let x: Scalar = t.trim().parse()?;
                Ok(Weight2 { h: x.clone(), hbar: x })
            }
        }
    }
}

fn combine_scopes(a: Scope, b: Scope) -> Scope {
    match (a, b) {
        (Scope::Vanishing, _) | (_, Scope::Vanishing) => Scope::Vanishing,
        (Scope::Beyond, _) | (_, Scope::Beyond) => Scope::Beyond,
        _ => Scope::Inside,
    }
}

#[derive(Default)]
struct Pairs {
    pairs: Vec<(BasisId, BasisId)>,
    index: HashMap<(BasisId, BasisId), BasisId>,
}

/// `V (x) Vbar` with fields `a(z) (x) a'(zbar)`, weights `(h, hbar)` and translations `(T (x) 1, 1 (x) Tbar)`.
pub struct TensorOpeAlgebra {
    label: String,
    hol: Arc<dyn VertexAlgebra>,
    anti: Arc<dyn VertexAlgebra>,
    registry: RwLock<Pairs>,
    products: DashMap<(BasisId, Index2, BasisId), GradedVector>,
    bounds: DashMap<(BasisId, BasisId), Index2>,
}

impl TensorOpeAlgebra {
    /// The anti-holomorphic factor is used with its modes read in `zbar`.
    pub fn new(label: impl Into<String>, hol: Arc<dyn VertexAlgebra>, anti: Arc<dyn VertexAlgebra>) -> Self {
        let alg = TensorOpeAlgebra {
            label: label.into(),
            hol,
            anti,
            registry: RwLock::new(Pairs::default()),
            products: DashMap::new(),
            bounds: DashMap::new(),
        };
        alg.intern(alg.hol.vacuum(), alg.anti.vacuum());
        alg
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn hol(&self) -> &Arc<dyn VertexAlgebra> {
        &self.hol
    }

    pub fn anti(&self) -> &Arc<dyn VertexAlgebra> {
        &self.anti
    }

    pub fn intern(&self, a: BasisId, b: BasisId) -> BasisId {
        if let Some(id) = self.registry.read().expect("pair lock").index.get(&(a, b)) {
            return *id;
        }
        let mut reg = self.registry.write().expect("pair lock");
        if let Some(id) = reg.index.get(&(a, b)) {
            return *id;
        }
        let id = reg.pairs.len() as BasisId;
        reg.pairs.push((a, b));
        reg.index.insert((a, b), id);
        id
    }

    /// Holomorphic and anti-holomorphic factors of a basis vector.
    pub fn factors(&self, v: BasisId) -> (BasisId, BasisId) {
        self.registry.read().expect("pair lock").pairs[v as usize]
    }

    /// `x (x) y` without a sign.
    pub fn tensor(&self, x: &GradedVector, y: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_term(self.intern(i, j), &(a * b));
            }
        }
        out
    }

    /// `a (x) 1`.
    pub fn holomorphic(&self, a: &GradedVector) -> GradedVector {
        self.tensor(a, &GradedVector::basis(self.anti.vacuum()))
    }

    /// `1 (x) a`.
    pub fn antiholomorphic(&self, a: &GradedVector) -> GradedVector {
        self.tensor(&GradedVector::basis(self.hol.vacuum()), a)
    }

    pub fn vacuum(&self) -> BasisId {
        0
    }

    pub fn weight2(&self, v: BasisId) -> Weight2 {
        let (a, b) = self.factors(v);
        Weight2 { h: self.hol.weight(a), hbar: self.anti.weight(b) }
    }

    pub fn parity(&self, v: BasisId) -> Parity {
        let (a, b) = self.factors(v);
        self.hol.parity(a) + self.anti.parity(b)
    }

    pub fn basis_name(&self, v: BasisId) -> String {
        let (a, b) = self.factors(v);
        format!("{} (x) {}", self.hol.basis_name(a), self.anti.basis_name(b))
    }

    pub fn render(&self, v: &GradedVector) -> String {
        v.render_with(|i| self.basis_name(i))
    }

    pub fn homogeneous_weight2(&self, v: &GradedVector) -> Option<Weight2> {
        let mut it = v.support().map(|i| self.weight2(i));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn vector_parity(&self, v: &GradedVector) -> Option<Parity> {
        let mut it = v.support().map(|i| self.parity(i));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Lowest weights of the two factors.
    pub fn min_weight2(&self) -> Option<Weight2> {
        Some(Weight2 { h: self.hol.min_weight()?, hbar: self.anti.min_weight()? })
    }

    /// Basis vectors with `h <= cutoff.h` and `hbar <= cutoff.hbar`, by total weight.
    pub fn basis_up_to(&self, cutoff: &Weight2) -> Vec<BasisId> {
        let mut out: Vec<(Scalar, Scalar, BasisId)> = Vec::new();
        for a in self.hol.basis_up_to(&cutoff.h) {
            for b in self.anti.basis_up_to(&cutoff.hbar) {
                let (h, hb) = (self.hol.weight(a), self.anti.weight(b));
                out.push((&h + &hb, h, self.intern(a, b)));
            }
        }
        out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        out.into_iter().map(|t| t.2).collect()
    }

    /// Dimension of each weight space up to the cutoff.
    pub fn character2(&self, cutoff: &Weight2) -> BTreeMap<Weight2, usize> {
        let mut out = BTreeMap::new();
        for id in self.basis_up_to(cutoff) {
            *out.entry(self.weight2(id)).or_insert(0) += 1;
        }
        out
    }

    pub fn scope2(&self, w: &Weight2, cutoff: &Weight2) -> Scope {
        combine_scopes(self.hol.scope(&w.h, &cutoff.h), self.anti.scope(&w.hbar, &cutoff.hbar))
    }

    /// `(N, Nbar)` with `a_(n, nbar) v = 0` once `n >= N` or `nbar >= Nbar`.
    pub fn mode_bound2(&self, a: BasisId, v: BasisId) -> Index2 {
        let (a1, a2) = self.factors(a);
        let (v1, v2) = self.factors(v);
        (self.hol.mode_bound(a1, v1), self.anti.mode_bound(a2, v2))
    }

    /// Least `(N, Nbar)` with `a_(n, nbar) b = 0` once `n >= N` or `nbar >= Nbar`, per factor.
    pub fn exact_bound2(&self, a: BasisId, b: BasisId) -> Index2 {
        if let Some(x) = self.bounds.get(&(a, b)) {
            return *x;
        }
        let (a1, a2) = self.factors(a);
        let (b1, b2) = self.factors(b);
        let x = (
            exact_mode_bound(self.hol.as_ref(), &GradedVector::basis(a1), &GradedVector::basis(b1)),
            exact_mode_bound(self.anti.as_ref(), &GradedVector::basis(a2), &GradedVector::basis(b2)),
        );
        self.bounds.insert((a, b), x);
        x
    }

    /// `(a (x) a')_(n, nbar) (b (x) b') = zeta(a', b) a_(n) b (x) a'_(nbar) b'`.
    pub fn product2(&self, a: BasisId, n: Index2, b: BasisId) -> GradedVector {
        let bound = self.mode_bound2(a, b);
        if n.0 >= bound.0 || n.1 >= bound.1 {
            return GradedVector::zero();
        }
        if let Some(x) = self.products.get(&(a, n, b)) {
            return x.clone();
        }
        let (a1, a2) = self.factors(a);
        let (b1, b2) = self.factors(b);
        let x = self.hol.product(a1, n.0, b1);
        let out = if x.is_zero() {
            x
        } else {
            let y = self.anti.product(a2, n.1, b2);
            self.tensor(&x, &y).scaled(&supersign(self.anti.parity(a2), self.hol.parity(b1)))
        };
        self.products.insert((a, n, b), out.clone());
        out
    }

    /// Bilinear extension of [`Self::product2`].
    pub fn product2_vec(&self, a: &GradedVector, n: Index2, b: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (ia, ca) in a.iter() {
            for (ib, cb) in b.iter() {
                out.add_vector(&self.product2(ia, n, ib), &(ca * cb));
            }
        }
        out
    }

    /// Divided powers `T^(i) Tbar^(ibar) v`.
    pub fn translate2(&self, v: &GradedVector, i: Index2) -> GradedVector {
        let mut out = GradedVector::zero();
        for (id, c) in v.iter() {
            let (x, y) = self.factors(id);
            let tx = translate_divided(self.hol.as_ref(), &GradedVector::basis(x), i.0 as u32);
            let ty = translate_divided(self.anti.as_ref(), &GradedVector::basis(y), i.1 as u32);
            out.add_vector(&self.tensor(&tx, &ty), c);
        }
        out
    }

    /// Holomorphic generators `g (x) 1` named `g`, anti-holomorphic ones `1 (x) g` named `gbar`.
    pub fn generators(&self) -> Vec<(String, GradedVector)> {
        let mut out = Vec::new();
        for (name, s) in self.hol.generators() {
            out.push((name, self.holomorphic(&s)));
        }
        for (name, s) in self.anti.generators() {
            out.push((format!("{name}bar"), self.antiholomorphic(&s)));
        }
        out
    }

    /// A state given by a generator name, a basis name, or `x (x) y` with factor names.
    pub fn find_state(&self, name: &str, cutoff: &Weight2) -> Result<GradedVector> {
        let name = name.trim();
        if name == "|0>" || name == "1" {
            return Ok(GradedVector::basis(self.vacuum()));
        }
        if let Some((_, s)) = self.generators().into_iter().find(|(n, _)| n == name) {
            return Ok(s);
        }
        if let Some(id) = self.basis_up_to(cutoff).into_iter().find(|&id| self.basis_name(id) == name) {
            return Ok(GradedVector::basis(id));
        }
        if let Some((x, y)) = name.split_once("(x)") {
            let left = find_state(self.hol.as_ref(), x, &cutoff.h)?;
            let y = y.trim();
            let right = match y.strip_suffix("bar") {
                Some(g) if self.anti.generators().iter().any(|(n, _)| n == g) => find_state(self.anti.as_ref(), g, &cutoff.hbar)?,
                _ => find_state(self.anti.as_ref(), y, &cutoff.hbar)?,
            };
            return Ok(self.tensor(&left, &right));
        }
        Err(Error::UnknownName(name.to_string()))
    }

    /// Pole-order cosets of products in this algebra; all modes are integral, so only `Z^2`.
    pub fn candidate_cosets(&self) -> Vec<Weight2> {
        vec![Weight2::zero()]
    }
}

/// `Heis (x) anti-Heis` at levels `(k, kbar)`.
pub fn toroidal_tensor(level: Scalar, level_bar: Scalar, cutoff: &Weight2) -> TensorOpeAlgebra {
    let label = format!("toroidal_tensor({level},{level_bar})");
    TensorOpeAlgebra::new(
        label,
        Arc::new(catalog::heisenberg(level, cutoff.h.clone())),
        Arc::new(catalog::heisenberg(level_bar, cutoff.hbar.clone())),
    )
}

/// `clifford1 (x) anti-clifford1` at levels `(k, kbar)`.
pub fn fermion_tensor(level: Scalar, level_bar: Scalar, cutoff: &Weight2) -> TensorOpeAlgebra {
    let label = format!("fermion_tensor({level},{level_bar})");
    TensorOpeAlgebra::new(
        label,
        Arc::new(catalog::clifford1(level, cutoff.h.clone())),
        Arc::new(catalog::clifford1(level_bar, cutoff.hbar.clone())),
    )
}

/// Two-variable catalog entries with their parameters and defaults.
pub const ENTRIES2: [(&str, &str, &str); 2] = [("toroidal_tensor", "level,level_bar", "1,1"), ("fermion_tensor", "level,level_bar", "1,1")];

/// Builds `toroidal_tensor(k,kbar)` or `fermion_tensor(k,kbar)`; a single parameter sets both levels.
pub fn build2(reference: &str, cutoff: &Weight2) -> Result<TensorOpeAlgebra> {
    let (name, param) = catalog::parse_reference(reference)?;
    let default = ENTRIES2
        .iter()
        .find(|e| e.0 == name)
        .map(|e| e.2)
        .ok_or_else(|| Error::UnknownName(format!("catalog algebra {name}")))?;
    let levels: Weight2 = param.as_deref().unwrap_or(default).parse()?;
    Ok(match name.as_str() {
        "toroidal_tensor" => toroidal_tensor(levels.h, levels.hbar, cutoff),
        _ => fermion_tensor(levels.h, levels.hbar, cutoff),
    })
}

/// Whether a catalog reference names a two-variable algebra.
pub fn is_two_variable(reference: &str) -> bool {
    catalog::parse_reference(reference).is_ok_and(|(n, _)| ENTRIES2.iter().any(|e| e.0 == n))
}
