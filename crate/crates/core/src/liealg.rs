//! Finite Lie presentations and their local Lie algebras: affinizations and Virasoro.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numcore::{supersign, Parity, Scalar};
use crate::report::{CheckReport, Failure, Outcome};
use crate::vertexalg::conformal::{ConformalAlgebra, ConformalElement, Generator};

/// A finite-dimensional Lie superalgebra with an even symmetric invariant pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct LiePresentation {
    names: Vec<String>,
    parities: Vec<Parity>,
    /// `[e_i, e_j] = sum_k c_k e_k`
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    pairing: Vec<Vec<Scalar>>,
}

type Vector = BTreeMap<usize, Scalar>;

fn add_into(acc: &mut Vector, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

impl LiePresentation {
    /// Builds and validates a presentation. Missing brackets are zero; `[e_j, e_i]` is filled by skew-symmetry.
    pub fn new(
        basis: Vec<(String, Parity)>,
        brackets: Vec<((usize, usize), Vec<(usize, Scalar)>)>,
        pairing: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = basis.len();
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidStructure("pairing must be a square matrix over the basis".into()));
        }
        let (names, parities): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::InvalidStructure("bracket index out of range".into()));
            }
            let z = supersign(parities[i], parities[j]);
            let neg: Vec<(usize, Scalar)> = v.iter().map(|(k, c)| (*k, -(c * &z))).collect();
            table.insert((i, j), v);
            table.entry((j, i)).or_insert(neg);
        }
        let p = LiePresentation { names, parities, brackets: table, pairing };
        p.validate()?;
        Ok(p)
    }

    /// Abelian even algebra with the given pairing.
    pub fn abelian(names: &[&str], pairing: Vec<Vec<Scalar>>) -> Result<Self> {
        let basis = names.iter().map(|s| (s.to_string(), Parity::Even)).collect();
        Self::new(basis, Vec::new(), pairing)
    }

    /// `sl2` with basis `e, h, f` and the trace-form pairing `(e,f) = 1`, `(h,h) = 2`.
    pub fn sl2() -> Self {
        let one = Scalar::one;
        let basis = vec![("e".into(), Parity::Even), ("h".into(), Parity::Even), ("f".into(), Parity::Even)];
        let brackets = vec![
            ((1, 0), vec![(0, Scalar::from(2))]),
            ((1, 2), vec![(2, Scalar::from(-2))]),
            ((0, 2), vec![(1, one())]),
        ];
        let z = Scalar::zero;
        let pairing = vec![vec![z(), z(), one()], vec![z(), Scalar::from(2), z()], vec![one(), z(), z()]];
        Self::new(basis, brackets, pairing).expect("sl2 presentation is valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn pairing(&self, i: usize, j: usize) -> &Scalar {
        &self.pairing[i][j]
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        let mut out = Vector::new();
        if let Some(v) = self.brackets.get(&(i, j)) {
            for (k, c) in v {
                add_into(&mut out, *k, c.clone());
            }
        }
        out
    }

    fn bracket_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.bracket(*i, *j) {
                    add_into(&mut out, k, a * b * c);
                }
            }
        }
        out
    }

    fn pair_vec(&self, x: &Vector, y: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x {
            for (j, b) in y {
                acc += a * b * &self.pairing[*i][*j];
            }
        }
        acc
    }

    fn unit(i: usize) -> Vector {
        let mut v = Vector::new();
        v.insert(i, Scalar::one());
        v
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let z = supersign(self.parities[i], self.parities[j]);
                let lhs = self.bracket(i, j);
                let mut rhs = Vector::new();
                for (k, c) in self.bracket(j, i) {
                    add_into(&mut rhs, k, -(c * &z));
                }
                if lhs != rhs {
                    return Err(Error::InvalidStructure(format!(
                        "bracket not skew for ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
                for (k, _) in &lhs {
                    if self.parities[*k] != self.parities[i] + self.parities[j] {
                        return Err(Error::InvalidStructure("bracket is not even".into()));
                    }
                }
                if self.pairing[i][j] != self.pairing[j][i] {
                    return Err(Error::InvalidStructure("pairing is not symmetric".into()));
                }
                if !self.pairing[i][j].is_zero() && self.parities[i] != self.parities[j] {
                    return Err(Error::InvalidStructure("pairing is not even".into()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ei, ej, ek) = (Self::unit(i), Self::unit(j), Self::unit(k));
                    // [e_i, [e_j, e_k]] = [[e_i, e_j], e_k] + zeta [e_j, [e_i, e_k]]
                    let lhs = self.bracket_vec(&ei, &self.bracket_vec(&ej, &ek));
                    let mut rhs = self.bracket_vec(&self.bracket_vec(&ei, &ej), &ek);
                    let z = supersign(self.parities[i], self.parities[j]);
                    for (m, c) in self.bracket_vec(&ej, &self.bracket_vec(&ei, &ek)) {
                        add_into(&mut rhs, m, c * &z);
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidStructure(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                    let l = self.pair_vec(&self.bracket_vec(&ei, &ej), &ek);
                    let r = self.pair_vec(&ei, &self.bracket_vec(&ej, &ek));
                    if l != r {
                        return Err(Error::InvalidStructure(format!(
                            "pairing not invariant on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Basis symbols of a local Lie algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    /// `a_n`
    Current(usize, i64),
    /// `abar_m`, `m` in `1/2 + Z`
    Fermion(usize, Scalar),
    /// `L_n`
    Virasoro(i64),
    /// The central element.
    Central,
}

/// A finite combination of symbols.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LocalLieElement {
    terms: BTreeMap<Symbol, Scalar>,
}

impl LocalLieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(s, Scalar::one())
    }

    pub fn term(s: Symbol, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add(s, c);
        e
    }

    pub fn current(g: usize, n: i64) -> Self {
        Self::symbol(Symbol::Current(g, n))
    }

    /// `abar_m`; `m` must lie in `1/2 + Z`.
    pub fn fermion(g: usize, m: Scalar) -> Result<Self> {
        if !(&m - Scalar::ratio(1, 2)).is_integer() {
            return Err(Error::InvalidStructure(format!("fermion index {m} is not half-odd")));
        }
        Ok(Self::symbol(Symbol::Fermion(g, m)))
    }

    pub fn virasoro(n: i64) -> Self {
        Self::symbol(Symbol::Virasoro(n))
    }

    pub fn central() -> Self {
        Self::symbol(Symbol::Central)
    }

    pub fn add(&mut self, s: Symbol, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add_element(&mut self, other: &LocalLieElement, c: &Scalar) {
        for (s, x) in &other.terms {
            self.add(s.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_element(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &Symbol) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Scalar)> {
        self.terms.iter()
    }
}

impl fmt::Debug for LocalLieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("{c}*{s:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Construction {
    /// Currents and fermions over a presentation.
    Superaffine(LiePresentation),
    /// Currents only.
    Affine(LiePresentation),
    /// Fermions only, over an abelian space with a pairing.
    Clifford(LiePresentation),
    Virasoro,
}

/// A local Lie algebra with an explicit bracket on symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalLieAlgebra {
    construction: Construction,
}

/// Superaffinization: currents `a_n`, fermions `abar_m` and a central element.
pub fn superaffinize(g: LiePresentation) -> LocalLieAlgebra {
    LocalLieAlgebra { construction: Construction::Superaffine(g) }
}

/// Affinization: the current part of the superaffinization.
pub fn affinize(g: LiePresentation) -> LocalLieAlgebra {
    LocalLieAlgebra { construction: Construction::Affine(g) }
}

/// Clifford affinization of a space with a pairing, viewed as an abelian algebra.
pub fn clifford_affinize(names: &[&str], pairing: Vec<Vec<Scalar>>) -> Result<LocalLieAlgebra> {
    let g = LiePresentation::abelian(names, pairing)?;
    Ok(LocalLieAlgebra { construction: Construction::Clifford(g) })
}

/// The Virasoro algebra with central element `c`.
pub fn virasoro() -> LocalLieAlgebra {
    LocalLieAlgebra { construction: Construction::Virasoro }
}

/// `(n^3 - n)/12` when `n + m = 0`, else `0`.
pub fn virasoro_cocycle(n: i64, m: i64) -> Scalar {
    if n + m != 0 {
        return Scalar::zero();
    }
    Scalar::ratio(n * n * n - n, 12)
}

impl LocalLieAlgebra {
    fn presentation(&self) -> Option<&LiePresentation> {
        match &self.construction {
            Construction::Superaffine(g) | Construction::Affine(g) | Construction::Clifford(g) => Some(g),
            Construction::Virasoro => None,
        }
    }

    pub fn symbol_parity(&self, s: &Symbol) -> Parity {
        match s {
            Symbol::Current(g, _) => self.presentation().map_or(Parity::Even, |p| p.parity(*g)),
            Symbol::Fermion(g, _) => self.presentation().map_or(Parity::Odd, |p| p.parity(*g).flip()),
            Symbol::Virasoro(_) | Symbol::Central => Parity::Even,
        }
    }

    fn admits(&self, s: &Symbol) -> bool {
        match (&self.construction, s) {
            (_, Symbol::Central) => true,
            (Construction::Virasoro, Symbol::Virasoro(_)) => true,
            (Construction::Superaffine(g), Symbol::Current(i, _) | Symbol::Fermion(i, _)) => *i < g.dim(),
            (Construction::Affine(g), Symbol::Current(i, _)) => *i < g.dim(),
            (Construction::Clifford(g), Symbol::Fermion(i, _)) => *i < g.dim(),
            _ => false,
        }
    }

    /// Bracket of two symbols.
    pub fn bracket_symbols(&self, x: &Symbol, y: &Symbol) -> Result<LocalLieElement> {
        for s in [x, y] {
            if !self.admits(s) {
                return Err(Error::UnknownName(format!("{s:?} is not a symbol of this algebra")));
            }
        }
        let mut out = LocalLieElement::zero();
        match (x, y) {
            (Symbol::Central, _) | (_, Symbol::Central) => {}
            (Symbol::Virasoro(n), Symbol::Virasoro(m)) => {
                out.add(Symbol::Virasoro(n + m), Scalar::from(n - m));
                out.add(Symbol::Central, virasoro_cocycle(*n, *m));
            }
            (Symbol::Current(a, n), Symbol::Current(b, m)) => {
                let g = self.presentation().expect("currents need a presentation");
                for (k, c) in g.bracket(*a, *b) {
                    out.add(Symbol::Current(k, n + m), c);
                }
                if n + m == 0 {
                    out.add(Symbol::Central, Scalar::from(*n) * g.pairing(*a, *b));
                }
            }
            (Symbol::Current(a, n), Symbol::Fermion(b, m)) => {
                let g = self.presentation().expect("currents need a presentation");
                for (k, c) in g.bracket(*a, *b) {
                    out.add(Symbol::Fermion(k, m + *n), c);
                }
            }
            (Symbol::Fermion(_, _), Symbol::Current(_, _)) => {
                let z = supersign(self.symbol_parity(x), self.symbol_parity(y));
                let rev = self.bracket_symbols(y, x)?;
                out.add_element(&rev, &-z);
            }
            (Symbol::Fermion(a, n), Symbol::Fermion(b, m)) => {
                let g = self.presentation().expect("fermions need a presentation");
                if (n + m).is_zero() {
                    out.add(Symbol::Central, g.pairing(*b, *a).clone());
                }
            }
            _ => unreachable!("admits() filters mixed constructions"),
        }
        Ok(out)
    }

    /// Bilinear bracket of elements.
    pub fn bracket(&self, x: &LocalLieElement, y: &LocalLieElement) -> Result<LocalLieElement> {
        let mut out = LocalLieElement::zero();
        for (s, a) in x.terms() {
            for (t, b) in y.terms() {
                out.add_element(&self.bracket_symbols(s, t)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// The translation derivation on symbols.
    pub fn translation(&self, x: &LocalLieElement) -> LocalLieElement {
        let mut out = LocalLieElement::zero();
        for (s, c) in x.terms() {
            match s {
                Symbol::Current(g, n) => out.add(Symbol::Current(*g, n - 1), c * Scalar::from(-n)),
                Symbol::Fermion(g, m) => {
                    let f = -(m - Scalar::ratio(1, 2));
                    out.add(Symbol::Fermion(*g, m - 1), c * f);
                }
                Symbol::Virasoro(n) => out.add(Symbol::Virasoro(n - 1), c * Scalar::from(-(n + 1))),
                Symbol::Central => {}
            }
        }
        out
    }

    /// Parity of a homogeneous element.
    pub fn parity(&self, x: &LocalLieElement) -> Option<Parity> {
        let mut it = x.terms().map(|(s, _)| self.symbol_parity(s));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// The conformal algebra of generating fields and their singular products.
    pub fn conformal_algebra(&self) -> ConformalAlgebra {
        let k = |c: Scalar| ConformalElement::central(c);
        match &self.construction {
            Construction::Virasoro => {
                let gens = vec![Generator::new("L", Parity::Even, Scalar::from(2))];
                let table = vec![
                    ((0, 0, 0), ConformalElement::generator_derivative(0, 1, Scalar::one())),
                    ((0, 0, 1), ConformalElement::generator(0, Scalar::from(2))),
                    ((0, 0, 3), k(Scalar::ratio(1, 2))),
                ];
                ConformalAlgebra::from_linear_opes(gens, table).expect("Virasoro OPEs are valid")
            }
            Construction::Affine(g) | Construction::Superaffine(g) | Construction::Clifford(g) => {
                let with_currents = !matches!(self.construction, Construction::Clifford(_));
                let with_fermions = !matches!(self.construction, Construction::Affine(_));
                let n = g.dim();
                let mut gens = Vec::new();
                let mut cur = vec![usize::MAX; n];
                let mut fer = vec![usize::MAX; n];
                if with_currents {
                    for (i, slot) in cur.iter_mut().enumerate() {
                        *slot = gens.len();
                        gens.push(Generator::new(g.name(i), g.parity(i), Scalar::one()));
                    }
                }
                if with_fermions {
                    for (i, slot) in fer.iter_mut().enumerate() {
                        *slot = gens.len();
                        let name = if with_currents { format!("{}bar", g.name(i)) } else { g.name(i).to_string() };
                        gens.push(Generator::new(&name, g.parity(i).flip(), Scalar::ratio(1, 2)));
                    }
                }
                let mut table = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        let br = g.bracket(a, b);
                        if with_currents {
                            let el = ConformalElement::from_generators(br.iter().map(|(kk, c)| (cur[*kk], c.clone())));
                            if !el.is_zero() {
                                table.push(((cur[a], cur[b], 0), el));
                            }
                            if !g.pairing(a, b).is_zero() {
                                table.push(((cur[a], cur[b], 1), k(g.pairing(a, b).clone())));
                            }
                        }
                        if with_currents && with_fermions {
                            let el = ConformalElement::from_generators(br.iter().map(|(kk, c)| (fer[*kk], c.clone())));
                            if !el.is_zero() {
                                table.push(((cur[a], fer[b], 0), el));
                            }
                            // abar_(0) b = -zeta overline{[b, a]}
                            let z = supersign(g.parity(a).flip(), g.parity(b));
                            let rev = g.bracket(b, a);
                            let el = ConformalElement::from_generators(rev.iter().map(|(kk, c)| (fer[*kk], -(c * &z))));
                            if !el.is_zero() {
                                table.push(((fer[a], cur[b], 0), el));
                            }
                        }
                        if with_fermions && !g.pairing(b, a).is_zero() {
                            table.push(((fer[a], fer[b], 0), k(g.pairing(b, a).clone())));
                        }
                    }
                }
                ConformalAlgebra::from_linear_opes(gens, table).expect("affinization OPEs are valid")
            }
        }
    }
}

/// Cocycle identity for `l_n, l_m, l_k` with `|n|, |m|, |k| <= bound`.
pub fn check_cocycle(bound: i64) -> CheckReport {
    let mut rep = CheckReport::new("virasoro_cocycle", "virasoro-cocycle", "-", format!("[{},{}]", -bound, bound));
    let eps = |x: &BTreeMap<i64, Scalar>, k: i64| -> Scalar {
        x.iter().map(|(n, c)| c * virasoro_cocycle(*n, k)).sum()
    };
    let witt = |n: i64, m: i64| -> BTreeMap<i64, Scalar> {
        let mut b = BTreeMap::new();
        if n != m {
            b.insert(n + m, Scalar::from(n - m));
        }
        b
    };
    for n in -bound..=bound {
        for m in -bound..=bound {
            for k in -bound..=bound {
                // eps([a,b],c) - eps([a,c],b) + eps([b,c],a)
                let v = eps(&witt(n, m), k) - eps(&witt(n, k), m) + eps(&witt(m, k), n);
                rep.record(if v.is_zero() {
                    Outcome::Pass
                } else {
                    Outcome::Fail(Failure {
                        indices: format!("(n,m,k)=({n},{m},{k})"),
                        witness: "l_n, l_m, l_k".into(),
                        lhs: v.to_string(),
                        rhs: "0".into(),
                    })
                });
            }
        }
    }
    rep
}

/// Super-Jacobi identity `[x,[y,z]] = [[x,y],z] + zeta [y,[x,z]]` on homogeneous triples.
pub fn check_lie_jacobi(alg: &LocalLieAlgebra, triples: &[(LocalLieElement, LocalLieElement, LocalLieElement)]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("lie_jacobi", "lie-jacobi", "-", format!("{} triples", triples.len()));
    for (x, y, z) in triples {
        let (px, py) = match (alg.parity(x), alg.parity(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                rep.record(Outcome::Skipped);
                continue;
            }
        };
        let lhs = alg.bracket(x, &alg.bracket(y, z)?)?;
        let mut rhs = alg.bracket(&alg.bracket(x, y)?, z)?;
        rhs.add_element(&alg.bracket(y, &alg.bracket(x, z)?)?, &supersign(px, py));
        rep.record(if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(Failure {
                indices: String::new(),
                witness: format!("{x:?}, {y:?}, {z:?}"),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            })
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis() -> LocalLieAlgebra {
        superaffinize(LiePresentation::abelian(&["a"], vec![vec![Scalar::one()]]).unwrap())
    }

    #[test]
    fn heisenberg_bracket() {
        let alg = heis();
        let b = alg.bracket(&LocalLieElement::current(0, 2), &LocalLieElement::current(0, -2)).unwrap();
        assert_eq!(b, LocalLieElement::term(Symbol::Central, Scalar::from(2)));
    }

    #[test]
    fn clifford_bracket() {
        let alg = clifford_affinize(&["a"], vec![vec![Scalar::one()]]).unwrap();
        let x = LocalLieElement::fermion(0, Scalar::ratio(1, 2)).unwrap();
        let y = LocalLieElement::fermion(0, Scalar::ratio(-1, 2)).unwrap();
        assert_eq!(alg.bracket(&x, &y).unwrap(), LocalLieElement::central());
    }

    #[test]
    fn abelian_current_fermion_commute() {
        let alg = heis();
        for n in -3..=3 {
            let x = LocalLieElement::current(0, n);
            let y = LocalLieElement::fermion(0, Scalar::ratio(2 * n + 1, 2)).unwrap();
            assert!(alg.bracket(&x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn virasoro_examples() {
        let v = virasoro();
        let b = v.bracket(&LocalLieElement::virasoro(2), &LocalLieElement::virasoro(-2)).unwrap();
        let mut want = LocalLieElement::term(Symbol::Virasoro(0), Scalar::from(4));
        want.add(Symbol::Central, Scalar::ratio(1, 2));
        assert_eq!(b, want);
        let b = v.bracket(&LocalLieElement::virasoro(1), &LocalLieElement::virasoro(-1)).unwrap();
        assert_eq!(b, LocalLieElement::term(Symbol::Virasoro(0), Scalar::from(2)));
        for m in -4..=4 {
            let b = v.bracket(&LocalLieElement::virasoro(0), &LocalLieElement::virasoro(m)).unwrap();
            assert_eq!(b, LocalLieElement::term(Symbol::Virasoro(m), Scalar::from(-m)));
        }
    }

    #[test]
    fn cocycle_small_box() {
        assert!(check_cocycle(4).is_pass());
        assert!(virasoro_cocycle(2, 3).is_zero());
    }

    #[test]
    fn cocycle_labeled_triple() {
        let v = |n: i64, m: i64, k: i64| {
            let w = |a: i64, b: i64| (a - b, a + b);
            let (c1, s1) = w(n, m);
            let (c2, s2) = w(n, k);
            let (c3, s3) = w(m, k);
            Scalar::from(c1) * virasoro_cocycle(s1, k) - Scalar::from(c2) * virasoro_cocycle(s2, m)
                + Scalar::from(c3) * virasoro_cocycle(s3, n)
        };
        assert!(v(2, 3, -5).is_zero());
        assert_eq!(Scalar::from(-1) * virasoro_cocycle(5, -5), Scalar::from(-10));
    }

    #[test]
    fn non_invariant_pairing_rejected() {
        let basis = vec![("e".into(), Parity::Even), ("h".into(), Parity::Even), ("f".into(), Parity::Even)];
        let brackets = vec![
            ((1, 0), vec![(0, Scalar::from(2))]),
            ((1, 2), vec![(2, Scalar::from(-2))]),
            ((0, 2), vec![(1, Scalar::one())]),
        ];
        let z = Scalar::zero;
        let bad = vec![vec![z(), z(), Scalar::one()], vec![z(), Scalar::one(), z()], vec![Scalar::one(), z(), z()]];
        assert!(LiePresentation::new(basis, brackets, bad).is_err());
    }

    #[test]
    fn sl2_is_valid() {
        let g = LiePresentation::sl2();
        assert_eq!(g.bracket(0, 2).get(&1), Some(&Scalar::one()));
        assert_eq!(g.bracket(2, 0).get(&1), Some(&Scalar::from(-1)));
    }

    #[test]
    fn jacobi_examples() {
        let v = virasoro();
        let t = vec![(LocalLieElement::virasoro(2), LocalLieElement::virasoro(3), LocalLieElement::virasoro(-5))];
        assert!(check_lie_jacobi(&v, &t).unwrap().is_pass());
        let h = heis();
        let t = vec![(LocalLieElement::current(0, 1), LocalLieElement::current(0, -1), LocalLieElement::current(0, 0))];
        assert!(check_lie_jacobi(&h, &t).unwrap().is_pass());
        let c = clifford_affinize(&["a"], vec![vec![Scalar::one()]]).unwrap();
        let p = |m: i64| LocalLieElement::fermion(0, Scalar::ratio(m, 2)).unwrap();
        let t = vec![(p(1), p(1), p(-1))];
        assert!(check_lie_jacobi(&c, &t).unwrap().is_pass());
    }

    #[test]
    fn translation_is_derivation_on_sl2() {
        let alg = superaffinize(LiePresentation::sl2());
        let syms = [
            LocalLieElement::current(0, 2),
            LocalLieElement::current(1, -1),
            LocalLieElement::current(2, 0),
            LocalLieElement::fermion(1, Scalar::ratio(1, 2)).unwrap(),
            LocalLieElement::fermion(2, Scalar::ratio(-3, 2)).unwrap(),
        ];
        for x in &syms {
            for y in &syms {
                let lhs = alg.translation(&alg.bracket(x, y).unwrap());
                let mut rhs = alg.bracket(&alg.translation(x), y).unwrap();
                rhs.add_element(&alg.bracket(x, &alg.translation(y)).unwrap(), &Scalar::one());
                assert_eq!(lhs, rhs, "{x:?} {y:?}");
            }
        }
    }
}
