use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numcore::{binom, factorial, sign_of_int, supersign, Parity, Scalar};

/// A strong generator of a conformal algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub weight: Scalar,
}

impl Generator {
    pub fn new(name: &str, parity: Parity, weight: Scalar) -> Self {
        Generator { name: name.into(), parity, weight }
    }
}

/// An element of `K[T] S + K k`: derivatives of generators plus a central part.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct ConformalElement {
    /// `(generator, power of T) -> coefficient`
    terms: BTreeMap<(usize, u32), Scalar>,
    central: Scalar,
}

impl ConformalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn central(c: Scalar) -> Self {
        ConformalElement { terms: BTreeMap::new(), central: c }
    }

    pub fn generator(g: usize, c: Scalar) -> Self {
        Self::generator_derivative(g, 0, c)
    }

    /// `c T^p g`
    pub fn generator_derivative(g: usize, p: u32, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, p, &c);
        e
    }

    pub fn from_generators(it: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (g, c) in it {
            e.add_term(g, 0, &c);
        }
        e
    }

    pub fn add_term(&mut self, g: usize, p: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((g, p)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(g, p));
        }
    }

    pub fn add_scaled(&mut self, other: &ConformalElement, c: &Scalar) {
        for ((g, p), x) in &other.terms {
            self.add_term(*g, *p, &(x * c));
        }
        self.central += &other.central * c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn central_part(&self) -> &Scalar {
        &self.central
    }

    /// Terms `((generator, power of T), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, u32), &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn translate(&self) -> ConformalElement {
        let mut out = Self::zero();
        for ((g, p), c) in &self.terms {
            out.add_term(*g, p + 1, c);
        }
        out
    }

    pub fn render(&self, names: &[Generator]) -> String {
        let mut parts = Vec::new();
        for ((g, p), c) in &self.terms {
            let base = match p {
                0 => names[*g].name.clone(),
                1 => format!("T{}", names[*g].name),
                _ => format!("T^{p}{}", names[*g].name),
            };
            parts.push(if c.is_one() { base } else { format!("{c}*{base}") });
        }
        if !self.central.is_zero() {
            parts.push(if self.central.is_one() { "k".into() } else { format!("{}*k", self.central) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for ConformalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((g, p), c)| format!("{c}*T^{p}g{g}")).collect();
        write!(f, "[{}] + {}*k", parts.join(" + "), self.central)
    }
}

/// Key of a singular product `s_(n) t` between generators.
pub type OpeKey = (usize, usize, u32);

/// A conformal algebra presented by linear OPEs among generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalAlgebra {
    generators: Vec<Generator>,
    table: BTreeMap<OpeKey, ConformalElement>,
}

impl ConformalAlgebra {
    /// Builds the algebra and checks skew-symmetry and the Jacobi identity on generators.
    pub fn from_linear_opes(generators: Vec<Generator>, table: Vec<(OpeKey, ConformalElement)>) -> Result<Self> {
        let alg = Self::unchecked(generators, table)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Builds the algebra without checking any identity; only shapes and weights are validated.
    pub fn unchecked(generators: Vec<Generator>, table: Vec<(OpeKey, ConformalElement)>) -> Result<Self> {
        let n = generators.len();
        let mut map = BTreeMap::new();
        for ((s, t, k), e) in table {
            if s >= n || t >= n || e.terms.keys().any(|(g, _)| *g >= n) {
                return Err(Error::InvalidStructure("OPE refers to an unknown generator".into()));
            }
            for g in &generators {
                if g.weight <= Scalar::zero() {
                    return Err(Error::InvalidStructure(format!("generator {} needs positive weight", g.name)));
                }
            }
            let want = &generators[s].weight + &generators[t].weight - k as i64 - 1;
            for ((g, p), _) in e.terms() {
                if generators[g].weight.clone() + p as i64 != want {
                    return Err(Error::NotHomogeneous(format!(
                        "{}_({k}){} has a term of the wrong weight",
                        generators[s].name, generators[t].name
                    )));
                }
                if generators[g].parity != generators[s].parity + generators[t].parity {
                    return Err(Error::InvalidStructure("OPE term has the wrong parity".into()));
                }
            }
            if !e.central.is_zero() && (!want.is_zero() || generators[s].parity != generators[t].parity) {
                return Err(Error::NotHomogeneous("central term in a product of nonzero weight".into()));
            }
            if !e.is_zero() {
                map.insert((s, t, k), e);
            }
        }
        Ok(ConformalAlgebra { generators, table: map })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn table(&self) -> impl Iterator<Item = (&OpeKey, &ConformalElement)> {
        self.table.iter()
    }

    /// `s_(n) t` for generators; zero for `n < 0` outside the table.
    pub fn generator_product(&self, s: usize, n: u32, t: usize) -> ConformalElement {
        self.table.get(&(s, t, n)).cloned().unwrap_or_default()
    }

    /// Least `N` with `s_(n) t = 0` for `n >= N`.
    pub fn pole_order(&self, s: usize, t: usize) -> u32 {
        self.table.keys().filter(|(a, b, _)| *a == s && *b == t).map(|(_, _, k)| k + 1).max().unwrap_or(0)
    }

    /// `(T^p s)_(n) (T^q t)` for `n >= 0`.
    fn monomial_product(&self, s: usize, p: u32, n: u32, t: usize, q: u32) -> ConformalElement {
        if q > 0 {
            // x_(n) T y = T(x_(n) y) - (T x)_(n) y
            let mut out = self.monomial_product(s, p, n, t, q - 1).translate();
            out.add_scaled(&self.monomial_product(s, p + 1, n, t, q - 1), &Scalar::from(-1));
            return out;
        }
        if p > n {
            return ConformalElement::zero();
        }
        let c = Scalar::from(sign_of_int(p as i64)) * factorial(p) * binom(&Scalar::from(n as i64), p as i64);
        let mut out = ConformalElement::zero();
        out.add_scaled(&self.generator_product(s, n - p, t), &c);
        out
    }

    /// Bilinear `x_(n) y` for `n >= 0`; the central element is annihilated on both sides.
    pub fn product(&self, x: &ConformalElement, n: u32, y: &ConformalElement) -> ConformalElement {
        let mut out = ConformalElement::zero();
        for ((s, p), a) in &x.terms {
            for ((t, q), b) in &y.terms {
                out.add_scaled(&self.monomial_product(*s, *p, n, *t, *q), &(a * b));
            }
        }
        out
    }

    fn max_pole(&self) -> u32 {
        self.table.keys().map(|(_, _, k)| k + 1).max().unwrap_or(0)
    }

    /// Skew-symmetry and Jacobi on generators for indices up to the largest pole order.
    pub fn validate(&self) -> Result<()> {
        let g = self.generators.len();
        let top = self.max_pole() + 1;
        let gen = |i: usize| ConformalElement::generator(i, Scalar::one());
        for a in 0..g {
            for b in 0..g {
                let z = supersign(self.generators[a].parity, self.generators[b].parity);
                for n in 0..=top {
                    // zeta b_(n) a = sum_i (-1)^(n+1+i) T^(i) (a_(n+i) b)
                    let mut lhs = ConformalElement::zero();
                    lhs.add_scaled(&self.generator_product(b, n, a), &z);
                    let mut rhs = ConformalElement::zero();
                    for i in 0..=top {
                        let mut u = self.generator_product(a, n + i, b);
                        for _ in 0..i {
                            u = u.translate();
                        }
                        let c = Scalar::from(sign_of_int((n + 1 + i) as i64)) / factorial(i);
                        rhs.add_scaled(&u, &c);
                    }
                    if lhs != rhs {
                        return Err(Error::IdentityViolation {
                            identity: "skew_symmetry".into(),
                            witness: format!("{}, {} at n={n}", self.generators[a].name, self.generators[b].name),
                        });
                    }
                }
            }
        }
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    let z = supersign(self.generators[a].parity, self.generators[b].parity);
                    for m in 0..=top {
                        for n in 0..=top {
                            // a_(m)(b_(n) c) - zeta b_(n)(a_(m) c) = sum_i C(m,i) (a_(i) b)_(m+n-i) c
                            let mut lhs = self.product(&gen(a), m, &self.generator_product(b, n, c));
                            let rev = self.product(&gen(b), n, &self.generator_product(a, m, c));
                            lhs.add_scaled(&rev, &-z.clone());
                            let mut rhs = ConformalElement::zero();
                            for i in 0..=m {
                                let ab = self.generator_product(a, i, b);
                                let coeff = binom(&Scalar::from(m as i64), i as i64);
                                rhs.add_scaled(&self.product(&ab, m + n - i, &gen(c)), &coeff);
                            }
                            if lhs != rhs {
                                return Err(Error::IdentityViolation {
                                    identity: "jacobi".into(),
                                    witness: format!(
                                        "{}, {}, {} at (m,n)=({m},{n})",
                                        self.generators[a].name, self.generators[b].name, self.generators[c].name
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis() -> Vec<Generator> {
        vec![Generator::new("a", Parity::Even, Scalar::one())]
    }

    #[test]
    fn heisenberg_valid() {
        let t = vec![((0, 0, 1), ConformalElement::central(Scalar::one()))];
        assert!(ConformalAlgebra::from_linear_opes(heis(), t).is_ok());
    }

    #[test]
    fn broken_skew_rejected() {
        let t = vec![((0, 0, 0), ConformalElement::generator(0, Scalar::one()))];
        let err = ConformalAlgebra::from_linear_opes(heis(), t).unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { ref identity, .. } if identity == "skew_symmetry"));
    }

    #[test]
    fn translation_rule() {
        let t = vec![((0, 0, 1), ConformalElement::central(Scalar::one()))];
        let alg = ConformalAlgebra::unchecked(heis(), t).unwrap();
        let ta = ConformalElement::generator_derivative(0, 1, Scalar::one());
        let a = ConformalElement::generator(0, Scalar::one());
        // (T a)_(2) a = -2 a_(1) a
        assert_eq!(alg.product(&ta, 2, &a), ConformalElement::central(Scalar::from(-2)));
        assert!(alg.product(&ta, 0, &a).is_zero());
    }

    #[test]
    fn wrong_weight_rejected() {
        let t = vec![((0, 0, 0), ConformalElement::central(Scalar::one()))];
        assert!(ConformalAlgebra::unchecked(heis(), t).is_err());
    }
}
