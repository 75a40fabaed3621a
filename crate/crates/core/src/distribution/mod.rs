//! Sparse formal distributions with windowed truncation.

mod expand;
mod window;

use std::collections::BTreeMap;
use std::fmt;

pub use expand::{
    delta, expand_pair_power, expand_power, shifted_delta, Region, Sign,
};
pub use window::{Interval, Window};

use crate::error::{Error, Result};
use crate::numcore::{binom, Scalar};

/// Formal variable names.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Z,
    Zbar,
    W,
    Wbar,
    X,
    Xbar,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::Zbar => "zbar",
            Var::W => "w",
            Var::Wbar => "wbar",
            Var::X => "x",
            Var::Xbar => "xbar",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values a distribution may carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: &Scalar);
    fn render(&self) -> String;

    fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        *self += other * c;
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// A finite map from exponent tuples to coefficients, exact inside `window`.
#[derive(Clone, PartialEq, Debug)]
pub struct Distribution<C: Coefficient = Scalar> {
    vars: Vec<Var>,
    window: Window,
    terms: BTreeMap<Vec<Scalar>, C>,
}

impl<C: Coefficient> Distribution<C> {
    pub fn new(vars: Vec<Var>, window: Window) -> Self {
        assert_eq!(vars.len(), window.arity(), "window arity");
        Distribution { vars, window, terms: BTreeMap::new() }
    }

    /// An exactly known distribution (no truncation).
    pub fn exact(vars: Vec<Var>) -> Self {
        let n = vars.len();
        Self::new(vars, Window::full(n))
    }

    /// A single monomial `c * prod var^exp`.
    pub fn monomial(vars: Vec<Var>, exps: Vec<Scalar>, c: C) -> Self {
        let mut d = Self::exact(vars);
        d.add_term(exps, &c);
        d
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn is_exact(&self) -> bool {
        self.window.is_full()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Scalar>, &C)> {
        self.terms.iter()
    }

    /// Coefficient at an exponent tuple; zero if absent.
    pub fn coeff(&self, exps: &[Scalar]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient at the mode tuple `n`, where the exponent is `-n-1`.
    pub fn mode(&self, modes: &[Scalar]) -> C {
        let exps: Vec<Scalar> = modes.iter().map(|n| -n - 1).collect();
        self.coeff(&exps)
    }

    fn var_index(&self, v: Var) -> Result<usize> {
        self.vars
            .iter()
            .position(|&x| x == v)
            .ok_or_else(|| Error::Variables(format!("{v} not among {:?}", self.vars)))
    }

    /// Adds `c` at `exps`; terms outside the window are dropped.
    pub fn add_term(&mut self, exps: Vec<Scalar>, c: &C) {
        self.add_scaled_term(exps, c, &Scalar::one());
    }

    pub fn add_scaled_term(&mut self, exps: Vec<Scalar>, c: &C, s: &Scalar) {
        if s.is_zero() || c.is_zero() || !self.window.contains(&exps) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                old.add_scaled(c, s);
                if old.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.scaled(s));
            }
        }
    }

    fn check_vars(&self, other_vars: &[Var]) -> Result<()> {
        if self.vars != other_vars {
            return Err(Error::Variables(format!("{:?} vs {:?}", self.vars, other_vars)));
        }
        Ok(())
    }

    /// Sum, exact on the common window.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Scalar::from(-1))
    }

    fn combine(&self, other: &Self, s: &Scalar) -> Result<Self> {
        self.check_vars(&other.vars)?;
        let mut out = Self::new(self.vars.clone(), self.window.intersect(&other.window));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c);
        }
        for (e, c) in &other.terms {
            out.add_scaled_term(e.clone(), c, s);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::new(self.vars.clone(), self.window.clone());
        for (e, c) in &self.terms {
            out.add_scaled_term(e.clone(), c, s);
        }
        out
    }

    /// Coefficients of `var^{-1}`, with `var` removed from the signature.
    pub fn residue(&self, var: Var) -> Result<Self> {
        let k = self.var_index(var)?;
        let minus_one = Scalar::from(-1);
        if !self.window.0[k].contains(&minus_one) {
            return Err(Error::InfiniteSupport(format!(
                "residue in {var} outside window {}",
                self.window
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(k);
        let mut win = self.window.0.clone();
        win.remove(k);
        let mut out = Self::new(vars, Window(win));
        for (e, c) in &self.terms {
            if e[k] == minus_one {
                let mut e2 = e.clone();
                e2.remove(k);
                out.add_term(e2, c);
            }
        }
        Ok(out)
    }

    /// Divided-power derivative `d^n/d var^n / n!`.
    pub fn derivative(&self, var: Var, n: u32) -> Result<Self> {
        let k = self.var_index(var)?;
        let shift = Scalar::from(-(n as i64));
        let mut win = self.window.clone();
        win.0[k] = win.0[k].shift(&shift);
        let mut out = Self::new(self.vars.clone(), win);
        for (e, c) in &self.terms {
            let b = binom(&e[k], n as i64);
            let mut e2 = e.clone();
            e2[k] = &e[k] + &shift;
            out.add_scaled_term(e2, c, &b);
        }
        Ok(out)
    }

    /// Multiplication by `var^h`.
    pub fn mul_monomial(&self, var: Var, h: &Scalar) -> Result<Self> {
        let k = self.var_index(var)?;
        let mut win = self.window.clone();
        win.0[k] = win.0[k].shift(h);
        let mut out = Self::new(self.vars.clone(), win);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] = &e[k] + h;
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Product with a scalar distribution; at least one factor must be exact.
    pub fn mul(&self, other: &Distribution<Scalar>) -> Result<Self> {
        self.check_vars(&other.vars)?;
        let window = if other.is_exact() {
            shrink_window(&self.window, other.terms.keys())
        } else if self.is_exact() {
            shrink_window(&other.window, self.terms.keys())
        } else {
            return Err(Error::InfiniteSupport(
                "product of two truncated distributions is not determined".into(),
            ));
        };
        let mut out = Self::new(self.vars.clone(), window);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<Scalar> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_scaled_term(e, c1, c2);
            }
        }
        Ok(out)
    }

    /// Keeps the terms whose exponents satisfy `pred`.
    pub fn restrict(&self, pred: impl Fn(&[Scalar]) -> bool) -> Self {
        let mut out = Self::new(self.vars.clone(), self.window.clone());
        for (e, c) in &self.terms {
            if pred(e) {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// Restriction to a smaller window.
    pub fn restrict_window(&self, w: &Window) -> Self {
        let window = self.window.intersect(w);
        let mut out = Self::new(self.vars.clone(), window);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    /// Substitutes `from := to`, merging the two exponents into `to`.
    pub fn diagonal(&self, from: Var, to: Var) -> Result<Self> {
        let kf = self.var_index(from)?;
        let kt = self.var_index(to)?;
        let (wf, wt) = (&self.window.0[kf], &self.window.0[kt]);
        let open_up = wf.hi.is_none() && wt.lo.is_none();
        let open_down = wf.lo.is_none() && wt.hi.is_none();
        if !self.is_exact() && (open_up || open_down) {
            return Err(Error::InfiniteSupport(format!(
                "diagonal {from}={to} not summable on window {}",
                self.window
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(kf);
        let mut out = Self::exact(vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[kt] = &e[kt] + &e[kf];
            e2.remove(kf);
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Reorders or renames variables: `perm[i]` is the new name of variable `i`.
    pub fn rename(&self, new_vars: Vec<Var>) -> Result<Self> {
        if new_vars.len() != self.vars.len() {
            return Err(Error::Variables("rename arity".into()));
        }
        let mut order: Vec<usize> = (0..new_vars.len()).collect();
        order.sort_by_key(|&i| new_vars[i]);
        let vars: Vec<Var> = order.iter().map(|&i| new_vars[i]).collect();
        if vars.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Variables("duplicate variable".into()));
        }
        let window = Window(order.iter().map(|&i| self.window.0[i].clone()).collect());
        let mut out = Self::new(vars, window);
        for (e, c) in &self.terms {
            out.add_term(order.iter().map(|&i| e[i].clone()).collect(), c);
        }
        Ok(out)
    }

    /// Adds variables on which the distribution does not depend.
    pub fn embed(&self, all: &[Var]) -> Result<Self> {
        let idx: Vec<Option<usize>> =
            all.iter().map(|v| self.vars.iter().position(|x| x == v)).collect();
        if idx.iter().flatten().count() != self.vars.len() {
            return Err(Error::Variables(format!("{:?} not contained in {:?}", self.vars, all)));
        }
        let window = Window(
            idx.iter()
                .map(|i| i.map(|k| self.window.0[k].clone()).unwrap_or_else(Interval::full))
                .collect(),
        );
        let mut out = Self::new(all.to_vec(), window);
        for (e, c) in &self.terms {
            let e2 = idx.iter().map(|i| i.map(|k| e[k].clone()).unwrap_or_else(Scalar::zero));
            out.add_term(e2.collect(), c);
        }
        Ok(out)
    }

    /// First exponent in the common window where the two differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Vec<Scalar>>> {
        self.check_vars(&other.vars)?;
        let common = self.window.intersect(&other.window);
        for e in self.terms.keys().chain(other.terms.keys()) {
            if common.contains(e) && self.coeff(e) != other.coeff(e) {
                return Ok(Some(e.clone()));
            }
        }
        Ok(None)
    }

    /// Equality within the common window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }

    /// Terms with nonzero coefficient lying in `w`.
    pub fn support_in(&self, w: &Window) -> Vec<Vec<Scalar>> {
        self.terms.keys().filter(|e| w.contains(e)).cloned().collect()
    }

    /// Canonical text: descending exponent order, `coeff * var^exp` factors.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = render_coeff(&c.render());
                for (v, x) in self.vars.iter().zip(e) {
                    if !x.is_zero() {
                        s.push_str(&format!(" * {v}^{x}"));
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

fn render_coeff(c: &str) -> String {
    if c.contains(' ') {
        format!("({c})")
    } else {
        c.to_string()
    }
}

impl<C: Coefficient> fmt::Display for Distribution<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn shrink_window<'a>(win: &Window, support: impl Iterator<Item = &'a Vec<Scalar>>) -> Window {
    let support: Vec<&Vec<Scalar>> = support.collect();
    if support.is_empty() {
        return Window::full(win.arity());
    }
    let arity = win.arity();
    let mut out = Vec::with_capacity(arity);
    for k in 0..arity {
        let max = support.iter().map(|e| &e[k]).max().unwrap();
        let min = support.iter().map(|e| &e[k]).min().unwrap();
        let iv = &win.0[k];
        out.push(Interval { lo: iv.lo.as_ref().map(|x| x + max), hi: iv.hi.as_ref().map(|x| x + min) });
    }
    Window(out)
}

impl Distribution<Scalar> {
    /// Converts scalar coefficients into another coefficient type by scaling `unit`.
    pub fn tensor<C: Coefficient>(&self, unit: &C) -> Distribution<C> {
        let mut out = Distribution::new(self.vars.clone(), self.window.clone());
        for (e, c) in &self.terms {
            out.add_scaled_term(e.clone(), unit, c);
        }
        out
    }
}

/// Result of splitting a polynomial in `z` around `z = w`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSplit<C: Coefficient> {
    /// `c_n(w) = d_z^{(n)} d |_{z=w}` for `n < N`, as distributions in the remaining variables.
    pub coefficients: Vec<Distribution<C>>,
    /// `r(z, w)` with `d = sum c_n (z-w)^n + (z-w)^N r`.
    pub remainder: Distribution<C>,
}

/// Taylor splitting of an exact distribution polynomial in `z`.
pub fn taylor_split<C: Coefficient>(
    d: &Distribution<C>,
    z: Var,
    w: Var,
    n: u32,
) -> Result<TaylorSplit<C>> {
    if !d.is_exact() {
        return Err(Error::InfiniteSupport("taylor_split needs an exact distribution".into()));
    }
    let kz = d.var_index(z)?;
    let kw = d.var_index(w)?;
    let mut top = 0i64;
    for e in d.terms.keys() {
        match e[kz].to_i64() {
            Some(p) if p >= 0 => top = top.max(p),
            _ => {
                return Err(Error::InfiniteSupport(format!(
                    "taylor_split expects nonnegative integer powers of {z}"
                )))
            }
        }
    }
    // d = sum_k t_k(w) (z-w)^k with t_k = d_z^{(k)} d |_{z=w}
    let mut taylor: Vec<Distribution<C>> = Vec::new();
    for k in 0..=top.max(n as i64 - 1) {
        let dk = d.derivative(z, k as u32)?;
        taylor.push(dk.diagonal(z, w)?);
    }
    let coefficients = taylor.iter().take(n as usize).cloned().collect();
    let mut remainder = Distribution::exact(d.vars.clone());
    for (k, t) in taylor.iter().enumerate().skip(n as usize) {
        let pw = expand::binomial_polynomial(d.vars.len(), kz, kw, (k as i64) - n as i64)
            .with_vars(d.vars.clone());
        let t_full = t.embed(&d.vars)?;
        remainder = remainder.add(&t_full.mul(&pw)?)?;
    }
    Ok(TaylorSplit { coefficients, remainder })
}
