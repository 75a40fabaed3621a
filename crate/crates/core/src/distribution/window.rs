use std::fmt;

use crate::numcore::Scalar;

/// Inclusive bounds on the exponents of one variable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Interval {
    pub lo: Option<Scalar>,
    pub hi: Option<Scalar>,
}

impl Interval {
    pub fn full() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn new(lo: impl Into<Scalar>, hi: impl Into<Scalar>) -> Self {
        Interval { lo: Some(lo.into()), hi: Some(hi.into()) }
    }

    pub fn at_least(lo: impl Into<Scalar>) -> Self {
        Interval { lo: Some(lo.into()), hi: None }
    }

    pub fn at_most(hi: impl Into<Scalar>) -> Self {
        Interval { lo: None, hi: Some(hi.into()) }
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn contains(&self, e: &Scalar) -> bool {
        self.lo.as_ref().is_none_or(|lo| e >= lo) && self.hi.as_ref().is_none_or(|hi| e <= hi)
    }

    pub fn is_empty(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(lo), Some(hi)) if lo > hi)
    }

    pub fn shift(&self, h: &Scalar) -> Self {
        Interval { lo: self.lo.as_ref().map(|x| x + h), hi: self.hi.as_ref().map(|x| x + h) }
    }

    pub fn negate(&self) -> Self {
        Interval { lo: self.hi.as_ref().map(|x| -x), hi: self.lo.as_ref().map(|x| -x) }
    }

    pub fn intersect(&self, other: &Interval) -> Self {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        Interval { lo, hi }
    }

    /// Integers `k` with `base + k` inside the interval, if finitely many.
    pub fn integer_offsets(&self, base: &Scalar) -> Option<(i64, i64)> {
        let lo = self.lo.as_ref()?;
        let hi = self.hi.as_ref()?;
        Some(((lo - base).ceil_i64(), (hi - base).floor_i64()))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => write!(f, "[{lo},{hi}]"),
            (Some(lo), None) => write!(f, "[{lo},inf)"),
            (None, Some(hi)) => write!(f, "(-inf,{hi}]"),
            (None, None) => f.write_str("(-inf,inf)"),
        }
    }
}

/// Per-variable exponent bounds; the region where a distribution's coefficients are known exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window(pub Vec<Interval>);

impl Window {
    pub fn full(arity: usize) -> Self {
        Window(vec![Interval::full(); arity])
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(Interval::is_full)
    }

    pub fn contains(&self, exps: &[Scalar]) -> bool {
        self.0.iter().zip(exps).all(|(iv, e)| iv.contains(e))
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window(self.0.iter().zip(&other.0).map(|(a, b)| a.intersect(b)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}
