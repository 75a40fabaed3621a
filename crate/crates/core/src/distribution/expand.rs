use super::{Distribution, Interval, Var, Window};
use crate::error::{Error, Result};
use crate::numcore::{binom, signed_power, Scalar};

/// A coefficient restricted to `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => Scalar::from(-1),
        }
    }

    /// `self^k` for a rational `k`, defined when the sign is `+` or `k` is an integer.
    fn pow(self, k: &Scalar) -> Result<Scalar> {
        match self {
            Sign::Plus => Ok(Scalar::one()),
            Sign::Minus => signed_power(k),
        }
    }

    fn pow_int(self, k: i64) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => {
                if k.rem_euclid(2) == 0 {
                    Scalar::one()
                } else {
                    Scalar::from(-1)
                }
            }
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Which variable dominates in an expansion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Region {
    /// Expand in nonnegative powers of `w / z`.
    ZW,
    /// Expand in nonnegative powers of `z / w`.
    WZ,
}

/// Largest `i >= 0` admitted by the expansion of `(..)^h` whose lead variable has window `lead`
/// and whose tail variable has window `tail`; `None` when unbounded.
fn index_range(h: &Scalar, lead: &Interval, tail: &Interval) -> Result<Option<(i64, i64)>> {
    let mut hi: Option<i64> = None;
    let mut tighten = |v: i64| hi = Some(hi.map_or(v, |x: i64| x.min(v)));
    if let Some(n) = h.to_i64() {
        if n >= 0 {
            tighten(n);
        }
    }
    if let Some(t) = &tail.hi {
        tighten(t.floor_i64());
    }
    if let Some(l) = &lead.lo {
        tighten((h - l).floor_i64());
    }
    let mut lo = 0i64;
    if let Some(t) = &tail.lo {
        lo = lo.max(t.ceil_i64());
    }
    if let Some(l) = &lead.hi {
        lo = lo.max((h - l).ceil_i64());
    }
    match hi {
        Some(hi) => Ok(if lo > hi { None } else { Some((lo, hi)) }),
        None => Err(Error::InfiniteSupport(format!(
            "expansion of power {h} is infinite on window {lead}x{tail}"
        ))),
    }
}

/// `(mu z + nu w)^h` expanded in `region`, materialized on `window` over `(z, w)`.
pub fn expand_power(
    mu: Sign,
    nu: Sign,
    h: &Scalar,
    region: Region,
    window: &Window,
) -> Result<Distribution> {
    let vars = vec![Var::Z, Var::W];
    let mut out = Distribution::new(vars, window.clone());
    let (zi, wi) = (&window.0[0], &window.0[1]);
    let (lead_sign, tail_sign, lead_iv, tail_iv) = match region {
        Region::ZW => (mu, nu, zi, wi),
        Region::WZ => (nu, mu, wi, zi),
    };
    let lead_pow = lead_sign.pow(h)?;
    let Some((lo, hi)) = index_range(h, lead_iv, tail_iv)? else {
        return Ok(out);
    };
    for i in lo..=hi {
        let c = binom(h, i) * &lead_pow * lead_sign.pow_int(i) * tail_sign.pow_int(i);
        let lead_exp = h - i;
        let tail_exp = Scalar::from(i);
        let exps = match region {
            Region::ZW => vec![lead_exp, tail_exp],
            Region::WZ => vec![tail_exp, lead_exp],
        };
        out.add_term(exps, &c);
    }
    Ok(out)
}

/// `(mu ž + nu w̌)^(h, hbar)` for a statistical pair, over `(z, zbar, w, wbar)`.
pub fn expand_pair_power(
    mu: Sign,
    nu: Sign,
    h: &Scalar,
    hbar: &Scalar,
    region: Region,
    window: &Window,
) -> Result<Distribution> {
    let spin = h - hbar;
    if !spin.is_integer() {
        return Err(Error::NonStatistical(format!("({h},{hbar})")));
    }
    let vars = vec![Var::Z, Var::Zbar, Var::W, Var::Wbar];
    let mut out = Distribution::new(vars, window.clone());
    let w = &window.0;
    let (lead_sign, tail_sign, lead, lead_bar, tail, tail_bar) = match region {
        Region::ZW => (mu, nu, &w[0], &w[1], &w[2], &w[3]),
        Region::WZ => (nu, mu, &w[2], &w[3], &w[0], &w[1]),
    };
    let lead_pow = lead_sign.pow(&spin)?;
    let Some((lo, hi)) = index_range(h, lead, tail)? else {
        return Ok(out);
    };
    let Some((lob, hib)) = index_range(hbar, lead_bar, tail_bar)? else {
        return Ok(out);
    };
    for i in lo..=hi {
        let bi = binom(h, i);
        if bi.is_zero() {
            continue;
        }
        for ib in lob..=hib {
            let k = i + ib;
            let c = &bi * binom(hbar, ib) * &lead_pow * lead_sign.pow_int(k) * tail_sign.pow_int(k);
            let (le, leb, te, teb) = (h - i, hbar - ib, Scalar::from(i), Scalar::from(ib));
            let exps = match region {
                Region::ZW => vec![le, leb, te, teb],
                Region::WZ => vec![te, teb, le, leb],
            };
            out.add_term(exps, &c);
        }
    }
    Ok(out)
}

/// `delta(z, w)` on a window over `(z, w)`.
pub fn delta(window: &Window) -> Result<Distribution> {
    shifted_delta(&Scalar::zero(), window)
}

/// `sum_{n in h + Z} w^n z^{-n-1}` on a window over `(z, w)`.
pub fn shifted_delta(h: &Scalar, window: &Window) -> Result<Distribution> {
    let (zi, wi) = (&window.0[0], &window.0[1]);
    let n_iv = wi.intersect(&zi.negate().shift(&Scalar::from(-1)));
    let Some((lo, hi)) = n_iv.integer_offsets(h) else {
        return Err(Error::InfiniteSupport(format!("delta on unbounded window {window}")));
    };
    let mut out = Distribution::new(vec![Var::Z, Var::W], window.clone());
    for k in lo..=hi {
        let n = h + k;
        out.add_term(vec![-&n - 1, n], &Scalar::one());
    }
    Ok(out)
}

/// `(x_a - x_b)^m` for `m >= 0` as an exact polynomial in a signature of `arity` variables.
pub(super) fn binomial_polynomial(arity: usize, a: usize, b: usize, m: i64) -> Distribution {
    let vars_placeholder = vec![Var::Z; arity];
    let mut terms = Vec::new();
    for i in 0..=m {
        let mut e = vec![Scalar::zero(); arity];
        e[a] = Scalar::from(m - i);
        e[b] = Scalar::from(i);
        let c = binom(&Scalar::from(m), i) * Sign::Minus.pow_int(i);
        terms.push((e, c));
    }
    let mut out = Distribution::new(vars_placeholder, Window::full(arity));
    for (e, c) in terms {
        out.add_term(e, &c);
    }
    out
}

impl Distribution {
    /// Overwrites the variable signature without touching exponents.
    pub(super) fn with_vars(mut self, vars: Vec<Var>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        self.vars = vars;
        self
    }
}
