//! Polynomial Puiseux parametrizations, pullbacks and orders along the curve.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::form::OneForm;
use super::poly::{WPoly, EXACT};
use super::rat::{int, Rat};
use crate::error::{Error, Result};
use crate::semigroup::CuspSemigroup;

/// A truncated power series in `t`: every exponent `>= trunc` is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries {
    pub terms: BTreeMap<i64, Rat>,
    pub trunc: i64,
}

impl TSeries {
    pub fn from_dense(coeffs: Vec<Rat>) -> Self {
        let trunc = coeffs.len() as i64;
        let terms = coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as i64, c)).collect();
        TSeries { terms, trunc }
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.trunc.max(0) as usize];
        for (&e, c) in &self.terms {
            v[e as usize] = c.clone();
        }
        v
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }
}

/// The parametrization `x = t^n`, `y = b(t)` with `b` a polynomial of order `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxParam {
    pub n: i64,
    pub m: i64,
    /// Terms of `b`, increasing exponents, nonzero coefficients, leading coefficient one.
    #[serde(with = "terms_serde")]
    pub b: Vec<(i64, Rat)>,
}

mod terms_serde {
    use super::super::rat::{format_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(i64, Rat)], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<(i64, String)> = v.iter().map(|(e, c)| (*e, format_rat(c))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(i64, Rat)>, D::Error> {
        let raw: Vec<(i64, String)> = Vec::deserialize(d)?;
        raw.into_iter().map(|(e, c)| parse_rat(&c).map(|r| (e, r)).map_err(serde::de::Error::custom)).collect()
    }
}

impl PuiseuxParam {
    /// Validates the terms of `b`; rescales `y` when the leading coefficient is not one.
    /// The flag reports whether rescaling happened.
    pub fn new(n: i64, terms: Vec<(i64, Rat)>) -> Result<(Self, bool)> {
        let terms: Vec<(i64, Rat)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some((m, lead)) = terms.first().cloned() else {
            return Err(Error::InvalidInput("y(t) has no nonzero term".into()));
        };
        for w in terms.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("exponents of y(t) must be strictly increasing".into()));
            }
        }
        CuspSemigroup::new(n, m)?;
        let rescaled = !lead.is_one();
        let b = terms.into_iter().map(|(e, c)| (e, c / &lead)).collect();
        Ok((PuiseuxParam { n, m, b }, rescaled))
    }

    /// The monomial parametrization `(t^n, t^m)`.
    pub fn monomial(n: i64, m: i64) -> Result<Self> {
        Ok(PuiseuxParam::new(n, vec![(m, Rat::one())])?.0)
    }

    pub fn semigroup(&self) -> CuspSemigroup {
        CuspSemigroup::new(self.n, self.m).expect("validated on construction")
    }

    pub fn is_monomial(&self) -> bool {
        self.b.len() == 1
    }

    pub fn degree(&self) -> i64 {
        self.b.last().map(|t| t.0).unwrap_or(0)
    }
}

/// Outcome of a differential-order computation on truncated data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum OrderResult {
    Finite(i64),
    /// The pullback vanishes below a threshold large enough to certify invariance.
    InfinityCertified(i64),
    /// The pullback vanishes below a threshold too small to conclude.
    UnknownAbove(i64),
}

impl OrderResult {
    pub fn finite(self) -> Option<i64> {
        match self {
            OrderResult::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// A lower bound for the order, `i64::MAX` for certified infinity.
    pub fn at_least(self) -> i64 {
        match self {
            OrderResult::Finite(v) => v,
            OrderResult::InfinityCertified(_) => i64::MAX,
            OrderResult::UnknownAbove(t) => t,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, OrderResult::InfinityCertified(_))
    }
}

type Sparse = Vec<(usize, Rat)>;

/// A parametrization together with cached powers `b(t)^j` truncated at `t_max`.
pub struct Curve {
    pub param: PuiseuxParam,
    pub gamma: CuspSemigroup,
    t_max: i64,
    powers: RefCell<Vec<Sparse>>,
}

impl Curve {
    /// Prepares pullbacks for every exponent up to `t_max`.
    pub fn new(param: PuiseuxParam, t_max: i64) -> Self {
        let gamma = param.semigroup();
        let one: Sparse = vec![(0, Rat::one())];
        Curve { param, gamma, t_max, powers: RefCell::new(vec![one]) }
    }

    pub fn t_max(&self) -> i64 {
        self.t_max
    }

    /// Threshold from which a vanishing pullback certifies invariance.
    pub fn certification_threshold(&self) -> i64 {
        self.gamma.conductor + self.gamma.nm()
    }

    fn power(&self, j: usize) -> std::cell::Ref<'_, Sparse> {
        {
            let mut p = self.powers.borrow_mut();
            while p.len() <= j {
                let last = p.last().expect("nonempty");
                let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                for (e1, c1) in last {
                    for (e2, c2) in &self.param.b {
                        let e = e1 + *e2 as usize;
                        if (e as i64) <= self.t_max {
                            *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
                        }
                    }
                }
                let next: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                p.push(next);
            }
        }
        std::cell::Ref::map(self.powers.borrow(), |p| &p[j])
    }

    fn check_depth(&self, requested: i64, available: i64) -> Result<()> {
        if requested > available || requested > self.t_max + 1 {
            return Err(Error::TruncationTooDeep { requested, available: available.min(self.t_max + 1) });
        }
        Ok(())
    }

    /// Coefficient series `ψ` of `φ*(w) = ψ(t) dt`, exact for exponents below `t_order - 1`.
    pub fn pullback(&self, w: &OneForm, t_order: i64) -> Result<TSeries> {
        self.check_depth(t_order, w.trunc())?;
        let len = (t_order - 1).max(0) as usize;
        let n = self.param.n;
        let mut acc = vec![Rat::zero(); len];
        for (&(i, j), c) in &w.a.terms {
            let base = n * (i + 1) - 1;
            if base >= len as i64 {
                continue;
            }
            let cn = c * int(n);
            for (e, bc) in self.power(j as usize).iter() {
                let k = base as usize + e;
                if k >= len {
                    break;
                }
                acc[k] += &cn * bc;
            }
        }
        for (&(i, j), c) in &w.b.terms {
            let base = n * i - 1;
            let inv = Rat::new(1.into(), (j + 1).into());
            let cj = c * inv;
            for (e, bc) in self.power(j as usize + 1).iter() {
                if *e == 0 {
                    continue;
                }
                let k = base + *e as i64;
                if k >= len as i64 {
                    break;
                }
                acc[k as usize] += &cj * bc * int(*e as i64);
            }
        }
        Ok(TSeries::from_dense(acc))
    }

    /// `h(φ(t))`, exact for exponents below `t_order`.
    pub fn pullback_fn(&self, h: &WPoly, t_order: i64) -> Result<TSeries> {
        self.check_depth(t_order, h.trunc)?;
        let len = t_order.max(0) as usize;
        let n = self.param.n;
        let mut acc = vec![Rat::zero(); len];
        for (&(i, j), c) in &h.terms {
            let base = n * i;
            for (e, bc) in self.power(j as usize).iter() {
                let k = base + *e as i64;
                if k >= len as i64 {
                    break;
                }
                acc[k as usize] += c * bc;
            }
        }
        Ok(TSeries::from_dense(acc))
    }

    fn classify(&self, lowest: Option<i64>, t_order: i64) -> OrderResult {
        match lowest {
            Some(v) if v < t_order => OrderResult::Finite(v),
            _ if t_order >= self.certification_threshold() => OrderResult::InfinityCertified(t_order),
            _ => OrderResult::UnknownAbove(t_order),
        }
    }

    /// Differential order `ν_C(w) = ord_t ψ + 1`, decided below `t_order`.
    pub fn nu_c(&self, w: &OneForm, t_order: i64) -> Result<OrderResult> {
        let psi = self.pullback(w, t_order)?;
        Ok(self.classify(psi.order().map(|e| e + 1), t_order))
    }

    /// `ν_C` at the deepest order the form's truncation allows.
    pub fn nu_c_auto(&self, w: &OneForm) -> OrderResult {
        let t = w.trunc().min(self.t_max + 1);
        self.nu_c(w, t).expect("depth chosen within bounds")
    }

    /// `ν_C(h) = ord_t h(φ(t))`, decided below `t_order`.
    pub fn nu_c_fn(&self, h: &WPoly, t_order: i64) -> Result<OrderResult> {
        let s = self.pullback_fn(h, t_order)?;
        Ok(self.classify(s.order(), t_order))
    }

    pub fn nu_c_fn_auto(&self, h: &WPoly) -> OrderResult {
        let t = h.trunc.min(self.t_max);
        self.nu_c_fn(h, t).expect("depth chosen within bounds")
    }

    /// A polynomial `h` with `φ*(dh) ≡ ψ dt` for exponents below `psi.trunc`.
    pub fn exact_primitive(&self, psi: &TSeries) -> Result<WPoly> {
        let (n, m) = (self.param.n, self.param.m);
        let len = psi.trunc.max(0) as usize;
        if psi.trunc > self.t_max {
            return Err(Error::TruncationTooDeep { requested: psi.trunc, available: self.t_max });
        }
        let mut rest = psi.to_dense();
        let mut h = WPoly::zero(n, m, EXACT);
        for e in 0..len {
            if rest[e].is_zero() {
                continue;
            }
            let k = e as i64 + 1;
            let (i, j) = self.gamma.membership(k).ok_or(Error::OrderGap(k))?;
            let coef = &rest[e] / int(k);
            for (pe, bc) in self.power(j as usize).iter() {
                let deg = n * i + *pe as i64;
                let idx = deg - 1;
                if idx >= len as i64 {
                    break;
                }
                rest[idx as usize] -= &coef * bc * int(deg);
            }
            debug_assert!(rest[e].is_zero());
            h.add_term(i, j, coef);
        }
        Ok(h)
    }
}

fn poly_mul(p: &BTreeMap<i64, Rat>, q: &BTreeMap<i64, Rat>) -> BTreeMap<i64, Rat> {
    let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            *acc.entry(e1 + e2).or_insert_with(Rat::zero) += c1 * c2;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// The monic equation `f(x, y) = Π_k (y - b(ζ^k t))` of the curve, exactly.
///
/// Power sums of the conjugate roots are read off `b(t)^r`, and Newton's
/// identities turn them into the elementary symmetric functions.
pub fn implicit_equation(p: &PuiseuxParam) -> WPoly {
    let n = p.n;
    let b: BTreeMap<i64, Rat> = p.b.iter().cloned().collect();
    // power_sums[r] as a polynomial in x.
    let mut power_sums: Vec<BTreeMap<i64, Rat>> = vec![BTreeMap::new()];
    let mut br: BTreeMap<i64, Rat> = BTreeMap::from([(0, Rat::one())]);
    for _ in 1..=n {
        br = poly_mul(&br, &b);
        power_sums.push(br.iter().filter(|(e, _)| *e % n == 0).map(|(e, c)| (e / n, c * int(n))).collect());
    }
    let mut elem: Vec<BTreeMap<i64, Rat>> = vec![BTreeMap::from([(0, Rat::one())])];
    for k in 1..=n as usize {
        let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
        for i in 1..=k {
            let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
            for (e, c) in poly_mul(&elem[k - i], &power_sums[i]) {
                *acc.entry(e).or_insert_with(Rat::zero) += c * &sign;
            }
        }
        let inv = Rat::new(1.into(), (k as i64).into());
        elem.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c * &inv)).collect());
    }
    let mut f = WPoly::zero(n, p.m, EXACT);
    for (k, e_k) in elem.iter().enumerate() {
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        for (xe, c) in e_k {
            f.add_term(*xe, n - k as i64, c * &sign);
        }
    }
    f
}

/// `h(φ(t))` as an exact polynomial in `t`.
pub fn substitute_exact(p: &PuiseuxParam, h: &WPoly) -> BTreeMap<i64, Rat> {
    let b: BTreeMap<i64, Rat> = p.b.iter().cloned().collect();
    let mut powers = vec![BTreeMap::from([(0, Rat::one())])];
    let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
    for (&(i, j), c) in &h.terms {
        while powers.len() <= j as usize {
            let next = poly_mul(powers.last().unwrap(), &b);
            powers.push(next);
        }
        for (e, bc) in &powers[j as usize] {
            *acc.entry(p.n * i + e).or_insert_with(Rat::zero) += c * bc;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}
