//! Bivariate polynomials over the rationals with a weighted truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rat::{format_rat, is_negative, Rat};

/// Truncation value meaning "known exactly".
pub const EXACT: i64 = i64::MAX;

/// Lowers a truncation by `d`, keeping [`EXACT`] fixed.
pub(crate) fn lower(trunc: i64, d: i64) -> i64 {
    if trunc == EXACT {
        EXACT
    } else {
        trunc - d
    }
}

/// `Σ c_{ij} x^i y^j` where every monomial of weight `ni+mj >= trunc` is unknown.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WPoly {
    pub n: i64,
    pub m: i64,
    pub terms: BTreeMap<(i64, i64), Rat>,
    pub trunc: i64,
}

impl WPoly {
    pub fn zero(n: i64, m: i64, trunc: i64) -> Self {
        WPoly { n, m, terms: BTreeMap::new(), trunc }
    }

    /// The exact monomial `c·x^i·y^j`.
    pub fn monomial(n: i64, m: i64, c: Rat, i: i64, j: i64) -> Self {
        let mut p = WPoly::zero(n, m, EXACT);
        p.add_term(i, j, c);
        p
    }

    pub fn constant(n: i64, m: i64, c: Rat) -> Self {
        WPoly::monomial(n, m, c, 0, 0)
    }

    /// Builds from terms, dropping zeros and terms at or above the truncation.
    pub fn from_terms(n: i64, m: i64, trunc: i64, terms: impl IntoIterator<Item = ((i64, i64), Rat)>) -> Self {
        let mut p = WPoly::zero(n, m, trunc);
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn weight(&self, i: i64, j: i64) -> i64 {
        self.n * i + self.m * j
    }

    /// Adds `c·x^i·y^j` unless it lies at or above the truncation.
    pub fn add_term(&mut self, i: i64, j: i64, c: Rat) {
        if c.is_zero() || self.weight(i, j) >= self.trunc {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// Lowers the truncation, discarding terms that become unknown.
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        let mut p = WPoly::zero(self.n, self.m, t);
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }

    /// The weighted order; the truncation when no term is known.
    pub fn order(&self) -> i64 {
        self.terms.keys().map(|&(i, j)| self.weight(i, j)).min().unwrap_or(self.trunc)
    }

    /// Lowest total degree of a stored term.
    pub fn total_order(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// The homogeneous component of weight `d`.
    pub fn component(&self, d: i64) -> WPoly {
        WPoly::from_terms(
            self.n,
            self.m,
            EXACT,
            self.terms.iter().filter(|(&(i, j), _)| self.weight(i, j) == d).map(|(&k, c)| (k, c.clone())),
        )
    }

    pub fn scale(&self, c: &Rat) -> WPoly {
        if c.is_zero() {
            return WPoly::zero(self.n, self.m, self.trunc);
        }
        WPoly { n: self.n, m: self.m, terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(), trunc: self.trunc }
    }

    /// Multiplies by `c·x^a·y^b`.
    pub fn mul_monomial(&self, c: &Rat, a: i64, b: i64) -> WPoly {
        let shift = self.weight(a, b);
        let trunc = self.trunc.saturating_add(shift);
        if c.is_zero() {
            return WPoly::zero(self.n, self.m, trunc);
        }
        WPoly { n: self.n, m: self.m, terms: self.terms.iter().map(|(&(i, j), v)| ((i + a, j + b), v * c)).collect(), trunc }
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        self.add_scaled(other, &Rat::one())
    }

    pub fn sub(&self, other: &WPoly) -> WPoly {
        self.add_scaled(other, &-Rat::one())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &WPoly, c: &Rat) -> WPoly {
        let trunc = self.trunc.min(other.trunc);
        let mut p = if trunc < self.trunc { self.truncate(trunc) } else { self.clone() };
        if !c.is_zero() {
            for (&(i, j), v) in &other.terms {
                p.add_term(i, j, v * c);
            }
        }
        p
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        let trunc = self.trunc.saturating_add(other.order()).min(other.trunc.saturating_add(self.order()));
        let mut acc: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if self.weight(i, j) < trunc {
                    *acc.entry((i, j)).or_insert_with(Rat::zero) += c1 * c2;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        WPoly { n: self.n, m: self.m, terms: acc, trunc }
    }

    /// Partial derivative in `x`.
    pub fn dx(&self) -> WPoly {
        let trunc = lower(self.trunc, self.n);
        WPoly::from_terms(
            self.n,
            self.m,
            trunc,
            self.terms.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, j), c)| ((i - 1, j), c * Rat::from_integer(i.into()))),
        )
    }

    /// Partial derivative in `y`.
    pub fn dy(&self) -> WPoly {
        let trunc = lower(self.trunc, self.m);
        WPoly::from_terms(
            self.n,
            self.m,
            trunc,
            self.terms.iter().filter(|(&(_, j), _)| j > 0).map(|(&(i, j), c)| ((i, j - 1), c * Rat::from_integer(j.into()))),
        )
    }

    /// Terms sorted by weighted degree, then by the power of `x`.
    pub fn sorted_terms(&self) -> Vec<((i64, i64), &Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, c)| (k, c)).collect();
        v.sort_by_key(|&((i, j), _)| (self.weight(i, j), i));
        v
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }
}

pub(crate) fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl IntoIterator<Item = (&'a Rat, String)>) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", format_rat(&abs))?;
        } else {
            write!(f, "{}*{}", format_rat(&abs), mono)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn monomial_text(i: i64, j: i64) -> String {
    let mut parts = Vec::new();
    if i > 0 {
        parts.push(if i == 1 { "x".to_string() } else { format!("x^{i}") });
    }
    if j > 0 {
        parts.push(if j == 1 { "y".to_string() } else { format!("y^{j}") });
    }
    parts.join("*")
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.sorted_terms().into_iter().map(|((i, j), c)| (c, monomial_text(i, j))))
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WPoly[{}]({self})", if self.is_exact() { "exact".to_string() } else { format!("<{}", self.trunc) })
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat::{int, ratio};
    use super::*;

    #[test]
    fn product_truncation_tracks_orders() {
        let p = WPoly::from_terms(7, 36, 100, [((1, 0), int(1)), ((0, 1), int(2))]);
        let q = WPoly::monomial(7, 36, int(3), 2, 0);
        let r = p.mul(&q);
        assert_eq!(r.trunc, 114);
        assert_eq!(r.coeff(3, 0), int(3));
        assert_eq!(r.coeff(2, 1), int(6));
    }

    #[test]
    fn display_sorts_by_weight() {
        let p = WPoly::from_terms(2, 3, EXACT, [((0, 2), int(1)), ((3, 0), int(-1)), ((1, 0), ratio(1, 2))]);
        assert_eq!(p.to_string(), "1/2*x + 1*y^2 - 1*x^3");
    }

    #[test]
    fn derivatives() {
        let p = WPoly::from_terms(2, 3, EXACT, [((0, 2), int(1)), ((3, 0), int(-1))]);
        assert_eq!(p.dx(), WPoly::monomial(2, 3, int(-3), 2, 0));
        assert_eq!(p.dy(), WPoly::monomial(2, 3, int(2), 0, 1));
    }
}
