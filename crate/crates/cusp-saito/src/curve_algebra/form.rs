//! Differential 1-forms `A·dx + B·dy` with a shared weighted truncation.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::{lower, monomial_text, write_terms, WPoly, EXACT};
use super::rat::Rat;

/// `A·dx + B·dy`. The term `x^i y^j dx` has weight `n(i+1)+mj` and
/// `x^i y^j dy` has weight `ni+m(j+1)`; all terms of weight `>= trunc()` are unknown.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub a: WPoly,
    pub b: WPoly,
}

/// Which differential a monomial multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Dx,
    Dy,
}

impl OneForm {
    /// Builds a form and aligns both coefficient truncations to the form truncation.
    pub fn new(a: WPoly, b: WPoly) -> Self {
        let w = a.trunc.saturating_add(a.n).min(b.trunc.saturating_add(b.m));
        OneForm::with_trunc(a, b, w)
    }

    pub fn with_trunc(a: WPoly, b: WPoly, w: i64) -> Self {
        let (n, m) = (a.n, a.m);
        OneForm { a: a.truncate(lower(w, n)), b: b.truncate(lower(w, m)) }
    }

    pub fn zero(n: i64, m: i64, w: i64) -> Self {
        OneForm::with_trunc(WPoly::zero(n, m, EXACT), WPoly::zero(n, m, EXACT), w)
    }

    pub fn dx(n: i64, m: i64) -> Self {
        OneForm { a: WPoly::constant(n, m, Rat::one()), b: WPoly::zero(n, m, EXACT) }
    }

    pub fn dy(n: i64, m: i64) -> Self {
        OneForm { a: WPoly::zero(n, m, EXACT), b: WPoly::constant(n, m, Rat::one()) }
    }

    /// `c·x^i·y^j·dx` or `c·x^i·y^j·dy`.
    pub fn monomial(n: i64, m: i64, slot: Slot, c: Rat, i: i64, j: i64) -> Self {
        let mono = WPoly::monomial(n, m, c, i, j);
        let zero = WPoly::zero(n, m, EXACT);
        match slot {
            Slot::Dx => OneForm { a: mono, b: zero },
            Slot::Dy => OneForm { a: zero, b: mono },
        }
    }

    /// The quasi-homogeneous invariant form `n·x·dy - m·y·dx`.
    pub fn euler(n: i64, m: i64) -> Self {
        OneForm {
            a: WPoly::monomial(n, m, Rat::from_integer((-m).into()), 0, 1),
            b: WPoly::monomial(n, m, Rat::from_integer(n.into()), 1, 0),
        }
    }

    /// The differential `dh`.
    pub fn exterior_derivative(h: &WPoly) -> Self {
        OneForm::new(h.dx(), h.dy())
    }

    pub fn n(&self) -> i64 {
        self.a.n
    }

    pub fn m(&self) -> i64 {
        self.a.m
    }

    pub fn trunc(&self) -> i64 {
        self.a.trunc.saturating_add(self.n()).min(self.b.trunc.saturating_add(self.m()))
    }

    pub fn is_exact(&self) -> bool {
        self.a.is_exact() && self.b.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn truncate(&self, w: i64) -> Self {
        OneForm::with_trunc(self.a.clone(), self.b.clone(), w.min(self.trunc()))
    }

    /// Form weight of a monomial.
    pub fn slot_weight(&self, slot: Slot, i: i64, j: i64) -> i64 {
        match slot {
            Slot::Dx => self.n() * (i + 1) + self.m() * j,
            Slot::Dy => self.n() * i + self.m() * (j + 1),
        }
    }

    /// All terms as `(slot, i, j, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Slot, i64, i64, &Rat)> {
        self.a.terms.iter().map(|(&(i, j), c)| (Slot::Dx, i, j, c)).chain(self.b.terms.iter().map(|(&(i, j), c)| (Slot::Dy, i, j, c)))
    }

    pub fn coeff(&self, slot: Slot, i: i64, j: i64) -> Rat {
        match slot {
            Slot::Dx => self.a.coeff(i, j),
            Slot::Dy => self.b.coeff(i, j),
        }
    }

    /// The divisorial order at the cuspidal divisor; `None` for a form with no known term.
    pub fn order(&self) -> Option<i64> {
        self.terms().map(|(s, i, j, _)| self.slot_weight(s, i, j)).min()
    }

    /// Lowest total degree of a coefficient term.
    pub fn total_order(&self) -> Option<i64> {
        self.terms().map(|(_, i, j, _)| i + j).min()
    }

    /// The homogeneous component of form weight `d`.
    pub fn component(&self, d: i64) -> OneForm {
        let (n, m) = (self.n(), self.m());
        OneForm { a: self.a.component(d - n), b: self.b.component(d - m) }
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        self.add_scaled(other, &Rat::one())
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        self.add_scaled(other, &-Rat::one())
    }

    pub fn add_scaled(&self, other: &OneForm, c: &Rat) -> OneForm {
        OneForm::with_trunc(self.a.add_scaled(&other.a, c), self.b.add_scaled(&other.b, c), self.trunc().min(other.trunc()))
    }

    pub fn scale(&self, c: &Rat) -> OneForm {
        OneForm { a: self.a.scale(c), b: self.b.scale(c) }
    }

    pub fn mul_monomial(&self, c: &Rat, i: i64, j: i64) -> OneForm {
        if c.is_zero() {
            let shift = self.n() * i + self.m() * j;
            return OneForm::zero(self.n(), self.m(), self.trunc().saturating_add(shift));
        }
        OneForm { a: self.a.mul_monomial(c, i, j), b: self.b.mul_monomial(c, i, j) }
    }

    pub fn mul_poly(&self, h: &WPoly) -> OneForm {
        OneForm::new(self.a.mul(h), self.b.mul(h))
    }

    /// `self + Σ g_T·T`-style accumulation helper: `self + h·other`.
    pub fn add_mul(&self, h: &WPoly, other: &OneForm) -> OneForm {
        self.add(&other.mul_poly(h))
    }

    /// Sorted terms: by form weight, then power of `x`, then `dx` before `dy`.
    pub fn sorted_terms(&self) -> Vec<(Slot, i64, i64, &Rat)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|&(s, i, j, _)| (self.slot_weight(s, i, j), i, s));
        v
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.sorted_terms().into_iter().map(|(s, i, j, c)| {
                let mono = monomial_text(i, j);
                let d = if s == Slot::Dx { "dx" } else { "dy" };
                (c, if mono.is_empty() { d.to_string() } else { format!("{mono}*{d}") })
            }),
        )
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.trunc();
        write!(f, "OneForm[{}]({self})", if t == EXACT { "exact".to_string() } else { format!("<{t}") })
    }
}

/// `A₁B₂ - A₂B₁`, the coefficient of `dx∧dy`.
pub fn wedge(w1: &OneForm, w2: &OneForm) -> WPoly {
    w1.a.mul(&w2.b).sub(&w2.a.mul(&w1.b))
}

#[cfg(test)]
mod tests {
    use super::super::rat::int;
    use super::*;

    #[test]
    fn euler_form_text_and_order() {
        let w = OneForm::euler(7, 36);
        assert_eq!(w.to_string(), "-36*y*dx + 7*x*dy");
        assert_eq!(w.order(), Some(43));
        assert_eq!(OneForm::dx(7, 36).order(), Some(7));
    }

    #[test]
    fn wedge_basics() {
        let (dx, dy) = (OneForm::dx(2, 3), OneForm::dy(2, 3));
        assert_eq!(wedge(&dx, &dy), WPoly::constant(2, 3, int(1)));
        let w = OneForm::euler(2, 3);
        assert!(wedge(&w, &w).is_zero());
    }

    #[test]
    fn truncation_is_shared() {
        let w = OneForm::with_trunc(WPoly::constant(7, 36, int(1)), WPoly::constant(7, 36, int(1)), 100);
        assert_eq!(w.a.trunc, 93);
        assert_eq!(w.b.trunc, 64);
        assert_eq!(w.trunc(), 100);
        assert_eq!(w.mul_monomial(&int(2), 1, 0).trunc(), 107);
    }
}
