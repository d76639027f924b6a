//! Divisorial orders, initial parts, resonance and reachability.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::OneForm;
use super::param::Curve;
use super::poly::WPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// The monomial `c·x^a·y^b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(with = "rat_string")]
    pub c: Rat,
    pub a: i64,
    pub b: i64,
}

pub(crate) mod rat_string {
    use super::super::rat::{format_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(serde::de::Error::custom)
    }
}

/// Weighted order at the cuspidal divisor: `min(ν_D(xA), ν_D(yB))`.
///
/// ```
/// use cusp_saito::curve_algebra::{nu_d, OneForm};
/// assert_eq!(nu_d(&OneForm::euler(7, 36)).unwrap(), 43);
/// ```
pub fn nu_d(w: &OneForm) -> Result<i64> {
    w.order().ok_or(Error::ZeroToTruncation(w.trunc()))
}

/// Weighted monomial order of a function.
pub fn nu_d_fn(h: &WPoly) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ZeroToTruncation(h.trunc));
    }
    Ok(h.order())
}

/// Order at the first divisor: lowest total degree of the coefficients plus one.
pub fn nu_d1(w: &OneForm) -> Result<i64> {
    w.total_order().map(|d| d + 1).ok_or(Error::ZeroToTruncation(w.trunc()))
}

/// The homogeneous component of lowest weight.
pub fn initial_part(w: &OneForm) -> Result<OneForm> {
    Ok(w.component(nu_d(w)?))
}

/// Whether `ν_D(w) < nm` and `ν_C(w) > ν_D(w)`.
pub fn is_resonant(curve: &Curve, w: &OneForm) -> bool {
    let Ok(d) = nu_d(w) else { return false };
    d < curve.gamma.nm() && curve.nu_c_auto(w).at_least() > d
}

/// The monomial `μ x^α y^β` with `In(target) = μ x^α y^β In(from)`, if any.
pub fn reachable(from: &OneForm, target: &OneForm) -> Option<Monomial> {
    let src = initial_part(from).ok()?;
    let dst = initial_part(target).ok()?;
    let s_terms = src.sorted_terms();
    let d_terms = dst.sorted_terms();
    if s_terms.len() != d_terms.len() {
        return None;
    }
    let (s0, i0, j0, c0) = s_terms[0];
    let (t0, k0, l0, e0) = d_terms[0];
    if s0 != t0 || k0 < i0 || l0 < j0 {
        return None;
    }
    let (a, b) = (k0 - i0, l0 - j0);
    let mu = e0 / c0;
    if mu.is_zero() {
        return None;
    }
    let candidate = src.mul_monomial(&mu, a, b);
    let matches = candidate.sorted_terms().iter().zip(&d_terms).all(|(p, q)| p.0 == q.0 && p.1 == q.1 && p.2 == q.2 && p.3 == q.3);
    matches.then_some(Monomial { c: mu, a, b })
}

#[cfg(test)]
mod tests {
    use super::super::form::Slot;
    use super::super::param::PuiseuxParam;
    use super::super::rat::{int, ratio};
    use super::*;

    fn section5_form() -> OneForm {
        // 36x³(7x dy − 36y dx) − 560 y³ dy
        OneForm::euler(7, 36).mul_monomial(&int(36), 3, 0).add(&OneForm::monomial(7, 36, Slot::Dy, int(-560), 0, 3))
    }

    #[test]
    fn divisorial_orders() {
        assert_eq!(nu_d(&OneForm::dx(7, 36)).unwrap(), 7);
        assert_eq!(nu_d(&section5_form()).unwrap(), 64);
        assert_eq!(nu_d1(&section5_form()).unwrap(), 4);
        let w2 = section5_form().add(&OneForm::euler(7, 36).mul_monomial(&int(1), 0, 1));
        assert_eq!(nu_d1(&w2).unwrap(), 3);
        assert_eq!(nu_d1(&OneForm::dx(7, 36)).unwrap(), 1);
        assert!(nu_d(&OneForm::zero(7, 36, 100)).is_err());
    }

    #[test]
    fn initial_parts() {
        let w = OneForm::dy(7, 36).add(&OneForm::monomial(7, 36, Slot::Dy, int(1), 5, 0));
        assert_eq!(initial_part(&w).unwrap(), OneForm::dy(7, 36));
        assert_eq!(initial_part(&section5_form()).unwrap(), OneForm::euler(7, 36).mul_monomial(&int(36), 3, 0));
        // df for f = y^7 - x^36 has a two-term initial part.
        let df = OneForm::monomial(7, 36, Slot::Dy, int(7), 0, 6).add(&OneForm::monomial(7, 36, Slot::Dx, int(-36), 35, 0));
        assert_eq!(initial_part(&df).unwrap().terms().count(), 2);
    }

    #[test]
    fn resonance() {
        let p = PuiseuxParam::new(7, vec![(36, int(1)), (37, int(1))]).unwrap().0;
        let c = Curve::new(p, 600);
        assert!(is_resonant(&c, &OneForm::euler(7, 36)));
        assert!(!is_resonant(&c, &OneForm::dx(7, 36)));
        let c1 = Curve::new(PuiseuxParam::new(7, vec![(36, int(1)), (116, int(1)), (196, ratio(28, 9))]).unwrap().0, 600);
        assert!(is_resonant(&c1, &OneForm::euler(7, 36)));
    }

    #[test]
    fn reachability() {
        let w1 = OneForm::euler(7, 36);
        assert_eq!(reachable(&w1, &w1.mul_monomial(&int(1), 3, 0)), Some(Monomial { c: int(1), a: 3, b: 0 }));
        assert_eq!(reachable(&OneForm::dx(7, 36), &w1), None);
        assert_eq!(reachable(&w1, &section5_form()), Some(Monomial { c: int(36), a: 3, b: 0 }));
    }
}
