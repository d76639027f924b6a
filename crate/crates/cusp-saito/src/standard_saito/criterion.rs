use num_traits::Zero;

use crate::curve_algebra::{wedge, OneForm, WPoly};
use crate::error::{Error, Result};

/// Outcome of Saito's criterion for a pair of forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaitoWitness {
    pub holds: bool,
    /// `ω ∧ ω' = u·f·dx∧dy`, when the division is exact.
    pub unit: Option<WPoly>,
    /// The first monomial left over by an inexact division.
    pub inexact_at: Option<(i64, i64)>,
}

/// Divides `g` by `f`, degree by degree in the weighted order, to the truncation of `g`.
///
/// The initial part of `f` must contain a pure power `y^k` with `k` maximal
/// among its `y`-degrees, which holds for the equation of a cusp.
pub fn divide_by_equation(g: &WPoly, f: &WPoly) -> Result<WPoly> {
    let (n, m) = (g.n, g.m);
    let d_f = f.order();
    let init_f = f.component(d_f);
    let (&(_, k), lead) = init_f
        .terms
        .iter()
        .filter(|((i, _), _)| *i == 0)
        .max_by_key(|((_, j), _)| *j)
        .ok_or_else(|| Error::PreconditionViolated("initial part of f has no pure power of y".into()))?;
    if init_f.terms.keys().any(|&(_, j)| j > k) {
        return Err(Error::PreconditionViolated("initial part of f is not monic in y".into()));
    }
    let lead = lead.clone();
    let q_trunc = if g.trunc == crate::curve_algebra::EXACT { g.trunc } else { g.trunc - d_f };
    let mut quotient = WPoly::zero(n, m, q_trunc);
    let mut rest = g.clone();
    while !rest.is_zero() {
        let d = rest.order();
        let mut comp = rest.component(d);
        let mut q_d = WPoly::zero(n, m, crate::curve_algebra::EXACT);
        loop {
            let top = comp.terms.iter().filter(|((_, j), _)| *j >= k).max_by_key(|((_, j), _)| *j).map(|(&key, c)| (key, c.clone()));
            let Some(((i, j), c)) = top else { break };
            let factor = c / &lead;
            comp = comp.sub(&init_f.mul_monomial(&factor, i, j - k));
            q_d.add_term(i, j - k, factor);
        }
        if let Some(&(i, j)) = comp.terms.keys().next() {
            return Err(Error::DivisionInexact { i, j });
        }
        rest = rest.sub(&f.mul(&q_d));
        for (&(i, j), c) in &q_d.terms {
            quotient.add_term(i, j, c.clone());
        }
    }
    Ok(quotient)
}

/// Checks `ω₁ ∧ ω₂ = u·f·dx∧dy` with `u(0,0) ≠ 0`, to the truncation of the wedge.
///
/// ```
/// use cusp_saito::curve_algebra::{PuiseuxParam, implicit_equation};
/// use cusp_saito::standard_saito::{quasihomogeneous_saito, saito_criterion};
/// let p = PuiseuxParam::monomial(3, 4).unwrap();
/// let (w, wt) = quasihomogeneous_saito(&p).unwrap();
/// assert!(saito_criterion(&w, &wt, &implicit_equation(&p)).unwrap().holds);
/// ```
pub fn saito_criterion(w1: &OneForm, w2: &OneForm, f: &WPoly) -> Result<SaitoWitness> {
    if f.is_zero() || !f.constant_term().is_zero() {
        return Err(Error::PreconditionViolated("f must be nonzero and vanish at the origin".into()));
    }
    let det = wedge(w1, w2);
    if det.trunc <= f.order() {
        return Err(Error::TruncationInsufficient { have: det.trunc, need: f.order() + 1 });
    }
    match divide_by_equation(&det, f) {
        Ok(u) => Ok(SaitoWitness { holds: !u.constant_term().is_zero(), unit: Some(u), inexact_at: None }),
        Err(Error::DivisionInexact { i, j }) => Ok(SaitoWitness { holds: false, unit: None, inexact_at: Some((i, j)) }),
        Err(e) => Err(e),
    }
}
