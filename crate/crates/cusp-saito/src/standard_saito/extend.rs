use num_traits::Zero;

use super::basis::StandardBasisResult;
use super::normalize_form;
use crate::curve_algebra::{nu_d, one, Curve, OneForm, OrderResult, PuiseuxParam, Rat, WPoly};
use crate::error::{Error, Result};
use crate::semimodule::Star;

/// `θ - c·x^a·y^b·ω` with `c` cancelling the pullback coefficient of `t^{e}`.
pub(crate) fn cancel_at(curve: &Curve, theta: &OneForm, w: &OneForm, a: i64, b: i64, e: i64) -> Result<(OneForm, Rat)> {
    let shifted = w.mul_monomial(&one(), a, b);
    let depth = e + 2;
    let target = curve.pullback(theta, depth.min(theta.trunc()))?.coeff(e);
    let lead = curve.pullback(&shifted, depth.min(shifted.trunc()))?.coeff(e);
    if lead.is_zero() {
        return Err(Error::PreconditionViolated(format!("no t^{e} term to cancel against")));
    }
    let mu = target / lead;
    Ok((theta.add_scaled(&shifted, &-mu.clone()), mu))
}

/// Raises `ν_C` of a form to the certification threshold by subtracting
/// monomial multiples of basis forms and exact differentials.
pub(crate) fn climb_to_invariant(curve: &Curve, sb: &StandardBasisResult, start: OneForm) -> Result<OneForm> {
    let g = curve.gamma;
    let w = sb.truncation;
    let s = sb.s() as i64;
    let mut theta = start;
    for _ in 0..w.max(1) as usize {
        match curve.nu_c(&theta, w.min(theta.trunc()))? {
            OrderResult::InfinityCertified(_) => return Ok(theta.truncate(w)),
            OrderResult::UnknownAbove(t) => return Err(Error::TruncationInsufficient { have: t, need: curve.certification_threshold() }),
            OrderResult::Finite(v) if v < g.nm() => {
                let (i, (alpha, beta)) =
                    (-1..=s).rev().find_map(|i| g.membership(v - sb.basis.lambda(i)).map(|ab| (i, ab))).ok_or(Error::OrderGap(v))?;
                theta = cancel_at(curve, &theta, sb.form(i), alpha, beta, v - 1)?.0;
            }
            OrderResult::Finite(_) => {
                let psi = curve.pullback(&theta, w.min(theta.trunc()))?;
                let h = curve.exact_primitive(&psi)?;
                theta = theta.sub(&OneForm::exterior_derivative(&h));
            }
        }
    }
    Err(Error::IterationCap(w as usize))
}

/// Builds `ω_{s+1}` (for the star realizing `u_{s+1}`) or `ω̃_{s+1}` (for the other star).
///
/// The seed `x^ℓ·ω_s - μ·y^b·ω_k` (or its mirror for `*=m`) already has
/// `ν_D = t*_{s+1}`; the climb only touches strictly higher weights.
pub fn extend_standard_basis(sb: &StandardBasisResult, curve: &Curve, star: Star) -> Result<OneForm> {
    let s = sb.s() as i64;
    let row = sb.table.row(s + 1);
    let ell = row.limit(star);
    let co = row.colimit(star);
    let k = row.bound(star);
    let (lead, partner) = match star {
        Star::N => ((ell, 0), (0, co)),
        Star::M => ((0, ell), (co, 0)),
    };
    let seed = sb.form(s).mul_monomial(&one(), lead.0, lead.1);
    let u = row.axis(star);
    let (theta, _) = cancel_at(curve, &seed, sb.form(k), partner.0, partner.1, u - 1)?;
    let result = normalize_form(&climb_to_invariant(curve, sb, theta)?);
    let got = nu_d(&result)?;
    if got != row.critical(star) {
        return Err(Error::PreconditionViolated(format!("extension along {star:?} has ν_D {got}, expected {}", row.critical(star))));
    }
    Ok(result)
}

/// The Saito basis `(n·x·dy - m·y·dx, df)` of `f = y^n - x^m`.
///
/// ```
/// use cusp_saito::curve_algebra::{nu_d, PuiseuxParam};
/// use cusp_saito::standard_saito::quasihomogeneous_saito;
/// let (w, wt) = quasihomogeneous_saito(&PuiseuxParam::monomial(5, 7).unwrap()).unwrap();
/// assert_eq!((nu_d(&w).unwrap(), nu_d(&wt).unwrap()), (12, 35));
/// ```
pub fn quasihomogeneous_saito(p: &PuiseuxParam) -> Result<(OneForm, OneForm)> {
    if !p.is_monomial() {
        return Err(Error::NotQuasiHomogeneous);
    }
    let (n, m) = (p.n, p.m);
    let mut f = WPoly::monomial(n, m, one(), 0, n);
    f.add_term(m, 0, -one());
    Ok((OneForm::euler(n, m), OneForm::exterior_derivative(&f)))
}

#[cfg(test)]
mod tests {
    use super::super::basis::compute_standard_basis;
    use super::*;
    use crate::curve_algebra::{int, ratio};

    fn phi1() -> PuiseuxParam {
        PuiseuxParam::new(7, vec![(36, int(1)), (116, int(1)), (196, ratio(28, 9))]).unwrap().0
    }

    #[test]
    fn extension_of_the_worked_example() {
        let c = Curve::new(phi1(), 714);
        let sb = compute_standard_basis(&c, 714).unwrap();
        let w = extend_standard_basis(&sb, &c, Star::N).unwrap();
        let wt = extend_standard_basis(&sb, &c, Star::M).unwrap();
        assert_eq!(nu_d(&w).unwrap(), 64);
        assert_eq!(nu_d(&wt).unwrap(), 151);
        assert!(c.nu_c_auto(&w).is_infinite());
        assert!(c.nu_c_auto(&wt).is_infinite());
    }

    #[test]
    fn quasi_homogeneous_pair() {
        let (w, wt) = quasihomogeneous_saito(&PuiseuxParam::monomial(2, 3).unwrap()).unwrap();
        assert_eq!(w.to_string(), "-3*y*dx + 2*x*dy");
        assert_eq!(wt.to_string(), "2*y*dy - 3*x^2*dx");
        assert!(quasihomogeneous_saito(&phi1()).is_err());
    }
}
