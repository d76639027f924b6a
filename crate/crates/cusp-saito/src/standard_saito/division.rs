use num_traits::Zero;

use super::special::StandardSystem;
use crate::curve_algebra::{nu_d, Curve, OneForm, OrderResult, Rat, Slot, WPoly, EXACT};
use crate::error::{Error, Result};
use crate::linalg;

/// `w = g·ω_{s+1} + g̃·ω̃_{s+1}`, each coefficient known below its truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaitoCoordinates {
    pub g: WPoly,
    pub g_tilde: WPoly,
}

/// `ν_D(xyf) - t_{s+1} - t̃_{s+1}`: the weight lost when reading coefficients off a truncated form.
pub fn division_loss(n: i64, m: i64, t: i64, t_tilde: i64) -> i64 {
    n * m + n + m - t - t_tilde
}

/// Monomials `x^a y^b` of weight exactly `d`.
fn monomials_of_weight(n: i64, m: i64, d: i64) -> Vec<(i64, i64)> {
    if d < 0 {
        return Vec::new();
    }
    (0..=d / m).filter(|b| (d - m * b) % n == 0).map(|b| ((d - m * b) / n, b)).collect()
}

/// Writes an invariant form in the basis `ω_{s+1}, ω̃_{s+1}`.
///
/// Initial parts are matched degree by degree against quasi-homogeneous
/// multiples of `In(ω_{s+1}), In(ω̃_1), ..., In(ω̃_{s+1})` by an exact linear
/// solve; the `ω̃_j` contributions are then rewritten through their
/// certificates.
pub fn divide_in_saito_basis(w: &OneForm, sys: &StandardSystem, curve: &Curve) -> Result<SaitoCoordinates> {
    let (n, m) = (w.n(), w.m());
    match curve.nu_c_auto(w) {
        OrderResult::Finite(v) => return Err(Error::NotInModule(v)),
        OrderResult::UnknownAbove(t) => return Err(Error::TruncationInsufficient { have: t, need: curve.certification_threshold() }),
        OrderResult::InfinityCertified(_) => {}
    }
    let gens = sys.generators();
    let orders: Vec<i64> = gens.iter().map(|(f, _)| nu_d(f)).collect::<Result<_>>()?;
    let initials: Vec<OneForm> = gens.iter().zip(&orders).map(|((f, _), &o)| f.component(o)).collect();
    let mut g = WPoly::zero(n, m, EXACT);
    let mut g_tilde = WPoly::zero(n, m, EXACT);
    let mut rest = w.clone();
    let cap = rest.trunc().min(curve.t_max()).max(1) as usize;
    for _ in 0..cap {
        if rest.is_zero() {
            break;
        }
        let d = nu_d(&rest)?;
        let target = rest.component(d);
        // Unknowns: coefficients of x^a y^b in G_T for every generator T.
        let mut unknowns: Vec<(usize, i64, i64)> = Vec::new();
        for (k, &o) in orders.iter().enumerate() {
            for (a, b) in monomials_of_weight(n, m, d - o) {
                unknowns.push((k, a, b));
            }
        }
        let mut columns: Vec<OneForm> = Vec::with_capacity(unknowns.len());
        for &(k, a, b) in &unknowns {
            columns.push(initials[k].mul_monomial(&Rat::from_integer(1.into()), a, b));
        }
        let mut keys: Vec<(Slot, i64, i64)> = target.terms().map(|(s, i, j, _)| (s, i, j)).collect();
        for c in &columns {
            keys.extend(c.terms().map(|(s, i, j, _)| (s, i, j)));
        }
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<Rat>> = keys.iter().map(|&(s, i, j)| columns.iter().map(|c| c.coeff(s, i, j)).collect()).collect();
        let rhs: Vec<Rat> = keys.iter().map(|&(s, i, j)| target.coeff(s, i, j)).collect();
        let solution = linalg::solve(rows, rhs, unknowns.len())
            .ok_or_else(|| Error::PreconditionViolated(format!("initial part at weight {d} is not spanned by the generators")))?;
        for (&(k, a, b), c) in unknowns.iter().zip(&solution) {
            if c.is_zero() {
                continue;
            }
            let (form, cert) = &gens[k];
            rest = rest.sub(&form.mul_monomial(c, a, b));
            g = g.add(&cert.h.mul_monomial(c, a, b));
            g_tilde = g_tilde.add(&cert.f.mul_monomial(c, a, b));
        }
        if !rest.is_zero() && nu_d(&rest)? <= d {
            return Err(Error::PreconditionViolated(format!("division made no progress at weight {d}")));
        }
    }
    if !rest.is_zero() {
        return Err(Error::IterationCap(cap));
    }
    let top = sys.w_last().trunc().min(sys.wt_last().trunc()).min(w.trunc());
    let loss = division_loss(n, m, orders[0], *orders.last().expect("nonempty"));
    Ok(SaitoCoordinates { g: g.truncate(top - orders[0] - loss), g_tilde: g_tilde.truncate(top - orders.last().expect("nonempty") - loss) })
}
