use serde::{Deserialize, Serialize};

use crate::curve_algebra::{nu_d1, OneForm, Rat, Slot, WPoly, EXACT};
use crate::error::{Error, Result};
use crate::linalg;

/// Which generator the maximizing element `a + h·b` starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum D1Base {
    WLast,
    WtLast,
}

/// The pair `(𝔰_{D_1}, 𝔰̃_{D_1})` with the element realizing the maximum.
#[derive(Debug, Clone)]
pub struct D1Pair {
    pub s1: i64,
    pub s1_tilde: i64,
    pub generator_orders: [i64; 2],
    pub degree_bound: i64,
    pub nu_d1_xyf: i64,
    pub base: D1Base,
    /// The coefficient `h` of the maximizing element `a + h·b`.
    pub h: WPoly,
    /// The maximizing element itself.
    pub eta: OneForm,
}

/// `ν_{D_1}(xyf)`: the multiplicity of `f` plus two.
pub fn nu_d1_xyf(f: &WPoly) -> Result<i64> {
    f.total_order().map(|d| d + 2).ok_or(Error::ZeroToTruncation(f.trunc))
}

/// Jets of total degree `< d` of `a + h·b` vanish for some `h`; returns such an `h`.
fn kill_jets(a: &OneForm, b: &OneForm, nu0_b: i64, d: i64) -> Option<WPoly> {
    let (n, m) = (a.n(), a.m());
    let top = d - nu0_b - 1;
    let low = |t: &(Slot, i64, i64, &Rat)| t.1 + t.2 < d;
    if top < 0 {
        return (!a.terms().any(|t| low(&t))).then(|| WPoly::zero(n, m, EXACT));
    }
    let unknowns: Vec<(i64, i64)> = (0..=top).flat_map(|deg| (0..=deg).map(move |p| (p, deg - p))).collect();
    let mut keys: Vec<(Slot, i64, i64)> = a.terms().filter(low).map(|t| (t.0, t.1, t.2)).collect();
    for &(p, q) in &unknowns {
        keys.extend(b.terms().map(|t| (t.0, t.1 + p, t.2 + q)).filter(|k| k.1 + k.2 < d));
    }
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Rat>> = keys
        .iter()
        .map(|&(s, i, j)| {
            unknowns.iter().map(|&(p, q)| if i >= p && j >= q { b.coeff(s, i - p, j - q) } else { Rat::from_integer(0.into()) }).collect()
        })
        .collect();
    let rhs: Vec<Rat> = keys.iter().map(|&(s, i, j)| -a.coeff(s, i, j)).collect();
    let x = linalg::solve(rows, rhs, unknowns.len())?;
    Some(WPoly::from_terms(n, m, EXACT, unknowns.into_iter().zip(x)))
}

/// Largest `ν_{D_1}(a + h·b)` over polynomials `h`, with the maximizing `h`.
fn best_completion(a: &OneForm, b: &OneForm, bound: i64) -> Result<(i64, WPoly)> {
    let nu0_a = nu_d1(a)? - 1;
    let nu0_b = nu_d1(b)? - 1;
    let mut best = (nu0_a + 1, WPoly::zero(a.n(), a.m(), EXACT));
    for d in (nu0_a + 1)..=bound {
        match kill_jets(a, b, nu0_b, d) {
            Some(h) => best = (d + 1, h),
            None => return Ok(best),
        }
    }
    Err(Error::BoundTooSmall(bound))
}

/// Saito pair at the first divisor of the resolution.
///
/// `s1` is the smaller `ν_{D_1}` of the two generators: every element
/// `g·ω + g̃·ω̃` has order at least that, and the generators belong to a
/// basis. `s̃1` maximizes over the elements `u·ω + h·ω̃` and `h·ω + u·ω̃`
/// with `u` a unit, which are exactly the elements completing to a basis;
/// dividing by `u` reduces to `u = 1`, and `h` is found jet by jet.
pub fn saito_pair_d1(w: &OneForm, wt: &OneForm, f: &WPoly, degree_bound: Option<i64>) -> Result<D1Pair> {
    let m = w.m();
    let xyf = nu_d1_xyf(f)?;
    let bound = degree_bound.unwrap_or(xyf);
    if bound < 1 {
        return Err(Error::InvalidInput("degree bound must be positive".into()));
    }
    let need = m.checked_mul(bound + 1).ok_or(Error::Overflow("jet weight"))?;
    let have = w.trunc().min(wt.trunc());
    if have <= need {
        return Err(Error::TruncationInsufficient { have, need: need + 1 });
    }
    let orders = [nu_d1(w)?, nu_d1(wt)?];
    let (via_w, h_w) = best_completion(w, wt, bound)?;
    let (via_wt, h_wt) = best_completion(wt, w, bound)?;
    let (s1_tilde, base, h) = if via_wt > via_w { (via_wt, D1Base::WtLast, h_wt) } else { (via_w, D1Base::WLast, h_w) };
    let eta = match base {
        D1Base::WLast => w.add(&wt.mul_poly(&h)),
        D1Base::WtLast => wt.add(&w.mul_poly(&h)),
    };
    if nu_d1(&eta)? != s1_tilde {
        return Err(Error::PreconditionViolated("maximizing element does not reach the computed order".into()));
    }
    Ok(D1Pair { s1: orders[0].min(orders[1]), s1_tilde, generator_orders: orders, degree_bound: bound, nu_d1_xyf: xyf, base, h, eta })
}
