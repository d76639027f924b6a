use num_traits::Zero;

use super::basis::StandardBasisResult;
use super::extend::cancel_at;
use crate::curve_algebra::{initial_part, int, nu_d, reachable, Curve, OneForm, Rat, WPoly, EXACT};
use crate::error::{Error, Result};
use crate::semimodule::Star;

/// `ω = Σ_{ℓ=-1}^{j} f_ℓ·ω_ℓ` for a form with `ν_D(ω) = t*_{i+1}` and `ν_C(ω) > u*_{i+1}`.
#[derive(Debug, Clone)]
pub struct DelormeDecomposition {
    pub i: i64,
    pub j: i64,
    pub star: Star,
    /// `coefficients[0]` is `f_{-1}`.
    pub coefficients: Vec<WPoly>,
    /// `v*_{ij} = λ_j + t*_{i+1} - t_j`.
    pub v: i64,
}

impl DelormeDecomposition {
    pub fn coefficient(&self, l: i64) -> &WPoly {
        &self.coefficients[(l + 1) as usize]
    }

    /// `Σ f_ℓ·ω_ℓ`.
    pub fn recombine(&self, sb: &StandardBasisResult) -> OneForm {
        let (n, m) = (sb.basis.gamma.n, sb.basis.gamma.m);
        let mut acc = OneForm::zero(n, m, EXACT);
        for l in -1..=self.j {
            acc = acc.add_mul(self.coefficient(l), sb.form(l));
        }
        acc
    }

    /// The index where the minimum among lower terms must be attained.
    pub fn expected_bound(&self, sb: &StandardBasisResult) -> i64 {
        if self.j < self.i {
            let row = sb.table.row(self.j + 1);
            row.bound(row.low_star())
        } else {
            sb.table.row(self.i + 1).bound(self.star)
        }
    }

    /// Checks the decomposition against `w`; returns a description of every violated property.
    pub fn verify(&self, sb: &StandardBasisResult, curve: &Curve, w: &OneForm) -> Vec<String> {
        let mut bad = Vec::new();
        let diff = self.recombine(sb).sub(w);
        if !diff.is_zero() {
            bad.push(format!("reconstruction differs from the form: {diff}"));
        }
        let lambda = |l: i64| sb.basis.lambda(l);
        // Whether ν_C(f_ℓ·ω_ℓ) is below, equal to, or above `v`.
        let compare = |l: i64| -> std::result::Result<std::cmp::Ordering, String> {
            let f = self.coefficient(l);
            let room = self.v - lambda(l);
            if room < 0 {
                return Ok(std::cmp::Ordering::Greater);
            }
            let depth = (room + 1).min(f.trunc).min(curve.t_max());
            if depth <= room {
                return Err(format!("coefficient {l} is not known to weight {room}"));
            }
            let order = curve.nu_c_fn(f, depth).map_err(|e| e.to_string())?;
            Ok(match order.finite() {
                Some(o) => o.cmp(&room),
                None => std::cmp::Ordering::Greater,
            })
        };
        match compare(self.j) {
            Ok(std::cmp::Ordering::Equal) => {}
            Ok(o) => bad.push(format!("ν_C(f_j ω_j) is {o:?} than v = {}", self.v)),
            Err(e) => bad.push(e),
        }
        let k = self.expected_bound(sb);
        for l in -1..self.j {
            match compare(l) {
                Ok(std::cmp::Ordering::Less) => bad.push(format!("term {l} has ν_C below v = {}", self.v)),
                Ok(std::cmp::Ordering::Equal) if l != k => bad.push(format!("minimum attained at {l}, expected only at {k}")),
                Ok(std::cmp::Ordering::Greater) if l == k => bad.push(format!("minimum not attained at the bound {k}")),
                Ok(_) => {}
                Err(e) => bad.push(e),
            }
        }
        if self.i >= 1 && self.j >= 1 {
            let lead = sb.form(self.j).mul_poly(self.coefficient(self.j));
            if initial_part(&lead).ok() != initial_part(w).ok() {
                bad.push("In(ω) differs from In(f_j ω_j)".into());
            }
        }
        bad
    }
}

struct Accumulator {
    coefficients: Vec<WPoly>,
}

impl Accumulator {
    fn new(n: i64, m: i64, j: i64) -> Self {
        Accumulator { coefficients: (-1..=j).map(|_| WPoly::zero(n, m, EXACT)).collect() }
    }

    fn add_monomial(&mut self, l: i64, c: &Rat, a: i64, b: i64) {
        self.coefficients[(l + 1) as usize].add_term(a, b, c.clone());
    }

    fn add_poly(&mut self, l: i64, p: &WPoly) {
        let slot = &mut self.coefficients[(l + 1) as usize];
        *slot = slot.add(p);
    }
}

/// Decomposes `w` along `ω_{-1}, ..., ω_j` following the inductive construction.
pub fn delorme_decompose(sb: &StandardBasisResult, curve: &Curve, w: &OneForm, i: i64, j: i64, star: Star) -> Result<DelormeDecomposition> {
    let s = sb.s() as i64;
    if !(0 <= j && j <= i && i <= s) {
        return Err(Error::PreconditionViolated(format!("indices need 0 <= j <= i <= s, got i={i}, j={j}, s={s}")));
    }
    let row = sb.table.row(i + 1);
    let (t_star, u_star) = (row.critical(star), row.axis(star));
    let got_d = nu_d(w)?;
    let depth = (u_star + 2).min(w.trunc()).min(curve.t_max() + 1);
    let got_c = curve.nu_c(w, depth)?.at_least();
    if got_d != t_star || got_c <= u_star {
        return Err(Error::PreconditionViolated(format!("need (ν_D, ν_C) = ({t_star}, > {u_star}), measured ({got_d}, {got_c})")));
    }
    decompose(sb, curve, w, i, j, star)
}

fn decompose(sb: &StandardBasisResult, curve: &Curve, w: &OneForm, i: i64, j: i64, star: Star) -> Result<DelormeDecomposition> {
    let (n, m) = (sb.basis.gamma.n, sb.basis.gamma.m);
    let row = sb.table.row(i + 1);
    let v = sb.basis.lambda(j) + row.critical(star) - sb.table.t(j);
    if i == 0 {
        if sb.form(-1) != &OneForm::dx(n, m) || sb.form(0) != &OneForm::dy(n, m) {
            return Err(Error::PreconditionViolated("ω_{-1}, ω_0 must be dx, dy".into()));
        }
        return Ok(DelormeDecomposition { i, j, star, coefficients: vec![w.a.clone(), w.b.clone()], v });
    }
    if j < i {
        let outer = decompose(sb, curve, w, i, j + 1, star)?;
        let inner_row = sb.table.row(j + 1);
        let inner = decompose(sb, curve, sb.form(j + 1), j, j, inner_row.low_star())?;
        let top = outer.coefficient(j + 1);
        let coefficients = (-1..=j).map(|l| outer.coefficient(l).add(&top.mul(inner.coefficient(l)))).collect();
        return Ok(DelormeDecomposition { i, j, star, coefficients, v });
    }
    let mut acc = Accumulator::new(n, m, j);
    let (ell, co, k, u) = (row.limit(star), row.colimit(star), row.bound(star), row.axis(star));
    let (lead, partner) = match star {
        Star::N => ((ell, 0), (0, co)),
        Star::M => ((0, ell), (co, 0)),
    };
    let mono = reachable(sb.form(i), w)
        .filter(|mono| (mono.a, mono.b) == lead)
        .ok_or_else(|| Error::PreconditionViolated(format!("In(ω) is not a multiple of In(ω_{i}) by x^{}y^{}", lead.0, lead.1)))?;
    acc.add_monomial(i, &mono.c, lead.0, lead.1);
    let eta1 = w.sub(&sb.form(i).mul_monomial(&mono.c, lead.0, lead.1));
    let (eta2, mu2) = cancel_at(curve, &eta1, sb.form(k), partner.0, partner.1, u - 1)?;
    acc.add_monomial(k, &mu2, partner.0, partner.1);
    climb(sb, eta2, i, &mut acc)?;
    Ok(DelormeDecomposition { i, j, star, coefficients: acc.coefficients, v })
}

/// Splits off initial parts until the weight reaches `nm`, then hands the tail to `dx, dy`.
fn climb(sb: &StandardBasisResult, mut eta: OneForm, i: i64, acc: &mut Accumulator) -> Result<()> {
    let g = sb.basis.gamma;
    let (n, m) = (g.n, g.m);
    for _ in 0..sb.truncation.max(1) as usize {
        if eta.is_zero() {
            return Ok(());
        }
        let d = nu_d(&eta)?;
        if d >= g.nm() {
            acc.add_poly(-1, &eta.a);
            acc.add_poly(0, &eta.b);
            return Ok(());
        }
        let init = eta.component(d);
        let (a, b) = g.membership(d).ok_or(Error::OrderGap(d))?;
        let mu_x = if a >= 1 { init.a.coeff(a - 1, b) } else { Rat::zero() };
        let mu_y = if b >= 1 { init.b.coeff(a, b - 1) } else { Rat::zero() };
        if !(&mu_x * int(n) + &mu_y * int(m)).is_zero() {
            acc.add_poly(-1, &init.a);
            acc.add_poly(0, &init.b);
            eta = eta.sub(&init);
            continue;
        }
        let (l, mono) = (1..=i)
            .rev()
            .find_map(|l| reachable(sb.form(l), &eta).map(|mono| (l, mono)))
            .ok_or_else(|| Error::PreconditionViolated(format!("resonant initial part at weight {d} is not reachable")))?;
        acc.add_monomial(l, &mono.c, mono.a, mono.b);
        eta = eta.sub(&sb.form(l).mul_monomial(&mono.c, mono.a, mono.b));
    }
    Err(Error::IterationCap(sb.truncation as usize))
}
