use super::basis::StandardBasisResult;
use super::normalizing_factor;
use crate::curve_algebra::{nu_d, one, reachable, Curve, OneForm, Rat, WPoly, EXACT};
use crate::error::{Error, Result};
use crate::semimodule::StructureTable;

/// `ω̃_j = h·ω_{s+1} + f·ω̃_{s+1}` with exact polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub h: WPoly,
    pub f: WPoly,
}

impl Certificate {
    fn scale(&self, c: &Rat) -> Certificate {
        Certificate { h: self.h.scale(c), f: self.f.scale(c) }
    }

    fn add_monomial_multiple(&self, other: &Certificate, c: &Rat, a: i64, b: i64) -> Certificate {
        Certificate { h: self.h.add(&other.h.mul_monomial(c, a, b)), f: self.f.add(&other.f.mul_monomial(c, a, b)) }
    }
}

/// An extended standard basis together with invariant forms `ω̃_1, ..., ω̃_{s+1}`.
#[derive(Debug, Clone)]
pub struct StandardSystem {
    /// `ω_{-1}, ..., ω_s, ω_{s+1}`.
    pub extended: Vec<OneForm>,
    /// `ω̃_1, ..., ω̃_{s+1}`.
    pub tilde: Vec<OneForm>,
    /// Certificates for `ω̃_1, ..., ω̃_{s+1}`.
    pub certificates: Vec<Certificate>,
    /// `ν_D(ξ)` of the leading correction term in the step building `ω̃_s`.
    pub xi_order: Option<i64>,
}

impl StandardSystem {
    pub fn s(&self) -> usize {
        self.extended.len() - 3
    }

    /// `ω_{s+1}`.
    pub fn w_last(&self) -> &OneForm {
        self.extended.last().expect("extended basis is nonempty")
    }

    /// `ω̃_{s+1}`.
    pub fn wt_last(&self) -> &OneForm {
        self.tilde.last().expect("tilde list is nonempty")
    }

    /// `ω̃_j` for `1 <= j <= s+1`.
    pub fn tilde_form(&self, j: i64) -> &OneForm {
        &self.tilde[(j - 1) as usize]
    }

    pub fn certificate(&self, j: i64) -> &Certificate {
        &self.certificates[(j - 1) as usize]
    }

    /// The generators `ω_{s+1}, ω̃_1, ..., ω̃_{s+1}` with their certificates.
    pub fn generators(&self) -> Vec<(&OneForm, Certificate)> {
        let (n, m) = (self.w_last().n(), self.w_last().m());
        let unit = Certificate { h: WPoly::constant(n, m, one()), f: WPoly::zero(n, m, EXACT) };
        let mut out = vec![(self.w_last(), unit)];
        out.extend(self.tilde.iter().zip(self.certificates.iter().cloned()));
        out
    }
}

/// `ν_D(ξ)` for `ξ = x^{ℓ^n_{s+1}+a_{s+1}}·ω_{k^m_s} - y^{ℓ^m_{s+1}+b_{s+1}}·ω_{k^n_s}`.
///
/// The two terms have different weights, so the order is their minimum; it
/// equals `t̃_s` for every semimodule of differential values.
pub fn xi_order(table: &StructureTable, n: i64, m: i64, s: i64) -> i64 {
    let row = table.row(s + 1);
    let via_m = n * (row.l_n + row.a) + table.t(row.k_m);
    let via_n = m * (row.l_m + row.b) + table.t(row.k_n);
    via_m.min(via_n)
}

/// Builds `ω̃_s, ..., ω̃_1` as combinations of `ω_{s+1}` and `ω̃_{s+1}`.
pub fn special_standard_system(sb: &StandardBasisResult, curve: &Curve, w_last: &OneForm, wt_last: &OneForm) -> Result<StandardSystem> {
    let s = sb.s() as i64;
    let (n, m) = (sb.basis.gamma.n, sb.basis.gamma.m);
    let table = &sb.table;
    let last = table.last();
    for (form, want) in [(w_last, last.t), (wt_last, last.t_tilde)] {
        let got = nu_d(form)?;
        if got != want || !curve.nu_c_auto(form).is_infinite() {
            return Err(Error::PreconditionViolated(format!("last forms need ν_D = {want} and ν_C = ∞, got ν_D = {got}")));
        }
    }
    let zero = WPoly::zero(n, m, EXACT);
    let w_cert = Certificate { h: WPoly::constant(n, m, one()), f: zero.clone() };
    // Index j - 1 holds ω̃_j once built.
    let mut tilde: Vec<Option<(OneForm, Certificate)>> = vec![None; (s + 1) as usize];
    tilde[s as usize] = Some((wt_last.clone(), Certificate { h: zero.clone(), f: WPoly::constant(n, m, one()) }));

    for j in (1..=s).rev() {
        let (a_form, a_cert) = tilde[j as usize].clone().expect("built in a previous step");
        let row = table.row(j + 1);
        let tilde_is_m = row.t_tilde == row.t_m;
        let partner = ((j + 2)..=(s + 1)).find(|&l| {
            let r = table.row(l);
            r.t_tilde == if tilde_is_m { r.t_m } else { r.t_n }
        });
        let (p_form, p_cert) = match partner {
            Some(q) if q <= s => tilde[(q - 1) as usize].clone().expect("built in a previous step"),
            Some(_) => tilde[s as usize].clone().expect("seeded"),
            None => (w_last.clone(), w_cert.clone()),
        };
        let base = sb.form(j);
        let ra = reachable(base, &a_form).ok_or_else(|| no_reach(j, "ω̃_{j+1}"))?;
        let rp = reachable(base, &p_form).ok_or_else(|| no_reach(j, "the partner form"))?;
        let (la, lb) = (ra.a.max(rp.a), ra.b.max(rp.b));
        let mut theta = a_form.mul_monomial(&rp.c, la - ra.a, lb - ra.b).sub(&p_form.mul_monomial(&ra.c, la - rp.a, lb - rp.b));
        let mut cert = Certificate { h: zero.clone(), f: zero.clone() }
            .add_monomial_multiple(&a_cert, &rp.c, la - ra.a, lb - ra.b)
            .add_monomial_multiple(&p_cert, &-ra.c.clone(), la - rp.a, lb - rp.b);

        let target = row_tilde(table, j);
        let mut steps = 0usize;
        loop {
            let d = nu_d(&theta)?;
            if d >= target {
                if d != target {
                    return Err(Error::PreconditionViolated(format!("ω̃_{j} overshoots: ν_D = {d}, expected {target}")));
                }
                break;
            }
            steps += 1;
            if steps > sb.truncation as usize {
                return Err(Error::IterationCap(sb.truncation as usize));
            }
            let mut candidates: Vec<(&OneForm, &Certificate)> = vec![(w_last, &w_cert)];
            for l in ((j + 1)..=(s + 1)).rev() {
                let (f, c) = tilde[(l - 1) as usize].as_ref().expect("built in a previous step");
                candidates.push((f, c));
            }
            let (form, c, mono) = candidates
                .into_iter()
                .find_map(|(f, c)| reachable(f, &theta).map(|mono| (f, c, mono)))
                .ok_or_else(|| Error::PreconditionViolated(format!("no generator reaches weight {d} while building ω̃_{j}")))?;
            theta = theta.sub(&form.mul_monomial(&mono.c, mono.a, mono.b));
            cert = cert.add_monomial_multiple(c, &-mono.c.clone(), mono.a, mono.b);
        }
        let factor = normalizing_factor(&theta);
        let theta = theta.scale(&factor);
        if !curve.nu_c_auto(&theta).is_infinite() {
            return Err(Error::PreconditionViolated(format!("ω̃_{j} is not invariant to the truncation")));
        }
        tilde[(j - 1) as usize] = Some((theta, cert.scale(&factor)));
    }

    let mut extended = sb.forms.clone();
    extended.push(w_last.clone());
    let (tilde, certificates) = tilde.into_iter().map(|e| e.expect("all steps ran")).unzip();
    let xi = (s >= 1).then(|| xi_order(table, n, m, s));
    Ok(StandardSystem { extended, tilde, certificates, xi_order: xi })
}

fn row_tilde(table: &StructureTable, j: i64) -> i64 {
    table.row(j).t_tilde
}

fn no_reach(j: i64, what: &str) -> Error {
    Error::PreconditionViolated(format!("In(ω_{j}) does not reach {what}"))
}
