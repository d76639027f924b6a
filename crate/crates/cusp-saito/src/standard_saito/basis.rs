use std::collections::BTreeMap;

use num_traits::Zero;

use super::normalize_form;
use crate::curve_algebra::{nu_d, Curve, OneForm, OrderResult, Rat, Slot};
use crate::error::{Error, Result};
use crate::semimodule::{normalize_basis, structure_table, SemimoduleBasis, StructureTable};

/// Measured orders of one basis form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCertificate {
    pub index: i64,
    pub nu_c: i64,
    pub nu_d: i64,
}

/// A minimal standard basis `(ω_{-1}, ..., ω_s)` with its semimodule.
#[derive(Debug, Clone)]
pub struct StandardBasisResult {
    pub basis: SemimoduleBasis,
    /// `forms[0]` is `ω_{-1}`.
    pub forms: Vec<OneForm>,
    pub table: StructureTable,
    pub certificates: Vec<FormCertificate>,
    /// `Λ ∩ [1, window)`, read off the echelon pivots.
    pub values: Vec<i64>,
    pub window: i64,
    /// The truncation the downstream constructions run at.
    pub truncation: i64,
}

impl StandardBasisResult {
    pub fn s(&self) -> usize {
        self.basis.s()
    }

    /// `ω_i` for `-1 <= i <= s`.
    pub fn form(&self, i: i64) -> &OneForm {
        &self.forms[(i + 1) as usize]
    }

    /// `♯(Λ ∖ Γ)` counted from the echelon pivots.
    pub fn lambda_minus_gamma_count(&self) -> usize {
        self.values.iter().filter(|&&v| !self.basis.gamma.contains(v)).count()
    }
}

/// Every element of `Λ ∖ Γ` and every basis element lies below this bound.
pub fn echelon_window(n: i64, m: i64) -> i64 {
    ((n - 1) * (m - 1)).max(m) + 1
}

struct Pivot {
    series: Vec<(usize, Rat)>,
    form: OneForm,
}

/// Computes `Λ` and a minimal standard basis by echelonizing pulled-back monomial forms.
///
/// `truncation` is the weight the later constructions work to; it must leave
/// room `nm` above the largest basis element.
pub fn compute_standard_basis(curve: &Curve, truncation: i64) -> Result<StandardBasisResult> {
    let g = curve.gamma;
    let (n, m) = (g.n, g.m);
    let window = echelon_window(n, m);
    if curve.t_max() + 1 < window {
        return Err(Error::TruncationInsufficient { have: curve.t_max(), need: window - 1 });
    }
    let mut monomials: Vec<(i64, i64, i64, Slot)> = Vec::new();
    for (slot, dn, dm) in [(Slot::Dx, n, 0), (Slot::Dy, 0, m)] {
        let mut j = 0;
        while dm + m * j + dn < window {
            let mut i = 0;
            while n * i + m * j + dn + dm < window {
                monomials.push((n * i + m * j + dn + dm, j, i, slot));
                i += 1;
            }
            j += 1;
        }
    }
    monomials.sort();

    let mut pivots: BTreeMap<usize, Pivot> = BTreeMap::new();
    for (_, j, i, slot) in monomials {
        let form = OneForm::monomial(n, m, slot, Rat::from_integer(1.into()), i, j);
        let mut dense = curve.pullback(&form, window)?.to_dense();
        let mut combo = form;
        while let Some(lead) = dense.iter().position(|c| !c.is_zero()) {
            let Some(p) = pivots.get(&lead) else {
                let series = dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c.clone())).collect();
                pivots.insert(lead, Pivot { series, form: combo });
                break;
            };
            let factor = &dense[lead] / &p.series[0].1;
            for (e, c) in &p.series {
                dense[*e] -= &factor * c;
            }
            combo = combo.add_scaled(&p.form, &-factor);
        }
    }

    let values: Vec<i64> = pivots.keys().map(|&e| e as i64 + 1).collect();
    let basis = normalize_basis(g, &values)?;
    let lambda_s = *basis.lambdas.last().expect("nonempty basis");
    if lambda_s + g.nm() > truncation {
        return Err(Error::TruncationInsufficient { have: truncation, need: lambda_s + g.nm() });
    }
    let table = structure_table(&basis);
    let mut forms = Vec::with_capacity(basis.lambdas.len());
    let mut certificates = Vec::with_capacity(basis.lambdas.len());
    for (k, &lambda) in basis.lambdas.iter().enumerate() {
        let index = k as i64 - 1;
        let form = normalize_form(&pivots[&((lambda - 1) as usize)].form);
        let nu_c = match curve.nu_c(&form, window)? {
            OrderResult::Finite(v) => v,
            other => {
                return Err(Error::PreconditionViolated(format!("basis form {index} has ν_C {other:?}")));
            }
        };
        let nu_dv = nu_d(&form)?;
        if nu_c != lambda || nu_dv != table.t(index) {
            return Err(Error::PreconditionViolated(format!(
                "basis form {index}: (ν_C, ν_D) = ({nu_c}, {nu_dv}), expected ({lambda}, {})",
                table.t(index)
            )));
        }
        certificates.push(FormCertificate { index, nu_c, nu_d: nu_dv });
        forms.push(form);
    }
    Ok(StandardBasisResult { basis, forms, table, certificates, values, window, truncation })
}
