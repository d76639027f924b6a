//! Constructive pipelines: minimal standard bases by echelonization, the two
//! invariant forms ending an extended basis, Delorme decompositions, special
//! standard systems, Saito's criterion and division in a Saito basis.

mod basis;
mod criterion;
mod delorme;
mod division;
mod extend;
mod special;

pub use basis::{compute_standard_basis, echelon_window, FormCertificate, StandardBasisResult};
pub use criterion::{divide_by_equation, saito_criterion, SaitoWitness};
pub use delorme::{delorme_decompose, DelormeDecomposition};
pub use division::{divide_in_saito_basis, division_loss, SaitoCoordinates};
pub use extend::{extend_standard_basis, quasihomogeneous_saito};
pub use special::{special_standard_system, xi_order, Certificate, StandardSystem};

use num_traits::{One, Zero};

use crate::curve_algebra::{initial_part, int, OneForm, Rat, Slot};

/// Rescales a form so its initial part is in a fixed shape.
///
/// A single-term initial part gets coefficient 1. Otherwise the first `dy`
/// term of the initial part gets coefficient `n`, which turns
/// `x^a·y^b·(n·x·dy - m·y·dx)` and `df` for `f = y^n - x^m` into themselves.
pub fn normalize_form(w: &OneForm) -> OneForm {
    w.scale(&normalizing_factor(w))
}

/// The scalar [`normalize_form`] multiplies by.
pub(crate) fn normalizing_factor(w: &OneForm) -> Rat {
    let Ok(init) = initial_part(w) else { return Rat::one() };
    let terms = init.sorted_terms();
    let target = if terms.len() == 1 {
        Some((terms[0].3.clone(), Rat::one()))
    } else {
        terms.iter().find(|t| t.0 == Slot::Dy).map(|t| (t.3.clone(), int(w.n())))
    };
    match target {
        Some((c, goal)) if !c.is_zero() => goal / c,
        _ => Rat::one(),
    }
}
