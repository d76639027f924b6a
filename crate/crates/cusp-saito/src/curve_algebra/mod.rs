//! Exact truncated algebra: rationals, weighted polynomials, 1-forms,
//! parametrizations, pullbacks and the orders `ν_C`, `ν_D`, `ν_{D_1}`.

mod form;
mod orders;
mod param;
mod poly;
mod rat;

pub use form::{wedge, OneForm, Slot};
pub use orders::{initial_part, is_resonant, nu_d, nu_d1, nu_d_fn, reachable, Monomial};
pub use param::{implicit_equation, substitute_exact, Curve, OrderResult, PuiseuxParam, TSeries};
pub use poly::{WPoly, EXACT};
pub use rat::{format_rat, int, one, parse_rat, ratio, zero, Rat};
