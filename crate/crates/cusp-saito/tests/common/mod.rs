//! Curves, generators and property laws shared by the integration tests.
#![allow(dead_code)]

use std::cell::OnceCell;

use cusp_saito::curve_algebra::{initial_part, int, nu_d, nu_d_fn, reachable, OneForm, Slot, WPoly, EXACT};
use cusp_saito::invariants::{analyze, Analysis, CurveInput};
use cusp_saito::semigroup::CuspSemigroup;
use cusp_saito::semimodule::{check_invariants, enumerate_increasing, random_increasing, CheckOutcome, Family, SemimoduleBasis, Star};
use cusp_saito::standard_saito::{delorme_decompose, divide_in_saito_basis};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `φ₁`, `φ₂` and `(t^5, t^11 + t^12)`.
pub const CURVES: [&str; 3] = [
    r#"{"schema":1,"n":7,"y":[[36,"1"],[116,"1"],[196,"28/9"]]}"#,
    r#"{"schema":1,"n":7,"y":[[36,"1"],[116,"1"],[131,"-4/171"],[146,"1/1782"],[161,"-1/72900"]]}"#,
    r#"{"schema":1,"n":5,"y":[[11,"1"],[12,"1"]]}"#,
];

pub fn analysis(k: usize) -> &'static Analysis {
    thread_local! {
        static CELLS: [OnceCell<&'static Analysis>; 3] = const { [OnceCell::new(), OnceCell::new(), OnceCell::new()] };
    }
    CELLS.with(|c| *c[k].get_or_init(|| Box::leak(Box::new(analyze(&CurveInput::from_json(CURVES[k]).unwrap()).unwrap()))))
}

/// Raw terms `(i, j, c)`, later reduced to weighted degree at most `3m`.
pub fn raw_terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..20, 0i64..4, -6i64..=6), 1..6)
}

pub fn poly(a: &Analysis, terms: &[(i64, i64, i64)]) -> WPoly {
    let (n, m) = (a.param.n, a.param.m);
    let mut p = WPoly::zero(n, m, EXACT);
    for &(i, j, c) in terms {
        let j = j.min(2);
        let i = i.min((3 * m - m * j) / n);
        p.add_term(i, j, int(c));
    }
    p
}

pub fn form(a: &Analysis, dx: &[(i64, i64, i64)], dy: &[(i64, i64, i64)]) -> OneForm {
    let (n, m) = (a.param.n, a.param.m);
    let mut w = OneForm::zero(n, m, EXACT);
    for (slot, terms) in [(Slot::Dx, dx), (Slot::Dy, dy)] {
        for &(i, j, c) in terms {
            w = w.add(&OneForm::monomial(n, m, slot, int(c), i.min(3 * m / n), j.min(2)));
        }
    }
    w
}

pub fn unit(a: &Analysis, terms: &[(i64, i64, i64)], c0: i64) -> WPoly {
    let mut u = poly(a, terms);
    let fix = int(c0) - u.constant_term();
    u.add_term(0, 0, fix);
    u
}

pub fn order_laws(k: usize, dx: Vec<(i64, i64, i64)>, dy: Vec<(i64, i64, i64)>, h: Vec<(i64, i64, i64)>) -> Result<(), TestCaseError> {
    let a = analysis(k);
    let w = form(a, &dx, &dy);
    let h = poly(a, &h);
    prop_assume!(!w.is_zero() && !h.is_zero());
    let curve = &a.curve;
    let d = nu_d(&w).unwrap();
    let c = curve.nu_c_auto(&w);
    prop_assert!(c.at_least() >= d, "ν_D = {d} exceeds ν_C {c:?}");

    let hw = w.mul_poly(&h);
    if let (Some(cw), Some(ch)) = (c.finite(), curve.nu_c_fn_auto(&h).finite()) {
        prop_assert_eq!(curve.nu_c_auto(&hw).finite(), Some(cw + ch));
    }
    prop_assert_eq!(nu_d(&hw).unwrap(), d + nu_d_fn(&h).unwrap());
    let in_h = h.component(nu_d_fn(&h).unwrap());
    prop_assert_eq!(initial_part(&hw).unwrap(), initial_part(&w).unwrap().mul_poly(&in_h));

    let (i, j) = (dx[0].0.rem_euclid(3), dx[0].1.rem_euclid(2));
    let coef = int(dy[0].2.max(1));
    let shifted = w.mul_monomial(&coef, i, j).add(&hw.mul_monomial(&int(1), i + 1, j));
    let mono = reachable(&w, &shifted);
    prop_assert!(mono.is_some(), "initial part of {shifted} not reachable from {w}");
    let mono = mono.unwrap();
    prop_assert_eq!((mono.c, mono.a, mono.b), (coef, i, j));
    Ok(())
}

pub fn delorme_laws(k: usize, pick: usize, j: usize, u: Vec<(i64, i64, i64)>, g: Vec<(i64, i64, i64)>) -> Result<(), TestCaseError> {
    let a = analysis(k);
    let sb = &a.standard;
    let s = sb.s() as i64;
    let n = a.param.n;
    let low = sb.table.last().low_star();
    let mut cases: Vec<(i64, Star, &OneForm)> = vec![(s, low, a.system.w_last()), (s, low.other(), a.system.wt_last())];
    for i in 0..s {
        cases.push((i, sb.table.row(i + 1).low_star(), sb.form(i + 1)));
    }
    let (i, star, base) = cases[pick % cases.len()];
    let j = j as i64 % (i + 1);
    let row = sb.table.row(i + 1);
    let t_star = if star == Star::N { row.t_n } else { row.t_m };
    // An invariant perturbation of strictly larger divisorial order.
    let g = poly(a, &g).mul_monomial(&int(1), t_star / n + 1, 0);
    let other = if star == low { a.system.wt_last() } else { a.system.w_last() };
    let w = base.mul_poly(&unit(a, &u, 1 + (pick % 4) as i64)).add(&other.mul_poly(&g));
    let d = delorme_decompose(sb, &a.curve, &w, i, j, star);
    prop_assert!(d.is_ok(), "(i, j) = ({i}, {j}): {:?}", d.err());
    let failures = d.unwrap().verify(sb, &a.curve, &w);
    prop_assert!(failures.is_empty(), "(i, j) = ({i}, {j}): {failures:?}");
    Ok(())
}

/// A polynomial of weighted degree at most `max_weight`.
pub fn poly_upto(a: &Analysis, terms: &[(i64, i64, i64)], max_weight: i64) -> WPoly {
    let (n, m) = (a.param.n, a.param.m);
    let mut p = WPoly::zero(n, m, EXACT);
    for &(i, j, c) in terms {
        let j = j.min(max_weight / m);
        let i = i.min((max_weight - m * j) / n);
        p.add_term(i, j, int(c));
    }
    p
}

/// `g·ω_{s+1} + g̃·ω̃_{s+1}` is divided back into exactly `(g, g̃)`.
pub fn division_law(k: usize, g: Vec<(i64, i64, i64)>, gt: Vec<(i64, i64, i64)>) -> Result<(), TestCaseError> {
    let a = analysis(k);
    let sys = &a.system;
    let (g, gt) = (poly_upto(a, &g, 60), poly_upto(a, &gt, 60));
    let w = sys.w_last().mul_poly(&g).add(&sys.wt_last().mul_poly(&gt));
    prop_assume!(!w.is_zero());
    let c = divide_in_saito_basis(&w, sys, &a.curve);
    prop_assert!(c.is_ok(), "{:?}", c.err());
    let c = c.unwrap();
    prop_assert!(c.g.trunc > 60 && c.g_tilde.trunc > 60, "recovered only below ({}, {})", c.g.trunc, c.g_tilde.trunc);
    prop_assert_eq!(c.g.sorted_terms(), g.sorted_terms());
    prop_assert_eq!(c.g_tilde.sorted_terms(), gt.sorted_terms());
    Ok(())
}

fn semimodule_failures(b: &SemimoduleBasis) -> Vec<String> {
    check_invariants(b)
        .into_iter()
        .filter_map(|c| match c.outcome {
            CheckOutcome::Fail(why) => Some(format!("{} fails on {:?}: {why}", c.name, b.lambdas)),
            _ => None,
        })
        .collect()
}

/// Every increasing semimodule for `(5,7)` and `(5,11)`, both families.
pub fn exhaustive_semimodule_failures() -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for (n, m) in [(5, 7), (5, 11)] {
        let g = CuspSemigroup::new(n, m).unwrap();
        for fam in [Family::Normalized, Family::Differential] {
            for b in enumerate_increasing(g, fam) {
                count += 1;
                bad.extend(semimodule_failures(&b));
            }
        }
    }
    (count, bad)
}

/// Random increasing bases for `(7,36)` drawn from a seeded generator.
pub fn random_semimodule_failures(samples: u64) -> Vec<String> {
    let g = CuspSemigroup::new(7, 36).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for k in 0..samples {
        let fam = if k % 2 == 0 { Family::Normalized } else { Family::Differential };
        bad.extend(semimodule_failures(&random_increasing(g, fam, &mut rng)));
    }
    bad
}
